#include "maxdecouple/bounds.hpp"

#include <cmath>

namespace maxdecouple {

bool Verdicts::all_universal() const noexcept {
  return pinelis_upper && paley_zygmund && eta_lower && g_nonnegative && f_factorization &&
         eta_implication && ratio_cap && (!main_lower_applicable || main_lower);
}

std::vector<std::pair<std::string, bool>> Verdicts::named() const {
  return {
      {"pinelis_upper", pinelis_upper},
      {"paley_zygmund", paley_zygmund},
      {"eta_lower", eta_lower},
      {"g_nonnegative", g_nonnegative},
      {"f_factorization", f_factorization},
      {"eta_implication", eta_implication},
      {"ratio_cap", ratio_cap},
      {"main_lower_applicable", main_lower_applicable},
      {"main_lower", main_lower},
  };
}

UpperCheck pinelis_upper_check(const JointBernoulli& j) {
  UpperCheck c;
  c.lhs = prob_hit(j);
  c.rhs = kPinelisConstant * prob_hit_independent(marginals(j));
  c.holds = c.lhs <= c.rhs + kVerdictSlack;
  return c;
}

double paley_zygmund_lower(const JointBernoulli& j) {
  const ZMoments z = moments_of_Z(j);
  if (z.EZ2 <= 0.0) return 0.0;
  return z.EZ * z.EZ / z.EZ2;
}

MainLowerCheck main_lower_check(const JointBernoulli& j, double tol) {
  MainLowerCheck c;
  c.applicable = has_negative_covariance(j, tol);
  c.lhs = prob_hit(j);
  c.rhs = 0.5 * prob_hit_independent(marginals(j));
  c.holds = c.lhs >= c.rhs - kVerdictSlack;
  return c;
}

double eta_lower_bound(double S, double H, double Mtilde) {
  const double B = S + S * S;
  if (B + H == 0.0) return 0.0;
  return 0.5 * (1.0 - H / (B + H)) * Mtilde;
}

EtaLowerCheck eta_lower_check(const JointBernoulli& j) {
  const auto p = marginals(j);
  EtaLowerCheck c;
  c.lhs = prob_hit(j);
  c.rhs = eta_lower_bound(p.sum(), eta_matrix(j).H, prob_hit_independent(p));
  c.holds = c.lhs >= c.rhs - kVerdictSlack;
  return c;
}

GFunction g_function(const MarginalVector& p) {
  GFunction g;
  g.S = p.sum();
  g.P = prob_none_independent(p);
  g.G = g.S + g.P + g.S * g.P - 1.0;
  g.F = g.S * g.G;
  g.F_direct = 2.0 * g.S * g.S - (g.S + g.S * g.S) * (1.0 - g.P);
  return g;
}

BoundReport full_report(const JointBernoulli& j, double tol) {
  const auto p = marginals(j);
  const GFunction g = g_function(p);

  BoundReport r;
  r.n = j.n();
  r.M = prob_hit(j);
  r.Mtilde = prob_hit_independent(p);
  r.S = g.S;
  r.Pprod = g.P;
  r.G = g.G;
  r.F = g.F;
  r.pz_lower = paley_zygmund_lower(j);
  r.A = r.S * r.S;
  r.B = r.S + r.S * r.S;
  r.C = 0.5 * r.Mtilde;
  r.H = eta_matrix(j).H;
  r.pinelis_rhs = kPinelisConstant * r.Mtilde;
  r.eta_lower = eta_lower_bound(r.S, r.H, r.Mtilde);

  Verdicts& v = r.verdicts;
  v.pinelis_upper = r.M <= r.pinelis_rhs + kVerdictSlack;
  v.paley_zygmund = r.pz_lower <= r.M + kVerdictSlack;
  v.eta_lower = r.M >= r.eta_lower - kVerdictSlack;
  v.g_nonnegative = r.G >= -kVerdictSlack;
  v.f_factorization = std::abs(g.F_direct - r.F) <= kFactorizationTolerance;
  // A/B >= C must carry over to A/(B+H) >= C(1 - H/(B+H)).
  v.eta_implication = true;
  if (r.B > 0.0 && r.A / r.B >= r.C) {
    v.eta_implication =
        r.A / (r.B + r.H) >= r.C * (1.0 - r.H / (r.B + r.H)) - kVerdictSlack;
  }
  v.ratio_cap = r.Mtilde <= static_cast<double>(r.n) * r.M + kVerdictSlack;
  v.main_lower_applicable = has_negative_covariance(j, tol);
  v.main_lower = r.M >= 0.5 * r.Mtilde - kVerdictSlack;
  return r;
}

}  // namespace maxdecouple
