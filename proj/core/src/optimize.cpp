#include "maxdecouple/optimize.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace maxdecouple {

namespace {

void check_p(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("marginal p must be in [0, 1]");
}

double binomial(unsigned n, unsigned k) {
  double c = 1.0;
  for (unsigned i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

Relation pair_relation(MomentMode mode) {
  return mode == MomentMode::pairwise_equality ? Relation::equal : Relation::less_equal;
}

}  // namespace

std::string_view mode_name(MomentMode m) {
  return m == MomentMode::pairwise_equality ? "equality" : "negcov";
}

std::optional<MomentMode> parse_mode(std::string_view s) {
  if (s == "equality") return MomentMode::pairwise_equality;
  if (s == "negcov") return MomentMode::negative_covariance;
  return std::nullopt;
}

std::optional<ReductionChoice> parse_reduction(std::string_view s) {
  if (s == "auto") return ReductionChoice::automatic;
  if (s == "full") return ReductionChoice::full;
  if (s == "exchangeable") return ReductionChoice::exchangeable;
  return std::nullopt;
}

std::string_view status_name(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
  }
  return "unknown";
}

ExtremalLp build_full_lp(unsigned n, double p, MomentMode mode) {
  if (n == 0 || n > kMaxFullLpVariables) {
    throw std::invalid_argument("full LP requires 1 <= n <= 16, got " + std::to_string(n));
  }
  check_p(p);
  const std::size_t outcomes = std::size_t{1} << n;

  LinearProgram<double> lp;
  lp.num_vars = outcomes;
  lp.cost.assign(outcomes, 1.0);
  lp.cost[0] = 0.0;

  lp.add_row(std::vector<double>(outcomes, 1.0), Relation::equal, 1.0);
  for (unsigned i = 0; i < n; ++i) {
    std::vector<double> row(outcomes, 0.0);
    for (std::size_t x = 0; x < outcomes; ++x) row[x] = static_cast<double>((x >> i) & 1u);
    lp.add_row(std::move(row), Relation::equal, p);
  }
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned k = i + 1; k < n; ++k) {
      std::vector<double> row(outcomes, 0.0);
      for (std::size_t x = 0; x < outcomes; ++x) {
        row[x] = static_cast<double>(((x >> i) & 1u) & ((x >> k) & 1u));
      }
      lp.add_row(std::move(row), pair_relation(mode), p * p);
    }
  }

  ExtremalLp out;
  out.n = n;
  out.p = p;
  out.p_exact = Rational(p);
  out.mode = mode;
  out.reduction = Reduction::full;
  out.program = std::move(lp);
  return out;
}

ExtremalLp build_exchangeable_lp(unsigned n, const Rational& p, MomentMode mode) {
  if (n < 2 || n > kMaxExchangeableVariables) {
    throw std::invalid_argument("exchangeable LP requires 2 <= n <= 10000, got " +
                                std::to_string(n));
  }
  if (p < 0 || p > 1) throw std::invalid_argument("marginal p must be in [0, 1]");

  LinearProgram<Rational> lp;
  lp.num_vars = n + 1;
  lp.cost.assign(n + 1, Rational(1));
  lp.cost[0] = 0;

  std::vector<Rational> total(n + 1, Rational(1));
  std::vector<Rational> mean(n + 1), pair(n + 1);
  const Rational pairs = Rational(n) * (n - 1);
  for (unsigned k = 0; k <= n; ++k) {
    mean[k] = Rational(k) / n;
    pair[k] = Rational(k) * (static_cast<int>(k) - 1) / pairs;
  }
  lp.add_row(std::move(total), Relation::equal, Rational(1));
  lp.add_row(std::move(mean), Relation::equal, p);
  lp.add_row(std::move(pair), pair_relation(mode), p * p);

  ExtremalLp out;
  out.n = n;
  out.p = static_cast<double>(p);
  out.p_exact = p;
  out.mode = mode;
  out.reduction = Reduction::exchangeable;
  out.program = std::move(lp);
  return out;
}

ExtremalLp build_exchangeable_lp(unsigned n, double p, MomentMode mode) {
  check_p(p);
  return build_exchangeable_lp(n, Rational(p), mode);
}

LpSolution solve(const ExtremalLp& lp) {
  LpSolution sol;
  if (const auto* full = std::get_if<LinearProgram<double>>(&lp.program)) {
    const auto r = simplex_minimize(*full);
    sol.status = r.status;
    if (r.status != LpStatus::optimal) return sol;
    sol.objective = r.objective;
    for (std::size_t x = 0; x < r.x.size(); ++x) {
      if (r.x[x] > 0.0) sol.atoms.push_back({static_cast<Mask>(x), r.x[x]});
    }
    return sol;
  }
  const auto& exch = std::get<LinearProgram<Rational>>(lp.program);
  const auto r = simplex_minimize(exch);
  sol.status = r.status;
  if (r.status != LpStatus::optimal) return sol;
  sol.exact_objective = r.objective;
  sol.objective = static_cast<double>(r.objective);
  sol.exact_weights = r.x;
  sol.weights.reserve(r.x.size());
  for (const auto& w : r.x) sol.weights.push_back(static_cast<double>(w));
  return sol;
}

double max_violation(const ExtremalLp& lp, const LpSolution& sol) {
  double worst = 0.0;
  auto account = [&worst](double lhs, Relation rel, double rhs) {
    const double d = lhs - rhs;
    worst = std::max(worst, rel == Relation::equal ? std::abs(d) : std::max(d, 0.0));
  };
  if (const auto* full = std::get_if<LinearProgram<double>>(&lp.program)) {
    for (const auto& row : full->rows) {
      double lhs = 0.0;
      for (const Atom& a : sol.atoms) lhs += row.coef[a.mask] * a.p;
      account(lhs, row.rel, row.rhs);
    }
    for (const Atom& a : sol.atoms) worst = std::max(worst, -a.p);
    return worst;
  }
  const auto& exch = std::get<LinearProgram<Rational>>(lp.program);
  for (const auto& row : exch.rows) {
    double lhs = 0.0;
    for (std::size_t k = 0; k < sol.weights.size(); ++k) {
      lhs += static_cast<double>(row.coef[k]) * sol.weights[k];
    }
    account(lhs, row.rel, static_cast<double>(row.rhs));
  }
  for (double w : sol.weights) worst = std::max(worst, -w);
  return worst;
}

JointBernoulli expand_exchangeable(unsigned n, std::span<const double> weights) {
  if (n == 0 || n > kMaxDenseVariables) {
    throw std::invalid_argument("expand_exchangeable requires 1 <= n <= 24");
  }
  if (weights.size() != n + 1) throw std::invalid_argument("expected n + 1 weights");
  std::vector<double> per_mask(n + 1);
  for (unsigned k = 0; k <= n; ++k) per_mask[k] = weights[k] / binomial(n, k);
  std::vector<Atom> atoms;
  for (Mask x = 0; x < (Mask{1} << n); ++x) {
    const double w = per_mask[static_cast<unsigned>(std::popcount(x))];
    if (w > 0.0) atoms.push_back({x, w});
  }
  return JointBernoulli(n, std::move(atoms));
}

MinRatio min_ratio(unsigned n, MomentMode mode, Reduction reduction) {
  if (n < 3) throw std::invalid_argument("min_ratio requires n >= 3");
  MinRatio out;
  const Rational p_exact(1, static_cast<int>(n) - 1);
  out.p = 1.0 / (n - 1);
  out.mtilde = prob_hit_independent(MarginalVector::uniform(n, out.p));
  const ExtremalLp lp = reduction == Reduction::full ? build_full_lp(n, out.p, mode)
                                                     : build_exchangeable_lp(n, p_exact, mode);
  out.witness = solve(lp);
  if (out.witness.status != LpStatus::optimal) {
    throw std::runtime_error("extremal LP not optimal (" +
                             std::string(status_name(out.witness.status)) + ") at n = " +
                             std::to_string(n));
  }
  out.ratio = out.witness.objective / out.mtilde;
  return out;
}

std::vector<SweepRow> conjecture_sweep(unsigned n_min, unsigned n_max, MomentMode mode,
                                       ReductionChoice reduction) {
  if (n_min < 3 || n_min > n_max || n_max > kMaxExchangeableVariables) {
    throw std::invalid_argument("sweep requires 3 <= n_min <= n_max <= 10000");
  }
  if (reduction == ReductionChoice::full && n_max > kMaxFullLpVariables) {
    throw std::invalid_argument("full reduction requires n_max <= 16");
  }
  const Reduction r = reduction == ReductionChoice::full ? Reduction::full : Reduction::exchangeable;

  std::vector<SweepRow> rows;
  rows.reserve(n_max - n_min + 1);
  double running = std::numeric_limits<double>::infinity();
  for (unsigned n = n_min; n <= n_max; ++n) {
    const MinRatio mr = min_ratio(n, mode, r);
    SweepRow row;
    row.n = n;
    row.p = mr.p;
    row.mtilde = mr.mtilde;
    row.lp_objective = mr.witness.objective;
    row.lp_ratio = mr.ratio;
    row.construction_ratio = (0.5 + 1.0 / (2.0 * (n - 1))) / mr.mtilde;
    row.gap = row.construction_ratio - row.lp_ratio;
    row.status = mr.witness.status;
    running = std::min(running, row.lp_ratio);
    row.running_min_ratio = running;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace maxdecouple
