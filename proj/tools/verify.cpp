#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <ostream>

#include "maxdecouple/bounds.hpp"
#include "maxdecouple/constructions.hpp"
#include "maxdecouple/continuous.hpp"
#include "maxdecouple/json_io.hpp"
#include "maxdecouple/optimize.hpp"
#include "random_instances.hpp"

namespace maxdecouple {

namespace {

using random::Engine;

// A check returns the offending instance (as JSON) on failure.
using Check = std::function<std::optional<std::string>(Engine&)>;

struct Property {
  std::string name;
  std::size_t instances;
  Check check;
};

std::optional<std::string> fail_if(bool bad, const std::string& instance) {
  if (bad) return instance;
  return std::nullopt;
}

std::vector<unsigned> random_permutation(Engine& rng, unsigned n) {
  std::vector<unsigned> perm(n);
  for (unsigned i = 0; i < n; ++i) perm[i] = i;
  for (unsigned i = n; i > 1; --i) std::swap(perm[i - 1], perm[random::uniform_int(rng, 0, i - 1)]);
  return perm;
}

JointBernoulli mixed_joint(Engine& rng) {
  switch (random::uniform_int(rng, 0, 2)) {
    case 0: return random::negcov_joint(rng);
    case 1: return random::pairwise_independent_joint(rng);
    default: return random::sparse_joint(rng);
  }
}

NonnegJoint with_transform(const NonnegJoint& j, const std::function<double(unsigned, double)>& g) {
  std::vector<ValueAtom> atoms(j.atoms().begin(), j.atoms().end());
  for (auto& a : atoms) {
    for (unsigned i = 0; i < j.n(); ++i) a.values[i] = g(i, a.values[i]);
  }
  return NonnegJoint(j.n(), std::move(atoms));
}

double sweep_p(Engine& rng, unsigned n) {
  constexpr double fixed[] = {0.1, 0.3, 0.5};
  const unsigned pick = random::uniform_int(rng, 0, 3);
  return pick == 3 ? 1.0 / (n - 1) : fixed[pick];
}

std::vector<Property> battery(std::size_t trials) {
  const std::size_t lp_trials = std::min<std::size_t>(trials, 50);
  std::vector<Property> props;

  props.push_back({"dist.prob_hit_range", trials, [](Engine& rng) {
                     const auto j = random::sparse_joint(rng);
                     const double m = prob_hit(j);
                     return fail_if(m < 0.0 || m > 1.0 || m > moments_of_Z(j).EZ + kVerdictSlack,
                                    to_json(j));
                   }});
  props.push_back({"dist.second_moment_identity", trials, [](Engine& rng) {
                     const auto j = random::sparse_joint(rng);
                     const auto p = marginals(j);
                     const auto m = second_moments(j);
                     double rhs = p.sum();
                     for (std::size_t i = 0; i < p.size(); ++i) {
                       for (std::size_t k = i + 1; k < p.size(); ++k) rhs += 2.0 * m(i, k);
                     }
                     return fail_if(std::abs(moments_of_Z(j).EZ2 - rhs) > 1e-10, to_json(j));
                   }});
  props.push_back({"dist.permutation_invariance", trials, [](Engine& rng) {
                     const auto j = mixed_joint(rng);
                     const auto perm = random_permutation(rng, j.n());
                     const auto k = permute_variables(j, perm);
                     return fail_if(is_pairwise_independent(j, 1e-12) !=
                                        is_pairwise_independent(k, 1e-12),
                                    to_json(j));
                   }});
  props.push_back({"dist.sample_determinism", trials, [](Engine& rng) {
                     const auto j = random::sparse_joint(rng);
                     const std::uint64_t seed = rng();
                     return fail_if(sample(j, seed, 64) != sample(j, seed, 64), to_json(j));
                   }});

  props.push_back({"bounds.pinelis_universal", trials, [](Engine& rng) {
                     const auto j = random::sparse_joint(rng);
                     return fail_if(!pinelis_upper_check(j).holds, to_json(j));
                   }});
  props.push_back({"bounds.paley_zygmund_universal", trials, [](Engine& rng) {
                     const auto j = random::sparse_joint(rng);
                     return fail_if(paley_zygmund_lower(j) > prob_hit(j) + kVerdictSlack, to_json(j));
                   }});
  props.push_back({"bounds.eta_universal", trials, [](Engine& rng) {
                     const auto j = random::sparse_joint(rng);
                     return fail_if(!eta_lower_check(j).holds, to_json(j));
                   }});
  props.push_back({"bounds.main_lower_conditional", trials, [](Engine& rng) {
                     const auto j = random::negcov_joint(rng);
                     const auto c = main_lower_check(j, 1e-12);
                     return fail_if(!c.applicable || !c.holds, to_json(j));
                   }});
  props.push_back({"bounds.g_nonnegative", 10 * trials, [](Engine& rng) {
                     const auto p = random::marginals(rng, 20);
                     const auto g = g_function(p);
                     std::string instance = "[";
                     for (std::size_t i = 0; i < p.size(); ++i) {
                       instance += (i ? "," : "") + format_real(p[i]);
                     }
                     return fail_if(g.G < -kVerdictSlack ||
                                        std::abs(g.F - g.F_direct) > kFactorizationTolerance,
                                    instance + "]");
                   }});
  props.push_back({"bounds.eta_specialization", trials, [](Engine& rng) {
                     const auto j = random::pairwise_independent_joint(rng);
                     const double H = eta_matrix(j).H;
                     const double diff = std::abs(eta_lower_check(j).rhs - main_lower_check(j, 1e-12).rhs);
                     return fail_if(H > 1e-12 || diff > 1e-12, to_json(j));
                   }});
  props.push_back({"bounds.ratio_cap", trials, [](Engine& rng) {
                     const auto j = random::sparse_joint(rng);
                     return fail_if(prob_hit_independent(marginals(j)) > j.n() * prob_hit(j) + kVerdictSlack,
                                    to_json(j));
                   }});
  props.push_back({"bounds.report_verdicts", trials, [](Engine& rng) {
                     const auto j = mixed_joint(rng);
                     return fail_if(!full_report(j, 1e-12).verdicts.all_universal(), to_json(j));
                   }});

  props.push_back({"constructions.pairwise_independent", trials, [](Engine& rng) {
                     static constexpr std::uint64_t primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31};
                     std::optional<JointBernoulli> j;
                     double expected_p = -1.0;
                     switch (random::uniform_int(rng, 0, 2)) {
                       case 0: {
                         const unsigned n = random::uniform_int(rng, 3, kMaxDenseVariables);
                         j = conjectured_extremal(n);
                         expected_p = 1.0 / (n - 1);
                         break;
                       }
                       case 1: {
                         const std::uint64_t q = primes[random::uniform_int(rng, 0, 10)];
                         const unsigned n = random::uniform_int(rng, 1, static_cast<unsigned>(q));
                         const std::uint64_t m = random::uniform_int(rng, 0, static_cast<unsigned>(q));
                         j = affine_hash(n, q, m);
                         expected_p = static_cast<double>(m) / static_cast<double>(q);
                         break;
                       }
                       default:
                         j = xor_parity(random::uniform_int(rng, 1, 4));
                         expected_p = 0.5;
                     }
                     bool ok = is_pairwise_independent(*j, 1e-12);
                     const auto p = marginals(*j);
                     for (double v : p.values()) ok = ok && std::abs(v - expected_p) <= 1e-12;
                     return fail_if(!ok, to_json(*j));
                   }});

  props.push_back({"continuous.layer_cake", trials, [](Engine& rng) {
                     const auto j = random::nonneg_joint(rng);
                     return fail_if(std::abs(expected_max(j) - expected_max_layer_cake(j)) > 1e-10,
                                    to_json(j));
                   }});
  props.push_back({"continuous.pinelis_universal", trials, [](Engine& rng) {
                     const auto j = random::nonneg_joint(rng);
                     return fail_if(!decoupling_check_cont(j).upper_holds, to_json(j));
                   }});
  props.push_back({"continuous.lower_conditional", trials, [](Engine& rng) {
                     const auto j = random::uniform_int(rng, 0, 1) ? random::nonneg_joint(rng)
                                                                   : random::pairwise_independent_nonneg(rng);
                     const auto r = decoupling_check_cont(j);
                     return fail_if(r.pairwise_ok && !r.lower_holds, to_json(j));
                   }});
  props.push_back({"continuous.embedding_commutes", trials, [](Engine& rng) {
                     const auto j = mixed_joint(rng);
                     const auto e = embed(j);
                     const auto r = decoupling_check_cont(e);
                     const bool ok = std::abs(r.emax - prob_hit(j)) <= 1e-12 &&
                                     std::abs(r.emax_ind - prob_hit_independent(marginals(j))) <= 1e-12 &&
                                     r.upper_holds == pinelis_upper_check(j).holds &&
                                     r.pairwise_ok == has_negative_covariance(j, kOrthantSlack);
                     return fail_if(!ok, to_json(j));
                   }});
  props.push_back({"continuous.monotone_invariance", trials, [](Engine& rng) {
                     if (random::uniform_int(rng, 0, 1)) {
                       // One strictly increasing map on every coordinate maps
                       // each threshold event onto another threshold event.
                       const auto j = random::nonneg_joint(rng);
                       const auto t = with_transform(j, [](unsigned, double v) { return v * v * v + 2.0 * v; });
                       return fail_if(upper_orthant_negative(j) != upper_orthant_negative(t), to_json(j));
                     }
                     // Coordinatewise maps keep pairwise independence.
                     const auto j = random::pairwise_independent_nonneg(rng);
                     const auto t = with_transform(j, [](unsigned i, double v) {
                       return i % 2 ? std::floor(v) : std::exp(v) - 1.0;
                     });
                     return fail_if(!upper_orthant_negative(j) || !upper_orthant_negative(t), to_json(j));
                   }});

  props.push_back({"optimize.product_feasibility", lp_trials, [](Engine& rng) {
                     const unsigned n = random::uniform_int(rng, 3, 10);
                     const double p = sweep_p(rng, n);
                     const auto lp = build_full_lp(n, p, MomentMode::pairwise_equality);
                     const auto prod = product(MarginalVector::uniform(n, p));
                     LpSolution candidate;
                     candidate.atoms.assign(prod.atoms().begin(), prod.atoms().end());
                     return fail_if(max_violation(lp, candidate) > 1e-12, to_json(prod));
                   }});
  props.push_back({"optimize.bound_consistency", lp_trials, [](Engine& rng) {
                     const unsigned n = random::uniform_int(rng, 3, 60);
                     const double p = sweep_p(rng, n);
                     const auto eq = solve(build_exchangeable_lp(n, p, MomentMode::pairwise_equality));
                     const auto neg = solve(build_exchangeable_lp(n, p, MomentMode::negative_covariance));
                     const double mean = n * p;
                     const double pz = mean * mean / (mean + mean * mean);
                     const double half = 0.5 * prob_hit_independent(MarginalVector::uniform(n, p));
                     const bool ok = eq.status == LpStatus::optimal && neg.status == LpStatus::optimal &&
                                     eq.objective >= pz - 1e-9 && eq.objective >= half - 1e-9 &&
                                     neg.objective >= half - 1e-9 &&
                                     *neg.exact_objective <= *eq.exact_objective;
                     return fail_if(!ok, "{\"n\":" + std::to_string(n) + ",\"p\":" + format_real(p) + "}");
                   }});
  props.push_back({"optimize.reduction_soundness", lp_trials, [](Engine& rng) {
                     const unsigned n = random::uniform_int(rng, 3, 5);
                     const double p = random::uniform_int(rng, 0, 1) ? 1.0 / (n - 1) : 0.3;
                     const auto mode = random::uniform_int(rng, 0, 1) ? MomentMode::pairwise_equality
                                                                      : MomentMode::negative_covariance;
                     const auto full = solve(build_full_lp(n, p, mode));
                     const auto exch = solve(build_exchangeable_lp(n, p, mode));
                     return fail_if(std::abs(full.objective - exch.objective) > 1e-8,
                                    "{\"n\":" + std::to_string(n) + ",\"p\":" + format_real(p) +
                                        ",\"mode\":\"" + std::string(mode_name(mode)) + "\"}");
                   }});
  props.push_back({"optimize.witness_roundtrip", lp_trials, [](Engine& rng) {
                     const unsigned n = random::uniform_int(rng, 3, 12);
                     const double p = sweep_p(rng, n);
                     const auto sol = solve(build_exchangeable_lp(n, p, MomentMode::pairwise_equality));
                     const auto joint = expand_exchangeable(n, sol.weights);
                     const bool ok = std::abs(prob_hit(joint) - sol.objective) <= 1e-9 &&
                                     is_pairwise_independent(joint, 1e-12);
                     return fail_if(!ok, to_json(joint));
                   }});
  return props;
}

}  // namespace

std::vector<PropertyTally> run_property_battery(std::uint64_t seed, std::size_t trials,
                                                std::ostream& out) {
  std::vector<PropertyTally> tallies;
  const auto props = battery(trials);
  for (std::size_t index = 0; index < props.size(); ++index) {
    const Property& prop = props[index];
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index)};
    Engine rng(seq);
    PropertyTally tally{prop.name, 0, prop.instances};
    std::vector<std::string> failures;
    for (std::size_t t = 0; t < prop.instances; ++t) {
      if (auto bad = prop.check(rng)) {
        failures.push_back("  FAIL " + prop.name + " #" + std::to_string(t) + ": " + *bad);
      } else {
        ++tally.passed;
      }
    }
    out << prop.name << ": " << tally.passed << '/' << tally.total << '\n';
    for (const auto& f : failures) out << f << '\n';
    tallies.push_back(std::move(tally));
  }
  return tallies;
}

}  // namespace maxdecouple
