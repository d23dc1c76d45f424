#pragma once

// Extremal search: minimize P(Z > 0) over joints with equal marginals p and
// pairwise moment constraints E[X_i X_j] = p^2 (or <= p^2).
//
// Two formulations are available. The full LP has one variable per outcome
// x in {0,1}^n (n <= 16) and is solved in floating point. The exchangeable LP
// has one variable per Hamming weight (w_0..w_n) and is solved in exact
// rational arithmetic; averaging any feasible joint over coordinate
// permutations keeps it feasible with the same objective, so both optima
// coincide.

#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "maxdecouple/joint.hpp"
#include "maxdecouple/simplex.hpp"

namespace maxdecouple {

enum class MomentMode { pairwise_equality, negative_covariance };
enum class Reduction { full, exchangeable };
/// `automatic` always picks the exact exchangeable LP; `full` is kept for
/// cross-validation at small n.
enum class ReductionChoice { automatic, full, exchangeable };

inline constexpr unsigned kMaxFullLpVariables = 16;
inline constexpr unsigned kMaxExchangeableVariables = 10000;
/// Feasibility tolerance for witnesses of the floating-point LP.
inline constexpr double kLpTolerance = 1e-9;

std::string_view mode_name(MomentMode m);        // "equality" | "negcov"
std::optional<MomentMode> parse_mode(std::string_view s);
std::optional<ReductionChoice> parse_reduction(std::string_view s);  // auto|full|exchangeable

struct ExtremalLp {
  unsigned n = 0;
  double p = 0.0;
  Rational p_exact;
  MomentMode mode = MomentMode::pairwise_equality;
  Reduction reduction = Reduction::exchangeable;
  std::variant<LinearProgram<double>, LinearProgram<Rational>> program;
};

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  double objective = 0.0;
  /// Exact optimum, exchangeable reduction only.
  std::optional<Rational> exact_objective;
  /// Full reduction: atoms with positive probability, ascending mask.
  std::vector<Atom> atoms;
  /// Exchangeable reduction: w_0..w_n.
  std::vector<double> weights;
  std::vector<Rational> exact_weights;
};

ExtremalLp build_full_lp(unsigned n, double p, MomentMode mode);
ExtremalLp build_exchangeable_lp(unsigned n, double p, MomentMode mode);
ExtremalLp build_exchangeable_lp(unsigned n, const Rational& p, MomentMode mode);

LpSolution solve(const ExtremalLp& lp);

/// Largest constraint violation of the witness (equalities in absolute
/// value, inequalities by excess), evaluated in double precision.
double max_violation(const ExtremalLp& lp, const LpSolution& sol);

/// Spreads w_k uniformly over the C(n,k) weight-k masks (n <= 24).
JointBernoulli expand_exchangeable(unsigned n, std::span<const double> weights);

struct MinRatio {
  double p = 0.0;
  double mtilde = 0.0;
  double ratio = 0.0;
  LpSolution witness;
};

/// Minimum of P(Z>0) / P(Z~>0) at p = 1/(n-1).
MinRatio min_ratio(unsigned n, MomentMode mode, Reduction reduction = Reduction::exchangeable);

struct SweepRow {
  unsigned n = 0;
  double p = 0.0;
  double mtilde = 0.0;
  double lp_objective = 0.0;
  double lp_ratio = 0.0;
  double construction_ratio = 0.0;
  double gap = 0.0;  ///< construction_ratio - lp_ratio
  LpStatus status = LpStatus::infeasible;
  double running_min_ratio = 0.0;
};

std::vector<SweepRow> conjecture_sweep(unsigned n_min, unsigned n_max, MomentMode mode,
                                       ReductionChoice reduction = ReductionChoice::automatic);

std::string_view status_name(LpStatus s);

}  // namespace maxdecouple
