#pragma once

// Decoupling inequalities between P(Z > 0) for a dependent Bernoulli vector
// and P(Z~ > 0) for its independent copies.

#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "maxdecouple/joint.hpp"

namespace maxdecouple {

/// Optimal constant of the upper decoupling bound, e/(e-1).
inline constexpr double kPinelisConstant = std::numbers::e / (std::numbers::e - 1.0);
/// Conjectured optimal lower constant, e/(2(e-1)).
inline constexpr double kConjecturedLowerConstant =
    std::numbers::e / (2.0 * (std::numbers::e - 1.0));
/// Absolute slack applied to every inequality verdict.
inline constexpr double kVerdictSlack = 1e-12;
/// Tolerance for the F = S*G factorization identity.
inline constexpr double kFactorizationTolerance = 1e-10;

struct UpperCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

struct MainLowerCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool applicable = false;  ///< negative pairwise covariance within tol
  bool holds = false;
};

struct EtaLowerCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

struct GFunction {
  double S = 0.0;
  double P = 0.0;  ///< prod(1 - p_i)
  double G = 0.0;  ///< S + P + S*P - 1
  double F = 0.0;  ///< S*G
  /// F from its definition, 2S^2 - (S + S^2)(1 - P); equals F up to rounding.
  double F_direct = 0.0;
};

struct Verdicts {
  bool pinelis_upper = false;
  bool paley_zygmund = false;
  bool eta_lower = false;
  bool g_nonnegative = false;
  bool f_factorization = false;
  bool eta_implication = false;
  bool ratio_cap = false;
  bool main_lower_applicable = false;
  /// Lower bound with constant 1/2; only claimed when applicable.
  bool main_lower = false;

  /// Every verdict that must hold for every joint, plus main_lower whenever
  /// it is applicable.
  bool all_universal() const noexcept;

  /// (name, value) pairs in serialization order.
  std::vector<std::pair<std::string, bool>> named() const;
};

struct BoundReport {
  unsigned n = 0;
  double M = 0.0;
  double Mtilde = 0.0;
  double S = 0.0;
  double Pprod = 0.0;
  double G = 0.0;
  double F = 0.0;
  double pz_lower = 0.0;
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  double H = 0.0;
  double pinelis_rhs = 0.0;
  double eta_lower = 0.0;
  Verdicts verdicts;
};

UpperCheck pinelis_upper_check(const JointBernoulli& j);

/// (EZ)^2 / E[Z^2], or 0 when Z = 0 almost surely.
double paley_zygmund_lower(const JointBernoulli& j);

MainLowerCheck main_lower_check(const JointBernoulli& j, double tol);

EtaLowerCheck eta_lower_check(const JointBernoulli& j);

GFunction g_function(const MarginalVector& p);

/// 1/2 (1 - H/(B+H)) Mtilde with B = S + S^2; 0 when B + H = 0.
double eta_lower_bound(double S, double H, double Mtilde);

BoundReport full_report(const JointBernoulli& j, double tol);

}  // namespace maxdecouple
