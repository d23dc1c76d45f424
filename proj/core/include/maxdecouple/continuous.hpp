#pragma once

// Nonnegative real vectors with finite discrete support. Every tail integral
// E X = int_0^inf P(X > t) dt collapses to a finite sum over the distinct
// support values, so all results are exact up to floating-point rounding.
//
// Threshold conditions of the form P(X_i > t, X_j > t) <= P(X_i > t) P(X_j > t)
// are required for all t > 0. The survival functions are right-continuous
// step functions, so it suffices to test t at 0 and at every support value.

#include <cstdint>
#include <span>
#include <vector>

#include "maxdecouple/joint.hpp"

namespace maxdecouple {

struct ValueAtom {
  std::vector<double> values;
  double p = 0.0;
};

class NonnegJoint {
 public:
  /// Validates: n >= 1, every atom has n finite values >= 0, probabilities
  /// >= 0 summing to 1 within kNormalizationTolerance.
  NonnegJoint(unsigned n, std::vector<ValueAtom> atoms);

  unsigned n() const noexcept { return n_; }
  std::span<const ValueAtom> atoms() const noexcept { return atoms_; }

  /// 0 followed by every distinct support value, ascending.
  std::vector<double> thresholds() const;

 private:
  unsigned n_;
  std::vector<ValueAtom> atoms_;
};

/// Layer-cake constants: upper bound slack and orthant-test slack.
inline constexpr double kContinuousSlack = 1e-10;
inline constexpr double kOrthantSlack = 1e-12;

/// sum over atoms of p * max_i values_i.
double expected_max(const NonnegJoint& j);

/// sum_k (t_{k+1} - t_k) P(max_i X_i > t_k) over thresholds().
double expected_max_layer_cake(const NonnegJoint& j);

/// E max of independent copies with the same marginals.
double expected_max_independent(const NonnegJoint& j);

/// P(X_i > t, X_j > t) <= P(X_i > t) P(X_j > t) + kOrthantSlack for all
/// i != j and all thresholds t.
bool upper_orthant_negative(const NonnegJoint& j);

struct ContinuousReport {
  double emax = 0.0;
  double emax_layer_cake = 0.0;
  double emax_ind = 0.0;
  double upper_rhs = 0.0;  ///< c * emax_ind
  double lower_rhs = 0.0;  ///< emax_ind / 2
  bool layer_cake_agrees = false;
  bool upper_holds = false;
  bool pairwise_ok = false;
  bool lower_holds = false;

  /// Universal verdicts plus the lower bound whenever pairwise_ok.
  bool all_universal() const noexcept {
    return layer_cake_agrees && upper_holds && (!pairwise_ok || lower_holds);
  }
};

ContinuousReport decoupling_check_cont(const NonnegJoint& j);

/// (a, b) uniform on Z_q^2; X_i = tables[i][(a + b*i) mod q]. Coordinates
/// are pairwise independent and X_i is uniform over tables[i].
NonnegJoint affine_hash_values(unsigned n, std::uint64_t q,
                               const std::vector<std::vector<double>>& tables);

/// Coordinates become the 0/1 bits of each mask.
NonnegJoint embed(const JointBernoulli& j);

}  // namespace maxdecouple
