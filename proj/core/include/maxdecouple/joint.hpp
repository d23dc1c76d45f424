#pragma once

// Exact joint laws of Bernoulli vectors (X_1, ..., X_n) stored as sparse
// atom tables. Bit i of a mask (LSB = bit 0) is the value of X_{i+1}.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace maxdecouple {

using Mask = std::uint64_t;

/// Largest n a mask can address.
inline constexpr unsigned kMaxVariables = 64;
/// Largest n for operations that enumerate all 2^n outcomes.
inline constexpr unsigned kMaxDenseVariables = 24;
/// Allowed deviation of total probability mass from 1.
inline constexpr double kNormalizationTolerance = 1e-12;

/// Thrown when a distribution or marginal vector violates its invariants.
class InvalidDistribution : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Atom {
  Mask mask = 0;
  double p = 0.0;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Marginal success probabilities p_1..p_n and their left-to-right sum S.
class MarginalVector {
 public:
  MarginalVector() = default;
  explicit MarginalVector(std::vector<double> p);

  /// n copies of the same probability.
  static MarginalVector uniform(std::size_t n, double p);

  std::size_t size() const noexcept { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  std::span<const double> values() const& noexcept { return p_; }
  // A temporary hands over its storage so range-for over marginals(j).values()
  // does not dangle.
  std::vector<double> values() && noexcept { return std::move(p_); }
  double sum() const noexcept { return sum_; }

 private:
  std::vector<double> p_;
  double sum_ = 0.0;
};

/// Row-major n x n matrix of E[X_i X_j]; the diagonal holds p_i.
class SecondMomentMatrix {
 public:
  explicit SecondMomentMatrix(std::size_t n) : n_(n), m_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return m_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return m_[i * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<double> m_;
};

/// Positive parts of pairwise covariances, zero on the diagonal, plus their
/// full double sum H (each unordered pair counted twice).
struct EtaMatrix {
  std::size_t n = 0;
  std::vector<double> eta;  // row-major
  double H = 0.0;

  double operator()(std::size_t i, std::size_t j) const { return eta[i * n + j]; }
};

struct ZMoments {
  double EZ = 0.0;
  double EZ2 = 0.0;
};

/// Immutable pmf on {0,1}^n. Atoms are kept sorted by ascending mask and
/// every summation runs in that order.
class JointBernoulli {
 public:
  /// Validates the table: 1 <= n <= 64, masks < 2^n, no duplicate masks,
  /// probabilities >= 0 and summing to 1 within kNormalizationTolerance.
  JointBernoulli(unsigned n, std::vector<Atom> atoms);

  /// Like the constructor, but probabilities of repeated masks are added.
  static JointBernoulli aggregate(unsigned n, std::vector<Atom> atoms);

  unsigned n() const noexcept { return n_; }
  std::span<const Atom> atoms() const noexcept { return atoms_; }

  /// Probability of a mask (0 if absent).
  double probability(Mask mask) const;

  friend bool operator==(const JointBernoulli&, const JointBernoulli&) = default;

 private:
  unsigned n_;
  std::vector<Atom> atoms_;
};

MarginalVector marginals(const JointBernoulli& j);
SecondMomentMatrix second_moments(const JointBernoulli& j);

/// P(Z > 0) = E max_i X_i.
double prob_hit(const JointBernoulli& j);

/// P(Z~ > 0) = 1 - prod(1 - p_i) for mutually independent copies.
double prob_hit_independent(const MarginalVector& p);

/// prod_i (1 - p_i), multiplied left to right.
double prob_none_independent(const MarginalVector& p);

ZMoments moments_of_Z(const JointBernoulli& j);

bool is_pairwise_independent(const JointBernoulli& j, double tol);

/// True iff E[X_i X_j] <= p_i p_j + tol for all i != j.
bool has_negative_covariance(const JointBernoulli& j, double tol);

EtaMatrix eta_matrix(const JointBernoulli& j);

/// Relabels variables: new variable perm[i] takes the value of old variable i.
JointBernoulli permute_variables(const JointBernoulli& j, std::span<const unsigned> perm);

/// Inverse-CDF sampling over the atom table in ascending mask order, driven
/// by std::mt19937_64 seeded with `seed`. Throws std::invalid_argument when
/// count == 0.
std::vector<Mask> sample(const JointBernoulli& j, std::uint64_t seed, std::size_t count);

/// Fraction of draws with a nonzero mask.
double empirical_hit_rate(std::span<const Mask> draws);

}  // namespace maxdecouple
