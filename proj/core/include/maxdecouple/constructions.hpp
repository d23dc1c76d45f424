#pragma once

// Named joint laws: tightness examples, the conjectured extremal family, and
// exact pairwise-independent families.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "maxdecouple/joint.hpp"

namespace maxdecouple {

enum class Family { one_hot_uniform, conjectured_extremal, comonotone, affine_hash, xor_parity, product };

/// CLI spelling: one-hot, extremal, comonotone, affine-hash, xor, product.
std::string_view family_name(Family f);
std::optional<Family> parse_family(std::string_view name);

struct FamilySpec {
  Family kind = Family::one_hot_uniform;
  unsigned n = 0;           ///< variable count (one-hot, extremal, comonotone, affine-hash)
  double eps = 0.0;         ///< comonotone
  std::uint64_t q = 0;      ///< affine-hash prime
  std::uint64_t m = 0;      ///< affine-hash threshold
  unsigned k = 0;           ///< xor-parity seed bits
  std::vector<double> p;    ///< product marginals
};

/// Uniform over the n one-hot masks.
JointBernoulli one_hot_uniform(unsigned n);

/// p_i = 1/(n-1); P(Z=0) = 1/2 - 1/(2(n-1)) and the rest spread uniformly
/// over the C(n,2) two-hot masks. Pairwise independent.
JointBernoulli conjectured_extremal(unsigned n);

/// All ones with probability eps, all zeros otherwise.
JointBernoulli comonotone(unsigned n, double eps);

/// (a, b) uniform on Z_q^2; X_i = 1 iff (a + b*i) mod q < m.
JointBernoulli affine_hash(unsigned n, std::uint64_t q, std::uint64_t m);

/// u uniform on {0,1}^k; one variable per nonempty T subset of [k] (T read
/// as a bitmask, variable index T-1) equal to the parity of u on T.
JointBernoulli xor_parity(unsigned k);

/// Mutually independent coordinates with the given marginals (n <= 24).
JointBernoulli product(const MarginalVector& p);

JointBernoulli build(const FamilySpec& spec);

bool is_prime(std::uint64_t q);

}  // namespace maxdecouple
