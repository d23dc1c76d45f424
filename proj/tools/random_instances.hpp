#pragma once

// Seeded generators of random instances for the property battery and tests.

#include <cstdint>
#include <random>

#include "maxdecouple/continuous.hpp"
#include "maxdecouple/joint.hpp"

namespace maxdecouple::random {

using Engine = std::mt19937_64;

/// Uniform double in [0, 1) from 53 engine bits.
double unit(Engine& rng);
unsigned uniform_int(Engine& rng, unsigned lo, unsigned hi);  // inclusive

/// n in [1, max_n], 1..max_support distinct masks, random weights.
JointBernoulli sparse_joint(Engine& rng, unsigned max_n = 10, unsigned max_support = 32);

/// Joints with E[X_i X_j] <= p_i p_j by construction: weight on masks of
/// popcount <= 1, uniform k-subsets, products, or pairwise-independent
/// families.
JointBernoulli negcov_joint(Engine& rng, unsigned max_n = 10);

/// Joints with E[X_i X_j] = p_i p_j exactly (products and hash families).
JointBernoulli pairwise_independent_joint(Engine& rng, unsigned max_n = 10);

MarginalVector marginals(Engine& rng, unsigned max_n = 20);

/// n in [1, max_n], 1..max_support atoms, values drawn from a small grid so
/// ties across coordinates occur.
NonnegJoint nonneg_joint(Engine& rng, unsigned max_n = 6, unsigned max_support = 8);

/// affine_hash_values with random nondecreasing tables.
NonnegJoint pairwise_independent_nonneg(Engine& rng);

}  // namespace maxdecouple::random
