#include "random_instances.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <vector>

#include "maxdecouple/constructions.hpp"

namespace maxdecouple::random {

namespace {

constexpr std::uint64_t kSmallPrimes[] = {2, 3, 5, 7, 11, 13};

std::vector<double> normalized(Engine& rng, std::size_t count) {
  std::vector<double> w(count);
  for (auto& v : w) {
    // Occasional exact zeros keep degenerate atoms in the mix.
    v = unit(rng) < 0.05 ? 0.0 : unit(rng) + 1e-3;
  }
  if (std::all_of(w.begin(), w.end(), [](double v) { return v == 0.0; })) w[0] = 1.0;
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& v : w) v /= total;
  return w;
}

}  // namespace

double unit(Engine& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

unsigned uniform_int(Engine& rng, unsigned lo, unsigned hi) {
  return lo + static_cast<unsigned>(rng() % (std::uint64_t{hi} - lo + 1));
}

JointBernoulli sparse_joint(Engine& rng, unsigned max_n, unsigned max_support) {
  const unsigned n = uniform_int(rng, 1, max_n);
  const std::uint64_t space = std::uint64_t{1} << n;
  const unsigned support =
      uniform_int(rng, 1, static_cast<unsigned>(std::min<std::uint64_t>(space, max_support)));
  std::set<Mask> masks;
  while (masks.size() < support) masks.insert(rng() & (space - 1));
  const auto w = normalized(rng, support);
  std::vector<Atom> atoms;
  std::size_t k = 0;
  for (Mask m : masks) atoms.push_back({m, w[k++]});
  return JointBernoulli(n, std::move(atoms));
}

JointBernoulli negcov_joint(Engine& rng, unsigned max_n) {
  const unsigned n = uniform_int(rng, 2, max_n);
  switch (uniform_int(rng, 0, 3)) {
    case 0: {
      // At most one success per outcome: E[X_i X_j] = 0.
      const auto w = normalized(rng, n + 1);
      std::vector<Atom> atoms{{0, w[0]}};
      for (unsigned i = 0; i < n; ++i) atoms.push_back({Mask{1} << i, w[i + 1]});
      return JointBernoulli(n, std::move(atoms));
    }
    case 1: {
      // Uniform k-subset: E[X_i X_j] = k(k-1)/(n(n-1)) <= (k/n)^2.
      const unsigned k = uniform_int(rng, 0, n);
      std::vector<Atom> atoms;
      for (Mask x = 0; x < (Mask{1} << n); ++x) {
        if (static_cast<unsigned>(std::popcount(x)) == k) atoms.push_back({x, 1.0});
      }
      for (auto& a : atoms) a.p = 1.0 / static_cast<double>(atoms.size());
      return JointBernoulli(n, std::move(atoms));
    }
    default:
      return pairwise_independent_joint(rng, max_n);
  }
}

JointBernoulli pairwise_independent_joint(Engine& rng, unsigned max_n) {
  switch (uniform_int(rng, 0, 3)) {
    case 0: {
      const unsigned n = uniform_int(rng, 1, std::min(max_n, 10u));
      std::vector<double> p(n);
      for (auto& v : p) v = unit(rng);
      return product(MarginalVector(std::move(p)));
    }
    case 1: {
      const std::uint64_t q = kSmallPrimes[uniform_int(rng, 0, 5)];
      const unsigned n = uniform_int(rng, 1, static_cast<unsigned>(std::min<std::uint64_t>(q, max_n)));
      const auto m = static_cast<std::uint64_t>(uniform_int(rng, 0, static_cast<unsigned>(q)));
      return affine_hash(n, q, m);
    }
    case 2:
      return xor_parity(uniform_int(rng, 1, 3));
    default:
      return conjectured_extremal(uniform_int(rng, 3, std::max(3u, max_n)));
  }
}

MarginalVector marginals(Engine& rng, unsigned max_n) {
  const unsigned n = uniform_int(rng, 1, max_n);
  std::vector<double> p(n);
  for (auto& v : p) v = unit(rng);
  return MarginalVector(std::move(p));
}

NonnegJoint nonneg_joint(Engine& rng, unsigned max_n, unsigned max_support) {
  const unsigned n = uniform_int(rng, 1, max_n);
  const unsigned support = uniform_int(rng, 1, max_support);
  const auto w = normalized(rng, support);
  std::vector<ValueAtom> atoms(support);
  for (unsigned s = 0; s < support; ++s) {
    atoms[s].p = w[s];
    atoms[s].values.resize(n);
    for (auto& v : atoms[s].values) {
      v = unit(rng) < 0.5 ? static_cast<double>(uniform_int(rng, 0, 4)) : 5.0 * unit(rng);
    }
  }
  return NonnegJoint(n, std::move(atoms));
}

NonnegJoint pairwise_independent_nonneg(Engine& rng) {
  const std::uint64_t q = kSmallPrimes[uniform_int(rng, 1, 4)];
  const unsigned n = uniform_int(rng, 1, static_cast<unsigned>(q));
  std::vector<std::vector<double>> tables(n, std::vector<double>(q));
  for (auto& t : tables) {
    for (auto& v : t) v = unit(rng) < 0.3 ? 0.0 : 4.0 * unit(rng);
    if (unit(rng) < 0.5) std::sort(t.begin(), t.end());
  }
  return affine_hash_values(n, q, tables);
}

}  // namespace maxdecouple::random
