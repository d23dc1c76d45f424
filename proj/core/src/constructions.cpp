#include "maxdecouple/constructions.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace maxdecouple {

std::string_view family_name(Family f) {
  switch (f) {
    case Family::one_hot_uniform: return "one-hot";
    case Family::conjectured_extremal: return "extremal";
    case Family::comonotone: return "comonotone";
    case Family::affine_hash: return "affine-hash";
    case Family::xor_parity: return "xor";
    case Family::product: return "product";
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
  for (Family f : {Family::one_hot_uniform, Family::conjectured_extremal, Family::comonotone,
                   Family::affine_hash, Family::xor_parity, Family::product}) {
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

bool is_prime(std::uint64_t q) {
  if (q < 2) return false;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

JointBernoulli one_hot_uniform(unsigned n) {
  if (n == 0 || n > kMaxVariables) {
    throw std::invalid_argument("one_hot_uniform: n must be in [1, 64]");
  }
  std::vector<Atom> atoms;
  atoms.reserve(n);
  for (unsigned i = 0; i < n; ++i) atoms.push_back({Mask{1} << i, 1.0 / n});
  return JointBernoulli(n, std::move(atoms));
}

JointBernoulli conjectured_extremal(unsigned n) {
  if (n < 2 || n > kMaxVariables) {
    throw std::invalid_argument("conjectured_extremal: n must be in [2, 64]");
  }
  const double p_zero = 0.5 - 1.0 / (2.0 * (n - 1));
  const double pairs = 0.5 * n * (n - 1);
  const double p_pair = (1.0 - p_zero) / pairs;
  std::vector<Atom> atoms;
  atoms.reserve(static_cast<std::size_t>(pairs) + 1);
  if (p_zero > 0.0) atoms.push_back({0, p_zero});
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned k = i + 1; k < n; ++k) {
      atoms.push_back({(Mask{1} << i) | (Mask{1} << k), p_pair});
    }
  }
  return JointBernoulli(n, std::move(atoms));
}

JointBernoulli comonotone(unsigned n, double eps) {
  if (n == 0 || n > kMaxVariables) {
    throw std::invalid_argument("comonotone: n must be in [1, 64]");
  }
  if (!(eps >= 0.0 && eps <= 1.0)) {
    throw std::invalid_argument("comonotone: eps must be in [0, 1]");
  }
  const Mask ones = n == kMaxVariables ? ~Mask{0} : (Mask{1} << n) - 1;
  std::vector<Atom> atoms;
  if (eps < 1.0) atoms.push_back({0, 1.0 - eps});
  if (eps > 0.0) atoms.push_back({ones, eps});
  return JointBernoulli(n, std::move(atoms));
}

JointBernoulli affine_hash(unsigned n, std::uint64_t q, std::uint64_t m) {
  if (!is_prime(q)) throw std::invalid_argument("affine_hash: q must be prime");
  if (n == 0 || n > q || n > kMaxVariables) {
    throw std::invalid_argument("affine_hash: need 1 <= n <= min(q, 64)");
  }
  if (m > q) throw std::invalid_argument("affine_hash: m must be in [0, q]");
  const double w = 1.0 / (static_cast<double>(q) * static_cast<double>(q));
  std::vector<Atom> atoms;
  atoms.reserve(q * q);
  for (std::uint64_t a = 0; a < q; ++a) {
    for (std::uint64_t b = 0; b < q; ++b) {
      Mask mask = 0;
      for (unsigned i = 0; i < n; ++i) {
        if ((a + b * i) % q < m) mask |= Mask{1} << i;
      }
      atoms.push_back({mask, w});
    }
  }
  return JointBernoulli::aggregate(n, std::move(atoms));
}

JointBernoulli xor_parity(unsigned k) {
  if (k == 0 || k > 4) throw std::invalid_argument("xor_parity: k must be in [1, 4]");
  const unsigned n = (1u << k) - 1;
  const double w = 1.0 / (1u << k);
  std::vector<Atom> atoms;
  atoms.reserve(1u << k);
  for (unsigned u = 0; u < (1u << k); ++u) {
    Mask mask = 0;
    for (unsigned subset = 1; subset <= n; ++subset) {
      if (std::popcount(u & subset) & 1u) mask |= Mask{1} << (subset - 1);
    }
    atoms.push_back({mask, w});
  }
  return JointBernoulli::aggregate(n, std::move(atoms));
}

JointBernoulli product(const MarginalVector& p) {
  const std::size_t n = p.size();
  if (n == 0 || n > kMaxDenseVariables) {
    throw std::invalid_argument("product: n must be in [1, 24]");
  }
  std::vector<Atom> atoms(std::size_t{1} << n);
  for (Mask x = 0; x < atoms.size(); ++x) {
    double w = 1.0;
    for (std::size_t i = 0; i < n; ++i) w *= ((x >> i) & 1u) ? p[i] : 1.0 - p[i];
    atoms[x] = {x, w};
  }
  return JointBernoulli(static_cast<unsigned>(n), std::move(atoms));
}

JointBernoulli build(const FamilySpec& spec) {
  switch (spec.kind) {
    case Family::one_hot_uniform: return one_hot_uniform(spec.n);
    case Family::conjectured_extremal: return conjectured_extremal(spec.n);
    case Family::comonotone: return comonotone(spec.n, spec.eps);
    case Family::affine_hash: return affine_hash(spec.n, spec.q, spec.m);
    case Family::xor_parity: return xor_parity(spec.k);
    case Family::product: return product(MarginalVector(spec.p));
  }
  throw std::invalid_argument("unknown family");
}

}  // namespace maxdecouple
