#include "maxdecouple/joint.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <sstream>

namespace maxdecouple {

namespace {

bool mask_fits(Mask mask, unsigned n) {
  return n >= kMaxVariables || (mask >> n) == 0;
}

std::string describe_mass(double total) {
  std::ostringstream os;
  os << "probabilities sum to " << total << ", deviation " << std::abs(total - 1.0)
     << " exceeds tolerance " << kNormalizationTolerance;
  return os.str();
}

}  // namespace

MarginalVector::MarginalVector(std::vector<double> p) : p_(std::move(p)) {
  for (std::size_t i = 0; i < p_.size(); ++i) {
    if (!(p_[i] >= 0.0 && p_[i] <= 1.0)) {
      std::ostringstream os;
      os << "marginal p[" << i << "] = " << p_[i] << " is outside [0, 1]";
      throw InvalidDistribution(os.str());
    }
    sum_ += p_[i];
  }
}

MarginalVector MarginalVector::uniform(std::size_t n, double p) {
  return MarginalVector(std::vector<double>(n, p));
}

JointBernoulli::JointBernoulli(unsigned n, std::vector<Atom> atoms)
    : n_(n), atoms_(std::move(atoms)) {
  if (n_ == 0 || n_ > kMaxVariables) {
    throw InvalidDistribution("n must be in [1, 64], got " + std::to_string(n_));
  }
  if (atoms_.empty()) throw InvalidDistribution("atom table is empty");
  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& a, const Atom& b) { return a.mask < b.mask; });
  double total = 0.0;
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    const Atom& a = atoms_[k];
    if (!mask_fits(a.mask, n_)) {
      throw InvalidDistribution("mask " + std::to_string(a.mask) + " does not fit in n = " +
                                std::to_string(n_) + " bits");
    }
    if (k > 0 && atoms_[k - 1].mask == a.mask) {
      throw InvalidDistribution("duplicate mask " + std::to_string(a.mask));
    }
    if (!(a.p >= 0.0) || !std::isfinite(a.p)) {
      std::ostringstream os;
      os << "mask " << a.mask << " has invalid probability " << a.p;
      throw InvalidDistribution(os.str());
    }
    total += a.p;
  }
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    throw InvalidDistribution(describe_mass(total));
  }
}

JointBernoulli JointBernoulli::aggregate(unsigned n, std::vector<Atom> atoms) {
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.mask < b.mask; });
  std::vector<Atom> merged;
  merged.reserve(atoms.size());
  for (const Atom& a : atoms) {
    if (!merged.empty() && merged.back().mask == a.mask) {
      merged.back().p += a.p;
    } else {
      merged.push_back(a);
    }
  }
  return JointBernoulli(n, std::move(merged));
}

double JointBernoulli::probability(Mask mask) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), mask,
                             [](const Atom& a, Mask m) { return a.mask < m; });
  return (it != atoms_.end() && it->mask == mask) ? it->p : 0.0;
}

MarginalVector marginals(const JointBernoulli& j) {
  std::vector<double> p(j.n(), 0.0);
  for (const Atom& a : j.atoms()) {
    for (Mask rest = a.mask; rest != 0; rest &= rest - 1) {
      p[static_cast<std::size_t>(std::countr_zero(rest))] += a.p;
    }
  }
  // Summation error can push a certain event a hair past 1.
  for (double& v : p) v = std::clamp(v, 0.0, 1.0);
  return MarginalVector(std::move(p));
}

SecondMomentMatrix second_moments(const JointBernoulli& j) {
  const std::size_t n = j.n();
  SecondMomentMatrix m(n);
  std::vector<unsigned> on;
  on.reserve(n);
  for (const Atom& a : j.atoms()) {
    on.clear();
    for (Mask rest = a.mask; rest != 0; rest &= rest - 1) {
      on.push_back(static_cast<unsigned>(std::countr_zero(rest)));
    }
    for (unsigned x : on) {
      for (unsigned y : on) m(x, y) += a.p;
    }
  }
  return m;
}

double prob_hit(const JointBernoulli& j) {
  double hit = 0.0;
  for (const Atom& a : j.atoms()) {
    if (a.mask != 0) hit += a.p;
  }
  return std::min(hit, 1.0);
}

double prob_none_independent(const MarginalVector& p) {
  double none = 1.0;
  for (double v : p.values()) none *= 1.0 - v;
  return none;
}

double prob_hit_independent(const MarginalVector& p) {
  // -expm1(sum log1p(-p_i)) keeps full relative accuracy for tiny p_i and
  // large n, where 1 - prod(1 - p_i) would cancel. The sum is compensated
  // (Neumaier) so that n = 10^6 terms do not accumulate rounding error.
  double log_none = 0.0;
  double carry = 0.0;
  for (double v : p.values()) {
    if (v >= 1.0) return 1.0;
    const double term = std::log1p(-v);
    const double t = log_none + term;
    carry += std::abs(log_none) >= std::abs(term) ? (log_none - t) + term : (term - t) + log_none;
    log_none = t;
  }
  return -std::expm1(log_none + carry);
}

ZMoments moments_of_Z(const JointBernoulli& j) {
  ZMoments z;
  for (const Atom& a : j.atoms()) {
    const double k = std::popcount(a.mask);
    z.EZ += k * a.p;
    z.EZ2 += k * k * a.p;
  }
  return z;
}

bool is_pairwise_independent(const JointBernoulli& j, double tol) {
  const auto p = marginals(j);
  const auto m = second_moments(j);
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t k = i + 1; k < p.size(); ++k) {
      if (std::abs(m(i, k) - p[i] * p[k]) > tol) return false;
    }
  }
  return true;
}

bool has_negative_covariance(const JointBernoulli& j, double tol) {
  const auto p = marginals(j);
  const auto m = second_moments(j);
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t k = i + 1; k < p.size(); ++k) {
      if (m(i, k) > p[i] * p[k] + tol) return false;
    }
  }
  return true;
}

EtaMatrix eta_matrix(const JointBernoulli& j) {
  const auto p = marginals(j);
  const auto m = second_moments(j);
  EtaMatrix e;
  e.n = p.size();
  e.eta.assign(e.n * e.n, 0.0);
  for (std::size_t i = 0; i < e.n; ++i) {
    for (std::size_t k = 0; k < e.n; ++k) {
      if (i == k) continue;
      const double v = std::max(0.0, m(i, k) - p[i] * p[k]);
      e.eta[i * e.n + k] = v;
      e.H += v;
    }
  }
  return e;
}

JointBernoulli permute_variables(const JointBernoulli& j, std::span<const unsigned> perm) {
  if (perm.size() != j.n()) {
    throw std::invalid_argument("permutation length does not match n");
  }
  std::vector<bool> seen(j.n(), false);
  for (unsigned target : perm) {
    if (target >= j.n() || seen[target]) {
      throw std::invalid_argument("not a permutation of 0..n-1");
    }
    seen[target] = true;
  }
  std::vector<Atom> atoms;
  atoms.reserve(j.atoms().size());
  for (const Atom& a : j.atoms()) {
    Mask out = 0;
    for (Mask rest = a.mask; rest != 0; rest &= rest - 1) {
      out |= Mask{1} << perm[static_cast<std::size_t>(std::countr_zero(rest))];
    }
    atoms.push_back({out, a.p});
  }
  return JointBernoulli(j.n(), std::move(atoms));
}

std::vector<Mask> sample(const JointBernoulli& j, std::uint64_t seed, std::size_t count) {
  if (count == 0) throw std::invalid_argument("sample count must be at least 1");
  const auto atoms = j.atoms();
  std::vector<double> cdf;
  cdf.reserve(atoms.size());
  double acc = 0.0;
  for (const Atom& a : atoms) {
    acc += a.p;
    cdf.push_back(acc);
  }
  std::mt19937_64 engine(seed);
  std::vector<Mask> draws;
  draws.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    // 53 random bits mapped to [0, acc); independent of the stdlib's
    // distribution implementations.
    const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53 * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    draws.push_back(atoms[static_cast<std::size_t>(it - cdf.begin())].mask);
  }
  return draws;
}

double empirical_hit_rate(std::span<const Mask> draws) {
  if (draws.empty()) return 0.0;
  std::size_t hits = 0;
  for (Mask m : draws) hits += (m != 0);
  return static_cast<double>(hits) / static_cast<double>(draws.size());
}

}  // namespace maxdecouple
