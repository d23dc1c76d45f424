#include "maxdecouple/continuous.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "maxdecouple/bounds.hpp"
#include "maxdecouple/constructions.hpp"

namespace maxdecouple {

namespace {

double atom_max(const ValueAtom& a) { return *std::max_element(a.values.begin(), a.values.end()); }

// P(X_i <= t) for one coordinate at each threshold, after merging equal
// support values of that coordinate.
std::vector<double> marginal_cdf(const NonnegJoint& j, unsigned i, std::span<const double> ts) {
  std::vector<std::pair<double, double>> support;
  support.reserve(j.atoms().size());
  for (const auto& a : j.atoms()) support.emplace_back(a.values[i], a.p);
  std::sort(support.begin(), support.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& s : support) {
    if (!merged.empty() && merged.back().first == s.first) {
      merged.back().second += s.second;
    } else {
      merged.push_back(s);
    }
  }
  std::vector<double> cdf(ts.size(), 0.0);
  std::size_t next = 0;
  double acc = 0.0;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    while (next < merged.size() && merged[next].first <= ts[k]) acc += merged[next++].second;
    cdf[k] = std::min(acc, 1.0);
  }
  return cdf;
}

}  // namespace

NonnegJoint::NonnegJoint(unsigned n, std::vector<ValueAtom> atoms) : n_(n), atoms_(std::move(atoms)) {
  if (n_ == 0) throw InvalidDistribution("n must be at least 1");
  if (atoms_.empty()) throw InvalidDistribution("atom table is empty");
  double total = 0.0;
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    const auto& a = atoms_[k];
    if (a.values.size() != n_) {
      throw InvalidDistribution("atom " + std::to_string(k) + " has " +
                                std::to_string(a.values.size()) + " values, expected " +
                                std::to_string(n_));
    }
    for (double v : a.values) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        std::ostringstream os;
        os << "atom " << k << " has invalid value " << v << " (values must be finite and >= 0)";
        throw InvalidDistribution(os.str());
      }
    }
    if (!(a.p >= 0.0) || !std::isfinite(a.p)) {
      std::ostringstream os;
      os << "atom " << k << " has invalid probability " << a.p;
      throw InvalidDistribution(os.str());
    }
    total += a.p;
  }
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    std::ostringstream os;
    os << "probabilities sum to " << total << ", deviation " << std::abs(total - 1.0)
       << " exceeds tolerance " << kNormalizationTolerance;
    throw InvalidDistribution(os.str());
  }
}

std::vector<double> NonnegJoint::thresholds() const {
  std::vector<double> ts{0.0};
  for (const auto& a : atoms_) ts.insert(ts.end(), a.values.begin(), a.values.end());
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return ts;
}

double expected_max(const NonnegJoint& j) {
  double e = 0.0;
  for (const auto& a : j.atoms()) e += a.p * atom_max(a);
  return e;
}

double expected_max_layer_cake(const NonnegJoint& j) {
  const auto ts = j.thresholds();
  std::vector<double> maxima;
  maxima.reserve(j.atoms().size());
  for (const auto& a : j.atoms()) maxima.push_back(atom_max(a));
  double e = 0.0;
  for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
    double tail = 0.0;
    for (std::size_t s = 0; s < maxima.size(); ++s) {
      if (maxima[s] > ts[k]) tail += j.atoms()[s].p;
    }
    e += (ts[k + 1] - ts[k]) * tail;
  }
  return e;
}

double expected_max_independent(const NonnegJoint& j) {
  const auto ts = j.thresholds();
  std::vector<double> none(ts.size(), 1.0);
  for (unsigned i = 0; i < j.n(); ++i) {
    const auto cdf = marginal_cdf(j, i, ts);
    for (std::size_t k = 0; k < ts.size(); ++k) none[k] *= cdf[k];
  }
  double e = 0.0;
  for (std::size_t k = 0; k + 1 < ts.size(); ++k) e += (ts[k + 1] - ts[k]) * (1.0 - none[k]);
  return e;
}

bool upper_orthant_negative(const NonnegJoint& j) {
  const auto ts = j.thresholds();
  const unsigned n = j.n();
  std::vector<double> tail(n);
  std::vector<double> joint(static_cast<std::size_t>(n) * n);
  for (double t : ts) {
    std::fill(tail.begin(), tail.end(), 0.0);
    std::fill(joint.begin(), joint.end(), 0.0);
    for (const auto& a : j.atoms()) {
      for (unsigned i = 0; i < n; ++i) {
        if (!(a.values[i] > t)) continue;
        tail[i] += a.p;
        for (unsigned k = i + 1; k < n; ++k) {
          if (a.values[k] > t) joint[i * n + k] += a.p;
        }
      }
    }
    for (unsigned i = 0; i < n; ++i) {
      for (unsigned k = i + 1; k < n; ++k) {
        if (joint[i * n + k] > tail[i] * tail[k] + kOrthantSlack) return false;
      }
    }
  }
  return true;
}

ContinuousReport decoupling_check_cont(const NonnegJoint& j) {
  ContinuousReport r;
  r.emax = expected_max(j);
  r.emax_layer_cake = expected_max_layer_cake(j);
  r.emax_ind = expected_max_independent(j);
  r.upper_rhs = kPinelisConstant * r.emax_ind;
  r.lower_rhs = 0.5 * r.emax_ind;
  r.layer_cake_agrees = std::abs(r.emax - r.emax_layer_cake) <= kContinuousSlack;
  r.upper_holds = r.emax <= r.upper_rhs + kContinuousSlack;
  r.pairwise_ok = upper_orthant_negative(j);
  r.lower_holds = r.emax >= r.lower_rhs - kContinuousSlack;
  return r;
}

NonnegJoint affine_hash_values(unsigned n, std::uint64_t q,
                               const std::vector<std::vector<double>>& tables) {
  if (!is_prime(q)) throw std::invalid_argument("affine_hash_values: q must be prime");
  if (n == 0 || n > q) throw std::invalid_argument("affine_hash_values: need 1 <= n <= q");
  if (tables.size() != n) throw std::invalid_argument("affine_hash_values: need one table per variable");
  for (const auto& t : tables) {
    if (t.size() != q) throw std::invalid_argument("affine_hash_values: each table needs q entries");
    for (double v : t) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument("affine_hash_values: table entries must be finite and >= 0");
      }
    }
  }
  const double w = 1.0 / (static_cast<double>(q) * static_cast<double>(q));
  std::vector<ValueAtom> atoms;
  atoms.reserve(q * q);
  for (std::uint64_t a = 0; a < q; ++a) {
    for (std::uint64_t b = 0; b < q; ++b) {
      ValueAtom atom;
      atom.p = w;
      atom.values.reserve(n);
      for (unsigned i = 0; i < n; ++i) atom.values.push_back(tables[i][(a + b * i) % q]);
      atoms.push_back(std::move(atom));
    }
  }
  return NonnegJoint(n, std::move(atoms));
}

NonnegJoint embed(const JointBernoulli& j) {
  std::vector<ValueAtom> atoms;
  atoms.reserve(j.atoms().size());
  for (const Atom& a : j.atoms()) {
    ValueAtom v;
    v.p = a.p;
    v.values.resize(j.n());
    for (unsigned i = 0; i < j.n(); ++i) v.values[i] = static_cast<double>((a.mask >> i) & 1u);
    atoms.push_back(std::move(v));
  }
  return NonnegJoint(j.n(), std::move(atoms));
}

}  // namespace maxdecouple
