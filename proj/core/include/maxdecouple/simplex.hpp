#pragma once

// Dense two-phase tableau simplex for small LPs of the form
//
//   minimize  c^T x   subject to  a_r^T x (= | <=) b_r,  x >= 0.
//
// The scalar type is a template parameter: doubles use a pivot tolerance,
// exact rationals (boost::multiprecision::cpp_rational) compare exactly and
// always pivot with Bland's rule, so they cannot cycle.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace maxdecouple {

using Rational = boost::multiprecision::cpp_rational;

enum class Relation { equal, less_equal };
enum class LpStatus { optimal, infeasible, unbounded };

template <class T>
struct LinearProgram {
  struct Row {
    std::vector<T> coef;
    Relation rel = Relation::equal;
    T rhs{};
  };

  std::size_t num_vars = 0;
  std::vector<T> cost;
  std::vector<Row> rows;

  void add_row(std::vector<T> coef, Relation rel, T rhs) {
    if (coef.size() != num_vars) throw std::invalid_argument("row width does not match num_vars");
    rows.push_back({std::move(coef), rel, std::move(rhs)});
  }
};

template <class T>
struct SimplexResult {
  LpStatus status = LpStatus::infeasible;
  T objective{};
  std::vector<T> x;
  std::size_t pivots = 0;
};

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr double eps = 1e-10;
  static bool positive(double v) { return v > eps; }
  static bool negative(double v) { return v < -eps; }
  static bool zero(double v) { return std::abs(v) <= eps; }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static bool positive(const Rational& v) { return v.sign() > 0; }
  static bool negative(const Rational& v) { return v.sign() < 0; }
  static bool zero(const Rational& v) { return v.sign() == 0; }
};

namespace detail {

template <class T>
class Tableau {
  using Tr = ScalarTraits<T>;

 public:
  explicit Tableau(const LinearProgram<T>& lp) : num_vars_(lp.num_vars) {
    const std::size_t m = lp.rows.size();
    std::size_t slacks = 0;
    for (const auto& row : lp.rows) slacks += row.rel == Relation::less_equal;

    // Rows whose slack enters with +1 and a nonnegative rhs start with the
    // slack basic; every other row gets an artificial.
    std::vector<bool> flip(m), needs_artificial(m);
    std::size_t artificials = 0;
    for (std::size_t r = 0; r < m; ++r) {
      flip[r] = Tr::negative(lp.rows[r].rhs);
      needs_artificial[r] = lp.rows[r].rel == Relation::equal || flip[r];
      artificials += needs_artificial[r];
    }
    first_artificial_ = num_vars_ + slacks;
    cols_ = first_artificial_ + artificials;
    rows_.assign(m, std::vector<T>(cols_ + 1, T{0}));
    basis_.assign(m, 0);

    std::size_t next_slack = num_vars_;
    std::size_t next_art = first_artificial_;
    for (std::size_t r = 0; r < m; ++r) {
      const auto& src = lp.rows[r];
      auto& dst = rows_[r];
      const T sign = flip[r] ? T{-1} : T{1};
      for (std::size_t j = 0; j < num_vars_; ++j) dst[j] = sign * src.coef[j];
      dst[cols_] = sign * src.rhs;
      if (src.rel == Relation::less_equal) {
        dst[next_slack] = sign;
        if (!needs_artificial[r]) basis_[r] = next_slack;
        ++next_slack;
      }
      if (needs_artificial[r]) {
        dst[next_art] = T{1};
        basis_[r] = next_art++;
      }
    }
  }

  SimplexResult<T> solve(const std::vector<T>& cost) {
    SimplexResult<T> result;

    std::vector<T> phase1(cols_, T{0});
    for (std::size_t j = first_artificial_; j < cols_; ++j) phase1[j] = T{1};
    barred_from_ = cols_;
    price(phase1);
    if (!iterate(result.pivots)) {
      // Phase one is bounded below by zero.
      throw std::logic_error("simplex: phase one reported unbounded");
    }
    if (Tr::positive(-reduced_[cols_])) {
      result.status = LpStatus::infeasible;
      return result;
    }
    drive_out_artificials(result.pivots);

    std::vector<T> phase2(cols_, T{0});
    for (std::size_t j = 0; j < num_vars_; ++j) phase2[j] = cost[j];
    barred_from_ = first_artificial_;
    price(phase2);
    if (!iterate(result.pivots)) {
      result.status = LpStatus::unbounded;
      return result;
    }

    result.status = LpStatus::optimal;
    result.x.assign(num_vars_, T{0});
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (basis_[r] < num_vars_) result.x[basis_[r]] = rows_[r][cols_];
    }
    if constexpr (!Tr::exact) {
      for (auto& v : result.x) v = v < 0.0 ? 0.0 : v;
    }
    result.objective = T{0};
    for (std::size_t j = 0; j < num_vars_; ++j) result.objective += cost[j] * result.x[j];
    return result;
  }

 private:
  void price(const std::vector<T>& cost) {
    reduced_.assign(cols_ + 1, T{0});
    for (std::size_t j = 0; j < cols_; ++j) reduced_[j] = cost[j];
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const T cb = cost[basis_[r]];
      if (Tr::zero(cb)) continue;
      for (std::size_t j = 0; j <= cols_; ++j) reduced_[j] -= cb * rows_[r][j];
    }
  }

  void pivot(std::size_t r, std::size_t col) {
    auto& prow = rows_[r];
    const T inv = T{1} / prow[col];
    for (auto& v : prow) v *= inv;
    prow[col] = T{1};
    auto eliminate = [&](std::vector<T>& row) {
      if (Tr::zero(row[col])) {
        if constexpr (!Tr::exact) row[col] = 0.0;
        return;
      }
      const T f = row[col];
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (prow[j] != T{0}) row[j] -= f * prow[j];
      }
      row[col] = T{0};
    };
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i != r) eliminate(rows_[i]);
    }
    eliminate(reduced_);
    basis_[r] = col;
    if constexpr (!Tr::exact) {
      for (auto& row : rows_) {
        if (row[cols_] < 0.0 && row[cols_] > -Tr::eps) row[cols_] = 0.0;
      }
    }
  }

  std::size_t choose_entering(bool bland) const {
    std::size_t best = cols_;
    for (std::size_t j = 0; j < barred_from_; ++j) {
      if (!Tr::negative(reduced_[j])) continue;
      if (bland) return j;
      if (best == cols_ || reduced_[j] < reduced_[best]) best = j;
    }
    return best;
  }

  std::size_t choose_leaving(std::size_t col) const {
    if constexpr (Tr::exact) {
      std::size_t best = rows_.size();
      T best_ratio{};
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        const T& a = rows_[r][col];
        if (!Tr::positive(a)) continue;
        const T ratio = rows_[r][cols_] / a;
        if (best == rows_.size() || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[best])) {
          best = r;
          best_ratio = ratio;
        }
      }
      return best;
    } else {
      // Harris two-pass ratio test: bound the step using rhs relaxed by eps,
      // then take the largest pivot element among rows within that bound.
      double bound = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        const double a = rows_[r][col];
        if (a > Tr::eps) bound = std::min(bound, (std::max(rows_[r][cols_], 0.0) + Tr::eps) / a);
      }
      std::size_t best = rows_.size();
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        const double a = rows_[r][col];
        if (a <= Tr::eps || std::max(rows_[r][cols_], 0.0) / a > bound) continue;
        if (best == rows_.size() || a > rows_[best][col]) best = r;
      }
      return best;
    }
  }

  // Returns false when the objective is unbounded below.
  bool iterate(std::size_t& pivots) {
    std::size_t degenerate_streak = 0;
    const std::size_t limit = 50 * (cols_ + rows_.size()) + 1000;
    for (std::size_t step = 0; step < limit; ++step) {
      const bool bland = Tr::exact || degenerate_streak > 50;
      const std::size_t col = choose_entering(bland);
      if (col == cols_) return true;
      const std::size_t r = choose_leaving(col);
      if (r == rows_.size()) return false;
      degenerate_streak = Tr::zero(rows_[r][cols_]) ? degenerate_streak + 1 : 0;
      pivot(r, col);
      ++pivots;
    }
    throw std::runtime_error("simplex: iteration limit reached");
  }

  void drive_out_artificials(std::size_t& pivots) {
    for (std::size_t r = 0; r < rows_.size();) {
      if (basis_[r] < first_artificial_) {
        ++r;
        continue;
      }
      std::size_t col = first_artificial_;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (!Tr::zero(rows_[r][j])) {
          col = j;
          break;
        }
      }
      if (col == first_artificial_) {
        // Redundant constraint.
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
        continue;
      }
      pivot(r, col);
      ++pivots;
      ++r;
    }
  }

  std::size_t num_vars_;
  std::size_t first_artificial_ = 0;
  std::size_t cols_ = 0;
  std::size_t barred_from_ = 0;
  std::vector<std::vector<T>> rows_;
  std::vector<std::size_t> basis_;
  std::vector<T> reduced_;
};

}  // namespace detail

/// Solves `lp`. The returned x is a basic optimal solution when status is
/// optimal; objective is recomputed as c^T x.
template <class T>
SimplexResult<T> simplex_minimize(const LinearProgram<T>& lp) {
  if (lp.cost.size() != lp.num_vars) throw std::invalid_argument("cost width does not match num_vars");
  if (lp.rows.empty()) {
    // Unconstrained apart from x >= 0.
    SimplexResult<T> r;
    for (const auto& c : lp.cost) {
      if (ScalarTraits<T>::negative(c)) {
        r.status = LpStatus::unbounded;
        return r;
      }
    }
    r.status = LpStatus::optimal;
    r.x.assign(lp.num_vars, T{0});
    return r;
  }
  detail::Tableau<T> tableau(lp);
  return tableau.solve(lp.cost);
}

}  // namespace maxdecouple
