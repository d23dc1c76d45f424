#include <gtest/gtest.h>

#include "maxdecouple/simplex.hpp"

using namespace maxdecouple;

namespace {

// min -x - y  s.t.  x + 2y <= 4,  3x + y <= 6.  Optimum at (8/5, 6/5).
template <class T>
LinearProgram<T> textbook() {
  LinearProgram<T> lp;
  lp.num_vars = 2;
  lp.cost = {T(-1), T(-1)};
  lp.add_row({T(1), T(2)}, Relation::less_equal, T(4));
  lp.add_row({T(3), T(1)}, Relation::less_equal, T(6));
  return lp;
}

}  // namespace

TEST(Simplex, TextbookDouble) {
  const auto r = simplex_minimize(textbook<double>());
  ASSERT_EQ(r.status, LpStatus::optimal);
  EXPECT_NEAR(r.x[0], 1.6, 1e-12);
  EXPECT_NEAR(r.x[1], 1.2, 1e-12);
  EXPECT_NEAR(r.objective, -2.8, 1e-12);
}

TEST(Simplex, TextbookExact) {
  const auto r = simplex_minimize(textbook<Rational>());
  ASSERT_EQ(r.status, LpStatus::optimal);
  EXPECT_EQ(r.x[0], Rational(8, 5));
  EXPECT_EQ(r.x[1], Rational(6, 5));
  EXPECT_EQ(r.objective, Rational(-14, 5));
}

TEST(Simplex, EqualityRowsNeedPhaseOne) {
  // min x0 + 2 x1 + 3 x2  s.t.  x0 + x1 + x2 = 1,  x1 + 2 x2 = 1.
  LinearProgram<Rational> lp;
  lp.num_vars = 3;
  lp.cost = {1, 2, 3};
  lp.add_row({1, 1, 1}, Relation::equal, 1);
  lp.add_row({0, 1, 2}, Relation::equal, 1);
  const auto r = simplex_minimize(lp);
  ASSERT_EQ(r.status, LpStatus::optimal);
  // x = (1/2, 0, 1/2) costs 2, as does (0, 1, 0); 2 is optimal.
  EXPECT_EQ(r.objective, Rational(2));
}

TEST(Simplex, DetectsInfeasible) {
  LinearProgram<double> lp;
  lp.num_vars = 2;
  lp.cost = {1.0, 1.0};
  lp.add_row({1.0, 1.0}, Relation::equal, 1.0);
  lp.add_row({1.0, 1.0}, Relation::less_equal, 0.5);
  EXPECT_EQ(simplex_minimize(lp).status, LpStatus::infeasible);

  LinearProgram<Rational> exact;
  exact.num_vars = 1;
  exact.cost = {1};
  exact.add_row({1}, Relation::equal, -1);
  EXPECT_EQ(simplex_minimize(exact).status, LpStatus::infeasible);
}

TEST(Simplex, DetectsUnbounded) {
  LinearProgram<Rational> lp;
  lp.num_vars = 2;
  lp.cost = {-1, 0};
  lp.add_row({1, -1}, Relation::less_equal, 1);
  EXPECT_EQ(simplex_minimize(lp).status, LpStatus::unbounded);
}

TEST(Simplex, RedundantEqualitiesAreDropped) {
  LinearProgram<Rational> lp;
  lp.num_vars = 2;
  lp.cost = {1, 0};
  lp.add_row({1, 1}, Relation::equal, 1);
  lp.add_row({2, 2}, Relation::equal, 2);
  const auto r = simplex_minimize(lp);
  ASSERT_EQ(r.status, LpStatus::optimal);
  EXPECT_EQ(r.objective, Rational(0));
  EXPECT_EQ(r.x[1], Rational(1));
}

TEST(Simplex, NegativeRhsInequalityIsFlipped) {
  // -x <= -2  means x >= 2.
  LinearProgram<double> lp;
  lp.num_vars = 1;
  lp.cost = {1.0};
  lp.add_row({-1.0}, Relation::less_equal, -2.0);
  const auto r = simplex_minimize(lp);
  ASSERT_EQ(r.status, LpStatus::optimal);
  EXPECT_NEAR(r.objective, 2.0, 1e-12);
}

TEST(Simplex, DegenerateVertexTerminates) {
  // Several constraints tight at the origin.
  LinearProgram<Rational> lp;
  lp.num_vars = 3;
  lp.cost = {-2, -3, 1};
  lp.add_row({1, 1, 0}, Relation::less_equal, 0);
  lp.add_row({1, -1, 1}, Relation::less_equal, 0);
  lp.add_row({0, 1, -1}, Relation::less_equal, 0);
  lp.add_row({1, 1, 1}, Relation::less_equal, 1);
  const auto r = simplex_minimize(lp);
  ASSERT_EQ(r.status, LpStatus::optimal);
  EXPECT_EQ(r.objective, Rational(0));
}

TEST(Simplex, RejectsMismatchedWidths) {
  LinearProgram<double> lp;
  lp.num_vars = 2;
  EXPECT_THROW(lp.add_row({1.0}, Relation::equal, 1.0), std::invalid_argument);
  lp.cost = {1.0};
  EXPECT_THROW(simplex_minimize(lp), std::invalid_argument);
}
