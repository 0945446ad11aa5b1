#include "nearlap/lp_oracle.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "nearlap/projection.hpp"
#include "support/random_instances.hpp"

namespace nearlap {
namespace {

LpProblem make_problem(std::size_t nv) {
  LpProblem p;
  p.num_vars = nv;
  p.objective_coeffs.assign(nv, 0.0);
  p.variable_bounds.assign(nv, VariableBounds{});
  return p;
}

TEST(SimplexTest, SingleBoundedVariable) {
  auto p = make_problem(1);
  p.objective_coeffs = {-1};
  p.inequality_rows.push_back({{1}, 1});
  const auto s = simplex_solve(p);
  ASSERT_EQ(s.status, LpStatus::optimal);
  EXPECT_NEAR(s.variable_values[0], 1, 1e-12);
  EXPECT_NEAR(s.objective_value, -1, 1e-12);
}

TEST(SimplexTest, EqualityForcesObjective) {
  auto p = make_problem(2);
  p.objective_coeffs = {1, 1};
  p.equality_rows.push_back({{1, 1}, 2});
  const auto s = simplex_solve(p);
  ASSERT_EQ(s.status, LpStatus::optimal);
  EXPECT_NEAR(s.objective_value, 2, 1e-12);
}

TEST(SimplexTest, BoundsAsUpperLimit) {
  auto p = make_problem(1);
  p.objective_coeffs = {-1};
  p.variable_bounds[0] = {-2, 3};
  const auto s = simplex_solve(p);
  ASSERT_EQ(s.status, LpStatus::optimal);
  EXPECT_NEAR(s.variable_values[0], 3, 1e-12);
}

TEST(SimplexTest, FreeAndUpperBoundedVariables) {
  // minimize x - y  s.t. x + y = 1, x free, y <= 4  ->  y = 4, x = -3, obj -7
  auto p = make_problem(2);
  p.objective_coeffs = {1, -1};
  p.variable_bounds[0] = {-kInf, kInf};
  p.variable_bounds[1] = {-kInf, 4};
  p.equality_rows.push_back({{1, 1}, 1});
  const auto s = simplex_solve(p);
  ASSERT_EQ(s.status, LpStatus::optimal);
  EXPECT_NEAR(s.variable_values[0], -3, 1e-12);
  EXPECT_NEAR(s.variable_values[1], 4, 1e-12);
  EXPECT_NEAR(s.objective_value, -7, 1e-12);
}

TEST(SimplexTest, TextbookTwoVariable) {
  // maximize 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36
  auto p = make_problem(2);
  p.objective_coeffs = {-3, -5};
  p.inequality_rows = {{{1, 0}, 4}, {{0, 2}, 12}, {{3, 2}, 18}};
  const auto s = simplex_solve(p);
  ASSERT_EQ(s.status, LpStatus::optimal);
  EXPECT_NEAR(s.objective_value, -36, 1e-10);
  EXPECT_NEAR(s.variable_values[0], 2, 1e-10);
  EXPECT_NEAR(s.variable_values[1], 6, 1e-10);
}

TEST(SimplexTest, DetectsInfeasible) {
  auto p = make_problem(1);
  p.equality_rows.push_back({{1}, -1});
  EXPECT_EQ(simplex_solve(p).status, LpStatus::infeasible);
}

TEST(SimplexTest, DetectsUnbounded) {
  auto p = make_problem(2);
  p.objective_coeffs = {-1, 0};
  p.inequality_rows.push_back({{1, -1}, 1});
  EXPECT_EQ(simplex_solve(p).status, LpStatus::unbounded);
}

TEST(SimplexTest, IterationLimit) {
  auto p = make_problem(2);
  p.objective_coeffs = {-3, -5};
  p.inequality_rows = {{{1, 0}, 4}, {{0, 2}, 12}, {{3, 2}, 18}};
  EXPECT_EQ(simplex_solve(p, 1).status, LpStatus::iteration_limit);
}

TEST(SimplexTest, RedundantEqualityRows) {
  auto p = make_problem(2);
  p.objective_coeffs = {1, 2};
  p.equality_rows = {{{1, 1}, 3}, {{2, 2}, 6}};
  const auto s = simplex_solve(p);
  ASSERT_EQ(s.status, LpStatus::optimal);
  EXPECT_NEAR(s.objective_value, 3, 1e-12);
}

TEST(SimplexTest, RejectsMalformedProblem) {
  auto p = make_problem(2);
  p.equality_rows.push_back({{1}, 0});
  EXPECT_THROW(simplex_solve(p), ValidationError);
  auto q = make_problem(1);
  q.variable_bounds[0] = {2, 1};
  EXPECT_THROW(simplex_solve(q), ValidationError);
}

TEST(SimplexTest, Deterministic) {
  std::mt19937_64 rng(12);
  const auto E = testing::random_edges(6, 0.5, rng);
  const auto A = testing::random_matrix(6, 1.0, rng);
  const auto p = build_problem1_lp(A, E);
  const auto s1 = simplex_solve(p.lp);
  const auto s2 = simplex_solve(p.lp);
  EXPECT_EQ(s1.variable_values, s2.variable_values);
  EXPECT_EQ(s1.iterations, s2.iterations);
}

TEST(Problem1LpTest, CompleteTwoNodeCounts) {
  const auto p = build_problem1_lp(DenseMatrix{{1, -2}, {3, -4}}, EdgeSet::complete(2));
  EXPECT_EQ(p.entries.size(), 4u);
  EXPECT_EQ(p.lp.num_vars, 8u);
  EXPECT_EQ(p.lp.equality_rows.size(), 2u);
  EXPECT_EQ(p.lp.inequality_rows.size(), 8u);
  EXPECT_EQ(p.lp.objective_constant, 0);
}

TEST(Problem1LpTest, StructureFixedEntryIsConstant) {
  const auto p = build_problem1_lp(DenseMatrix{{1, -2}, {3, -4}}, EdgeSet(2, {{0, 1}}));
  EXPECT_EQ(p.entries.size(), 3u);  // L_00, L_01, L_11
  EXPECT_EQ(p.lp.num_vars, 6u);
  EXPECT_EQ(p.lp.objective_constant, 3);
}

TEST(Problem1LpTest, ObjectiveAtProjectionPoint) {
  const DenseMatrix A{{1, -2}, {3, -4}};
  const auto p = build_problem1_lp(A, EdgeSet::complete(2));
  EXPECT_EQ(problem1_objective_at(p, A, nearest_laplacian(A, EdgeSet::complete(2)).L), 8);
}

TEST(Problem1LpTest, SizeCap) {
  EXPECT_THROW(build_problem1_lp(DenseMatrix(31), EdgeSet::complete(31)), ValidationError);
  EXPECT_THROW(build_problem1_lp(DenseMatrix(3), EdgeSet::complete(2)), DimensionError);
}

TEST(OracleTest, Examples) {
  EXPECT_NEAR(oracle_optimum(DenseMatrix{{2, -2}, {-1, 1}}, EdgeSet::complete(2)), 0, 1e-12);
  EXPECT_NEAR(oracle_optimum(DenseMatrix{{1, -2}, {3, -4}}, EdgeSet::complete(2)), 8, 1e-12);
  EXPECT_NEAR(oracle_optimum(DenseMatrix{{-1, 0}, {0, -1}}, EdgeSet::complete(2)), 2, 1e-12);
  EXPECT_THROW(oracle_optimum(DenseMatrix{{1, -2}, {3, -4}}, EdgeSet::complete(2), 0), NumericalError);
}

// LP optimum equals the projection objective; the LP's own solution is a
// valid Laplacian.
TEST(OracleProperty, MatchesProjectionOnRandomInstances) {
  std::mt19937_64 rng(99);
  const double densities[] = {0.2, 0.5, 1.0};
  const double scales[] = {0.1, 1.0, 10.0};
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 8;
    const auto E = testing::random_edges(n, densities[trial % 3], rng);
    const auto A = testing::random_matrix(n, scales[(trial / 3) % 3], rng);
    const auto p = build_problem1_lp(A, E);
    const auto s = simplex_solve(p.lp);
    ASSERT_EQ(s.status, LpStatus::optimal);
    const auto r = nearest_laplacian(A, E);
    EXPECT_NEAR(s.objective_value, r.objective, 1e-7 * (1 + r.objective)) << "trial " << trial;
    const auto L = reconstruct_laplacian(p, s);
    EXPECT_TRUE(validate_laplacian(L, E, 1e-9, 1e-9).is_valid) << "trial " << trial;
    EXPECT_NEAR(l1_distance(A, L), r.objective, 1e-7 * (1 + r.objective));
  }
}

}  // namespace
}  // namespace nearlap
