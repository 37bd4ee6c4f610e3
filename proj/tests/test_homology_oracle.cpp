#include "support/oracles.hpp"

#include <gtest/gtest.h>

using namespace polyloop;

namespace {

SimplicialComplex square() { return SimplicialComplex::from_facets({{1, 2}, {2, 3}, {3, 4}, {1, 4}}, 4); }
SimplicialComplex path(int m) {
  std::vector<std::vector<int>> f;
  for (int i = 1; i < m; ++i) f.push_back({i, i + 1});
  return SimplicialComplex::from_facets(f, m);
}
SimplicialComplex c5() {
  return SimplicialComplex::from_facets({{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5}}, 5);
}

const CheckResult &check(const OracleReport &r, const std::string &name) {
  for (const auto &c : r.checks)
    if (c.name == name) return c;
  throw std::runtime_error("missing check " + name);
}

} // namespace

TEST(SimplicialHomology, Examples) {
  EXPECT_EQ(simplicial_homology_ranks(SimplicialComplex::from_facets({{1}, {2}}, 2)), (std::map<int, long>{{0, 1}}));
  EXPECT_EQ(simplicial_homology_ranks(SimplicialComplex::from_facets({{1, 2}, {2, 3}, {1, 3}}, 3)),
            (std::map<int, long>{{1, 1}}));
  EXPECT_EQ(simplicial_homology_ranks(square()), (std::map<int, long>{{1, 1}}));
  EXPECT_TRUE(simplicial_homology_ranks(simplex_skeleton(4, 3)).empty());
  EXPECT_EQ(simplicial_homology_ranks(simplex_skeleton(4, 2)), (std::map<int, long>{{2, 1}}));
}

TEST(SimplicialHomology, EulerCharacteristic) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    const auto K = polyloop::testing::random_flag_complex(2 + trial % 6, 0.5, rng);
    long chi = 0;
    for (VertexMask f : K.faces()) chi += (popcount(f) % 2 == 1) ? 1 : -1;
    long reduced = 0;
    for (const auto &[d, r] : simplicial_homology_ranks(K)) reduced += (d % 2 == 0 ? r : -r);
    EXPECT_EQ(reduced, chi - 1);
  }
}

TEST(SimplicialHomology, DetectsTorsion) {
  // a six-vertex triangulation of the real projective plane
  const auto rp2 = SimplicialComplex::from_facets(
      {{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 2, 6}, {2, 3, 5}, {3, 4, 6}, {2, 4, 5}, {3, 5, 6}, {2, 4, 6}}, 6);
  EXPECT_EQ(simplicial_torsion_degrees(rp2), std::vector<int>{1});
  EXPECT_TRUE(simplicial_homology_ranks(rp2).empty());
}

TEST(Hochster, Examples) {
  EXPECT_EQ(hochster_table(square()).ranks, (std::map<int, long>{{3, 2}, {6, 1}}));
  EXPECT_EQ(hochster_table(SimplicialComplex::from_facets({{1}, {2}}, 2)).ranks, (std::map<int, long>{{3, 1}}));
  EXPECT_EQ(hochster_table(c5()).ranks, (std::map<int, long>{{3, 5}, {4, 5}, {7, 1}}));
}

TEST(Hochster, SizeBound) {
  try {
    (void)hochster_table(simplex_skeleton(13, 0));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::TooLarge);
  }
}

TEST(PredictedSeries, Examples) {
  EXPECT_EQ(predicted_loop_series(path(3)), GradedSeries::geometric(2));
  EXPECT_EQ(predicted_loop_series(path(4)), GradedSeries::from_ints({1}, {1, 0, -3, -2}));
  try {
    (void)predicted_loop_series(square());
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::NotApplicable);
  }
}

TEST(PredictedSeries, AgreesWithFlagFormulaOnChordalComplexes) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 40; ++trial) {
    const auto K = polyloop::testing::random_chordal_flag(2 + trial % 6, rng);
    ASSERT_TRUE(classify_input(K).chordal_1_skeleton);
    EXPECT_EQ(predicted_loop_series(K), polyloop::testing::flag_loop_series(K));
  }
}

TEST(Verify, PathPasses) {
  const auto r = verify_against_oracle(path(3), PairSpec::moment_angle(3), 20);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(check(r, "oracle_series").status, CheckStatus::Pass);
}

TEST(Verify, SquareUsesAnchor) {
  const auto r = verify_against_oracle(square(), PairSpec::moment_angle(4), 20);
  EXPECT_TRUE(r.passed());
  const auto &c = check(r, "oracle_series");
  EXPECT_EQ(c.status, CheckStatus::Pass);
  EXPECT_EQ(*c.reference_series, square_anchor_series().expand(20));
}

TEST(Verify, CycleHasNoExternalOracle) {
  const auto r = verify_against_oracle(c5(), PairSpec::moment_angle(5), 20);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(check(r, "oracle_series").status, CheckStatus::Skipped);
  EXPECT_EQ(check(r, "trace_identities").status, CheckStatus::Pass);
  EXPECT_EQ(check(r, "greedy_round_trip").status, CheckStatus::Pass);
}

TEST(Verify, ReportsFirstDivergence) {
  EXPECT_EQ(first_divergence(polyloop::testing::ints({1, 0, 1}), polyloop::testing::ints({1, 0, 2})), 2);
  EXPECT_FALSE(first_divergence(polyloop::testing::ints({1}), polyloop::testing::ints({1})));
}
