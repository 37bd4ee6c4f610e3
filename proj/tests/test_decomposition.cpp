#include "support/oracles.hpp"

#include <gtest/gtest.h>

using namespace polyloop;
using polyloop::testing::ints;

namespace {

SimplicialComplex square() { return SimplicialComplex::from_facets({{1, 2}, {2, 3}, {3, 4}, {1, 4}}, 4); }
SimplicialComplex path3() { return SimplicialComplex::from_facets({{1, 2}, {2, 3}}, 3); }
SimplicialComplex cycle(int m) {
  std::vector<std::vector<int>> f;
  for (int i = 1; i <= m; ++i) f.push_back({i, i % m + 1});
  return SimplicialComplex::from_facets(f, m);
}

GradedSeries t(std::size_t k) { return GradedSeries::monomial(k); }

} // namespace

TEST(SkeletonWedge, Examples) {
  EXPECT_EQ(skeleton_simplex_wedge(2, 0, PairSpec::moment_angle(2)).cells, t(3));
  EXPECT_EQ(skeleton_simplex_wedge(3, 0, PairSpec::moment_angle(3)).cells, Integer(3) * t(3) + Integer(2) * t(4));
  for (int m = 1; m <= 5; ++m) EXPECT_TRUE(skeleton_simplex_wedge(m, m - 1, PairSpec::moment_angle(m)).is_trivial());
}

TEST(Engine, SquareAnchor) {
  const Decomposition d = decompose_loop(square(), PairSpec::moment_angle(4), 20);
  EXPECT_EQ(d.product.listed().size(), 1u);
  EXPECT_EQ(d.product.listed().at(PFactor::loop_sphere(3)), 2);
  EXPECT_EQ(d.product.series(), GradedSeries::from_ints({1}, {1, 0, -2, 0, 1}));
  EXPECT_TRUE(verify_trace(*d.trace, 20).empty());
}

TEST(Engine, SingleVertexAndPath) {
  const auto pt = decompose_loop(SimplicialComplex::from_facets({{1}}, 1), PairSpec::moment_angle(1), 20);
  EXPECT_TRUE(pt.product.is_trivial());
  EXPECT_EQ(pt.trace->rule, rules::kSingleVertex);
  const auto p3 = decompose_loop(path3(), PairSpec::moment_angle(3), 20);
  EXPECT_EQ(p3.product.series(), GradedSeries::geometric(2));
}

TEST(Engine, RejectsInadmissibleComplexes) {
  const auto K = SimplicialComplex::from_facets({{1, 2, 3}, {2, 4}, {3, 4}}, 4);
  try {
    (void)decompose_loop(K, PairSpec::moment_angle(4), 10);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::NotFlagSkeleton);
  }
  EXPECT_THROW((void)decompose_loop(square(), PairSpec::moment_angle(3), 10), Error);
  EXPECT_THROW((void)decompose_loop(path3(), PairSpec::moment_angle(3), 10, 2), Error);
}

TEST(Engine, ForcedSplitOfDiscretePointsMatchesBaseCase) {
  const auto K = SimplicialComplex::from_facets({{1}, {2}, {3}}, 3);
  const auto base = decompose_loop(K, PairSpec::moment_angle(3), 16);
  EXPECT_EQ(base.trace->rule, rules::kSkeletonOfSimplex);
  EXPECT_EQ(base.product.series(), GradedSeries::from_ints({1}, {1, 0, -3, -2}));
  for (int v = 1; v <= 3; ++v) {
    const auto forced = decompose_loop(K, PairSpec::moment_angle(3), 16, v);
    EXPECT_EQ(forced.trace->rule, rules::kPushoutEmpty);
    EXPECT_EQ(forced.product, base.product);
    EXPECT_TRUE(verify_trace(*forced.trace, 16).empty());
  }
}

TEST(Engine, MatchesFlagLoopSeriesOracle) {
  // C5 has no wedge-of-spheres shortcut; the flag-complex formula still applies
  const auto c5 = decompose_loop(cycle(5), PairSpec::moment_angle(5), 20);
  EXPECT_EQ(c5.product.series(), polyloop::testing::flag_loop_series(cycle(5)));
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const auto K = polyloop::testing::random_flag_complex(2 + trial % 6, 0.45, rng);
    const auto d = decompose_loop(K, PairSpec::moment_angle(K.vertex_count()), 16);
    EXPECT_EQ(d.product.series(), polyloop::testing::flag_loop_series(K)) << trial;
  }
}

TEST(Engine, TraceIdentitiesHoldOnSkeleta) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const auto L = polyloop::testing::random_flag_complex(3 + trial % 4, 0.6, rng);
    for (int k = 0; k <= L.dimension(); ++k) {
      const auto K = skeleton(L, k);
      const auto d = decompose_loop(K, PairSpec::moment_angle(K.vertex_count()), 14);
      EXPECT_TRUE(verify_trace(*d.trace, 14).empty());
      EXPECT_NO_THROW(d.product.check_invariants());
    }
  }
}

TEST(Engine, VertexChoiceDoesNotChangeAnswer) {
  const auto K = cycle(5);
  const auto base = decompose_loop(K, PairSpec::moment_angle(5), 14);
  for (int v = 1; v <= 5; ++v) EXPECT_EQ(decompose_loop(K, PairSpec::moment_angle(5), 14, v).product, base.product);
}

TEST(Engine, OtherDiskDimensions) {
  // (D^3, S^2)^{two points} is S^5, loop series 1/(1 - t^4)
  const auto K = SimplicialComplex::from_facets({{1}, {2}}, 2);
  const auto d = decompose_loop(K, PairSpec::disks(3, 2), 12);
  EXPECT_EQ(d.product.series(), GradedSeries::geometric(4));
  const auto sq = decompose_loop(square(), PairSpec::disks(3, 4), 12);
  EXPECT_EQ(sq.product.series(), GradedSeries::geometric(4) * GradedSeries::geometric(4));
  EXPECT_THROW((void)PairSpec::disks(1, 2), Error);
}

TEST(Engine, MixedSuspensionDimensions) {
  // A_1 = S^1, A_2 = S^2 ∨ S^3 over two points: Z = S^1 * A_2 = S^4 ∨ S^5
  const auto K = SimplicialComplex::from_facets({{1}, {2}}, 2);
  const auto d = decompose_loop(K, PairSpec::from_suspension_dims({{2}, {3, 4}}), 12);
  EXPECT_EQ(d.product, hilton_milnor({t(4) + t(5)}, 12));
}

TEST(Engine, MemoizesSubproblems) {
  DecompositionEngine engine(12);
  (void)engine.decompose(cycle(5), PairSpec::moment_angle(5));
  const auto after_first = engine.memo_size();
  EXPECT_GT(after_first, 1u);
  (void)engine.decompose(cycle(5), PairSpec::moment_angle(5));
  EXPECT_EQ(engine.memo_size(), after_first);
}

TEST(GeneralPairs, CpInfinityPoint) {
  const int m = 4;
  const auto g = cp_point_pairs(std::nullopt, m, 12);
  const PProduct p = decompose_general_pair(square(), g.loops_of_x, g.fibers, 12);
  // (S^1)^4 × ΩZ_K
  GradedSeries expected = decompose_loop(square(), PairSpec::moment_angle(m), 12).product.series();
  for (int i = 0; i < m; ++i) expected = expected * GradedSeries::from_ints({1, 1});
  EXPECT_EQ(p.series(), expected);
  EXPECT_EQ(p.listed().at(PFactor::sphere(1)), 4);
}

TEST(GeneralPairs, FiniteProjectiveSpaces) {
  const auto g = cp_pairs(3, 1, 2, 14);
  // Y = S^3 × ΩS^7, reduced series (1 + t^3)/(1 - t^6) - 1
  const GradedSeries y = (GradedSeries::one() + t(3)) * GradedSeries::geometric(6) - GradedSeries::one();
  EXPECT_EQ(g.fibers.at(1).reduced, y);
  EXPECT_EQ(g.loops_of_x[0].listed().at(PFactor::loop_sphere(7)), 1);
  EXPECT_THROW((void)cp_pairs(2, 2, 2, 10), Error);
  const auto triv = decompose_general_pair(square(), std::vector<PProduct>(4, PProduct::trivial(10)),
                                           PairSpec::moment_angle(4), 10);
  EXPECT_EQ(triv, decompose_loop(square(), PairSpec::moment_angle(4), 10).product);
}

TEST(TraceCheck, DetectsTamperedNode) {
  const auto d = decompose_loop(square(), PairSpec::moment_angle(4), 12);
  auto tampered = std::make_shared<TraceNode>(*d.trace);
  tampered->output = GradedSeries::geometric(2);
  const auto issues = verify_trace(*tampered, 12);
  ASSERT_FALSE(issues.empty());
  EXPECT_EQ(issues.front().path, "root");
}
