#include "support/oracles.hpp"

#include <gtest/gtest.h>

using namespace polyloop;
using polyloop::testing::ints;

namespace {

GradedSeries t(std::size_t k) { return GradedSeries::monomial(k); }
const GradedSeries one = GradedSeries::one();

std::map<PFactor, Integer> listing(std::initializer_list<std::pair<PFactor, long long>> xs) {
  std::map<PFactor, Integer> m;
  for (const auto &[f, c] : xs) m[f] = c;
  return m;
}

} // namespace

TEST(JoinCells, Examples) {
  const CellSeries s1{t(1)};
  EXPECT_EQ(join_cells(s1, s1).cells, t(3));
  EXPECT_TRUE(join_cells(s1, CellSeries::point()).is_trivial());
  const CellSeries loop_s3{GradedSeries::geometric(2) - one};
  EXPECT_EQ(join_cells(s1, loop_s3).cells, t(4) / (one - t(2)));
}

TEST(JoinCells, RejectsLowCells) {
  // a 0-cell joined with a 0-cell would be S^1
  const CellSeries s0{one};
  try {
    (void)join_cells(s0, s0);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSimplyConnectedOutput);
  }
}

TEST(SuspensionSplitting, Examples) {
  EXPECT_EQ(suspension_splitting(PProduct::from_factors(std::vector<FactorCount>{{PFactor::loop_sphere(3), 1}}, 20)).cells,
            t(3) / (one - t(2)));
  EXPECT_EQ(suspension_splitting(PProduct::from_factors(std::vector<FactorCount>{{PFactor::sphere(3), 2}}, 20)).cells,
            GradedSeries::from_ints({0, 0, 0, 0, 2, 0, 0, 1}));
  EXPECT_TRUE(suspension_splitting(PProduct::trivial(20)).is_trivial());
}

TEST(LyndonCounts, Examples) {
  auto l = lyndon_counts(t(1), 8);
  EXPECT_EQ(l, ints({0, 1, 0, 0, 0, 0, 0, 0, 0}));
  l = lyndon_counts(Integer(2) * t(1), 6);
  EXPECT_EQ(l, ints({0, 2, 1, 2, 3, 6, 9}));
  l = lyndon_counts(t(1) + t(2), 4);
  EXPECT_EQ(l, ints({0, 1, 1, 1, 1}));
}

TEST(LyndonCounts, MatchNecklaceFormula) {
  // binary: (1/n) Σ_{d|n} μ(d) 2^{n/d}
  auto mobius = [](int n) {
    int mu = 1;
    for (int p = 2; p * p <= n; ++p)
      if (n % p == 0) {
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
      }
    return n > 1 ? -mu : mu;
  };
  const auto l = lyndon_counts(Integer(2) * t(1), 16);
  for (int n = 1; n <= 16; ++n) {
    Integer s = 0;
    for (int d = 1; d <= n; ++d)
      if (n % d == 0) s += mobius(d) * (Integer(1) << (n / d));
    EXPECT_EQ(l[static_cast<std::size_t>(n)], s / n) << n;
  }
}

TEST(LyndonCounts, MatchBruteForceEnumeration) {
  const std::vector<std::vector<int>> alphabets = {{1}, {2}, {1, 1}, {1, 2}, {1, 3}, {2, 3}, {1, 1, 1}, {1, 2, 3}, {2, 2, 3}};
  for (const auto &alpha : alphabets) {
    GradedSeries f;
    for (int d : alpha) f = f + t(static_cast<std::size_t>(d));
    const auto l = lyndon_counts(f, 10);
    const auto ref = polyloop::testing::brute_force_lyndon(alpha, 10);
    for (int n = 1; n <= 10; ++n) EXPECT_EQ(l[static_cast<std::size_t>(n)], ref[static_cast<std::size_t>(n)]);
  }
}

TEST(LyndonCounts, RejectsNonGeneratingSeries) {
  EXPECT_THROW((void)lyndon_counts(one, 4), Error);
  EXPECT_THROW((void)lyndon_counts(t(1) - t(2) - t(2), 4), Error);
}

TEST(HiltonMilnor, SingleSpheres) {
  const PProduct s3 = hilton_milnor({t(3)}, 20);
  EXPECT_EQ(s3.listed(), listing({{PFactor::loop_sphere(3), 1}}));
  EXPECT_EQ(s3.series(), GradedSeries::geometric(2));
  const PProduct s2 = hilton_milnor({t(2)}, 20);
  EXPECT_EQ(s2.listed(), listing({{PFactor::sphere(1), 1}, {PFactor::loop_sphere(3), 1}}));
  EXPECT_EQ(s2.series(), GradedSeries::geometric(1));
}

TEST(HiltonMilnor, TwoTwoSpheresAtLowCutoff) {
  const PProduct p = hilton_milnor({Integer(2) * t(2)}, 3);
  EXPECT_EQ(p.listed(), listing({{PFactor::sphere(1), 2}, {PFactor::loop_sphere(3), 3}, {PFactor::sphere(3), 2}}));
  EXPECT_EQ(p.series(), GradedSeries::from_ints({1}, {1, -2}));
  EXPECT_NO_THROW(p.check_invariants());
}

TEST(HiltonMilnor, ListedFactorsReproduceSeries) {
  const GradedSeries wedges[] = {Integer(2) * t(2), t(3) + t(4), Integer(3) * t(3) + t(5), t(2) + t(3) + t(7)};
  for (const auto &w : wedges) {
    const PProduct p = hilton_milnor({w}, 14);
    EXPECT_EQ(polyloop::testing::product_series_direct(p.listed(), 14), p.series().expand(14));
  }
}

TEST(HiltonMilnor, RejectsLowSpheres) {
  EXPECT_THROW((void)hilton_milnor({t(1)}, 5), Error);
}

TEST(Canonicalization, RewriteIdentityHolds) {
  for (std::size_t n : {2u, 4u, 8u})
    EXPECT_EQ(GradedSeries::geometric(n - 1), (one + t(n - 1)) * GradedSeries::geometric(2 * n - 2));
  PProduct p(30);
  p.add_loop_on_sphere(4, 2);
  EXPECT_EQ(p.listed(), listing({{PFactor::sphere(3), 2}, {PFactor::loop_sphere(7), 2}}));
  EXPECT_THROW((void)PFactor::loop_sphere(4), Error);
  EXPECT_THROW((void)PFactor::sphere(5), Error);
}

TEST(LoopHalfSmash, Examples) {
  const PProduct loop_s3 = hilton_milnor({t(3)}, 20);
  EXPECT_EQ(loop_half_smash(CellSeries::point(), loop_s3, 20), loop_s3);
  EXPECT_TRUE(loop_half_smash({t(1)}, PProduct::trivial(20), 20).is_trivial());
  const PProduct p = loop_half_smash({t(1)}, loop_s3, 20);
  const GradedSeries g = GradedSeries::geometric(2);
  EXPECT_EQ(p.series(), (one / (one - t(3) / (one - t(2)))) * g);
}

TEST(PorterWedge, Examples) {
  const PProduct loop_s3 = hilton_milnor({t(3)}, 20);
  const PProduct single[] = {loop_s3};
  EXPECT_EQ(porter_loop_wedge(single, 20), loop_s3);
  const PProduct with_trivial[] = {loop_s3, PProduct::trivial(20)};
  EXPECT_EQ(porter_loop_wedge(with_trivial, 20), loop_s3);
  const PProduct both[] = {loop_s3, loop_s3};
  const PProduct p = porter_loop_wedge(both, 20);
  EXPECT_EQ(p.series(), GradedSeries::from_ints({1}, {1, 0, -2}));
  EXPECT_EQ(p, hilton_milnor({Integer(2) * t(3)}, 20));
  const auto residual = porter_residual(both).cells.expand(9);
  EXPECT_EQ(residual, ints({0, 0, 0, 0, 0, 1, 0, 2, 0, 3}));
}

TEST(PorterWedge, AgreesWithHiltonMilnorOnSphereWedges) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> dim(2, 6), count(1, 3);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<PProduct> parts;
    GradedSeries total;
    for (int i = count(rng); i > 0; --i) {
      const GradedSeries s = t(static_cast<std::size_t>(dim(rng)));
      total = total + s;
      parts.push_back(hilton_milnor({s}, 14));
    }
    EXPECT_EQ(porter_loop_wedge(parts, 14), hilton_milnor({total}, 14));
  }
}

TEST(GreedyFactorize, Examples) {
  const GradedSeries g = GradedSeries::geometric(2);
  EXPECT_EQ(greedy_factorize(g * g, 10).listed(), listing({{PFactor::loop_sphere(3), 2}}));
  EXPECT_EQ(greedy_factorize(GradedSeries::geometric(1), 10).listed(),
            listing({{PFactor::sphere(1), 1}, {PFactor::loop_sphere(3), 1}}));
  EXPECT_TRUE(greedy_factorize(one, 7).listed().empty());
}

TEST(GreedyFactorize, RejectsNonProductSeries) {
  // 1 - t has a negative coefficient
  EXPECT_THROW((void)greedy_factorize(GradedSeries::from_ints({1, -1}), 5), Error);
  // 1 + t^2 would need S^2
  try {
    (void)greedy_factorize(GradedSeries::from_ints({1, 0, 1}), 5);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::NotCanonicalP);
  }
}

TEST(GreedyFactorize, RoundTripsRandomProducts) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const PProduct p = polyloop::testing::random_product(6, 12, 12, rng);
    EXPECT_EQ(greedy_factorize(p.series(), 12).listed(), p.listed());
  }
}

TEST(DivideProducts, Examples) {
  const PProduct s3 = PProduct::from_factors(std::vector<FactorCount>{{PFactor::loop_sphere(3), 1}}, 20);
  EXPECT_EQ(divide_products(s3 * s3, s3), s3);
  EXPECT_EQ(divide_products(s3, PProduct::trivial(20)), s3);
  try {
    (void)divide_products(PProduct::trivial(20), s3);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::NotADivisor);
  }
}

TEST(DivideProducts, RecoversRandomQuotients) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const PProduct p = polyloop::testing::random_product(5, 12, 12, rng);
    const PProduct q = polyloop::testing::random_product(5, 12, 12, rng);
    EXPECT_EQ(divide_products(p * q, p).listed(), q.listed());
  }
}

TEST(PProduct, ProductTakesSmallerCutoffAndMergesCounts) {
  const PProduct a = PProduct::from_factors(std::vector<FactorCount>{{PFactor::sphere(3), 1}}, 10);
  const PProduct b = PProduct::from_factors(std::vector<FactorCount>{{PFactor::sphere(3), 2}, {PFactor::loop_sphere(9), 1}}, 6);
  const PProduct c = a * b;
  EXPECT_EQ(c.cutoff(), 6);
  EXPECT_EQ(c.listed(), listing({{PFactor::sphere(3), 3}}));
  EXPECT_NO_THROW(c.check_invariants());
}
