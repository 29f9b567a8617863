#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "support/oracle.hpp"
#include "tourprof/errors.hpp"
#include "tourprof/generators.hpp"
#include "tourprof/profiles.hpp"

using namespace tourprof;

TEST(Transitive, SmallProfiles) {
  const auto p4 = oracle::profile4(transitive(4));
  EXPECT_EQ(p4.t4, 1u);
  EXPECT_EQ(p4.c4 + p4.w + p4.l, 0u);
  EXPECT_EQ(oracle::profile3(transitive(10)).c3, 0u);
  EXPECT_EQ(oracle::profile3(transitive(3)).t3, 1u);
  EXPECT_THROW(transitive(0), DomainError);
}

TEST(Cyclic, IsRegular) {
  for (std::size_t n = 3; n <= 41; n += 2) {
    const Tournament t = cyclic(n);
    for (Vertex v = 0; v < n; ++v) EXPECT_EQ(t.out_degree(v), (n - 1) / 2);
  }
}

TEST(Cyclic, SmallCases) {
  EXPECT_EQ(oracle::profile3(cyclic(3)).c3, 1u);
  EXPECT_EQ(oracle::profile3(cyclic(5)).c3, 5u);
  const auto p4 = oracle::profile4(cyclic(5));
  EXPECT_EQ(p4.t4, 0u);
  EXPECT_EQ(p4.c4, 5u);
  EXPECT_EQ(p4.w + p4.l, 0u);
  EXPECT_THROW(cyclic(4), DomainError);
  EXPECT_THROW(cyclic(1), DomainError);
}

TEST(Interval, FullWidthIsTransitive) {
  for (std::size_t n = 1; n <= 12; ++n) EXPECT_EQ(interval(n, n), transitive(n));
}

TEST(Interval, HasNoWOrL) {
  const auto p4 = oracle::profile4(interval(7, 4));
  EXPECT_EQ(p4.w, 0u);
  EXPECT_EQ(p4.l, 0u);
  for (std::size_t n = 4; n <= 14; ++n)
    for (std::size_t s = (n + 1) / 2; s <= n; ++s) {
      const auto q = oracle::profile4(interval(n, s));
      EXPECT_EQ(q.w + q.l, 0u) << n << ' ' << s;
    }
}

TEST(Interval, RejectsNarrowWindow) {
  EXPECT_THROW(interval(10, 4), DomainError);
  EXPECT_THROW(interval(10, 11), DomainError);
  EXPECT_NO_THROW(interval(10, 5));
}

TEST(RandomTournament, Deterministic) {
  EXPECT_EQ(random_tournament(50, 17), random_tournament(50, 17));
  EXPECT_NE(random_tournament(50, 17), random_tournament(50, 18));
}

TEST(RandomTournament, DensitiesAtSixHundred) {
  const Tournament t = random_tournament(600, 2024);
  const auto p3 = profile3(t);
  const auto p4 = profile4(t);
  EXPECT_NEAR(p3.c3_density(), 0.25, 0.005);
  EXPECT_NEAR(p4.density(FourType::T4), 0.375, 0.01);
}

TEST(Blowup, PartSizesFollowWeights) {
  const auto sizes = blowup_part_sizes(WeightVector({0.5, 0.3, 0.2}), 11);
  EXPECT_EQ(std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}), 11u);
  EXPECT_EQ(sizes[0], 6u);  // 5.5 rounds up first: remainders .5, .3, .2
  EXPECT_EQ(sizes[1], 3u);
  EXPECT_EQ(sizes[2], 2u);
  const auto even = blowup_part_sizes(WeightVector::balanced(3), 10);
  EXPECT_EQ(even, (std::vector<std::size_t>{4, 3, 3}));
}

TEST(Blowup, CrossPartArcsFollowHost) {
  const BlowupSpec spec(cyclic(3), WeightVector::balanced(3));
  const Tournament t = blowup(spec, 30, 5);
  const auto part = [](Vertex v) { return v / 10; };
  for (Vertex a = 0; a < 30; ++a)
    for (Vertex b = 0; b < 30; ++b)
      if (part(a) != part(b)) EXPECT_EQ(t.beats(a, b), spec.host.beats(part(a), part(b)));
}

TEST(Blowup, SingleVertexHostIsRandomTournament) {
  const BlowupSpec spec(transitive(1), WeightVector::balanced(1));
  EXPECT_EQ(blowup(spec, 40, 99), random_tournament(40, 99));
}

TEST(Blowup, BalancedTwoPartTargets) {
  const Tournament t = blowup(BlowupSpec(transitive(2), WeightVector::balanced(2)), 600, 7);
  EXPECT_NEAR(profile3(t).c3_density(), 1.0 / 16, 0.005);
  EXPECT_NEAR(profile4(t).density(FourType::C4), 3.0 / 64, 0.005);
}

TEST(Blowup, BalancedCyclicTriangle) {
  const Tournament t = blowup(BlowupSpec(cyclic(3), WeightVector::balanced(3)), 600, 8);
  EXPECT_NEAR(profile3(t).c3_density(), 0.25, 0.005);
}

TEST(Blowup, RejectsBadSpecs) {
  EXPECT_THROW(WeightVector({0.5, 0.6}), DomainError);
  EXPECT_THROW(WeightVector({1.0, 0.0}), DomainError);
  EXPECT_THROW(BlowupSpec(transitive(3), WeightVector::balanced(2)), DomainError);
  EXPECT_THROW(blowup(BlowupSpec(transitive(3), WeightVector::balanced(3)), 2, 0), DomainError);
  EXPECT_THROW(blowup(BlowupSpec(transitive(2), WeightVector({0.99, 0.01})), 10, 0), DomainError);
}

TEST(FlipPerturb, Extremes) {
  const Tournament t = random_tournament(40, 1);
  EXPECT_EQ(flip_perturb(t, 0.0, 3), t);
  const Tournament r = flip_perturb(t, 1.0, 3);
  for (Vertex u = 0; u < 40; ++u)
    for (Vertex v = 0; v < 40; ++v)
      if (u != v) EXPECT_EQ(r.beats(u, v), t.beats(v, u));
  EXPECT_THROW(flip_perturb(t, 1.5, 0), DomainError);
}

TEST(FlipPerturb, HalfFlippedCyclicLooksRandom) {
  const Tournament t = flip_perturb(cyclic(601), 0.5, 11);
  EXPECT_NEAR(profile3(t).c3_density(), 0.25, 0.005);
}

TEST(Mix, KeepsBothSidesAndCrossProbability) {
  const Tournament a = random_tournament(20, 1);
  const Tournament b = cyclic(15);
  const Tournament m = mix(a, b, 1.0, 4);
  EXPECT_EQ(m.order(), 35u);
  for (Vertex u = 0; u < 20; ++u) {
    for (Vertex v = 0; v < 20; ++v)
      if (u != v) EXPECT_EQ(m.beats(u, v), a.beats(u, v));
    for (Vertex y = 0; y < 15; ++y) EXPECT_TRUE(m.beats(u, 20 + y));
  }
  for (Vertex u = 0; u < 15; ++u)
    for (Vertex v = 0; v < 15; ++v)
      if (u != v) EXPECT_EQ(m.beats(20 + u, 20 + v), b.beats(u, v));
  const Tournament zero = mix(a, b, 0.0, 4);
  EXPECT_TRUE(zero.beats(20, 0));
}

TEST(Mix, EmptySecondPartReturnsFirst) {
  const Tournament a = random_tournament(12, 3);
  const auto [n1, n2] = mix_sizes(12, 1.0);
  EXPECT_EQ(n1, 12u);
  EXPECT_EQ(n2, 0u);
  EXPECT_EQ(mix(a, Tournament(), MixSpec(1.0, 0.3), 2), a);
}

TEST(Mix, RandomIntoRandomStaysRandom) {
  const auto [n1, n2] = mix_sizes(600, 0.4);
  const Tournament t =
      mix(random_tournament(n1, 1), random_tournament(n2, 2), MixSpec(0.4, 0.5), 3);
  EXPECT_NEAR(profile4(t).density(FourType::C4), 0.375, 0.01);
}

TEST(Subtournament, InducesSortedSubset) {
  const Tournament t = random_tournament(30, 5);
  const Tournament s = random_subtournament(t, 8, 6);
  EXPECT_EQ(s.order(), 8u);
  EXPECT_EQ(random_subtournament(t, 8, 6), s);
  EXPECT_EQ(random_subtournament(t, 30, 6), t);
  EXPECT_THROW(random_subtournament(t, 31, 0), DomainError);
}

TEST(RandomRelabel, PreservesProfiles) {
  const Tournament t = random_tournament(9, 12);
  const Tournament r = random_relabel(t, 13);
  const auto a = oracle::profile4(t);
  const auto b = oracle::profile4(r);
  EXPECT_EQ(a.c4, b.c4);
  EXPECT_EQ(a.w, b.w);
  EXPECT_EQ(a.l, b.l);
}
