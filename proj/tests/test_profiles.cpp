#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "support/corpus.hpp"
#include "support/oracle.hpp"
#include "tourprof/errors.hpp"
#include "tourprof/generators.hpp"
#include "tourprof/profiles.hpp"

using namespace tourprof;

namespace {

void expect_matches_oracle(const Tournament& t, const std::string& label) {
  const auto o3 = oracle::profile3(t);
  const auto o4 = oracle::profile4(t);
  const auto p3 = profile3(t);
  EXPECT_EQ(p3.t3, o3.t3) << label;
  EXPECT_EQ(p3.c3, o3.c3) << label;
  if (t.order() < 4) return;
  const auto p4 = profile4(t);
  EXPECT_EQ(p4.t4, o4.t4) << label;
  EXPECT_EQ(p4.c4, o4.c4) << label;
  EXPECT_EQ(p4.w, o4.w) << label;
  EXPECT_EQ(p4.l, o4.l) << label;
}

}  // namespace

TEST(Profile, MatchesOracleOnRandomTournaments) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t n = 5 + seed % 5;
    expect_matches_oracle(random_tournament(n, seed), "random seed " + std::to_string(seed));
  }
}

TEST(Profile, MatchesOracleOnConstructions) {
  for (const auto& e : corpus::named(40)) expect_matches_oracle(e.t, e.name);
}

TEST(Profile, KnownValues) {
  EXPECT_EQ(profile3(transitive(10)).c3, 0u);
  EXPECT_EQ(profile3(cyclic(5)).c3, 5u);
  EXPECT_EQ(profile3(cyclic(201)).c3, (201ull * 201 * 201 - 201) / 24);
  const auto p = profile4(cyclic(5));
  EXPECT_EQ(p, (Profile4Counts{5, 0, 5, 0, 0}));
  const auto q = profile4(interval(7, 4));
  EXPECT_EQ(q.w, 0u);
  EXPECT_EQ(q.l, 0u);
}

TEST(Profile, PreconditionsOnOrder) {
  EXPECT_THROW(profile3(transitive(2)), DomainError);
  EXPECT_THROW(profile4(transitive(3)), DomainError);
}

TEST(Classify4, FourTypesAreIndicators) {
  const Tournament t4 = transitive(4);
  const Tournament c4 = from_matrix(4, {{0, 1, 1, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}, {1, 0, 0, 0}});
  // Sink 3 below the cyclic triangle 0 -> 1 -> 2 -> 0.
  const Tournament w = from_matrix(4, {{0, 1, 0, 1}, {0, 0, 1, 1}, {1, 0, 0, 1}, {0, 0, 0, 0}});
  const Tournament l = from_matrix(4, {{0, 1, 0, 0}, {0, 0, 1, 0}, {1, 0, 0, 0}, {1, 1, 1, 0}});
  EXPECT_EQ(classify4(t4), FourType::T4);
  EXPECT_EQ(classify4(c4), FourType::C4);
  EXPECT_EQ(classify4(w), FourType::W);
  EXPECT_EQ(classify4(l), FourType::L);
  EXPECT_EQ(profile4(t4), (Profile4Counts{4, 1, 0, 0, 0}));
  EXPECT_EQ(profile4(c4), (Profile4Counts{4, 0, 1, 0, 0}));
  EXPECT_EQ(profile4(w), (Profile4Counts{4, 0, 0, 1, 0}));
  EXPECT_EQ(profile4(l), (Profile4Counts{4, 0, 0, 0, 1}));
  EXPECT_EQ(profile3(w).c3, 1u);
}

TEST(Classify4, AgreesWithDefinitionOnAllLabelledTournaments) {
  for (std::uint32_t bits = 0; bits < 64; ++bits) {
    const Tournament t = from_code(4, bits);
    const auto expected = oracle::classify(t, {0, 1, 2, 3});
    EXPECT_EQ(static_cast<int>(classify4(t)), static_cast<int>(expected)) << bits;
  }
}

TEST(EdgeStats, MatchesOracle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Tournament t = random_tournament(3 + seed * 7, seed);
    const EdgeStats s = edge_stats(t);
    std::size_t k = 0;
    for (Vertex a = 0; a < t.order(); ++a)
      for (Vertex b = a + 1; b < t.order(); ++b, ++k) {
        const auto o = oracle::arc(t, a, b);
        const auto& e = s.edges[k];
        EXPECT_EQ(e.tail, o.tail);
        EXPECT_EQ(e.head, o.head);
        EXPECT_EQ(e.cyc, o.cyc);
        EXPECT_EQ(e.thru, o.thru);
        EXPECT_EQ(e.dom_out, o.dom_out);
        EXPECT_EQ(e.dom_in, o.dom_in);
      }
  }
}

TEST(EdgeStats, KnownCases) {
  for (const auto& e : edge_stats(transitive(9)).edges) EXPECT_EQ(e.cyc, 0u);

  // a -> b -> c -> d -> a with a -> c, b -> d.
  const Tournament c4 = from_matrix(4, {{0, 1, 1, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}, {1, 0, 0, 0}});
  std::multiset<std::uint32_t> cyc;
  for (const auto& e : edge_stats(c4).edges) cyc.insert(e.cyc);
  EXPECT_EQ(cyc, (std::multiset<std::uint32_t>{2, 1, 1, 1, 1, 0}));
  EXPECT_EQ(edge_sums(edge_stats(c4)).cyc_pairs, 1u);

  const EdgeSums s5 = edge_sums(edge_stats(cyclic(5)));
  EXPECT_EQ(s5.cyc, 15u);
  EXPECT_EQ(s5.cyc_pairs, 5u);
}

TEST(Moments, ExactIdentities) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Tournament t = random_tournament(6 + seed, seed);
    const auto r = moments(t);
    const auto p3 = profile3(t);
    ASSERT_TRUE(r.exact.has_value());
    EXPECT_EQ(r.exact->ex, Rational(static_cast<std::int64_t>(p3.c3),
                                    static_cast<std::int64_t>(binomial(t.order(), 3))));
    EXPECT_EQ(r.sums.cyc, 3 * p3.c3);
    EXPECT_EQ(r.sums.thru, p3.t3);
  }
}

TEST(Moments, TransitiveAndCyclic) {
  const auto tr = moments(transitive(8));
  EXPECT_EQ(tr.exact->ex, Rational(0));
  EXPECT_EQ(tr.exact->exx, Rational(0));
  EXPECT_EQ(tr.exact->ey, Rational(1, 3));

  const auto cy = moments(cyclic(5));
  EXPECT_EQ(cy.exact->ex, Rational(1, 2));
  EXPECT_EQ(cy.exact->exx, Rational(25, 90));
  EXPECT_EQ(cy.exact->var_x, Rational(25, 90) - Rational(1, 4));
  EXPECT_NEAR(cy.value.exx, 25.0 / 90, 1e-15);
}

TEST(Moments, LargeOrderFallsBackToFloating) {
  const auto r = moments(random_tournament(kExactMomentLimit + 1, 2));
  EXPECT_FALSE(r.exact.has_value());
  EXPECT_NEAR(r.value.ex, 0.25, 0.01);
}

TEST(XCdf, Transitive) {
  const std::vector<double> grid{0.0, 1e-9, 0.5};
  EXPECT_EQ(x_cdf(transitive(12), grid), (std::vector<double>{1.0, 0.0, 0.0}));
}

TEST(XCdf, NonincreasingAndStartsAtOne) {
  const Tournament t = random_tournament(80, 4);
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(i / 20.0);
  const auto phi = x_cdf(t, grid);
  EXPECT_EQ(phi.front(), 1.0);
  for (std::size_t i = 1; i < phi.size(); ++i) EXPECT_LE(phi[i], phi[i - 1]);
}

TEST(XCdf, BalancedCyclicBlowup) {
  const Tournament t = blowup(BlowupSpec(cyclic(3), WeightVector::balanced(3)), 600, 21);
  const std::vector<double> grid{1.0 / 3 - 0.02};
  EXPECT_GE(x_cdf(t, grid)[0], 0.6);
}

TEST(XCdf, SkewedCyclicBlowupMatchesDerivedFraction) {
  // A cross-part arc has X = |third part| / (n - 2) exactly and intra-part
  // arcs stay far below 1/3, so the tail is a sum over part pairs.
  for (double eps : {0.01, 0.05}) {
    const double big = 1.0 / 3 + eps;
    const double small = 1.0 / 3 - 2 * eps;
    const Tournament t =
        blowup(BlowupSpec(cyclic(3), WeightVector({big, big, small})), 600, 31);
    const auto sizes = blowup_part_sizes(WeightVector({big, big, small}), 600);
    const double pairs = 600.0 * 599 / 2;
    double expected = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j) {
        const std::size_t third = 3 - i - j;
        if (static_cast<double>(sizes[third]) / 598 >= 1.0 / 3 + 0.005)
          expected += static_cast<double>(sizes[i] * sizes[j]) / pairs;
      }
    const std::vector<double> grid{1.0 / 3 + 0.005};
    EXPECT_NEAR(x_cdf(t, grid)[0], expected, 0.01) << eps;
    if (eps == 0.01) EXPECT_NEAR(x_cdf(t, grid)[0], 4.0 / 9, 0.05);
  }
}

TEST(SampledProfile, TransitiveIsExact) {
  const auto s = sample_profile4(transitive(1000), 100000, 1);
  EXPECT_EQ(s.estimate[0], 1.0);
  EXPECT_EQ(s.std_error[0], 0.0);
}

TEST(SampledProfile, AgreesWithExactWithinFourErrors) {
  const Tournament t = blowup(BlowupSpec(transitive(3), WeightVector({0.5, 0.3, 0.2})), 100, 3);
  const auto exact = profile4(t);
  const auto s = sample_profile4(t, 200000, 5);
  for (int k = 0; k < 4; ++k) {
    const double p = exact.density(static_cast<FourType>(k));
    const double se = std::max(s.std_error[k], 1e-4);
    EXPECT_LE(std::abs(s.estimate[k] - p), 4 * se) << k;
  }
  const auto again = sample_profile4(t, 200000, 5);
  EXPECT_EQ(again.estimate, s.estimate);
}

TEST(Identities, HoldOnCorpus) {
  for (const auto& e : corpus::named(200)) {
    if (e.t.order() < 4) continue;
    const auto r = verify_identities(e.t);
    EXPECT_TRUE(r.ok()) << e.name << ": " << (r.violations.empty() ? "" : r.violations.front());
    EXPECT_FALSE(r.checked.empty());
  }
}

TEST(Identities, DensityFormOnSmallCases) {
  const auto c5 = profile4(cyclic(5));
  EXPECT_DOUBLE_EQ(c5.density(FourType::T4) - c5.density(FourType::C4), 1 - 4 * 0.5);
  const auto t6 = profile4(transitive(6));
  EXPECT_DOUBLE_EQ(t6.density(FourType::T4) - t6.density(FourType::C4), 1.0);
}
