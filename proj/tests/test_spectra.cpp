#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "regspec/regspec.hpp"

using namespace regspec;

TEST(Spectra, PetersenMatchesCharacteristicPolynomial) {
    const Graph p = petersen_graph();
    EXPECT_EQ(oracle::characteristic_polynomial(p),
              oracle::polynomial_from_roots({3, 1, 1, 1, 1, 1, -2, -2, -2, -2}));
    const auto s = spectrum(p);
    const std::vector<double> expected{3, 1, 1, 1, 1, 1, -2, -2, -2, -2};
    for (std::size_t i = 0; i < 10; ++i) EXPECT_NEAR(s.values[i], expected[i], 1e-8);
    EXPECT_TRUE(s.residual_measured);
}

TEST(Spectra, CharacteristicPolynomialOracleOnSmallFamilies) {
    // K4: (x-3)(x+1)^3; C6: eigenvalues 2, 1, 1, -1, -1, -2; Q3: 3, 1x3, -1x3, -3.
    EXPECT_EQ(oracle::characteristic_polynomial(complete_graph(4)), oracle::polynomial_from_roots({3, -1, -1, -1}));
    EXPECT_EQ(oracle::characteristic_polynomial(cycle_graph(6)), oracle::polynomial_from_roots({2, 1, 1, -1, -1, -2}));
    EXPECT_EQ(oracle::characteristic_polynomial(hypercube_graph(3)),
              oracle::polynomial_from_roots({3, 1, 1, 1, -1, -1, -1, -3}));
}

TEST(Spectra, CycleClosedForm) {
    for (std::size_t n : {5, 12, 101}) {
        const auto s = spectrum(cycle_graph(n));
        std::vector<double> expected;
        for (std::size_t j = 0; j < n; ++j) expected.push_back(2 * std::cos(2 * std::numbers::pi * j / n));
        std::sort(expected.rbegin(), expected.rend());
        for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(s.values[i], expected[i], 1e-9);
    }
}

TEST(Spectra, IndexAccessors) {
    const auto s = spectrum(petersen_graph());
    EXPECT_NEAR(lambda_l(s, 1), 3, 1e-9);
    EXPECT_NEAR(lambda_l(s, 2), 1, 1e-9);
    EXPECT_NEAR(mu_l(s, 1), -2, 1e-9);
    EXPECT_THROW(lambda_l(s, 0), Error);
    try {
        mu_l(s, 11);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::IndexOutOfRange);
    }
}

TEST(Spectra, ThresholdCountsUseTolerance) {
    const auto s = spectrum(petersen_graph());
    EXPECT_EQ(count_at_least(s, 1.0), 6u);
    EXPECT_EQ(count_at_least(s, 1.0 + 1e-6), 1u);
    EXPECT_EQ(count_at_most(s, -2.0), 4u);
    EXPECT_EQ(count_at_most(s, -2.0 - 1e-6), 0u);
}

TEST(Spectra, MomentsOnCorpusSample) {
    for (const Graph& g : {petersen_graph(), complete_graph(7), hypercube_graph(5), random_regular(200, 4, 3),
                           line_graph(complete_graph(5)), bipartite_double(cycle_graph(4))}) {
        const auto s = spectrum(g);
        const auto m = moment_check(s, g);
        EXPECT_TRUE(m.pass);
        EXPECT_EQ(m.top_multiplicity, m.components);
    }
}

TEST(Spectra, PowerSumsMatchClosedWalks) {
    const Graph g = random_regular(60, 3, 4);
    const auto s = spectrum(g);
    for (unsigned r = 2; r <= 8; ++r) {
        const double exact = to_double(closed_walk_total(g, r));
        const double scale = std::max(1.0, static_cast<double>(abs_power_sum(s, r)));
        EXPECT_NEAR(static_cast<double>(power_sum(s, r)), exact, 1e-8 * scale);
    }
}

TEST(Spectra, LargeGraphUsesAprioriBound) {
    const auto s = spectrum(cycle_graph(600));
    EXPECT_FALSE(s.residual_measured);
    EXPECT_NEAR(s.values.front(), 2.0, 1e-9);
}

TEST(Spectra, JsonRoundTrip) {
    const auto s = spectrum(hypercube_graph(3));
    const auto back = spectrum_from_json(to_json(s));
    EXPECT_EQ(back.n, s.n);
    EXPECT_EQ(back.values, s.values);
    EXPECT_THROW(spectrum_from_json(nlohmann::json{{"n", 2}, {"values", {1.0}}}), Error);
}

TEST(SpectraProperty, InterlacingForVertexDeletion) {
    SplitMix64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const Graph g = random_regular(20 + 2 * rng.below(10), 3, rng.next());
        std::vector<Vertex> keep;
        for (Vertex v = 1; v < g.order(); ++v) keep.push_back(v);
        const auto a = spectrum(g).values;
        const auto b = spectrum(induced_subgraph(g, keep).graph).values;
        for (std::size_t i = 0; i < b.size(); ++i) {
            EXPECT_GE(a[i] + 1e-9, b[i]);
            EXPECT_GE(b[i] + 1e-9, a[i + 1]);
        }
    }
}
