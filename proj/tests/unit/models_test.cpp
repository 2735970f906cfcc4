#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "triadic/error.hpp"
#include "triadic/models.hpp"
#include "triadic/normal.hpp"

using namespace triadic;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::InvalidArgument;
}

// Kolmogorov-Smirnov distance from the uniform distribution.
double ks_uniform(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        d = std::max({d, (i + 1) / n - xs[i], xs[i] - i / n});
    }
    return d;
}

} // namespace

TEST(GaussianMeansModel, TruthUsesClosedNull) {
    const GaussianMeansModel model({-1.0, 0.0, 0.5}, 4.0);
    EXPECT_EQ(model.truth().true_hypotheses(), (IndexSet{0, 1}));
    EXPECT_EQ(kind_of([] { GaussianMeansModel({1.0}, {0.0, 0.0}, 1.0); }), ErrorKind::LengthMismatch);
    EXPECT_EQ(kind_of([] { GaussianMeansModel({1.0}, 0.5); }), ErrorKind::InvalidArgument);
}

TEST(GaussianMeansPvalues, ComplementaryAndFree) {
    const GaussianMeansModel model({0.0, 0.0}, {0.0, 1.0}, 4.0);
    const std::vector<double> xbar = {0.98, 1.0};
    const auto f = gaussian_means_pvalues(model, xbar);
    EXPECT_TRUE(f.has_free_combination_structure());
    EXPECT_TRUE(f.all_complementary());
    // z = 2 * 0.98 = 1.96
    EXPECT_NEAR(f[0].p_h(), 0.024997895148220434, 1e-15);
    EXPECT_EQ(f[1].p_h(), 0.5);
    EXPECT_EQ(kind_of([&] { gaussian_means_pvalues(model, std::vector<double>{1.0}); }), ErrorKind::LengthMismatch);
}

TEST(NestedPvalues, Structure) {
    const NestedNormalModel model(0.0, 1.0, 0.0, 10.0);
    const auto f = nested_pvalues(model, 1.0);
    EXPECT_FALSE(f.has_free_combination_structure());
    EXPECT_NEAR(f[0].p_h(), std_normal_cdf(1.0), 1e-16);
    EXPECT_NEAR(f[1].p_h(), std_normal_cdf(-9.0), 1e-30);
    EXPECT_EQ(kind_of([] { NestedNormalModel(0.0, 1.0, 1.0, 1.0); }), ErrorKind::InvalidOrdering);
}

TEST(NestedPvalues, SecondHypothesisIsHarder) {
    for (double xbar = -5.0; xbar < 5.0; xbar += 0.1) {
        const auto f = nested_pvalues(NestedNormalModel(0.0, 2.0, -0.5, 0.7), xbar);
        ASSERT_LE(f[1].p_h(), f[0].p_h());
    }
}

TEST(NestedNormalModel, Truth) {
    EXPECT_EQ(NestedNormalModel(-1.0, 1.0, 0.0, 1.0).truth().true_hypotheses(), IndexSet{});
    EXPECT_EQ(NestedNormalModel(0.0, 1.0, 0.0, 1.0).truth().true_hypotheses(), (IndexSet{0}));
    EXPECT_EQ(NestedNormalModel(1.0, 1.0, 0.0, 1.0).truth().true_hypotheses(), (IndexSet{0, 1}));
}

TEST(ThresholdOracle, Feasibility) {
    const auto oracle = threshold_oracle({0.0, 1.0, 2.0});
    EXPECT_TRUE(oracle(0b001, 0b100));  // 0 <= theta < 2
    EXPECT_FALSE(oracle(0b100, 0b001)); // theta >= 2 and theta < 0
    EXPECT_TRUE(oracle(0b111, 0));
    EXPECT_TRUE(oracle(0, 0b111));
}

TEST(CounterStream, Deterministic) {
    CounterStream a(1, 2, 3), b(1, 2, 3), c(1, 2, 4);
    for (int i = 0; i < 100; ++i) {
        const double x = a.normal();
        EXPECT_EQ(x, b.normal());
        EXPECT_NE(x, c.normal());
    }
}

TEST(CounterStream, UniformIsOpen) {
    CounterStream s(0, 0, 0);
    double lo = 1.0, hi = 0.0, sum = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double u = s.uniform();
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        sum += u;
    }
    EXPECT_GT(lo, 0.0);
    EXPECT_LT(hi, 1.0);
    EXPECT_NEAR(sum / 100000, 0.5, 0.005);
}

TEST(Simulation, NullPvaluesLookUniform) {
    const GaussianMeansModel model({0.0}, 9.0);
    std::vector<double> ps;
    for (std::uint64_t r = 0; r < 20000; ++r) {
        ps.push_back(gaussian_means_pvalues(model, simulate_sample_means(model, 5, r))[0].p_h());
    }
    EXPECT_LT(ks_uniform(ps), 1.62762 / std::sqrt(20000.0));
}

TEST(Simulation, NestedMeanMoments) {
    const NestedNormalModel model(2.0, 4.0, 0.0, 1.0);
    double sum = 0.0, sq = 0.0;
    const int reps = 40000;
    for (int r = 0; r < reps; ++r) {
        const double x = simulate_sample_mean(model, 11, r);
        sum += x;
        sq += x * x;
    }
    const double mean = sum / reps;
    EXPECT_NEAR(mean, 2.0, 0.01);
    EXPECT_NEAR(sq / reps - mean * mean, 0.25, 0.01);
}

TEST(DataMatrix, RejectsBadShape) {
    EXPECT_THROW(DataMatrix(2, 2, {1.0, 2.0, 3.0}), Error);
    EXPECT_THROW(DataMatrix(1, 2, {1.0, std::nan("")}), Error);
}

TEST(CorrelationEdges, FisherPvalues) {
    // Columns: x, 2x + 1, -x, and a wobble uncorrelated with x.
    std::vector<double> values;
    const std::vector<double> wobble = {1, -1, -1, 1, 1, -1, -1, 1};
    for (int r = 0; r < 8; ++r) {
        const double x = r - 3.5;
        values.insert(values.end(), {x, 2 * x + 1, -x, wobble[r]});
    }
    const DataMatrix data(8, 4, values);
    const auto edges = correlation_edge_pvalues(data, 0.0);
    ASSERT_EQ(edges.edges.size(), 6u);
    EXPECT_EQ(edges.edges[0], (std::pair<std::size_t, std::size_t>{0, 1}));
    EXPECT_EQ(edges.edges[5], (std::pair<std::size_t, std::size_t>{2, 3}));
    EXPECT_NEAR(edges.correlations[0], 1.0, 1e-15);
    EXPECT_NEAR(edges.correlations[1], -1.0, 1e-15);
    EXPECT_LT(edges.family[0].p_h(), 1e-20);   // clamped, still tiny
    EXPECT_LT(edges.family[1].p_k(), 1e-20);
    // r = 0 exactly: p_h = 1/2.
    EXPECT_NEAR(edges.correlations[2], 0.0, 1e-15);
    EXPECT_NEAR(edges.family[2].p_h(), 0.5, 1e-12);
    EXPECT_TRUE(edges.family.all_complementary());
}

TEST(CorrelationEdges, NullAtRho0) {
    std::vector<double> values;
    const std::vector<double> y = {1, -1, -1, 1, 1, -1, -1, 1};
    for (int r = 0; r < 8; ++r) values.insert(values.end(), {double(r), y[r]});
    const auto e0 = correlation_edge_pvalues(DataMatrix(8, 2, values), 0.0);
    EXPECT_NEAR(e0.family[0].p_h(), 0.5, 1e-12);
}

TEST(CorrelationEdges, Errors) {
    EXPECT_EQ(kind_of([] { correlation_edge_pvalues(DataMatrix(3, 2, {1, 2, 2, 1, 3, 5}), 0.0); }),
              ErrorKind::InsufficientSamples);
    EXPECT_EQ(kind_of([] { correlation_edge_pvalues(DataMatrix(4, 2, {1, 2, 1, 1, 1, 5, 1, 0}), 0.0); }),
              ErrorKind::DegenerateColumn);
    EXPECT_EQ(kind_of([] { correlation_edge_pvalues(DataMatrix(4, 2, {1, 2, 2, 1, 3, 5, 4, 0}), 1.0); }),
              ErrorKind::InvalidArgument);
}
