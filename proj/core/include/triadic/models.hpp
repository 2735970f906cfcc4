#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "triadic/family.hpp"

namespace triadic {

/**
 * Independent coordinates x̄_i ~ N(theta_i, 1/n) with one-sided couples
 * h_i: theta_i <= b_i versus k_i: theta_i > b_i. Free combination holds
 * by construction since every truth pattern is reachable.
 */
class GaussianMeansModel {
public:
    GaussianMeansModel(std::vector<double> theta, std::vector<double> null_boundary, double n);

    /// All boundaries equal to `boundary`.
    GaussianMeansModel(std::vector<double> theta, double n, double boundary = 0.0);

    std::size_t size() const noexcept { return theta_.size(); }
    std::span<const double> theta() const noexcept { return theta_; }
    std::span<const double> null_boundary() const noexcept { return boundary_; }
    double n() const noexcept { return n_; }

    /// theta_i == b_i counts as h_i true (closed null).
    TruthAssignment truth() const;

private:
    std::vector<double> theta_;
    std::vector<double> boundary_;
    double n_;
};

/**
 * Single mean x̄ ~ N(theta, 1/n) with nested couples
 * h_i: theta >= theta_i versus k_i: theta < theta_i, theta1 < theta2.
 * h2 and k1 cannot hold together, so free combination fails.
 */
class NestedNormalModel {
public:
    NestedNormalModel(double theta, double n, double theta1, double theta2);

    double theta() const noexcept { return theta_; }
    double n() const noexcept { return n_; }
    double theta1() const noexcept { return theta1_; }
    double theta2() const noexcept { return theta2_; }

    TruthAssignment truth() const;

private:
    double theta_;
    double n_;
    double theta1_;
    double theta2_;
};

/**
 * Feasibility for couples h_i: theta >= t_i, k_i: theta < t_i on the real
 * line: (J1, J2) is non-empty iff max over J1 of t_i < min over J2 of t_j.
 */
FeasibilityOracle threshold_oracle(std::vector<double> thresholds);

/// p_h = 1 - Phi(sqrt(n)(x̄_i - b_i)), p_k = Phi(sqrt(n)(x̄_i - b_i)). Free combination.
HypothesisFamily gaussian_means_pvalues(const GaussianMeansModel& model, std::span<const double> sample_means);

/// p_h,i = Phi(sqrt(n)(x̄ - theta_i)), p_k,i = 1 - p_h,i, structured by threshold_oracle.
HypothesisFamily nested_pvalues(const NestedNormalModel& model, double xbar);

/**
 * Counter-based random stream: every (seed, replicate, coordinate) triple
 * owns an independent sequence, so results never depend on which worker
 * simulates which replicate.
 */
class CounterStream {
public:
    CounterStream(std::uint64_t seed, std::uint64_t replicate, std::uint64_t coordinate) noexcept;

    /// Uniform on the open interval (0, 1).
    double uniform() noexcept;

    /// Standard normal via Box-Muller.
    double normal() noexcept;

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// One replicate of x̄ ~ N(theta_i, 1/n), coordinate i drawn from stream (seed, replicate, i).
std::vector<double> simulate_sample_means(const GaussianMeansModel& model, std::uint64_t seed,
                                          std::uint64_t replicate = 0);

double simulate_sample_mean(const NestedNormalModel& model, std::uint64_t seed, std::uint64_t replicate = 0);

/// Row-major observations x variables.
class DataMatrix {
public:
    DataMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> values_;
};

inline constexpr double kFisherClamp = 18.0;

struct EdgeFamily {
    HypothesisFamily family;
    std::vector<std::pair<std::size_t, std::size_t>> edges; ///< (i, j), i < j, row-major order
    std::vector<double> correlations;
};

/**
 * Couples h_ij: rho_ij <= rho0 versus k_ij: rho_ij > rho0 for every pair of
 * columns, tested with the Fisher transform:
 *   p_h = 1 - Phi(sqrt(N - 3) (atanh(r_ij) - atanh(rho0))).
 * atanh values are clamped to +-18 so |r| = 1 stays finite. The structure is
 * declared free combination; it is not verified for correlation geometry.
 */
EdgeFamily correlation_edge_pvalues(const DataMatrix& data, double rho0);

/// Pearson correlation of two columns. Throws DegenerateColumn for zero variance.
double pearson_correlation(const DataMatrix& data, std::size_t a, std::size_t b);

} // namespace triadic
