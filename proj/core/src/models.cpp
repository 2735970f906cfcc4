#include "triadic/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "triadic/error.hpp"
#include "triadic/normal.hpp"

namespace triadic {

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void require_sample_size(double n) {
    require(std::isfinite(n) && n >= 1.0, ErrorKind::InvalidArgument,
            "sample size must be >= 1, got " + std::to_string(n));
}

double fisher_z(double r) {
    return std::clamp(std::atanh(r), -kFisherClamp, kFisherClamp);
}

struct ColumnSummary {
    double mean = 0.0;
    double norm = 0.0; // sqrt of the centred sum of squares
};

ColumnSummary summarize_column(const DataMatrix& data, std::size_t c) {
    const std::size_t n = data.rows();
    double sum = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        sum += data(r, c);
    }
    ColumnSummary out;
    out.mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        const double d = data(r, c) - out.mean;
        ss += d * d;
    }
    out.norm = std::sqrt(ss);
    // Relative check so columns that are constant up to rounding still count as constant.
    const double scale = std::max(std::fabs(out.mean), 1.0);
    require(out.norm > 1e-12 * scale * std::sqrt(static_cast<double>(n)), ErrorKind::DegenerateColumn,
            "column " + std::to_string(c + 1) + " is constant");
    return out;
}

double correlation_from(const DataMatrix& data, std::size_t a, std::size_t b, const ColumnSummary& sa,
                        const ColumnSummary& sb) {
    double cross = 0.0;
    for (std::size_t r = 0; r < data.rows(); ++r) {
        cross += (data(r, a) - sa.mean) * (data(r, b) - sb.mean);
    }
    return std::clamp(cross / (sa.norm * sb.norm), -1.0, 1.0);
}

} // namespace

GaussianMeansModel::GaussianMeansModel(std::vector<double> theta, std::vector<double> null_boundary, double n)
    : theta_(std::move(theta)), boundary_(std::move(null_boundary)), n_(n) {
    require(theta_.size() == boundary_.size(), ErrorKind::LengthMismatch, "theta and boundary lengths differ");
    require(!theta_.empty(), ErrorKind::DegenerateFamily, "model has no coordinates");
    require_sample_size(n_);
}

GaussianMeansModel::GaussianMeansModel(std::vector<double> theta, double n, double boundary)
    : GaussianMeansModel(theta, std::vector<double>(theta.size(), boundary), n) {}

TruthAssignment GaussianMeansModel::truth() const {
    std::vector<bool> h(size());
    for (std::size_t i = 0; i < size(); ++i) {
        h[i] = theta_[i] <= boundary_[i];
    }
    return TruthAssignment(std::move(h));
}

NestedNormalModel::NestedNormalModel(double theta, double n, double theta1, double theta2)
    : theta_(theta), n_(n), theta1_(theta1), theta2_(theta2) {
    require(theta1 < theta2, ErrorKind::InvalidOrdering, "nested model needs theta1 < theta2");
    require_sample_size(n);
}

TruthAssignment NestedNormalModel::truth() const {
    return TruthAssignment(std::vector<bool>{theta_ >= theta1_, theta_ >= theta2_});
}

FeasibilityOracle threshold_oracle(std::vector<double> thresholds) {
    return [t = std::move(thresholds)](IndexMask j1, IndexMask j2) {
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        for (std::size_t i : from_mask(j1)) {
            lo = std::max(lo, t.at(i));
        }
        for (std::size_t j : from_mask(j2)) {
            hi = std::min(hi, t.at(j));
        }
        return lo < hi;
    };
}

HypothesisFamily gaussian_means_pvalues(const GaussianMeansModel& model, std::span<const double> sample_means) {
    require(sample_means.size() == model.size(), ErrorKind::LengthMismatch,
            "expected " + std::to_string(model.size()) + " sample means, got " + std::to_string(sample_means.size()));
    const double root_n = std::sqrt(model.n());
    std::vector<PValuePair> pairs;
    pairs.reserve(model.size());
    for (std::size_t i = 0; i < model.size(); ++i) {
        const double z = root_n * (sample_means[i] - model.null_boundary()[i]);
        pairs.emplace_back(std_normal_upper(z), std_normal_cdf(z));
    }
    return HypothesisFamily::free_combination(std::move(pairs));
}

HypothesisFamily nested_pvalues(const NestedNormalModel& model, double xbar) {
    const double root_n = std::sqrt(model.n());
    std::vector<PValuePair> pairs;
    for (double t : {model.theta1(), model.theta2()}) {
        const double z = root_n * (xbar - t);
        pairs.emplace_back(std_normal_cdf(z), std_normal_upper(z));
    }
    return HypothesisFamily::structured(std::move(pairs), threshold_oracle({model.theta1(), model.theta2()}));
}

CounterStream::CounterStream(std::uint64_t seed, std::uint64_t replicate, std::uint64_t coordinate) noexcept
    : key_(splitmix64(splitmix64(splitmix64(seed) ^ replicate) ^ coordinate)) {}

double CounterStream::uniform() noexcept {
    const std::uint64_t bits = splitmix64(key_ ^ splitmix64(counter_++));
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

double CounterStream::normal() noexcept {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<double> simulate_sample_means(const GaussianMeansModel& model, std::uint64_t seed,
                                          std::uint64_t replicate) {
    const double sd = 1.0 / std::sqrt(model.n());
    std::vector<double> out(model.size());
    for (std::size_t i = 0; i < model.size(); ++i) {
        CounterStream stream(seed, replicate, i);
        out[i] = model.theta()[i] + sd * stream.normal();
    }
    return out;
}

double simulate_sample_mean(const NestedNormalModel& model, std::uint64_t seed, std::uint64_t replicate) {
    CounterStream stream(seed, replicate, 0);
    return model.theta() + stream.normal() / std::sqrt(model.n());
}

DataMatrix::DataMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
    require(values_.size() == rows_ * cols_, ErrorKind::LengthMismatch, "data matrix size mismatch");
    for (double v : values_) {
        require(std::isfinite(v), ErrorKind::InvalidArgument, "data matrix contains a non-finite value");
    }
}

double pearson_correlation(const DataMatrix& data, std::size_t a, std::size_t b) {
    require(data.rows() >= 2, ErrorKind::InsufficientSamples, "correlation needs at least 2 observations");
    return correlation_from(data, a, b, summarize_column(data, a), summarize_column(data, b));
}

EdgeFamily correlation_edge_pvalues(const DataMatrix& data, double rho0) {
    require(rho0 >= 0.0 && rho0 < 1.0, ErrorKind::InvalidArgument, "rho0 must lie in [0, 1)");
    require(data.rows() >= 4, ErrorKind::InsufficientSamples,
            "Fisher transform needs N >= 4 observations, got " + std::to_string(data.rows()));

    std::vector<ColumnSummary> columns;
    columns.reserve(data.cols());
    for (std::size_t c = 0; c < data.cols(); ++c) {
        columns.push_back(summarize_column(data, c));
    }

    const double scale = std::sqrt(static_cast<double>(data.rows()) - 3.0);
    const double z0 = fisher_z(rho0);
    std::vector<PValuePair> pairs;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<double> correlations;
    for (std::size_t i = 0; i < data.cols(); ++i) {
        for (std::size_t j = i + 1; j < data.cols(); ++j) {
            const double r = correlation_from(data, i, j, columns[i], columns[j]);
            const double z = scale * (fisher_z(r) - z0);
            pairs.emplace_back(std_normal_upper(z), std_normal_cdf(z));
            edges.emplace_back(i, j);
            correlations.push_back(r);
        }
    }
    return EdgeFamily{HypothesisFamily::free_combination(std::move(pairs)), std::move(edges),
                      std::move(correlations)};
}

} // namespace triadic
