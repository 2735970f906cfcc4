#include "triadic/procedures.hpp"

#include <cmath>
#include <string>

#include "triadic/error.hpp"

namespace triadic {

namespace {

void require_complementary(const HypothesisFamily& family, ComplementarityPolicy policy) {
    if (policy == ComplementarityPolicy::Override) {
        return;
    }
    const IndexSet bad = family.non_complementary_indices();
    if (!bad.empty()) {
        std::string rows;
        for (std::size_t i : bad) {
            rows += (rows.empty() ? "" : ", ") + std::to_string(i + 1);
        }
        throw Error(ErrorKind::ComplementarityViolation,
                    "p_h + p_k != 1 at index " + rows + "; pass an explicit override to proceed");
    }
}

} // namespace

std::string_view to_string(CalibrationKind kind) noexcept {
    switch (kind) {
        case CalibrationKind::Bonferroni: return "bonferroni";
        case CalibrationKind::IndependentExact: return "independent";
    }
    return "?";
}

CalibrationKind parse_calibration(std::string_view text) {
    if (text == "bonferroni") return CalibrationKind::Bonferroni;
    if (text == "independent") return CalibrationKind::IndependentExact;
    throw Error(ErrorKind::ConfigError, "unknown calibration '" + std::string(text) + "'");
}

double calibrated_level(CalibrationKind kind, double alpha, std::size_t m) {
    require(alpha > 0.0 && alpha < 1.0, ErrorKind::InvalidLevel,
            "alpha must lie in (0, 1), got " + std::to_string(alpha));
    require(m >= 1, ErrorKind::DegenerateFamily, "family has no couples");
    if (m == 1) {
        return alpha;
    }
    const auto mm = static_cast<double>(m);
    switch (kind) {
        case CalibrationKind::Bonferroni:
            return alpha / mm;
        case CalibrationKind::IndependentExact:
            return -std::expm1(std::log1p(-alpha) / mm);
    }
    return alpha / mm;
}

ThreeWayThresholds::ThreeWayThresholds(double lower) : lower_(lower), upper_(1.0 - lower) {
    require(lower >= 0.0 && lower < 0.5, ErrorKind::InvalidLevel,
            "three-way classification needs 0 <= alpha(M) < 1/2, got " + std::to_string(lower));
}

ThreeWayThresholds calibrate(CalibrationKind kind, double alpha, std::size_t m) {
    return ThreeWayThresholds(calibrated_level(kind, alpha, m));
}

PartitionSets bauer_bonferroni(const HypothesisFamily& family, double alpha, ComplementarityPolicy policy) {
    const std::size_t m = family.size();
    const double level = calibrated_level(CalibrationKind::Bonferroni, alpha, m);
    require(level <= 0.5, ErrorKind::InvalidLevel, "alpha/M must not exceed 1/2 for L to stay inside U");
    require_complementary(family, policy);

    const bool use_p_k = policy == ComplementarityPolicy::Override;
    IndexSet rejected_h;
    IndexSet rejected_k;
    for (std::size_t i = 0; i < m; ++i) {
        const PValuePair& p = family[i];
        if (p.p_h() < level) {
            rejected_h.push_back(i);
        }
        if (use_p_k ? p.p_k() < level : p.p_h() > 1.0 - level) {
            rejected_k.push_back(i);
        }
    }
    return PartitionSets::from_rejections(m, std::move(rejected_h), std::move(rejected_k));
}

DecisionVector single_step(const HypothesisFamily& family, const ThreeWayThresholds& thresholds,
                           ComplementarityPolicy policy) {
    require(family.size() >= 1, ErrorKind::DegenerateFamily, "family has no couples");
    require_complementary(family, policy);

    const bool use_p_k = policy == ComplementarityPolicy::Override;
    DecisionVector d(family.size(), Decision::D3);
    for (std::size_t i = 0; i < family.size(); ++i) {
        const PValuePair& p = family[i];
        const bool reject_h = p.p_h() < thresholds.lower();
        const bool reject_k = use_p_k ? p.p_k() < thresholds.lower() : p.p_h() > thresholds.upper();
        if (reject_h && reject_k) {
            throw Error(ErrorKind::ComplementarityViolation,
                        "both h and k rejected at index " + std::to_string(i + 1));
        }
        if (reject_h) {
            d[i] = Decision::D2;
        } else if (reject_k) {
            d[i] = Decision::D1;
        }
    }
    return d;
}

bool fwer_violation(std::span<const Decision> d, const TruthAssignment& truth) {
    require(d.size() == truth.size(), ErrorKind::LengthMismatch, "decision and truth lengths differ");
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (truth.hypothesis_true(i) && d[i] == Decision::D2) {
            return true;
        }
        if (truth.alternative_true(i) && d[i] == Decision::D1) {
            return true;
        }
    }
    return false;
}

} // namespace triadic
