#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "triadic/family.hpp"

namespace triadic {

enum class CalibrationKind {
    Bonferroni,       ///< alpha / m, valid under any dependence
    IndependentExact, ///< 1 - (1 - alpha)^(1/m), exact for independent p_h
};

std::string_view to_string(CalibrationKind kind) noexcept;
CalibrationKind parse_calibration(std::string_view text);

inline constexpr double kDefaultAlpha = 0.05;

/// Per-component level alpha(m). Throws InvalidLevel / DegenerateFamily.
double calibrated_level(CalibrationKind kind, double alpha, std::size_t m);

/// Whether a report built on this calibration must carry an independence caveat.
constexpr bool assumes_independence(CalibrationKind kind) noexcept {
    return kind == CalibrationKind::IndependentExact;
}

/// (alpha(M), 1 - alpha(M)); lower < 1/2 < upper.
class ThreeWayThresholds {
public:
    explicit ThreeWayThresholds(double lower);

    double lower() const noexcept { return lower_; }
    double upper() const noexcept { return upper_; }

private:
    double lower_;
    double upper_;
};

ThreeWayThresholds calibrate(CalibrationKind kind, double alpha, std::size_t m);

/// How procedures treat pairs with p_h + p_k != 1.
enum class ComplementarityPolicy {
    Require,  ///< throw ComplementarityViolation
    Override, ///< test k_i on p_k directly; L may then escape U
};

/**
 * Bauer's directional Bonferroni procedure extended to hypothesis/alternative
 * couples: h_i rejected when p_h < alpha/M, k_i rejected when p_k < alpha/M
 * (for complementary pairs, p_h > 1 - alpha/M). Rejection is strict.
 */
PartitionSets bauer_bonferroni(const HypothesisFamily& family, double alpha,
                               ComplementarityPolicy policy = ComplementarityPolicy::Require);

/**
 * Single-step three-decision rule:
 *   D1 if p_h > upper, D2 if p_h < lower, D3 otherwise (boundaries are D3).
 * Under the Override policy D1 is decided by p_k < lower instead; an index
 * where both sides reject raises ComplementarityViolation.
 */
DecisionVector single_step(const HypothesisFamily& family, const ThreeWayThresholds& thresholds,
                           ComplementarityPolicy policy = ComplementarityPolicy::Require);

/// At least one true hypothesis rejected (D2) or one true alternative rejected (D1).
bool fwer_violation(std::span<const Decision> d, const TruthAssignment& truth);

} // namespace triadic
