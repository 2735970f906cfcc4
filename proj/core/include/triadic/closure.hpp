#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "triadic/family.hpp"
#include "triadic/procedures.hpp"

namespace triadic {

enum class Side { Hypothesis, Alternative };

/// One member of a couple: h_i or k_i.
struct Member {
    std::size_t index = 0;
    Side side = Side::Hypothesis;
};

/// H_{J1,J2}: hypotheses in J1 and alternatives in J2 hold together. J1 and J2 are disjoint.
class IntersectionHypothesis {
public:
    IntersectionHypothesis(IndexMask j1, IndexMask j2);

    IndexMask j1() const noexcept { return j1_; }
    IndexMask j2() const noexcept { return j2_; }
    std::size_t size() const noexcept;
    bool contains(const Member& member) const noexcept;

    bool operator==(const IntersectionHypothesis&) const = default;

private:
    IndexMask j1_;
    IndexMask j2_;
};

/**
 * Level schedule alpha(k) for union-intersection tests of intersections of
 * size k. Must be non-increasing in k; the single-step reduction depends on
 * the minimum over sizes up to M being alpha(M).
 */
class LocalTestRule {
public:
    enum class Kind { BonferroniSchedule, IndependentSchedule, Explicit };

    static LocalTestRule bonferroni(double alpha);
    static LocalTestRule independent(double alpha);
    static LocalTestRule from_calibration(CalibrationKind kind, double alpha);
    /// levels[k - 1] is alpha(k). Throws InvalidArgument if the table increases anywhere.
    static LocalTestRule explicit_table(std::vector<double> levels);

    Kind kind() const noexcept { return kind_; }
    double alpha() const noexcept { return alpha_; }
    double level(std::size_t k) const;

private:
    LocalTestRule(Kind kind, double alpha, std::vector<double> levels);

    Kind kind_;
    double alpha_;
    std::vector<double> levels_;
};

inline constexpr std::size_t kMaxClosureFamilySize = 12;

/**
 * All feasible H_{J1,J2} with J1 and J2 disjoint and not both empty,
 * optionally only those containing `containing`. O(3^M); M <= 12.
 */
std::vector<IntersectionHypothesis> enumerate_intersections(const HypothesisFamily& family,
                                                            std::optional<Member> containing = std::nullopt);

/// Rejects iff min(p_h over J1, p_k over J2) < rule.level(|J1 u J2|).
bool local_test(const IntersectionHypothesis& h, const HypothesisFamily& family, const LocalTestRule& rule);

/**
 * Closure method: h_i is rejected iff every feasible intersection with i in
 * J1 is locally rejected; k_i likewise over J2. Rejecting both members of a
 * couple raises InternalInconsistency.
 */
DecisionVector closed_test(const HypothesisFamily& family, const LocalTestRule& rule);

struct EquivalenceMismatch {
    std::size_t trial = 0;
    std::vector<double> p_h;
    DecisionVector closure;
    DecisionVector single_step;
};

struct EquivalenceReport {
    std::size_t m = 0;
    std::size_t trials = 0;
    std::size_t mismatches = 0;
    std::size_t resampled = 0; ///< draws rejected for landing within 1e-9 of a level
    double single_step_level = 0.0;
    std::optional<EquivalenceMismatch> first_mismatch;
};

inline constexpr double kThresholdExclusion = 1e-9;

/**
 * Draws `trials` complementary p-vectors and compares the closure engine
 * with the single-step rule at (alpha(M), 1 - alpha(M)). The family is a
 * template: it must have free-combination structure (PreconditionViolation
 * otherwise); its p-values are not used.
 */
EquivalenceReport verify_theorem_equivalence(const HypothesisFamily& family, const LocalTestRule& rule,
                                             std::size_t trials, std::uint64_t seed);

/// Standardized critical values of the closure procedure for the nested one-sided normal pair.
struct NestedClosureThresholds {
    double reject_h1 = 0.0; ///< reject h1 iff sqrt(n)(x̄ - theta1) < reject_h1 (= -c_{alpha/2})
    double reject_k1 = 0.0; ///< reject k1 iff sqrt(n)(x̄ - theta1) > reject_k1 (= c_alpha)
    double reject_h2 = 0.0; ///< reject h2 iff sqrt(n)(x̄ - theta2) < reject_h2 (= -c_alpha)
    double reject_k2 = 0.0; ///< reject k2 iff sqrt(n)(x̄ - theta2) > reject_k2 (= c_{alpha/2})
};

NestedClosureThresholds nested_closure_thresholds(double alpha);

/// Closure procedure for h_i: theta >= theta_i (i = 1, 2), written out in closed form.
DecisionVector counterexample_procedure(double xbar, double n, double theta1, double theta2, double alpha);

/// Bonferroni single-step procedure (M = 2) on the same nested p-values.
DecisionVector nested_bonferroni_procedure(double xbar, double n, double theta1, double theta2, double alpha);

struct DisagreementInterval {
    std::size_t index = 0; ///< 0-based couple index
    double z_lo = 0.0;     ///< standardized scale sqrt(n)(x̄ - theta_index)
    double z_hi = 0.0;
    bool lo_closed = false;
    bool hi_closed = false;
    double xbar_lo = 0.0;
    double xbar_hi = 0.0;
};

struct ComparisonRow {
    double xbar = 0.0;
    DecisionVector closure;
    DecisionVector bonferroni;
    bool agree() const { return closure == bonferroni; }
};

struct CounterexampleComparison {
    NestedClosureThresholds thresholds;
    std::vector<ComparisonRow> rows;
    /// Where the two procedures must differ, from the critical values.
    std::vector<DisagreementInterval> analytic_intervals;
    /// Maximal runs of disagreeing grid points, [first, last] x̄ of each run.
    std::vector<std::pair<double, double>> grid_intervals;
};

CounterexampleComparison counterexample_vs_bonferroni(std::span<const double> xbar_grid, double n, double theta1,
                                                      double theta2, double alpha);

} // namespace triadic
