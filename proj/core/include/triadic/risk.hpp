#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <variant>

#include "triadic/family.hpp"
#include "triadic/models.hpp"
#include "triadic/procedures.hpp"

namespace triadic {

/**
 * Per-index losses, uniform over indices.
 *
 *              d1      d2      d3
 *   h_i true   0       a + l   l
 *   k_i true   c + b   0       b
 */
struct LossSpec {
    double a = 0.5; ///< wrong rejection of h_i
    double b = 0.5; ///< wrong acceptance of h_i
    double c = 0.5; ///< wrong rejection of k_i
    double l = 0.5; ///< wrong acceptance of k_i

    /// a = c = 1 - b, l = b.
    static LossSpec identity(double b);

    /// Throws InvalidArgument for negative or non-finite entries.
    void validate() const;

    /// a == c, b == l and a + b == 1 in floating point. The three-term risk identity is exact only here.
    bool identity_mode() const noexcept;
};

/// Additive loss: sum of the table cells, rounded once from the exact sum.
double loss(const TruthAssignment& truth, std::span<const Decision> d, const LossSpec& spec);

/// Counts behind one loss evaluation.
struct OutcomeCounts {
    std::int64_t h_d2 = 0; ///< true hypothesis rejected (directional error)
    std::int64_t h_d3 = 0;
    std::int64_t k_d1 = 0; ///< true alternative rejected (directional error)
    std::int64_t k_d3 = 0;

    std::int64_t directional() const noexcept { return h_d2 + k_d1; }
    std::int64_t uncertain() const noexcept { return h_d3 + k_d3; }
};

OutcomeCounts count_outcomes(const TruthAssignment& truth, std::span<const Decision> d);

struct ReplicateOutcome {
    TruthAssignment truth;
    DecisionVector decisions;
};

/**
 * Checks, for every replicate, that the loss equals
 *   (#directional errors) + b * |G|
 * with no tolerance. Throws IdentityModeRequired outside identity mode.
 */
bool decomposition_check(std::span<const ReplicateOutcome> replicates, const LossSpec& spec);

/// The three-term right-hand side for one replicate, rounded once.
double decomposition_rhs(const OutcomeCounts& counts, const LossSpec& spec);

enum class ProcedureKind {
    SingleStep,     ///< three-decision rule at (alpha(M), 1 - alpha(M))
    BauerBonferroni,
    ClosedTest,     ///< closure engine with union-intersection local tests
    NestedClosure,  ///< closed-form closure procedure; nested model only
};

std::string_view to_string(ProcedureKind kind) noexcept;
ProcedureKind parse_procedure(std::string_view text);

struct ProcedureSpec {
    ProcedureKind kind = ProcedureKind::SingleStep;
    CalibrationKind calibration = CalibrationKind::Bonferroni;
    double alpha = kDefaultAlpha;
};

using SimulationModel = std::variant<GaussianMeansModel, NestedNormalModel>;

/// Applies a procedure to one observed sample of the model.
DecisionVector apply_procedure(const ProcedureSpec& procedure, const HypothesisFamily& family);
DecisionVector apply_procedure(const ProcedureSpec& procedure, const NestedNormalModel& model, double xbar);

struct MonteCarloOptions {
    std::size_t replicates = 10000;
    std::uint64_t seed = 0;
    std::size_t workers = 1;
};

struct RiskStdErrors {
    double directional_h = 0.0;
    double directional_k = 0.0;
    double expected_g = 0.0;
    double risk = 0.0;
    double fwer = 0.0;
};

struct RiskReport {
    std::size_t m = 0;
    std::size_t replicates = 0;
    double directional_h = 0.0; ///< sum over true h_i of P(d2)
    double directional_k = 0.0; ///< sum over true k_i of P(d1)
    double expected_g = 0.0;    ///< E|G|
    double risk = 0.0;          ///< E w(theta, delta)
    double fwer = 0.0;
    RiskStdErrors std_errors;
    bool identity_mode = false;
    /// Identity mode only: every replicate satisfied the three-term identity exactly.
    bool decomposition_exact = false;
    /// Identity mode only: risk minus (sum of directional errors + b * sum |G|) / R, from exact sums.
    double decomposition_residual = 0.0;
    bool independence_assumed = false;
};

/**
 * Simulates `replicates` samples, applies the procedure and averages loss,
 * |G|, directional errors and the familywise error indicator. Totals are
 * exact sums, so the report is bit-identical for a given seed regardless of
 * the worker count.
 */
RiskReport monte_carlo_risk(const SimulationModel& model, const ProcedureSpec& procedure, const LossSpec& spec,
                            const MonteCarloOptions& options);

} // namespace triadic
