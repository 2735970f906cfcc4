#include "triadic/risk.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include "triadic/closure.hpp"
#include "triadic/error.hpp"
#include "triadic/exact_sum.hpp"

namespace triadic {

namespace {

constexpr std::size_t kBlockSize = 2048;

void add_loss_terms(ExactSum& sum, const OutcomeCounts& counts, const LossSpec& spec) {
    sum.add_product(spec.a + spec.l, counts.h_d2);
    sum.add_product(spec.l, counts.h_d3);
    sum.add_product(spec.c + spec.b, counts.k_d1);
    sum.add_product(spec.b, counts.k_d3);
}

void add_rhs_terms(ExactSum& sum, const OutcomeCounts& counts, const LossSpec& spec) {
    sum.add(static_cast<double>(counts.directional()));
    sum.add_product(spec.b, counts.uncertain());
}

struct BlockTotals {
    std::uint64_t h_d2 = 0, h_d2_sq = 0;
    std::uint64_t k_d1 = 0, k_d1_sq = 0;
    std::uint64_t g = 0, g_sq = 0;
    std::uint64_t fwer = 0;
    ExactSum loss;    // exact sum of every replicate's table cells
    ExactSum loss_sq; // sum of squared rounded per-replicate losses
    ExactSum rhs;
    bool identity_exact = true;

    void merge(const BlockTotals& o) {
        h_d2 += o.h_d2;
        h_d2_sq += o.h_d2_sq;
        k_d1 += o.k_d1;
        k_d1_sq += o.k_d1_sq;
        g += o.g;
        g_sq += o.g_sq;
        fwer += o.fwer;
        loss.merge(o.loss);
        loss_sq.merge(o.loss_sq);
        rhs.merge(o.rhs);
        identity_exact = identity_exact && o.identity_exact;
    }
};

double mean_se(double sum, double sum_sq, std::size_t r) {
    if (r < 2) {
        return 0.0;
    }
    const double rr = static_cast<double>(r);
    const double mean = sum / rr;
    const double var = std::max(0.0, (sum_sq - rr * mean * mean) / (rr - 1.0));
    return std::sqrt(var / rr);
}

std::size_t model_size(const SimulationModel& model) {
    return std::visit(
        [](const auto& m) -> std::size_t {
            if constexpr (std::is_same_v<std::decay_t<decltype(m)>, GaussianMeansModel>) {
                return m.size();
            } else {
                return 2;
            }
        },
        model);
}

DecisionVector simulate_decisions(const SimulationModel& model, const ProcedureSpec& procedure, std::uint64_t seed,
                                  std::uint64_t replicate) {
    if (const auto* gm = std::get_if<GaussianMeansModel>(&model)) {
        const std::vector<double> means = simulate_sample_means(*gm, seed, replicate);
        return apply_procedure(procedure, gaussian_means_pvalues(*gm, means));
    }
    const auto& nm = std::get<NestedNormalModel>(model);
    return apply_procedure(procedure, nm, simulate_sample_mean(nm, seed, replicate));
}

} // namespace

LossSpec LossSpec::identity(double b) {
    require(b >= 0.0 && b <= 1.0, ErrorKind::InvalidArgument, "identity loss needs 0 <= b <= 1");
    return LossSpec{1.0 - b, b, 1.0 - b, b};
}

void LossSpec::validate() const {
    for (double v : {a, b, c, l}) {
        require(std::isfinite(v) && v >= 0.0, ErrorKind::InvalidArgument, "losses must be finite and non-negative");
    }
}

bool LossSpec::identity_mode() const noexcept {
    return a == c && b == l && a + b == 1.0;
}

OutcomeCounts count_outcomes(const TruthAssignment& truth, std::span<const Decision> d) {
    require(d.size() == truth.size(), ErrorKind::LengthMismatch, "decision and truth lengths differ");
    OutcomeCounts out;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (truth.hypothesis_true(i)) {
            out.h_d2 += d[i] == Decision::D2;
            out.h_d3 += d[i] == Decision::D3;
        } else {
            out.k_d1 += d[i] == Decision::D1;
            out.k_d3 += d[i] == Decision::D3;
        }
    }
    return out;
}

double loss(const TruthAssignment& truth, std::span<const Decision> d, const LossSpec& spec) {
    spec.validate();
    ExactSum sum;
    add_loss_terms(sum, count_outcomes(truth, d), spec);
    return sum.value();
}

double decomposition_rhs(const OutcomeCounts& counts, const LossSpec& spec) {
    ExactSum sum;
    add_rhs_terms(sum, counts, spec);
    return sum.value();
}

bool decomposition_check(std::span<const ReplicateOutcome> replicates, const LossSpec& spec) {
    spec.validate();
    require(spec.identity_mode(), ErrorKind::IdentityModeRequired,
            "the three-term decomposition needs a = c, b = l and a + b = 1");
    for (const ReplicateOutcome& r : replicates) {
        if (loss(r.truth, r.decisions, spec) != decomposition_rhs(count_outcomes(r.truth, r.decisions), spec)) {
            return false;
        }
    }
    return true;
}

std::string_view to_string(ProcedureKind kind) noexcept {
    switch (kind) {
        case ProcedureKind::SingleStep: return "single-step";
        case ProcedureKind::BauerBonferroni: return "bauer";
        case ProcedureKind::ClosedTest: return "closure";
        case ProcedureKind::NestedClosure: return "nested-closure";
    }
    return "?";
}

ProcedureKind parse_procedure(std::string_view text) {
    if (text == "single-step") return ProcedureKind::SingleStep;
    if (text == "bauer") return ProcedureKind::BauerBonferroni;
    if (text == "closure") return ProcedureKind::ClosedTest;
    if (text == "nested-closure") return ProcedureKind::NestedClosure;
    throw Error(ErrorKind::ConfigError, "unknown procedure '" + std::string(text) + "'");
}

DecisionVector apply_procedure(const ProcedureSpec& procedure, const HypothesisFamily& family) {
    switch (procedure.kind) {
        case ProcedureKind::SingleStep:
            return single_step(family, calibrate(procedure.calibration, procedure.alpha, family.size()));
        case ProcedureKind::BauerBonferroni:
            return decisions_from_partition(bauer_bonferroni(family, procedure.alpha));
        case ProcedureKind::ClosedTest:
            return closed_test(family, LocalTestRule::from_calibration(procedure.calibration, procedure.alpha));
        case ProcedureKind::NestedClosure:
            throw Error(ErrorKind::PreconditionViolation, "nested-closure only applies to the nested normal model");
    }
    throw Error(ErrorKind::InvalidArgument, "unknown procedure");
}

DecisionVector apply_procedure(const ProcedureSpec& procedure, const NestedNormalModel& model, double xbar) {
    if (procedure.kind == ProcedureKind::NestedClosure) {
        return counterexample_procedure(xbar, model.n(), model.theta1(), model.theta2(), procedure.alpha);
    }
    return apply_procedure(procedure, nested_pvalues(model, xbar));
}

RiskReport monte_carlo_risk(const SimulationModel& model, const ProcedureSpec& procedure, const LossSpec& spec,
                            const MonteCarloOptions& options) {
    spec.validate();
    require(options.replicates >= 1, ErrorKind::InvalidArgument, "replicates must be >= 1");
    require(procedure.alpha > 0.0 && procedure.alpha < 1.0, ErrorKind::InvalidLevel, "alpha must lie in (0, 1)");
    if (procedure.kind == ProcedureKind::NestedClosure) {
        require(std::holds_alternative<NestedNormalModel>(model), ErrorKind::PreconditionViolation,
                "nested-closure only applies to the nested normal model");
    }

    const TruthAssignment truth =
        std::visit([](const auto& m) { return m.truth(); }, model);
    const bool identity = spec.identity_mode();

    const std::size_t n_blocks = (options.replicates + kBlockSize - 1) / kBlockSize;
    std::vector<BlockTotals> blocks(n_blocks);
    std::atomic<std::size_t> next_block{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};

    auto work = [&]() {
        try {
            for (std::size_t b = next_block++; b < n_blocks && !failed; b = next_block++) {
                BlockTotals& t = blocks[b];
                const std::size_t first = b * kBlockSize;
                const std::size_t last = std::min(options.replicates, first + kBlockSize);
                for (std::size_t r = first; r < last; ++r) {
                    const DecisionVector d = simulate_decisions(model, procedure, options.seed, r);
                    const OutcomeCounts counts = count_outcomes(truth, d);

                    ExactSum w;
                    add_loss_terms(w, counts, spec);
                    const double w_value = w.value();
                    t.loss.merge(w);
                    t.loss_sq.add(w_value * w_value);

                    const auto h_d2 = static_cast<std::uint64_t>(counts.h_d2);
                    const auto k_d1 = static_cast<std::uint64_t>(counts.k_d1);
                    const auto g = static_cast<std::uint64_t>(counts.uncertain());
                    t.h_d2 += h_d2;
                    t.h_d2_sq += h_d2 * h_d2;
                    t.k_d1 += k_d1;
                    t.k_d1_sq += k_d1 * k_d1;
                    t.g += g;
                    t.g_sq += g * g;
                    t.fwer += fwer_violation(d, truth) ? 1 : 0;

                    if (identity) {
                        add_rhs_terms(t.rhs, counts, spec);
                        t.identity_exact = t.identity_exact && w_value == decomposition_rhs(counts, spec);
                    }
                }
            }
        } catch (...) {
            if (!failed.exchange(true)) {
                failure = std::current_exception();
            }
        }
    };

    const std::size_t workers = std::clamp<std::size_t>(options.workers, 1, n_blocks);
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    BlockTotals total;
    for (const BlockTotals& t : blocks) {
        total.merge(t);
    }

    const std::size_t r = options.replicates;
    const double rr = static_cast<double>(r);
    RiskReport report;
    report.m = model_size(model);
    report.replicates = r;
    report.directional_h = static_cast<double>(total.h_d2) / rr;
    report.directional_k = static_cast<double>(total.k_d1) / rr;
    report.expected_g = static_cast<double>(total.g) / rr;
    report.risk = total.loss.value() / rr;
    report.fwer = static_cast<double>(total.fwer) / rr;

    report.std_errors.directional_h =
        mean_se(static_cast<double>(total.h_d2), static_cast<double>(total.h_d2_sq), r);
    report.std_errors.directional_k =
        mean_se(static_cast<double>(total.k_d1), static_cast<double>(total.k_d1_sq), r);
    report.std_errors.expected_g = mean_se(static_cast<double>(total.g), static_cast<double>(total.g_sq), r);
    report.std_errors.risk = mean_se(total.loss.value(), total.loss_sq.value(), r);
    report.std_errors.fwer = std::sqrt(report.fwer * (1.0 - report.fwer) / rr);

    report.identity_mode = identity;
    if (identity) {
        report.decomposition_exact = total.identity_exact;
        report.decomposition_residual = report.risk - total.rhs.value() / rr;
    }
    report.independence_assumed =
        assumes_independence(procedure.calibration)
        && (procedure.kind == ProcedureKind::SingleStep || procedure.kind == ProcedureKind::ClosedTest);
    return report;
}

} // namespace triadic
