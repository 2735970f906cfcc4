#include "triadic/closure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "triadic/error.hpp"
#include "triadic/models.hpp"
#include "triadic/normal.hpp"

namespace triadic {

namespace {

void require_closure_size(std::size_t m) {
    require(m <= kMaxClosureFamilySize, ErrorKind::SizeLimitExceeded,
            "closure enumeration is limited to m <= " + std::to_string(kMaxClosureFamilySize) + ", got "
                + std::to_string(m));
}

void require_alpha(double alpha) {
    require(alpha > 0.0 && alpha < 1.0, ErrorKind::InvalidLevel,
            "alpha must lie in (0, 1), got " + std::to_string(alpha));
}

void require_nested_inputs(double n, double theta1, double theta2, double alpha) {
    require(theta1 < theta2, ErrorKind::InvalidOrdering, "counterexample needs theta1 < theta2");
    require(n >= 1.0, ErrorKind::InvalidArgument, "sample size must be >= 1");
    require_alpha(alpha);
}

// Visits every disjoint (j1, j2) with j1 | j2 non-empty: s runs over the
// union, j1 over the subsets of s.
template <typename Visit>
void for_each_disjoint_pair(std::size_t m, Visit&& visit) {
    const IndexMask all = (IndexMask{1} << m) - 1;
    for (IndexMask s = 1; s <= all; ++s) {
        IndexMask j1 = s;
        while (true) {
            visit(j1, s & ~j1);
            if (j1 == 0) {
                break;
            }
            j1 = (j1 - 1) & s;
        }
    }
}

double min_p(const IntersectionHypothesis& h, const HypothesisFamily& family) {
    double out = std::numeric_limits<double>::infinity();
    for (IndexMask bits = h.j1(); bits != 0; bits &= bits - 1) {
        out = std::min(out, family[static_cast<std::size_t>(std::countr_zero(bits))].p_h());
    }
    for (IndexMask bits = h.j2(); bits != 0; bits &= bits - 1) {
        out = std::min(out, family[static_cast<std::size_t>(std::countr_zero(bits))].p_k());
    }
    return out;
}

} // namespace

IntersectionHypothesis::IntersectionHypothesis(IndexMask j1, IndexMask j2) : j1_(j1), j2_(j2) {
    require((j1 & j2) == 0, ErrorKind::InvalidArgument, "J1 and J2 must be disjoint");
}

std::size_t IntersectionHypothesis::size() const noexcept {
    return static_cast<std::size_t>(std::popcount(j1_ | j2_));
}

bool IntersectionHypothesis::contains(const Member& member) const noexcept {
    if (member.index >= 64) {
        return false;
    }
    const IndexMask bit = IndexMask{1} << member.index;
    return (member.side == Side::Hypothesis ? j1_ : j2_) & bit;
}

LocalTestRule::LocalTestRule(Kind kind, double alpha, std::vector<double> levels)
    : kind_(kind), alpha_(alpha), levels_(std::move(levels)) {}

LocalTestRule LocalTestRule::bonferroni(double alpha) {
    require_alpha(alpha);
    return LocalTestRule(Kind::BonferroniSchedule, alpha, {});
}

LocalTestRule LocalTestRule::independent(double alpha) {
    require_alpha(alpha);
    return LocalTestRule(Kind::IndependentSchedule, alpha, {});
}

LocalTestRule LocalTestRule::from_calibration(CalibrationKind kind, double alpha) {
    return kind == CalibrationKind::Bonferroni ? bonferroni(alpha) : independent(alpha);
}

LocalTestRule LocalTestRule::explicit_table(std::vector<double> levels) {
    require(!levels.empty(), ErrorKind::InvalidArgument, "explicit schedule is empty");
    for (std::size_t k = 0; k < levels.size(); ++k) {
        require(levels[k] >= 0.0 && levels[k] < 1.0, ErrorKind::InvalidLevel, "schedule levels must lie in [0, 1)");
        require(k == 0 || levels[k] <= levels[k - 1], ErrorKind::InvalidArgument,
                "schedule must be non-increasing in the intersection size (increase at k = " + std::to_string(k + 1)
                    + ")");
    }
    const double first = levels.front();
    return LocalTestRule(Kind::Explicit, first, std::move(levels));
}

double LocalTestRule::level(std::size_t k) const {
    require(k >= 1, ErrorKind::InvalidArgument, "intersection size must be >= 1");
    switch (kind_) {
        case Kind::BonferroniSchedule:
            return calibrated_level(CalibrationKind::Bonferroni, alpha_, k);
        case Kind::IndependentSchedule:
            return calibrated_level(CalibrationKind::IndependentExact, alpha_, k);
        case Kind::Explicit:
            require(k <= levels_.size(), ErrorKind::SizeLimitExceeded,
                    "explicit schedule has no level for size " + std::to_string(k));
            return levels_[k - 1];
    }
    return 0.0;
}

std::vector<IntersectionHypothesis> enumerate_intersections(const HypothesisFamily& family,
                                                            std::optional<Member> containing) {
    const std::size_t m = family.size();
    require_closure_size(m);
    if (containing) {
        require(containing->index < m, ErrorKind::InvalidArgument, "member index out of range");
    }
    std::vector<IntersectionHypothesis> out;
    for_each_disjoint_pair(m, [&](IndexMask j1, IndexMask j2) {
        IntersectionHypothesis h(j1, j2);
        if (containing && !h.contains(*containing)) {
            return;
        }
        if (family.feasible(j1, j2)) {
            out.push_back(h);
        }
    });
    return out;
}

bool local_test(const IntersectionHypothesis& h, const HypothesisFamily& family, const LocalTestRule& rule) {
    return min_p(h, family) < rule.level(h.size());
}

DecisionVector closed_test(const HypothesisFamily& family, const LocalTestRule& rule) {
    const std::size_t m = family.size();
    require(m >= 1, ErrorKind::DegenerateFamily, "family has no couples");
    require_closure_size(m);

    std::vector<double> levels(m + 1, 0.0);
    for (std::size_t k = 1; k <= m; ++k) {
        levels[k] = rule.level(k);
    }

    // A member survives (is accepted) as soon as one feasible intersection containing it is accepted.
    IndexMask accepted_h = 0;
    IndexMask accepted_k = 0;
    for_each_disjoint_pair(m, [&](IndexMask j1, IndexMask j2) {
        if ((j1 & ~accepted_h) == 0 && (j2 & ~accepted_k) == 0) {
            return; // cannot change anything
        }
        if (!family.feasible(j1, j2)) {
            return;
        }
        const IntersectionHypothesis h(j1, j2);
        if (!(min_p(h, family) < levels[h.size()])) {
            accepted_h |= j1;
            accepted_k |= j2;
        }
    });

    DecisionVector d(m, Decision::D3);
    for (std::size_t i = 0; i < m; ++i) {
        const IndexMask bit = IndexMask{1} << i;
        const bool reject_h = !(accepted_h & bit);
        const bool reject_k = !(accepted_k & bit);
        if (reject_h && reject_k) {
            throw Error(ErrorKind::InternalInconsistency,
                        "closure rejected both h and k at index " + std::to_string(i + 1));
        }
        if (reject_h) {
            d[i] = Decision::D2;
        } else if (reject_k) {
            d[i] = Decision::D1;
        }
    }
    return d;
}

EquivalenceReport verify_theorem_equivalence(const HypothesisFamily& family, const LocalTestRule& rule,
                                             std::size_t trials, std::uint64_t seed) {
    const std::size_t m = family.size();
    require(m >= 1, ErrorKind::DegenerateFamily, "family has no couples");
    require(family.has_free_combination_structure(), ErrorKind::PreconditionViolation,
            "the single-step equivalence only holds under free combination");
    require(family.all_complementary(), ErrorKind::PreconditionViolation, "template family must be complementary");
    require_closure_size(m);

    EquivalenceReport report;
    report.m = m;
    report.trials = trials;
    report.single_step_level = rule.level(m);
    const ThreeWayThresholds thresholds(report.single_step_level);

    std::vector<double> boundaries;
    for (std::size_t k = 1; k <= m; ++k) {
        boundaries.push_back(rule.level(k));
        boundaries.push_back(1.0 - rule.level(k));
    }
    auto near_boundary = [&](double p) {
        return std::any_of(boundaries.begin(), boundaries.end(),
                           [p](double b) { return std::fabs(p - b) < kThresholdExclusion; });
    };

    std::vector<PValuePair> pairs;
    std::vector<double> p_h(m);
    for (std::size_t trial = 0; trial < trials; ++trial) {
        pairs.clear();
        for (std::size_t i = 0; i < m; ++i) {
            CounterStream stream(seed, trial, i);
            double p = stream.uniform();
            while (near_boundary(p)) {
                ++report.resampled;
                p = stream.uniform();
            }
            p_h[i] = p;
            pairs.push_back(PValuePair::from_h(p));
        }
        const HypothesisFamily draw = family.with_pairs(pairs);
        DecisionVector by_closure = closed_test(draw, rule);
        DecisionVector by_single_step = single_step(draw, thresholds);
        if (by_closure != by_single_step) {
            if (report.mismatches++ == 0) {
                report.first_mismatch = EquivalenceMismatch{trial, p_h, std::move(by_closure), std::move(by_single_step)};
            }
        }
    }
    return report;
}

NestedClosureThresholds nested_closure_thresholds(double alpha) {
    require_alpha(alpha);
    const double c_full = normal_critical_value(alpha);
    const double c_half = normal_critical_value(alpha / 2.0);
    return NestedClosureThresholds{-c_half, c_full, -c_full, c_half};
}

DecisionVector counterexample_procedure(double xbar, double n, double theta1, double theta2, double alpha) {
    require_nested_inputs(n, theta1, theta2, alpha);
    const NestedClosureThresholds t = nested_closure_thresholds(alpha);
    const double root_n = std::sqrt(n);
    const double z1 = root_n * (xbar - theta1);
    const double z2 = root_n * (xbar - theta2);

    auto label = [](bool reject_h, bool reject_k) {
        if (reject_h && reject_k) {
            throw Error(ErrorKind::InternalInconsistency, "both members of a couple rejected");
        }
        return reject_h ? Decision::D2 : (reject_k ? Decision::D1 : Decision::D3);
    };
    return {label(z1 < t.reject_h1, z1 > t.reject_k1), label(z2 < t.reject_h2, z2 > t.reject_k2)};
}

DecisionVector nested_bonferroni_procedure(double xbar, double n, double theta1, double theta2, double alpha) {
    require_nested_inputs(n, theta1, theta2, alpha);
    const NestedNormalModel model(theta1, n, theta1, theta2);
    return single_step(nested_pvalues(model, xbar), calibrate(CalibrationKind::Bonferroni, alpha, 2));
}

CounterexampleComparison counterexample_vs_bonferroni(std::span<const double> xbar_grid, double n, double theta1,
                                                      double theta2, double alpha) {
    require_nested_inputs(n, theta1, theta2, alpha);
    CounterexampleComparison out;
    out.thresholds = nested_closure_thresholds(alpha);

    const double root_n = std::sqrt(n);
    const double c_full = out.thresholds.reject_k1;
    const double c_half = out.thresholds.reject_k2;
    if (c_half > c_full) {
        // Index 1: closure rejects k1 on (c_a, c_{a/2}], Bonferroni needs z1 > c_{a/2}.
        out.analytic_intervals.push_back(DisagreementInterval{0, c_full, c_half, false, true,
                                                              theta1 + c_full / root_n, theta1 + c_half / root_n});
        // Index 2: closure rejects h2 on [-c_{a/2}, -c_a), Bonferroni needs z2 < -c_{a/2}.
        out.analytic_intervals.push_back(DisagreementInterval{1, -c_half, -c_full, true, false,
                                                              theta2 - c_half / root_n, theta2 - c_full / root_n});
    }

    bool in_run = false;
    for (double xbar : xbar_grid) {
        ComparisonRow row{xbar, counterexample_procedure(xbar, n, theta1, theta2, alpha),
                          nested_bonferroni_procedure(xbar, n, theta1, theta2, alpha)};
        if (!row.agree()) {
            if (!in_run) {
                out.grid_intervals.emplace_back(xbar, xbar);
                in_run = true;
            }
            out.grid_intervals.back().second = xbar;
        } else {
            in_run = false;
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

} // namespace triadic
