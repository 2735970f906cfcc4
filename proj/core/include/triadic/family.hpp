#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace triadic {

/// Sorted, duplicate-free list of 0-based indices. User-facing I/O adds 1.
using IndexSet = std::vector<std::size_t>;

/// Bit i set means index i belongs to the set. Used for intersection enumeration.
using IndexMask = std::uint64_t;

inline constexpr double kComplementarityTolerance = 1e-12;

/**
 * p-values for one hypothesis/alternative couple (h_i, k_i).
 *
 * Small p_h is evidence that h_i is false; small p_k is evidence that the
 * alternative k_i is false. When the closures of the two parameter regions
 * touch, the pair is complementary and p_h + p_k = 1.
 */
class PValuePair {
public:
    PValuePair(double p_h, double p_k);

    /// The complementary pair (p_h, 1 - p_h).
    static PValuePair from_h(double p_h);

    double p_h() const noexcept { return p_h_; }
    double p_k() const noexcept { return p_k_; }

    bool complementary() const noexcept;

private:
    double p_h_;
    double p_k_;
};

/**
 * Says which intersections of hypotheses (J1) and alternatives (J2) are
 * non-empty as parameter regions. Only ever called with disjoint masks.
 */
using FeasibilityOracle = std::function<bool(IndexMask j1, IndexMask j2)>;

/// Maximum family size for a structured (oracle-backed) family.
inline constexpr std::size_t kMaxOracleFamilySize = 64;

/**
 * M couples of p-values plus the structure of the parameter space.
 *
 * A family without an oracle satisfies free combination: every disjoint
 * (J1, J2) is feasible. Immutable after construction.
 */
class HypothesisFamily {
public:
    static HypothesisFamily free_combination(std::vector<PValuePair> pairs);
    static HypothesisFamily structured(std::vector<PValuePair> pairs, FeasibilityOracle oracle);

    std::size_t size() const noexcept { return pairs_.size(); }
    std::span<const PValuePair> pairs() const noexcept { return pairs_; }
    const PValuePair& operator[](std::size_t i) const { return pairs_[i]; }

    bool has_free_combination_structure() const noexcept { return !oracle_; }

    /// Consults the oracle. Throws InvalidArgument if j1 and j2 overlap or reach past size().
    bool feasible(IndexMask j1, IndexMask j2) const;

    bool all_complementary() const noexcept;
    IndexSet non_complementary_indices() const;

    /// Same structure, different evidence. Sizes must match.
    HypothesisFamily with_pairs(std::vector<PValuePair> pairs) const;

private:
    HypothesisFamily(std::vector<PValuePair> pairs, FeasibilityOracle oracle);

    std::vector<PValuePair> pairs_;
    FeasibilityOracle oracle_;
};

/// Three-decision labels, one per couple.
enum class Decision : std::uint8_t {
    D1, ///< h_i significantly true (k_i rejected)
    D2, ///< h_i significantly false (h_i rejected)
    D3, ///< both accepted: insignificant, in the uncertainty zone
};

using DecisionVector = std::vector<Decision>;

std::string_view to_string(Decision d) noexcept;
Decision parse_decision(std::string_view text);

/**
 * Index sets derived from one run of a procedure.
 *
 * u / u_bar: hypotheses accepted / rejected. l / l_bar: alternatives
 * rejected / accepted. g = u \ l is the uncertainty zone.
 */
struct PartitionSets {
    std::size_t m = 0;
    IndexSet u;
    IndexSet u_bar;
    IndexSet l;
    IndexSet l_bar;
    IndexSet g;

    /// Builds all five sets from the rejected hypotheses and rejected alternatives.
    static PartitionSets from_rejections(std::size_t m, IndexSet rejected_h, IndexSet rejected_k);

    /// l is a subset of u: no index has both h_i and k_i rejected.
    bool inclusion_holds() const;

    /// u/u_bar and l/l_bar partition {0..m-1}, g = u \ l, and, when the
    /// inclusion holds, u_bar, l, g are disjoint with union {0..m-1}.
    bool satisfies_invariants() const;

    bool operator==(const PartitionSets&) const = default;
};

PartitionSets partition_from_decisions(std::span<const Decision> d);

/// Only valid when the inclusion holds; otherwise some index has no single label.
DecisionVector decisions_from_partition(const PartitionSets& sets);

/// Which member of a couple is true at the parameter point. Partitions {0..m-1}.
class TruthAssignment {
public:
    explicit TruthAssignment(std::vector<bool> hypothesis_true);
    static TruthAssignment from_true_hypotheses(std::size_t m, const IndexSet& true_hypotheses);

    std::size_t size() const noexcept { return hypothesis_true_.size(); }
    bool hypothesis_true(std::size_t i) const { return hypothesis_true_[i]; }
    bool alternative_true(std::size_t i) const { return !hypothesis_true_[i]; }

    IndexSet true_hypotheses() const;
    IndexSet true_alternatives() const;

private:
    std::vector<bool> hypothesis_true_;
};

/// Maximum size for the exhaustive free-combination check.
inline constexpr std::size_t kMaxFreeCombinationCheckSize = 24;

/**
 * True iff for every P subset of {0..m-1}, the intersection of h_i (i in P)
 * with k_j (j not in P) is feasible. Throws SizeLimitExceeded above 24.
 */
bool is_free_combination(const HypothesisFamily& family);

IndexMask to_mask(const IndexSet& set);
IndexSet from_mask(IndexMask mask);

} // namespace triadic
