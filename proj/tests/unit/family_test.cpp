#include <gtest/gtest.h>

#include <random>

#include "triadic/error.hpp"
#include "triadic/family.hpp"
#include "triadic/models.hpp"
#include "triadic/procedures.hpp"

using namespace triadic;

namespace {

HypothesisFamily nested_two() {
    // h_i: theta >= theta_i with theta1 = 0 < theta2 = 1.
    return HypothesisFamily::structured({PValuePair::from_h(0.5), PValuePair::from_h(0.5)},
                                        threshold_oracle({0.0, 1.0}));
}

} // namespace

TEST(PValuePair, RangeIsChecked) {
    EXPECT_NO_THROW(PValuePair(0.0, 1.0));
    EXPECT_NO_THROW(PValuePair(1.0, 0.0));
    EXPECT_THROW(PValuePair(-0.1, 1.0), Error);
    EXPECT_THROW(PValuePair(0.5, 1.2), Error);
    EXPECT_THROW(PValuePair::from_h(std::nan("")), Error);
}

TEST(PValuePair, ComplementarityFlag) {
    EXPECT_TRUE(PValuePair::from_h(0.3).complementary());
    EXPECT_TRUE(PValuePair(0.25, 0.75 + 5e-13).complementary());
    EXPECT_FALSE(PValuePair(0.25, 0.7).complementary());
}

TEST(HypothesisFamily, FeasibilityOnlyOnDisjointSets) {
    const HypothesisFamily f = nested_two();
    EXPECT_THROW(f.feasible(0b01, 0b01), Error);
    EXPECT_THROW(f.feasible(0b100, 0), Error);
    EXPECT_TRUE(f.feasible(0b01, 0b10));  // h1 and k2: theta in [0, 1)
    EXPECT_FALSE(f.feasible(0b10, 0b01)); // h2 and k1: theta >= 1 and theta < 0
}

TEST(IsFreeCombination, FreeCombinationStructure) {
    std::vector<PValuePair> pairs(3, PValuePair::from_h(0.5));
    EXPECT_TRUE(is_free_combination(HypothesisFamily::free_combination(pairs)));
}

TEST(IsFreeCombination, NestedFamilyFails) {
    EXPECT_FALSE(is_free_combination(nested_two()));
}

TEST(IsFreeCombination, SingleCoupleWithBothCellsNonEmpty) {
    const auto f = HypothesisFamily::structured({PValuePair::from_h(0.2)}, threshold_oracle({0.0}));
    EXPECT_TRUE(is_free_combination(f));
}

TEST(IsFreeCombination, SizeLimit) {
    std::vector<PValuePair> pairs(25, PValuePair::from_h(0.5));
    try {
        is_free_combination(HypothesisFamily::free_combination(pairs));
        FAIL() << "expected SizeLimitExceeded";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::SizeLimitExceeded);
    }
}

TEST(IsFreeCombination, OracleBackedFreeFamily) {
    // Independent coordinates expressed through an oracle: everything disjoint is feasible.
    std::vector<PValuePair> pairs(6, PValuePair::from_h(0.5));
    const auto f = HypothesisFamily::structured(pairs, [](IndexMask, IndexMask) { return true; });
    EXPECT_TRUE(is_free_combination(f));
}

TEST(PartitionFromDecisions, MixedLabels) {
    const PartitionSets s = partition_from_decisions(DecisionVector{Decision::D1, Decision::D2, Decision::D3});
    EXPECT_EQ(s.l, (IndexSet{0}));
    EXPECT_EQ(s.u_bar, (IndexSet{1}));
    EXPECT_EQ(s.g, (IndexSet{2}));
    EXPECT_EQ(s.u, (IndexSet{0, 2}));
    EXPECT_EQ(s.l_bar, (IndexSet{1, 2}));
    EXPECT_TRUE(s.satisfies_invariants());
}

TEST(PartitionFromDecisions, AllUncertain) {
    const PartitionSets s = partition_from_decisions(DecisionVector(4, Decision::D3));
    EXPECT_EQ(s.g, (IndexSet{0, 1, 2, 3}));
    EXPECT_EQ(s.u, (IndexSet{0, 1, 2, 3}));
    EXPECT_TRUE(s.l.empty());
}

TEST(PartitionFromDecisions, AllRejected) {
    const PartitionSets s = partition_from_decisions(DecisionVector(3, Decision::D2));
    EXPECT_EQ(s.u_bar, (IndexSet{0, 1, 2}));
    EXPECT_TRUE(s.g.empty());
    EXPECT_TRUE(s.l.empty());
}

TEST(PartitionFromDecisions, RandomVectorsSatisfyInvariants) {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> label(0, 2);
    std::uniform_int_distribution<std::size_t> size(0, 40);
    for (int trial = 0; trial < 2000; ++trial) {
        DecisionVector d(size(rng));
        for (auto& x : d) x = static_cast<Decision>(label(rng));
        const PartitionSets s = partition_from_decisions(d);
        ASSERT_TRUE(s.satisfies_invariants());
        ASSERT_TRUE(s.inclusion_holds());
        ASSERT_EQ(decisions_from_partition(s), d);
    }
}

TEST(PartitionSets, InclusionFailureIsStillConsistent) {
    // Index 0 has both h and k rejected: only possible without complementarity.
    const PartitionSets s = PartitionSets::from_rejections(2, {0}, {0, 1});
    EXPECT_FALSE(s.inclusion_holds());
    EXPECT_TRUE(s.satisfies_invariants());
    EXPECT_THROW(decisions_from_partition(s), Error);
}

TEST(PartitionSets, DetectsBrokenSets) {
    PartitionSets s = partition_from_decisions(DecisionVector{Decision::D1, Decision::D3});
    s.g.push_back(0);
    EXPECT_FALSE(s.satisfies_invariants());
}

TEST(SymmetricThreshold, ComplementaryPairsGiveInclusion) {
    // For tau <= 1/2 applied to both p_h and p_k = 1 - p_h, no index can reject both.
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 5000; ++trial) {
        const double tau = 0.5 * unif(rng);
        IndexSet rh, rk;
        for (std::size_t i = 0; i < 8; ++i) {
            const PValuePair p = PValuePair::from_h(unif(rng));
            if (p.p_h() < tau) rh.push_back(i);
            if (p.p_k() < tau) rk.push_back(i);
        }
        ASSERT_TRUE(PartitionSets::from_rejections(8, rh, rk).inclusion_holds());
    }
}

TEST(TruthAssignment, Partition) {
    const auto t = TruthAssignment::from_true_hypotheses(4, {0, 3});
    EXPECT_EQ(t.true_hypotheses(), (IndexSet{0, 3}));
    EXPECT_EQ(t.true_alternatives(), (IndexSet{1, 2}));
    EXPECT_THROW(TruthAssignment::from_true_hypotheses(2, {2}), Error);
}

TEST(Masks, RoundTrip) {
    EXPECT_EQ(from_mask(to_mask({0, 3, 5})), (IndexSet{0, 3, 5}));
    EXPECT_EQ(to_mask({}), 0u);
}

TEST(Decision, Labels) {
    EXPECT_EQ(to_string(Decision::D2), "D2");
    EXPECT_EQ(parse_decision("D3"), Decision::D3);
    EXPECT_THROW(parse_decision("D4"), Error);
}
