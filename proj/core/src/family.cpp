#include "triadic/family.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "triadic/error.hpp"

namespace triadic {

namespace {

bool is_probability(double p) {
    return p >= 0.0 && p <= 1.0; // false for NaN
}

IndexSet complement(std::size_t m, const IndexSet& set) {
    IndexSet out;
    out.reserve(m - std::min(m, set.size()));
    std::size_t next = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (next < set.size() && set[next] == i) {
            ++next;
        } else {
            out.push_back(i);
        }
    }
    return out;
}

IndexSet set_difference(const IndexSet& a, const IndexSet& b) {
    IndexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

IndexSet normalized(IndexSet set) {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    return set;
}

IndexMask full_mask(std::size_t m) {
    return m >= 64 ? ~IndexMask{0} : (IndexMask{1} << m) - 1;
}

} // namespace

PValuePair::PValuePair(double p_h, double p_k) : p_h_(p_h), p_k_(p_k) {
    require(is_probability(p_h), ErrorKind::InvalidArgument,
            "p_h must lie in [0, 1], got " + std::to_string(p_h));
    require(is_probability(p_k), ErrorKind::InvalidArgument,
            "p_k must lie in [0, 1], got " + std::to_string(p_k));
}

PValuePair PValuePair::from_h(double p_h) {
    require(is_probability(p_h), ErrorKind::InvalidArgument,
            "p_h must lie in [0, 1], got " + std::to_string(p_h));
    return PValuePair(p_h, 1.0 - p_h);
}

bool PValuePair::complementary() const noexcept {
    return std::fabs(p_h_ + p_k_ - 1.0) <= kComplementarityTolerance;
}

HypothesisFamily::HypothesisFamily(std::vector<PValuePair> pairs, FeasibilityOracle oracle)
    : pairs_(std::move(pairs)), oracle_(std::move(oracle)) {}

HypothesisFamily HypothesisFamily::free_combination(std::vector<PValuePair> pairs) {
    return HypothesisFamily(std::move(pairs), {});
}

HypothesisFamily HypothesisFamily::structured(std::vector<PValuePair> pairs, FeasibilityOracle oracle) {
    require(static_cast<bool>(oracle), ErrorKind::InvalidArgument, "structured family needs an oracle");
    require(pairs.size() <= kMaxOracleFamilySize, ErrorKind::SizeLimitExceeded,
            "structured families are limited to " + std::to_string(kMaxOracleFamilySize) + " couples");
    return HypothesisFamily(std::move(pairs), std::move(oracle));
}

bool HypothesisFamily::feasible(IndexMask j1, IndexMask j2) const {
    require((j1 & j2) == 0, ErrorKind::InvalidArgument, "feasibility is only defined for disjoint J1, J2");
    if (size() < 64) {
        require(((j1 | j2) & ~full_mask(size())) == 0, ErrorKind::InvalidArgument,
                "index mask exceeds family size");
    }
    if (!oracle_) {
        return true;
    }
    return oracle_(j1, j2);
}

bool HypothesisFamily::all_complementary() const noexcept {
    return std::all_of(pairs_.begin(), pairs_.end(), [](const PValuePair& p) { return p.complementary(); });
}

IndexSet HypothesisFamily::non_complementary_indices() const {
    IndexSet out;
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
        if (!pairs_[i].complementary()) {
            out.push_back(i);
        }
    }
    return out;
}

HypothesisFamily HypothesisFamily::with_pairs(std::vector<PValuePair> pairs) const {
    require(pairs.size() == pairs_.size(), ErrorKind::LengthMismatch, "replacement pairs must keep the family size");
    return HypothesisFamily(std::move(pairs), oracle_);
}

std::string_view to_string(Decision d) noexcept {
    switch (d) {
        case Decision::D1: return "D1";
        case Decision::D2: return "D2";
        case Decision::D3: return "D3";
    }
    return "?";
}

Decision parse_decision(std::string_view text) {
    if (text == "D1") return Decision::D1;
    if (text == "D2") return Decision::D2;
    if (text == "D3") return Decision::D3;
    throw Error(ErrorKind::ParseError, "unknown decision label '" + std::string(text) + "'");
}

PartitionSets PartitionSets::from_rejections(std::size_t m, IndexSet rejected_h, IndexSet rejected_k) {
    PartitionSets s;
    s.m = m;
    s.u_bar = normalized(std::move(rejected_h));
    s.l = normalized(std::move(rejected_k));
    require(s.u_bar.empty() || s.u_bar.back() < m, ErrorKind::InvalidArgument, "index out of range");
    require(s.l.empty() || s.l.back() < m, ErrorKind::InvalidArgument, "index out of range");
    s.u = complement(m, s.u_bar);
    s.l_bar = complement(m, s.l);
    s.g = set_difference(s.u, s.l);
    return s;
}

bool PartitionSets::inclusion_holds() const {
    return std::includes(u.begin(), u.end(), l.begin(), l.end());
}

bool PartitionSets::satisfies_invariants() const {
    auto sorted_unique = [this](const IndexSet& s) {
        return std::is_sorted(s.begin(), s.end()) && std::adjacent_find(s.begin(), s.end()) == s.end()
               && (s.empty() || s.back() < m);
    };
    for (const IndexSet* s : {&u, &u_bar, &l, &l_bar, &g}) {
        if (!sorted_unique(*s)) {
            return false;
        }
    }
    if (u != complement(m, u_bar) || l_bar != complement(m, l)) {
        return false;
    }
    if (g != set_difference(u, l)) {
        return false;
    }
    if (inclusion_holds()) {
        std::vector<int> hits(m, 0);
        for (const IndexSet* s : {&u_bar, &l, &g}) {
            for (std::size_t i : *s) {
                ++hits[i];
            }
        }
        return std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
    }
    return true;
}

PartitionSets partition_from_decisions(std::span<const Decision> d) {
    IndexSet rejected_h;
    IndexSet rejected_k;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] == Decision::D2) {
            rejected_h.push_back(i);
        } else if (d[i] == Decision::D1) {
            rejected_k.push_back(i);
        }
    }
    return PartitionSets::from_rejections(d.size(), std::move(rejected_h), std::move(rejected_k));
}

DecisionVector decisions_from_partition(const PartitionSets& sets) {
    require(sets.inclusion_holds(), ErrorKind::ComplementarityViolation,
            "L is not a subset of U: some index has both h_i and k_i rejected");
    DecisionVector d(sets.m, Decision::D3);
    for (std::size_t i : sets.u_bar) {
        d[i] = Decision::D2;
    }
    for (std::size_t i : sets.l) {
        d[i] = Decision::D1;
    }
    return d;
}

TruthAssignment::TruthAssignment(std::vector<bool> hypothesis_true)
    : hypothesis_true_(std::move(hypothesis_true)) {}

TruthAssignment TruthAssignment::from_true_hypotheses(std::size_t m, const IndexSet& true_hypotheses) {
    std::vector<bool> flags(m, false);
    for (std::size_t i : true_hypotheses) {
        require(i < m, ErrorKind::InvalidArgument, "true hypothesis index out of range");
        flags[i] = true;
    }
    return TruthAssignment(std::move(flags));
}

IndexSet TruthAssignment::true_hypotheses() const {
    IndexSet out;
    for (std::size_t i = 0; i < size(); ++i) {
        if (hypothesis_true_[i]) out.push_back(i);
    }
    return out;
}

IndexSet TruthAssignment::true_alternatives() const {
    IndexSet out;
    for (std::size_t i = 0; i < size(); ++i) {
        if (!hypothesis_true_[i]) out.push_back(i);
    }
    return out;
}

bool is_free_combination(const HypothesisFamily& family) {
    const std::size_t m = family.size();
    require(m <= kMaxFreeCombinationCheckSize, ErrorKind::SizeLimitExceeded,
            "exhaustive free-combination check is limited to m <= "
                + std::to_string(kMaxFreeCombinationCheckSize));
    if (family.has_free_combination_structure()) {
        return true;
    }
    const IndexMask all = full_mask(m);
    for (IndexMask p = 0; p <= all; ++p) {
        if (!family.feasible(p, all & ~p)) {
            return false;
        }
    }
    return true;
}

IndexMask to_mask(const IndexSet& set) {
    IndexMask mask = 0;
    for (std::size_t i : set) {
        require(i < 64, ErrorKind::SizeLimitExceeded, "index does not fit in a 64-bit mask");
        mask |= IndexMask{1} << i;
    }
    return mask;
}

IndexSet from_mask(IndexMask mask) {
    IndexSet out;
    while (mask != 0) {
        out.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
        mask &= mask - 1;
    }
    return out;
}

} // namespace triadic
