#pragma once

#include <set>
#include <vector>

#include "isolde/rat.hpp"

namespace isolde {

using NatVec = std::vector<Nat>;

/// { base + t_1 p_1 + ... + t_r p_r : t_i >= 0 }. Zero periods are pruned
/// at construction, so every stored period is nonzero; all vectors share
/// one dimension.
struct LinearSet {
    NatVec base;
    std::vector<NatVec> periods;

    LinearSet() = default;
    LinearSet(NatVec base_, std::vector<NatVec> periods_);

    size_t dim() const { return base.size(); }

    friend bool operator==(const LinearSet& a, const LinearSet& b) {
        return a.base == b.base && a.periods == b.periods;
    }
};

/// Finite union of linear sets. No components means the empty set.
struct SemilinearSet {
    size_t dimension = 0;
    std::vector<LinearSet> components;

    SemilinearSet() = default;
    SemilinearSet(size_t dimension_, std::vector<LinearSet> components_);
};

bool contains(const LinearSet& s, const NatVec& x);
bool contains(const SemilinearSet& s, const NatVec& x);

/// Indices in T that some period of s can still move.
std::vector<size_t> free_indices(const LinearSet& s, const std::set<size_t>& T);

/// All ways to pin coordinate j of s to the given value: one linear set
/// per assignment of the periods with nonzero j-th coordinate, with those
/// periods absorbed into the base. Empty result means the value is not
/// attainable at j. Requires some period to touch j.
std::vector<LinearSet> fix_coordinate(const LinearSet& s, size_t j, Nat value);

/// All members with every coordinate <= bound, in lexicographic order,
/// without duplicates.
std::vector<NatVec> enumerate_points(const SemilinearSet& s, Nat bound);

/// Every period has at most two nonzero coordinates and no two periods in
/// one component interlace (supports i1 < j1 < i2 < j2).
bool is_stratified(const SemilinearSet& s);

}  // namespace isolde
