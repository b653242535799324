#include "isolde/semilinear.hpp"

#include <algorithm>
#include <stdexcept>

namespace isolde {

namespace {

bool is_zero(const NatVec& v) {
    return std::all_of(v.begin(), v.end(), [](Nat x) { return x == 0; });
}

void add_scaled(NatVec& acc, const NatVec& p, Nat t) {
    for (size_t i = 0; i < acc.size(); ++i) acc[i] += t * p[i];
}

}  // namespace

LinearSet::LinearSet(NatVec base_, std::vector<NatVec> periods_) : base(std::move(base_)) {
    for (auto& p : periods_) {
        if (p.size() != base.size())
            throw std::invalid_argument("LinearSet: period dimension mismatch");
        if (!is_zero(p)) periods.push_back(std::move(p));
    }
}

SemilinearSet::SemilinearSet(size_t dimension_, std::vector<LinearSet> components_)
    : dimension(dimension_), components(std::move(components_)) {
    for (const auto& c : components)
        if (c.dim() != dimension)
            throw std::invalid_argument("SemilinearSet: component dimension mismatch");
}

namespace {

// DFS over parameter choices for periods[idx..], deciding whether diff is
// a nonnegative combination.
bool combination_exists(const NatVec& diff, const std::vector<NatVec>& periods, size_t idx) {
    if (is_zero(diff)) return true;
    if (idx == periods.size()) return false;
    const NatVec& p = periods[idx];
    Nat max_t = 0;
    bool bounded = false;
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0) continue;
        const Nat t = diff[i] / p[i];
        if (!bounded || t < max_t) max_t = t;
        bounded = true;
    }
    // Every period is nonzero, so bounded always holds here.
    NatVec rest = diff;
    for (Nat t = 0; t <= max_t; ++t) {
        if (combination_exists(rest, periods, idx + 1)) return true;
        if (t < max_t)
            for (size_t i = 0; i < p.size(); ++i) rest[i] -= p[i];
    }
    return false;
}

}  // namespace

bool contains(const LinearSet& s, const NatVec& x) {
    if (x.size() != s.dim()) throw std::invalid_argument("contains: dimension mismatch");
    NatVec diff(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i] < s.base[i]) return false;
        diff[i] = x[i] - s.base[i];
    }
    return combination_exists(diff, s.periods, 0);
}

bool contains(const SemilinearSet& s, const NatVec& x) {
    return std::any_of(s.components.begin(), s.components.end(),
                       [&](const LinearSet& c) { return contains(c, x); });
}

std::vector<size_t> free_indices(const LinearSet& s, const std::set<size_t>& T) {
    std::vector<size_t> out;
    for (size_t j : T) {
        if (j >= s.dim()) throw std::invalid_argument("free_indices: index out of range");
        for (const auto& p : s.periods) {
            if (p[j] != 0) {
                out.push_back(j);
                break;
            }
        }
    }
    return out;
}

std::vector<LinearSet> fix_coordinate(const LinearSet& s, size_t j, Nat value) {
    if (j >= s.dim()) throw std::invalid_argument("fix_coordinate: index out of range");
    std::vector<size_t> touching;
    std::vector<NatVec> rest;
    for (size_t i = 0; i < s.periods.size(); ++i) {
        if (s.periods[i][j] != 0)
            touching.push_back(i);
        else
            rest.push_back(s.periods[i]);
    }
    if (touching.empty())
        throw std::invalid_argument("fix_coordinate: no period moves coordinate " +
                                    std::to_string(j));
    std::vector<LinearSet> out;
    if (value < s.base[j]) return out;

    // DFS over parameters t for the touching periods, in ascending
    // lexicographic order of (t_1, t_2, ...).
    NatVec acc = s.base;
    const Nat target = value - s.base[j];
    auto rec = [&](auto&& self, size_t idx, Nat remaining) -> void {
        if (idx == touching.size()) {
            if (remaining == 0) out.emplace_back(acc, rest);
            return;
        }
        const NatVec& p = s.periods[touching[idx]];
        const Nat max_t = remaining / p[j];
        for (Nat t = 0; t <= max_t; ++t) {
            self(self, idx + 1, remaining - t * p[j]);
            if (t < max_t) add_scaled(acc, p, 1);
        }
        // undo this level's additions
        for (size_t i = 0; i < acc.size(); ++i) acc[i] -= max_t * p[i];
    };
    rec(rec, 0, target);
    return out;
}

namespace {

void enumerate_rec(const LinearSet& s, size_t idx, NatVec& cur, Nat bound,
                   std::set<NatVec>& out) {
    if (idx == s.periods.size()) {
        out.insert(cur);
        return;
    }
    const NatVec& p = s.periods[idx];
    Nat steps = 0;
    for (;;) {
        enumerate_rec(s, idx + 1, cur, bound, out);
        bool can_step = true;
        for (size_t i = 0; i < cur.size(); ++i)
            if (p[i] != 0 && cur[i] + p[i] > bound) can_step = false;
        if (!can_step) break;
        add_scaled(cur, p, 1);
        ++steps;
    }
    for (size_t i = 0; i < cur.size(); ++i) cur[i] -= steps * p[i];
}

}  // namespace

std::vector<NatVec> enumerate_points(const SemilinearSet& s, Nat bound) {
    std::set<NatVec> out;
    for (const auto& c : s.components) {
        if (std::any_of(c.base.begin(), c.base.end(), [&](Nat b) { return b > bound; }))
            continue;
        NatVec cur = c.base;
        enumerate_rec(c, 0, cur, bound, out);
    }
    return {out.begin(), out.end()};
}

bool is_stratified(const SemilinearSet& s) {
    for (const auto& c : s.components) {
        std::vector<std::pair<size_t, size_t>> spans;  // two-coordinate supports
        for (const auto& p : c.periods) {
            std::vector<size_t> nz;
            for (size_t i = 0; i < p.size(); ++i)
                if (p[i] != 0) nz.push_back(i);
            if (nz.size() > 2) return false;
            if (nz.size() == 2) spans.emplace_back(nz[0], nz[1]);
        }
        for (size_t a = 0; a < spans.size(); ++a)
            for (size_t b = a + 1; b < spans.size(); ++b) {
                const auto [i1, i2] = spans[a];
                const auto [j1, j2] = spans[b];
                if (i1 < j1 && j1 < i2 && i2 < j2) return false;
                if (j1 < i1 && i1 < j2 && j2 < i2) return false;
            }
    }
    return true;
}

}  // namespace isolde
