#include "isolde/grammar.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

#include "isolde/errors.hpp"

namespace isolde {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

bool is_eps_token(const std::string& t) {
    return t == "eps" || t == "\xce\xb5";  // UTF-8 lowercase epsilon
}

[[noreturn]] void parse_fail(size_t lineno, const std::string& what) {
    throw std::invalid_argument("grammar line " + std::to_string(lineno) + ": " + what);
}

}  // namespace

Cfg parse_grammar(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    size_t lineno = 0;
    bool have_alphabet = false;

    Cfg g;
    std::map<std::string, size_t> term_id;

    struct RawAlt {
        std::vector<std::string> tokens;
        size_t line;
    };
    // Alternatives grouped by left-hand side, in order of first appearance.
    std::vector<std::string> lhs_order;
    std::map<std::string, size_t> lhs_id;
    std::vector<std::vector<RawAlt>> raw_alts;

    while (std::getline(in, raw)) {
        ++lineno;
        if (const size_t hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const std::vector<std::string> toks = tokenize(raw);
        if (toks.empty()) continue;

        if (!have_alphabet) {
            if (toks[0] != "alphabet:")
                parse_fail(lineno, "expected 'alphabet:' declaration before productions");
            if (toks.size() == 1) parse_fail(lineno, "alphabet declaration lists no letters");
            for (size_t i = 1; i < toks.size(); ++i) {
                const std::string& name = toks[i];
                if (is_eps_token(name) || name == "->" || name == "|" || name == "alphabet:")
                    parse_fail(lineno, "'" + name + "' cannot be used as a letter name");
                if (!term_id.emplace(name, g.alphabet.size()).second)
                    parse_fail(lineno, "duplicate letter '" + name + "'");
                g.alphabet.push_back(name);
            }
            have_alphabet = true;
            continue;
        }

        if (toks.size() < 2 || toks[1] != "->")
            parse_fail(lineno, "expected a production of the form 'X -> ...'");
        const std::string& lhs = toks[0];
        if (term_id.count(lhs)) parse_fail(lineno, "left-hand side '" + lhs + "' is a letter");
        if (is_eps_token(lhs) || lhs == "|")
            parse_fail(lineno, "'" + lhs + "' cannot be used as a nonterminal name");
        auto [it, fresh] = lhs_id.emplace(lhs, lhs_order.size());
        if (fresh) {
            lhs_order.push_back(lhs);
            raw_alts.emplace_back();
        }
        std::vector<std::string> alt;
        auto flush = [&]() {
            if (alt.empty()) parse_fail(lineno, "empty alternative (use 'eps' for the empty word)");
            raw_alts[it->second].push_back(RawAlt{alt, lineno});
            alt.clear();
        };
        for (size_t i = 2; i < toks.size(); ++i) {
            if (toks[i] == "|") {
                flush();
            } else {
                alt.push_back(toks[i]);
            }
        }
        flush();
    }

    if (!have_alphabet) throw std::invalid_argument("grammar: missing 'alphabet:' declaration");
    if (lhs_order.empty()) throw std::invalid_argument("grammar: no productions");

    g.nonterminals = lhs_order;
    g.productions.resize(g.nonterminals.size());
    for (size_t x = 0; x < g.nonterminals.size(); ++x) {
        for (const RawAlt& ra : raw_alts[x]) {
            std::vector<CfgSymbol> body;
            bool is_eps_alt = false;
            for (const std::string& tok : ra.tokens) {
                if (is_eps_token(tok)) {
                    if (ra.tokens.size() != 1)
                        parse_fail(ra.line, "'" + tok + "' must stand alone in an alternative");
                    is_eps_alt = true;
                    break;
                }
                if (auto t = term_id.find(tok); t != term_id.end()) {
                    body.push_back(CfgSymbol{true, t->second});
                } else if (auto n = lhs_id.find(tok); n != lhs_id.end()) {
                    body.push_back(CfgSymbol{false, n->second});
                } else {
                    parse_fail(ra.line, "unknown symbol '" + tok +
                                            "' (not a declared letter or a left-hand side)");
                }
            }
            if (is_eps_alt) body.clear();
            g.productions[x].push_back(std::move(body));
        }
    }
    return g;
}

// ---------------------------------------------------------------------------
// Letter-boundedness check.
// ---------------------------------------------------------------------------

std::optional<std::vector<std::string>> validate_letter_bounded(const Cfg& g) {
    const size_t ell = g.alphabet.size();
    const size_t n_states = ell + 1;  // state q < ell: least letter index still allowed
    const size_t DEAD = ell;          // sink; accepting for the complement
    auto delta = [&](size_t q, size_t letter) -> size_t {
        if (q == DEAD) return DEAD;
        return letter >= q ? letter : DEAD;
    };

    // Binarize so the triple product stays quadratic in the state count.
    struct BinProd {
        size_t lhs;
        std::vector<CfgSymbol> rhs;  // at most two symbols
    };
    std::vector<BinProd> bins;
    size_t next_nt = g.nonterminals.size();
    for (size_t x = 0; x < g.nonterminals.size(); ++x) {
        for (const auto& alt : g.productions[x]) {
            if (alt.size() <= 2) {
                bins.push_back(BinProd{x, alt});
                continue;
            }
            size_t lhs = x;
            for (size_t i = 0; i + 2 < alt.size(); ++i) {
                const size_t fresh = next_nt++;
                bins.push_back(BinProd{lhs, {alt[i], CfgSymbol{false, fresh}}});
                lhs = fresh;
            }
            bins.push_back(BinProd{lhs, {alt[alt.size() - 2], alt[alt.size() - 1]}});
        }
    }
    const size_t n_nts = next_nt;

    // Product nonterminal (q, X, q') -> dense id.
    auto pid = [&](size_t q, size_t x, size_t q2) { return (q * n_states + q2) * n_nts + x; };
    const size_t n_pnts = n_states * n_states * n_nts;

    struct PSym {
        bool terminal;
        size_t id;  // letter index, or product nonterminal id
    };
    struct PProd {
        size_t lhs;
        std::vector<PSym> rhs;
    };
    std::vector<PProd> pprods;
    auto span_of = [&](size_t q, const CfgSymbol& s, auto&& emit) {
        // Calls emit(end_state, PSym) for every way s can span from q.
        if (s.terminal) {
            emit(delta(q, s.id), PSym{true, s.id});
        } else {
            for (size_t q2 = 0; q2 < n_states; ++q2) emit(q2, PSym{false, pid(q, s.id, q2)});
        }
    };
    for (const BinProd& bp : bins) {
        if (bp.rhs.empty()) {
            for (size_t q = 0; q < n_states; ++q) pprods.push_back({pid(q, bp.lhs, q), {}});
        } else if (bp.rhs.size() == 1) {
            for (size_t q = 0; q < n_states; ++q)
                span_of(q, bp.rhs[0], [&](size_t q1, PSym s) {
                    pprods.push_back({pid(q, bp.lhs, q1), {s}});
                });
        } else {
            for (size_t q = 0; q < n_states; ++q)
                span_of(q, bp.rhs[0], [&](size_t q1, PSym s1) {
                    span_of(q1, bp.rhs[1], [&](size_t q2, PSym s2) {
                        pprods.push_back({pid(q, bp.lhs, q2), {s1, s2}});
                    });
                });
        }
    }

    // Shortest terminal yield per product nonterminal (Knuth's algorithm on
    // the derivation hypergraph); deterministic tie-breaking by ids.
    constexpr std::uint64_t INF = ~std::uint64_t{0};
    std::vector<std::uint64_t> best(n_pnts, INF);
    std::vector<size_t> choice(n_pnts, ~size_t{0});
    std::vector<std::uint64_t> acc(pprods.size(), 0);
    std::vector<size_t> pending(pprods.size(), 0);
    std::vector<std::vector<size_t>> uses(n_pnts);  // one entry per occurrence
    for (size_t p = 0; p < pprods.size(); ++p) {
        for (const PSym& s : pprods[p].rhs) {
            if (s.terminal) {
                ++acc[p];
            } else {
                ++pending[p];
                uses[s.id].push_back(p);
            }
        }
    }
    using Entry = std::tuple<std::uint64_t, size_t, size_t>;  // (len, nt, prod)
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    for (size_t p = 0; p < pprods.size(); ++p)
        if (pending[p] == 0) heap.emplace(acc[p], pprods[p].lhs, p);
    while (!heap.empty()) {
        const auto [len, nt, p] = heap.top();
        heap.pop();
        if (best[nt] != INF) continue;
        best[nt] = len;
        choice[nt] = p;
        for (const size_t q : uses[nt]) {
            acc[q] += len;
            if (--pending[q] == 0) heap.emplace(acc[q], pprods[q].lhs, q);
        }
    }

    const size_t bad_start = pid(0, 0, DEAD);
    if (best[bad_start] == INF) return std::nullopt;

    std::vector<std::string> word;
    auto expand = [&](auto&& self, size_t nt) -> void {
        const PProd& p = pprods[choice[nt]];
        for (const PSym& s : p.rhs) {
            if (s.terminal) {
                word.push_back(g.alphabet[s.id]);
            } else {
                self(self, s.id);
            }
        }
    };
    expand(expand, bad_start);
    return word;
}

// ---------------------------------------------------------------------------
// Parikh image.
// ---------------------------------------------------------------------------

namespace {

struct ParikhWork {
    const std::vector<std::vector<std::vector<CfgSymbol>>>* prods = nullptr;
    size_t dim = 0;      // alphabet size
    size_t n_nts = 0;    // normalized nonterminal count
    size_t cap = 0;      // per-path occurrence cap for the current subset
    std::uint32_t subset = 0;
    Nat budget = 0;
    Nat used = 0;

    void charge(Nat amount) {
        used += amount;
        if (used > budget)
            throw CapacityError("parikh_image: derivation enumeration budget exceeded");
    }
};

using VecMask = std::pair<NatVec, std::uint32_t>;
using VecHole = std::pair<NatVec, bool>;

// Complete derivation trees rooted at X whose per-path nonterminal counts
// are given by `counts` (including X itself); yields (parikh, mask of
// nonterminals used). May legitimately be empty.
const std::vector<VecMask>& base_trees(ParikhWork& w, size_t x, std::vector<std::uint8_t>& counts,
                                       std::map<std::pair<size_t, std::vector<std::uint8_t>>,
                                                std::vector<VecMask>>& memo) {
    const auto key = std::make_pair(x, counts);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::set<VecMask> out;
    for (const auto& alt : (*w.prods)[x]) {
        bool usable = true;
        for (const CfgSymbol& s : alt) {
            if (s.terminal) continue;
            if (!((w.subset >> s.id) & 1u) || counts[s.id] + 1u > w.cap) {
                usable = false;
                break;
            }
        }
        if (!usable) continue;
        std::set<VecMask> partial{{NatVec(w.dim, 0), std::uint32_t{1} << x}};
        for (const CfgSymbol& s : alt) {
            std::set<VecMask> next;
            if (s.terminal) {
                for (const VecMask& vm : partial) {
                    NatVec v = vm.first;
                    ++v[s.id];
                    next.emplace(std::move(v), vm.second);
                }
                w.charge(partial.size());
            } else {
                ++counts[s.id];
                const std::vector<VecMask>& sub = base_trees(w, s.id, counts, memo);
                --counts[s.id];
                w.charge(partial.size() * sub.size());
                for (const VecMask& vm : partial) {
                    for (const VecMask& sm : sub) {
                        NatVec v = vm.first;
                        for (size_t i = 0; i < w.dim; ++i) v[i] += sm.first[i];
                        next.emplace(std::move(v), vm.second | sm.second);
                    }
                }
            }
            partial = std::move(next);
            if (partial.empty()) break;
        }
        out.insert(partial.begin(), partial.end());
    }
    auto [it, ok] = memo.emplace(key, std::vector<VecMask>(out.begin(), out.end()));
    (void)ok;
    return it->second;
}

// Pump trees: derivations Y =>* alpha . hole . beta with exactly one leaf
// being an unexpanded occurrence of `hole` (zero-yield there); yields
// (parikh of the terminal yield, hole consumed?).
const std::vector<VecHole>& pump_trees(ParikhWork& w, size_t y, size_t hole,
                                       std::vector<std::uint8_t>& counts,
                                       std::map<std::pair<size_t, std::vector<std::uint8_t>>,
                                                std::vector<VecHole>>& memo) {
    const auto key = std::make_pair(y, counts);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::set<VecHole> out;
    if (y == hole) out.emplace(NatVec(w.dim, 0), true);  // stop here: this leaf is the hole
    for (const auto& alt : (*w.prods)[y]) {
        bool usable = true;
        for (const CfgSymbol& s : alt) {
            if (s.terminal) continue;
            if (!((w.subset >> s.id) & 1u) || counts[s.id] + 1u > w.cap) {
                usable = false;
                break;
            }
        }
        if (!usable) continue;
        std::set<VecHole> partial{{NatVec(w.dim, 0), false}};
        for (const CfgSymbol& s : alt) {
            std::set<VecHole> next;
            if (s.terminal) {
                for (const VecHole& vh : partial) {
                    NatVec v = vh.first;
                    ++v[s.id];
                    next.emplace(std::move(v), vh.second);
                }
                w.charge(partial.size());
            } else {
                ++counts[s.id];
                const std::vector<VecHole>& sub = pump_trees(w, s.id, hole, counts, memo);
                --counts[s.id];
                w.charge(partial.size() * sub.size());
                for (const VecHole& vh : partial) {
                    for (const VecHole& sh : sub) {
                        if (vh.second && sh.second) continue;  // at most one hole
                        NatVec v = vh.first;
                        for (size_t i = 0; i < w.dim; ++i) v[i] += sh.first[i];
                        next.emplace(std::move(v), vh.second || sh.second);
                    }
                }
            }
            partial = std::move(next);
            if (partial.empty()) break;
        }
        out.insert(partial.begin(), partial.end());
    }
    auto [it, ok] = memo.emplace(key, std::vector<VecHole>(out.begin(), out.end()));
    (void)ok;
    return it->second;
}

}  // namespace

SemilinearSet parikh_image(const Cfg& g, const ParikhOptions& opts) {
    const size_t dim = g.alphabet.size();
    const size_t n = g.nonterminals.size();

    // Keep only nonterminals that are generating and reachable through
    // alternatives whose nonterminals are all generating.
    std::vector<char> gen(n, 0);
    for (bool changed = true; changed;) {
        changed = false;
        for (size_t x = 0; x < n; ++x) {
            if (gen[x]) continue;
            for (const auto& alt : g.productions[x]) {
                bool ok = true;
                for (const CfgSymbol& s : alt)
                    if (!s.terminal && !gen[s.id]) {
                        ok = false;
                        break;
                    }
                if (ok) {
                    gen[x] = 1;
                    changed = true;
                    break;
                }
            }
        }
    }
    if (!gen[0]) return SemilinearSet(dim, {});

    std::vector<char> reach(n, 0);
    reach[0] = 1;
    std::vector<size_t> stack{0};
    while (!stack.empty()) {
        const size_t x = stack.back();
        stack.pop_back();
        for (const auto& alt : g.productions[x]) {
            bool ok = true;
            for (const CfgSymbol& s : alt)
                if (!s.terminal && !gen[s.id]) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            for (const CfgSymbol& s : alt)
                if (!s.terminal && !reach[s.id]) {
                    reach[s.id] = 1;
                    stack.push_back(s.id);
                }
        }
    }

    std::vector<size_t> keep;
    std::vector<size_t> remap(n, ~size_t{0});
    for (size_t x = 0; x < n; ++x)
        if (gen[x] && reach[x]) {
            remap[x] = keep.size();
            keep.push_back(x);
        }
    const size_t k = keep.size();
    if (k > opts.max_nonterminals)
        throw CapacityError("parikh_image: grammar has " + std::to_string(k) +
                            " useful nonterminals, limit is " +
                            std::to_string(opts.max_nonterminals));

    std::vector<std::vector<std::vector<CfgSymbol>>> prods(k);
    for (size_t i = 0; i < k; ++i) {
        for (const auto& alt : g.productions[keep[i]]) {
            bool ok = true;
            std::vector<CfgSymbol> body;
            for (const CfgSymbol& s : alt) {
                if (s.terminal) {
                    body.push_back(s);
                } else if (remap[s.id] == ~size_t{0}) {
                    ok = false;
                    break;
                } else {
                    body.push_back(CfgSymbol{false, remap[s.id]});
                }
            }
            if (ok) prods[i].push_back(std::move(body));
        }
    }

    std::vector<LinearSet> components;
    std::set<std::pair<NatVec, std::vector<NatVec>>> seen;
    ParikhWork w;
    w.prods = &prods;
    w.dim = dim;
    w.n_nts = k;
    w.budget = opts.combination_budget;

    for (std::uint32_t subset = 1; subset < (std::uint32_t{1} << k); ++subset) {
        if (!(subset & 1u)) continue;  // the start symbol must participate
        w.subset = subset;
        w.cap = static_cast<size_t>(std::popcount(subset)) + 1;

        std::map<std::pair<size_t, std::vector<std::uint8_t>>, std::vector<VecMask>> base_memo;
        std::vector<std::uint8_t> counts(k, 0);
        counts[0] = 1;
        const std::vector<VecMask>& trees = base_trees(w, 0, counts, base_memo);
        std::set<NatVec> bases;
        for (const VecMask& vm : trees)
            if (vm.second == subset) bases.insert(vm.first);
        if (bases.empty()) continue;

        std::set<NatVec> periods;
        for (size_t x = 0; x < k; ++x) {
            if (!((subset >> x) & 1u)) continue;
            std::map<std::pair<size_t, std::vector<std::uint8_t>>, std::vector<VecHole>>
                pump_memo;
            std::vector<std::uint8_t> pcounts(k, 0);
            pcounts[x] = 1;
            // Skip the trivial tree (the root itself as the hole) by
            // expanding one production at the root.
            for (const auto& alt : prods[x]) {
                bool usable = true;
                for (const CfgSymbol& s : alt) {
                    if (s.terminal) continue;
                    if (!((subset >> s.id) & 1u) || pcounts[s.id] + 1u > w.cap) {
                        usable = false;
                        break;
                    }
                }
                if (!usable) continue;
                std::set<VecHole> partial{{NatVec(dim, 0), false}};
                for (const CfgSymbol& s : alt) {
                    std::set<VecHole> next;
                    if (s.terminal) {
                        for (const VecHole& vh : partial) {
                            NatVec v = vh.first;
                            ++v[s.id];
                            next.emplace(std::move(v), vh.second);
                        }
                        w.charge(partial.size());
                    } else {
                        ++pcounts[s.id];
                        const std::vector<VecHole>& sub =
                            pump_trees(w, s.id, x, pcounts, pump_memo);
                        --pcounts[s.id];
                        w.charge(partial.size() * sub.size());
                        for (const VecHole& vh : partial) {
                            for (const VecHole& sh : sub) {
                                if (vh.second && sh.second) continue;
                                NatVec v = vh.first;
                                for (size_t i = 0; i < dim; ++i) v[i] += sh.first[i];
                                next.emplace(std::move(v), vh.second || sh.second);
                            }
                        }
                    }
                    partial = std::move(next);
                    if (partial.empty()) break;
                }
                for (const VecHole& vh : partial) {
                    if (!vh.second) continue;
                    bool nonzero = false;
                    for (const Nat c : vh.first)
                        if (c != 0) {
                            nonzero = true;
                            break;
                        }
                    if (nonzero) periods.insert(vh.first);
                }
            }
        }

        const std::vector<NatVec> period_list(periods.begin(), periods.end());
        for (const NatVec& b : bases) {
            if (seen.emplace(b, period_list).second)
                components.push_back(LinearSet(b, period_list));
        }
    }
    return SemilinearSet(dim, components);
}

}  // namespace isolde
