#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isolde/semilinear.hpp"

namespace isolde {

struct CfgSymbol {
    bool terminal = false;
    size_t id = 0;  // index into alphabet or nonterminals

    friend bool operator==(const CfgSymbol&, const CfgSymbol&) = default;
};

/// Context-free grammar over an ordered terminal alphabet. The order of
/// `alphabet` is the bounded letter order a_1* a_2* ... a_l*; nonterminal
/// 0 is the start symbol.
struct Cfg {
    std::vector<std::string> alphabet;
    std::vector<std::string> nonterminals;
    std::vector<std::vector<std::vector<CfgSymbol>>> productions;  // per nonterminal
};

/// Parses the grammar text format:
///
///   # comment
///   alphabet: a b
///   S -> a S b | eps
///
/// The first significant line declares the terminal order. Tokens are
/// whitespace-separated; "eps" (or the Greek letter) stands alone for the
/// empty word; the start symbol is the first left-hand side. Nonterminals
/// are exactly the left-hand sides, and every other symbol must be a
/// declared terminal.
Cfg parse_grammar(const std::string& text);

/// Decides L(g) subseteq a_1* ... a_l* by intersecting g with the
/// complement of the (l+1)-state order automaton and testing emptiness.
/// Returns nullopt when letter-bounded, otherwise a shortest violating
/// word (as letter names).
std::optional<std::vector<std::string>> validate_letter_bounded(const Cfg& g);

struct ParikhOptions {
    size_t max_nonterminals = 8;
    Nat combination_budget = 1'000'000;
};

/// Parikh image of L(g) as an explicit semilinear set. For each subset U
/// of the (normalized) nonterminals containing the start symbol, base
/// vectors come from derivation trees using exactly the nonterminals in U
/// and period vectors from pump trees X =>* alpha X beta with X in U, both
/// enumerated exhaustively under a per-path occurrence cap of |U| + 1 per
/// nonterminal, with memoization. Components without a base are pruned.
SemilinearSet parikh_image(const Cfg& g, const ParikhOptions& opts = {});

}  // namespace isolde
