#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isolde/isolation.hpp"

namespace isolde {

/// Subset-sum instance compiled to a cutpoint-isolation problem. The
/// alphabet interleaves a take/skip letter pair per item; the language is
/// the 2^k single-point choice components; every word value is
/// (sum of taken items) / scale with scale = prod_i (items[i] + 1), and the
/// cutpoint target/scale is isolated iff no subset of items sums to target.
struct SubsetSumGadget {
    std::vector<Nat> items;
    Nat target = 0;
    PFA pfa;
    SemilinearSet language;
    Rat lambda;  // target / scale
    Rat scale;   // prod_i (items[i] + 1)
};

/// Builds the gadget. Requires at least one item and target <= scale.
SubsetSumGadget subset_sum_gadget(const std::vector<Nat>& items, Nat target);

/// The gadget's language as grammar text (round-trips through
/// parse_grammar / parikh_image). Practical for small item counts only:
/// the grammar has items.size() + 1 nonterminals.
std::string subset_sum_grammar(const std::vector<Nat>& items);

/// Decodes a gadget word into the indices of the taken items. Throws if
/// the exponents are not a valid one-per-pair choice vector.
std::vector<size_t> gadget_choice(const SubsetSumGadget& g, const ExponentVec& exponents);

enum class EmptinessStatus { Empty, NonEmpty, NotIsolated };

/// Decision for { w in L : value(w) > lambda } when lambda is isolated.
struct EmptinessResult {
    EmptinessStatus status = EmptinessStatus::Empty;
    std::optional<Rat> epsilon;            // isolation bound when decided
    std::optional<ExponentVec> witness;    // word with value > lambda
    std::optional<Rat> witness_value;
    std::optional<Witness> non_isolation;  // when lambda is not isolated
};

/// If lambda is isolated, decides whether some word value exceeds lambda by
/// scanning the search's value representatives; a limit representative
/// above lambda is walked until a concrete word crosses the cutpoint.
/// Otherwise reports NotIsolated with the non-isolation witness.
EmptinessResult emptiness_if_isolated(const PFA& pfa, const SemilinearSet& lang,
                                      const Rat& lambda, const DecideOptions& opts = {});

struct ValueOneResult {
    bool value_one = false;
    std::optional<Witness> witness;  // how the values approach or attain 1
};

/// Whether the supremum of the word values over the language is 1, i.e.
/// whether the cutpoint 1 fails to be isolated.
ValueOneResult value_one(const PFA& pfa, const SemilinearSet& lang,
                         const DecideOptions& opts = {});

struct AlternationResult {
    Verdict verdict = Verdict::Isolated;
    Rat epsilon;                        // min over all block problems when isolated
    std::vector<size_t> letter_choice;  // block letters of the failing problem
    std::optional<Witness> witness;     // within that block problem
};

/// Isolation of lambda over all words with at most `blocks` letter runs:
/// every choice of block letters in Sigma^blocks becomes one derived
/// letter-power problem over the full grid. Throws CapacityError when the
/// number of derived problems exceeds max_problems.
AlternationResult bounded_alternation_isolation(const PFA& pfa, size_t blocks,
                                                const Rat& lambda,
                                                const DecideOptions& opts = {},
                                                Nat max_problems = 4096);

}  // namespace isolde
