#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "isolde/semilinear.hpp"
#include "isolde/stochastic.hpp"

namespace isolde {

/// Exponent vector of a letter-power word a_1^{k_1} ... a_l^{k_l}.
using ExponentVec = std::vector<Nat>;

/// A word whose value equals the cutpoint exactly.
struct FiniteWitness {
    ExponentVec exponents;
};

/// A family of words k(m) = component.base + sum_i (residues[i] + modulus*m)
/// * component.periods[i] whose values converge to the cutpoint. All family
/// members lie in the language; the values need not attain the cutpoint.
struct LimitWitness {
    LinearSet component;
    std::vector<Nat> residues;  // one parameter residue per period
    Nat modulus = 1;
};

/// One coordinate pin applied on the way down the search tree.
struct BranchStep {
    size_t letter = 0;
    Nat value = 0;

    friend bool operator==(const BranchStep&, const BranchStep&) = default;
};

struct Witness {
    size_t component = 0;          // index into the input semilinear set
    std::vector<BranchStep> path;  // pins leading to the spot of discovery
    std::variant<FiniteWitness, LimitWitness> kind;
};

/// The m-th member of a limit witness family.
ExponentVec limit_family_point(const LimitWitness& w, Nat m);

struct TraceRecord {
    size_t component = 0;
    std::vector<BranchStep> path;
    std::string event;   // "leaf" | "branch" | "witness"
    std::string detail;
};

enum class Verdict { Isolated, NonIsolated };

/// One representative of the value set: either an exact word value or the
/// limit of a word family. Leaves and limit points of the search cover
/// every accumulation point of the value set.
struct Representative {
    Rat value;
    std::variant<ExponentVec, LimitWitness> source;
};

struct IsolationResult {
    Verdict verdict = Verdict::Isolated;
    Rat epsilon;                     // certified bound when isolated
    std::optional<Witness> witness;  // present when non-isolated
    std::string note;
    Nat nodes = 0;                   // search nodes spent (canonical count)
    std::vector<TraceRecord> trace;  // populated when tracing is on
    std::vector<Representative> representatives;  // populated on request
};

struct DecideOptions {
    Nat node_budget = 1'000'000;  // search nodes per language component
    Nat eval_budget = 1'000'000;  // residue evaluations per limit value set
    bool parallel = false;        // explore components concurrently
    bool trace = false;
    bool collect_representatives = false;
    Nat m0_ceiling = kDefaultDecayCeiling;
};

/// Limit values of one language component: the closure points of
/// { value(k) : k in the component } as the free exponents grow along
/// fixed parameter residues mod W.
struct LimitPoint {
    Rat value;
    std::vector<Nat> residues;  // lexicographically first witnessing residues
};

struct LimitValueSet {
    Nat modulus = 1;  // W, the lcm of the free letters' dominant periods
    std::vector<LimitPoint> points;  // deduped, in first-appearance order
};

/// Evaluates every parameter-residue class of the component, taking exact
/// powers for pinned letters and limit matrices for free ones. Throws
/// CapacityError when the class count exceeds eval_budget.
LimitValueSet limit_value_set(const PFA& pfa, const LinearSet& comp,
                              const std::vector<LimitSystem>& systems, Nat eval_budget);

/// Smallest exponent C >= 1 with sum over the free letters of
/// err_bound(systems[j], C) <= bound, so beyond C every word value is
/// within `bound` of a limit value.
Nat branch_constant(const std::vector<LimitSystem>& systems, const std::vector<size_t>& free,
                    const Rat& bound);

/// Decides whether lambda is an isolated cutpoint of the PFA restricted to
/// the letter-power language given by `lang` (one coordinate per letter).
/// Returns a certified separation bound epsilon when isolated, otherwise a
/// verifiable witness. Deterministic: parallel runs produce byte-identical
/// results to serial ones.
IsolationResult decide_isolation(const PFA& pfa, const SemilinearSet& lang, const Rat& lambda,
                                 const DecideOptions& opts = {});

/// Independent check of a non-isolation witness. Returns human-readable
/// problems; empty means the witness is valid.
std::vector<std::string> verify_witness(const PFA& pfa, const SemilinearSet& lang,
                                        const Rat& lambda, const Witness& w);

}  // namespace isolde
