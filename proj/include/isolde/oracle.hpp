#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isolde/isolation.hpp"
#include "isolde/semilinear.hpp"
#include "isolde/stochastic.hpp"

namespace isolde {

/// Exhaustive ground truth over the window of language points whose
/// coordinates are all <= bound.
struct OracleReport {
    bool empty_within_bound = true;
    size_t points_checked = 0;
    std::optional<Rat> min_distance;     // min |value(w) - lambda| over the window
    std::optional<ExponentVec> closest;  // first point attaining the minimum
    bool attains_lambda = false;
};

OracleReport brute_force_min_distance(const PFA& pfa, const SemilinearSet& language,
                                      const Rat& lambda, Nat bound);

/// Multiplies the matrix out `iterations` times in double precision and
/// returns the largest entry-wise deviation from the exact limit
/// P * A^(iterations mod D). Independent of the exact power ladder, so it
/// cross-checks the projection from the numeric side.
double numeric_limit_check(const RatMatrix& matrix, int iterations,
                           Nat m0_ceiling = kDefaultDecayCeiling);

/// Cross-validates a decision against brute-force enumeration up to `bound`.
/// Returns human-readable discrepancies; empty means consistent.
std::vector<std::string> check_verdict(const PFA& pfa, const SemilinearSet& language,
                                       const Rat& lambda, const IsolationResult& result,
                                       Nat bound);

/// Deterministic row-stochastic matrix: each row is a random composition of a
/// denominator <= max_den. Same seed, same matrix.
RatMatrix random_stochastic_matrix(std::uint64_t seed, int states, long max_den);

struct RandomProblem {
    PFA pfa;
    SemilinearSet language;
    Rat lambda;
};

/// Deterministic random decision problem: a PFA with up to max_letters letters
/// on 2..max_states states, a one-component language with a few short periods,
/// and a cutpoint drawn from three regimes (attained value, limit value,
/// perturbed value) so the corpus exercises both verdicts.
RandomProblem random_problem(std::uint64_t seed, int max_states, size_t max_letters,
                             long max_den);

struct SubsetSumInstance {
    std::vector<Nat> items;  // k items, each >= 1
    Nat target;
    bool solvable;  // ground truth from dynamic programming
};

/// Deterministic subset-sum instance. Unsolvable draws sit exactly one unit
/// above an achievable sum, so the certified bound for the matching gadget is
/// exactly 1/scale.
SubsetSumInstance random_subset_sum_instance(std::uint64_t seed, size_t max_items,
                                             Nat max_item);

}  // namespace isolde
