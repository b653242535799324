#pragma once

#include <optional>
#include <string>

#include "isolde/rat.hpp"
#include "isolde/semilinear.hpp"
#include "isolde/stochastic.hpp"

namespace isolde {

/// A full decision problem as read from a JSON problem file: the automaton,
/// the letter-bounded language (always materialized as a semilinear set of
/// exponent vectors), and the cutpoint.
struct Problem {
    PFA pfa;
    SemilinearSet language{0, {}};
    std::optional<std::string> grammar_text;  // set when the language came from a grammar
    Rat lambda;
};

/// Parses the JSON problem format (see README). Rationals are strings like
/// "1/2"; the language is either {"grammar": "..."} or {"semilinear": [...]}.
/// Grammar languages are validated to be letter-bounded with the alphabet in
/// letter order, then converted to their Parikh image. Throws
/// std::invalid_argument with a JSON-pointer-style location on bad input;
/// grammar conversion may throw CapacityError.
Problem parse_problem(const std::string& json_text);

/// Canonical JSON rendering (fixed key order, two-space indent, trailing
/// newline). parse_problem(serialize_problem(p)) reproduces p.
std::string serialize_problem(const Problem& p);

}  // namespace isolde
