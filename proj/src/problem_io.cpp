#include "isolde/problem_io.hpp"

#include <sstream>
#include <stdexcept>

#include "isolde/grammar.hpp"
#include "isolde/matrix.hpp"
#include "json.hpp"

namespace isolde {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw std::invalid_argument("problem file: " + where + ": " + what);
}

Rat get_rat(const ordered_json& j, const std::string& where) {
    if (!j.is_string()) fail(where, "expected a rational written as a string, like \"1/2\"");
    try {
        return Rat::from_string(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        fail(where, e.what());
    }
}

Nat get_nat(const ordered_json& j, const std::string& where) {
    if (!j.is_number_unsigned()) fail(where, "expected a nonnegative integer");
    return j.get<Nat>();
}

const ordered_json& get_array(const ordered_json& j, const std::string& key,
                              const std::string& where) {
    if (!j.contains(key)) fail(where, "missing required key \"" + key + "\"");
    const ordered_json& v = j.at(key);
    if (!v.is_array()) fail(where + "/" + key, "expected an array");
    return v;
}

SemilinearSet parse_semilinear(const ordered_json& comps, size_t dim,
                               const std::string& where) {
    std::vector<LinearSet> components;
    for (size_t c = 0; c < comps.size(); ++c) {
        const std::string here = where + "/" + std::to_string(c);
        const ordered_json& comp = comps[c];
        if (!comp.is_object()) fail(here, "expected an object with \"base\" and \"periods\"");
        const ordered_json& base_j = get_array(comp, "base", here);
        if (base_j.size() != dim)
            fail(here + "/base", "expected " + std::to_string(dim) +
                                     " coordinates, one per letter");
        NatVec base(dim);
        for (size_t i = 0; i < dim; ++i)
            base[i] = get_nat(base_j[i], here + "/base/" + std::to_string(i));
        std::vector<NatVec> periods;
        if (comp.contains("periods")) {
            const ordered_json& periods_j = get_array(comp, "periods", here);
            for (size_t q = 0; q < periods_j.size(); ++q) {
                const std::string pq = here + "/periods/" + std::to_string(q);
                if (!periods_j[q].is_array() || periods_j[q].size() != dim)
                    fail(pq, "expected " + std::to_string(dim) + " coordinates");
                NatVec period(dim);
                for (size_t i = 0; i < dim; ++i)
                    period[i] = get_nat(periods_j[q][i], pq + "/" + std::to_string(i));
                periods.push_back(period);
            }
        }
        components.emplace_back(base, periods);
    }
    return SemilinearSet(dim, components);
}

std::string join_word(const std::vector<std::string>& letters) {
    std::string s;
    for (const std::string& l : letters) {
        if (!s.empty()) s += ' ';
        s += l;
    }
    return s;
}

}  // namespace

Problem parse_problem(const std::string& json_text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(json_text);
    } catch (const ordered_json::parse_error& e) {
        throw std::invalid_argument(std::string("problem file: invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) fail("", "top level must be an object");

    Problem p;
    const ordered_json& initial = get_array(doc, "initial", "");
    const size_t n = initial.size();
    if (n == 0) fail("/initial", "the automaton needs at least one state");
    p.pfa.initial = RatRowVec(static_cast<Eigen::Index>(n));
    for (size_t i = 0; i < n; ++i)
        p.pfa.initial(0, static_cast<Eigen::Index>(i)) =
            get_rat(initial[i], "/initial/" + std::to_string(i));

    const ordered_json& accept = get_array(doc, "accept", "");
    if (accept.size() != n)
        fail("/accept", "expected " + std::to_string(n) + " entries to match \"initial\"");
    p.pfa.accept = RatColVec(static_cast<Eigen::Index>(n));
    for (size_t i = 0; i < n; ++i)
        p.pfa.accept(static_cast<Eigen::Index>(i), 0) =
            get_rat(accept[i], "/accept/" + std::to_string(i));

    const ordered_json& letters = get_array(doc, "letters", "");
    for (size_t j = 0; j < letters.size(); ++j) {
        const std::string here = "/letters/" + std::to_string(j);
        const ordered_json& lj = letters[j];
        if (!lj.is_object()) fail(here, "expected an object with \"name\" and \"matrix\"");
        if (!lj.contains("name") || !lj.at("name").is_string())
            fail(here + "/name", "expected the letter name as a string");
        Letter letter;
        letter.name = lj.at("name").get<std::string>();
        const ordered_json& rows = get_array(lj, "matrix", here);
        if (rows.size() != n)
            fail(here + "/matrix", "expected " + std::to_string(n) + " rows");
        letter.matrix = RatMatrix(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (size_t r = 0; r < n; ++r) {
            const std::string rw = here + "/matrix/" + std::to_string(r);
            if (!rows[r].is_array() || rows[r].size() != n)
                fail(rw, "expected " + std::to_string(n) + " entries");
            for (size_t c = 0; c < n; ++c)
                letter.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                    get_rat(rows[r][c], rw + "/" + std::to_string(c));
        }
        p.pfa.letters.push_back(std::move(letter));
    }

    const std::vector<std::string> pfa_errors = validate_pfa(p.pfa);
    if (!pfa_errors.empty()) fail("", "invalid automaton: " + pfa_errors.front());

    if (!doc.contains("language")) fail("", "missing required key \"language\"");
    const ordered_json& lang = doc.at("language");
    if (!lang.is_object()) fail("/language", "expected an object");
    const bool has_grammar = lang.contains("grammar");
    const bool has_semilinear = lang.contains("semilinear");
    if (has_grammar == has_semilinear)
        fail("/language", "provide exactly one of \"grammar\" or \"semilinear\"");

    if (has_grammar) {
        if (!lang.at("grammar").is_string())
            fail("/language/grammar", "expected the grammar as a string");
        const std::string text = lang.at("grammar").get<std::string>();
        Cfg cfg;
        try {
            cfg = parse_grammar(text);
        } catch (const std::invalid_argument& e) {
            fail("/language/grammar", e.what());
        }
        if (cfg.alphabet.size() != p.pfa.letters.size())
            fail("/language/grammar",
                 "grammar alphabet has " + std::to_string(cfg.alphabet.size()) +
                     " letters but the automaton has " +
                     std::to_string(p.pfa.letters.size()));
        for (size_t j = 0; j < cfg.alphabet.size(); ++j)
            if (cfg.alphabet[j] != p.pfa.letters[j].name)
                fail("/language/grammar",
                     "alphabet letter " + std::to_string(j) + " is \"" + cfg.alphabet[j] +
                         "\" but the automaton letter is \"" + p.pfa.letters[j].name + "\"");
        if (const auto violation = validate_letter_bounded(cfg))
            fail("/language/grammar",
                 "grammar is not letter-bounded; violating word: " + join_word(*violation));
        p.language = parikh_image(cfg);
        p.grammar_text = text;
    } else {
        const ordered_json& comps = lang.at("semilinear");
        if (!comps.is_array()) fail("/language/semilinear", "expected an array");
        p.language = parse_semilinear(comps, p.pfa.letters.size(), "/language/semilinear");
    }

    if (!doc.contains("lambda")) fail("", "missing required key \"lambda\"");
    p.lambda = get_rat(doc.at("lambda"), "/lambda");
    return p;
}

std::string serialize_problem(const Problem& p) {
    ordered_json doc;
    doc["initial"] = ordered_json::array();
    for (Eigen::Index i = 0; i < p.pfa.initial.cols(); ++i)
        doc["initial"].push_back(p.pfa.initial(0, i).str());
    doc["accept"] = ordered_json::array();
    for (Eigen::Index i = 0; i < p.pfa.accept.rows(); ++i)
        doc["accept"].push_back(p.pfa.accept(i, 0).str());
    doc["letters"] = ordered_json::array();
    for (const Letter& l : p.pfa.letters) {
        ordered_json lj;
        lj["name"] = l.name;
        lj["matrix"] = ordered_json::array();
        for (Eigen::Index r = 0; r < l.matrix.rows(); ++r) {
            ordered_json row = ordered_json::array();
            for (Eigen::Index c = 0; c < l.matrix.cols(); ++c)
                row.push_back(l.matrix(r, c).str());
            lj["matrix"].push_back(row);
        }
        doc["letters"].push_back(lj);
    }
    doc["language"] = ordered_json::object();
    if (p.grammar_text) {
        doc["language"]["grammar"] = *p.grammar_text;
    } else {
        ordered_json comps = ordered_json::array();
        for (const LinearSet& c : p.language.components) {
            ordered_json cj;
            cj["base"] = c.base;
            cj["periods"] = c.periods;
            comps.push_back(cj);
        }
        doc["language"]["semilinear"] = comps;
    }
    doc["lambda"] = p.lambda.str();
    return doc.dump(2) + "\n";
}

}  // namespace isolde
