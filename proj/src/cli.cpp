#include "isolde/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "isolde/applications.hpp"
#include "isolde/errors.hpp"
#include "isolde/oracle.hpp"
#include "isolde/problem_io.hpp"
#include "json.hpp"

namespace isolde {

namespace {

using nlohmann::ordered_json;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ordered_json path_json(const std::vector<BranchStep>& path) {
    ordered_json arr = ordered_json::array();
    for (const BranchStep& s : path) {
        ordered_json sj;
        sj["letter"] = s.letter;
        sj["value"] = s.value;
        arr.push_back(sj);
    }
    return arr;
}

ordered_json witness_json(const Witness& w) {
    ordered_json j;
    j["component"] = w.component;
    j["path"] = path_json(w.path);
    if (const auto* f = std::get_if<FiniteWitness>(&w.kind)) {
        j["kind"] = "finite";
        j["exponents"] = f->exponents;
    } else {
        const auto& l = std::get<LimitWitness>(w.kind);
        j["kind"] = "limit";
        j["family"] = ordered_json::object();
        j["family"]["base"] = l.component.base;
        j["family"]["periods"] = l.component.periods;
        j["residues"] = l.residues;
        j["modulus"] = l.modulus;
    }
    return j;
}

void emit(const ordered_json& j, std::ostream& out) { out << j.dump(2) << "\n"; }

int cmd_decide(const std::string& path, const DecideOptions& opts, Nat check_bound,
               std::ostream& out) {
    const Problem prob = parse_problem(slurp(path));
    const IsolationResult r = decide_isolation(prob.pfa, prob.language, prob.lambda, opts);
    ordered_json j;
    j["command"] = "decide";
    j["lambda"] = prob.lambda.str();
    j["verdict"] = r.verdict == Verdict::Isolated ? "isolated" : "non-isolated";
    j["epsilon"] = r.epsilon.str();
    j["nodes"] = r.nodes;
    if (r.witness) j["witness"] = witness_json(*r.witness);
    if (!r.note.empty()) j["note"] = r.note;
    if (check_bound > 0) {
        const OracleReport rep =
            brute_force_min_distance(prob.pfa, prob.language, prob.lambda, check_bound);
        const std::vector<std::string> problems =
            check_verdict(prob.pfa, prob.language, prob.lambda, r, check_bound);
        j["check"] = ordered_json::object();
        j["check"]["bound"] = check_bound;
        j["check"]["points_checked"] = rep.points_checked;
        if (rep.min_distance) j["check"]["brute_min_distance"] = rep.min_distance->str();
        j["check"]["consistent"] = problems.empty();
        if (!problems.empty()) j["check"]["discrepancies"] = problems;
    }
    if (opts.trace) {
        j["trace"] = ordered_json::array();
        for (const TraceRecord& t : r.trace) {
            ordered_json tj;
            tj["component"] = t.component;
            tj["path"] = path_json(t.path);
            tj["event"] = t.event;
            tj["detail"] = t.detail;
            j["trace"].push_back(tj);
        }
    }
    emit(j, out);
    return r.verdict == Verdict::Isolated ? kExitIsolated : kExitNonIsolated;
}

int cmd_emptiness(const std::string& path, const DecideOptions& opts, std::ostream& out) {
    const Problem prob = parse_problem(slurp(path));
    const EmptinessResult r = emptiness_if_isolated(prob.pfa, prob.language, prob.lambda, opts);
    ordered_json j;
    j["command"] = "emptiness";
    j["lambda"] = prob.lambda.str();
    switch (r.status) {
        case EmptinessStatus::Empty: j["status"] = "empty"; break;
        case EmptinessStatus::NonEmpty: j["status"] = "non-empty"; break;
        case EmptinessStatus::NotIsolated: j["status"] = "not-isolated"; break;
    }
    if (r.epsilon) j["epsilon"] = r.epsilon->str();
    if (r.witness) {
        j["witness"] = *r.witness;
        j["witness_value"] = r.witness_value->str();
    }
    if (r.non_isolation) j["non_isolation"] = witness_json(*r.non_isolation);
    emit(j, out);
    return kExitSuccess;
}

int cmd_value1(const std::string& path, const DecideOptions& opts, std::ostream& out) {
    const Problem prob = parse_problem(slurp(path));
    const ValueOneResult r = value_one(prob.pfa, prob.language, opts);
    ordered_json j;
    j["command"] = "value1";
    j["value_one"] = r.value_one;
    if (r.witness) j["witness"] = witness_json(*r.witness);
    emit(j, out);
    return kExitSuccess;
}

int cmd_gadget(const std::vector<Nat>& items, Nat target, const std::string& out_path,
               std::ostream& out) {
    const SubsetSumGadget g = subset_sum_gadget(items, target);
    if (!out_path.empty()) {
        Problem prob;
        prob.pfa = g.pfa;
        prob.language = g.language;
        prob.grammar_text = subset_sum_grammar(items);
        prob.lambda = g.lambda;
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw std::invalid_argument("cannot write file: " + out_path);
        f << serialize_problem(prob);
    }
    const IsolationResult r = decide_isolation(g.pfa, g.language, g.lambda);
    ordered_json j;
    j["command"] = "gadget";
    j["items"] = items;
    j["target"] = target;
    j["scale"] = g.scale.str();
    j["lambda"] = g.lambda.str();
    const bool solvable = r.verdict == Verdict::NonIsolated;
    j["solvable"] = solvable;
    if (solvable) {
        const auto& fw = std::get<FiniteWitness>(r.witness->kind);
        j["choice"] = gadget_choice(g, fw.exponents);
    } else {
        j["epsilon"] = r.epsilon.str();
    }
    if (!out_path.empty()) j["written"] = out_path;
    emit(j, out);
    return kExitSuccess;
}

int cmd_oracle(const std::string& path, Nat bound, const DecideOptions& opts,
               std::ostream& out) {
    const Problem prob = parse_problem(slurp(path));
    const IsolationResult r = decide_isolation(prob.pfa, prob.language, prob.lambda, opts);
    const OracleReport rep =
        brute_force_min_distance(prob.pfa, prob.language, prob.lambda, bound);
    const std::vector<std::string> problems =
        check_verdict(prob.pfa, prob.language, prob.lambda, r, bound);
    ordered_json j;
    j["command"] = "oracle";
    j["lambda"] = prob.lambda.str();
    j["verdict"] = r.verdict == Verdict::Isolated ? "isolated" : "non-isolated";
    j["epsilon"] = r.epsilon.str();
    j["bound"] = bound;
    j["points_checked"] = rep.points_checked;
    if (rep.min_distance) {
        j["brute_min_distance"] = rep.min_distance->str();
        j["closest"] = *rep.closest;
    }
    j["attains_lambda"] = rep.attains_lambda;
    j["consistent"] = problems.empty();
    if (!problems.empty()) j["discrepancies"] = problems;
    emit(j, out);
    return problems.empty() ? kExitSuccess : kExitMismatch;
}

}  // namespace

int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact isolation decisions for cutpoints of letter-bounded PFA languages"};
    app.name("isolde");
    app.require_subcommand(1);
    app.set_version_flag("--version", "isolde 1.0.0");

    std::string decide_path;
    DecideOptions decide_opts;
    Nat decide_bound = 0;
    CLI::App* decide = app.add_subcommand("decide", "Decide whether the cutpoint is isolated");
    decide->add_option("problem", decide_path, "problem JSON file")->required();
    decide->add_option("--budget", decide_opts.node_budget,
                       "search-node budget per language component");
    decide->add_option("--eval-budget", decide_opts.eval_budget,
                       "residue-evaluation budget per limit value set");
    decide->add_flag("--parallel", decide_opts.parallel, "explore components concurrently");
    decide->add_flag("--trace", decide_opts.trace, "include the search trace in the output");
    decide->add_option("--bound", decide_bound,
                       "also cross-check against brute-force enumeration up to this bound");

    std::string empt_path;
    DecideOptions empt_opts;
    CLI::App* empt = app.add_subcommand(
        "emptiness", "Decide whether any word value exceeds the (isolated) cutpoint");
    empt->add_option("problem", empt_path, "problem JSON file")->required();
    empt->add_option("--budget", empt_opts.node_budget,
                     "search-node budget per language component");
    empt->add_option("--eval-budget", empt_opts.eval_budget,
                     "residue-evaluation budget per limit value set");
    empt->add_flag("--parallel", empt_opts.parallel, "explore components concurrently");

    std::string v1_path;
    DecideOptions v1_opts;
    CLI::App* v1 = app.add_subcommand(
        "value1", "Report whether word values come arbitrarily close to 1");
    v1->add_option("problem", v1_path, "problem JSON file")->required();
    v1->add_option("--budget", v1_opts.node_budget,
                   "search-node budget per language component");
    v1->add_option("--eval-budget", v1_opts.eval_budget,
                   "residue-evaluation budget per limit value set");
    v1->add_flag("--parallel", v1_opts.parallel, "explore components concurrently");

    std::vector<Nat> gadget_items;
    Nat gadget_target = 0;
    std::string gadget_out;
    CLI::App* gadget = app.add_subcommand(
        "gadget", "Build and solve the subset-sum reduction gadget");
    gadget->add_option("--items", gadget_items, "item values (comma separated)")
        ->required()
        ->delimiter(',');
    gadget->add_option("--target", gadget_target, "target sum")->required();
    gadget->add_option("--out", gadget_out, "also write the gadget as a problem JSON file");

    std::string oracle_path;
    Nat oracle_bound = 30;
    DecideOptions oracle_opts;
    CLI::App* oracle = app.add_subcommand(
        "oracle", "Cross-check the decision against brute-force enumeration");
    oracle->add_option("problem", oracle_path, "problem JSON file")->required();
    oracle->add_option("--bound", oracle_bound,
                       "enumerate language points with all coordinates <= bound");
    oracle->add_option("--budget", oracle_opts.node_budget,
                       "search-node budget per language component");
    oracle->add_option("--eval-budget", oracle_opts.eval_budget,
                       "residue-evaluation budget per limit value set");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitSuccess : kExitInputError;
    }

    try {
        if (decide->parsed()) return cmd_decide(decide_path, decide_opts, decide_bound, out);
        if (empt->parsed()) return cmd_emptiness(empt_path, empt_opts, out);
        if (v1->parsed()) return cmd_value1(v1_path, v1_opts, out);
        if (gadget->parsed()) return cmd_gadget(gadget_items, gadget_target, gadget_out, out);
        if (oracle->parsed()) return cmd_oracle(oracle_path, oracle_bound, oracle_opts, out);
    } catch (const ResourceError& e) {
        err << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInputError;
    }
    err << "error: no subcommand selected\n";
    return kExitInputError;
}

}  // namespace isolde
