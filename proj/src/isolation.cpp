#include "isolde/isolation.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "isolde/errors.hpp"
#include "isolde/matrix.hpp"

namespace isolde {

ExponentVec limit_family_point(const LimitWitness& w, Nat m) {
    ExponentVec x = w.component.base;
    for (size_t i = 0; i < w.component.periods.size(); ++i) {
        const Nat t = w.residues[i] + w.modulus * m;
        for (size_t j = 0; j < x.size(); ++j) x[j] += t * w.component.periods[i][j];
    }
    return x;
}

namespace {

std::vector<size_t> free_letters(const LinearSet& comp) {
    std::vector<size_t> out;
    for (size_t j = 0; j < comp.dim(); ++j) {
        for (const auto& p : comp.periods) {
            if (p[j] != 0) {
                out.push_back(j);
                break;
            }
        }
    }
    return out;
}

std::string render_vec(const std::vector<Nat>& v) {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << v[i];
    }
    os << ')';
    return os.str();
}

Rat dot_accept(const RatRowVec& row, const PFA& pfa) {
    Rat out(0);
    for (Eigen::Index j = 0; j < row.cols(); ++j) out += row(0, j) * pfa.accept(j, 0);
    return out;
}

}  // namespace

LimitValueSet limit_value_set(const PFA& pfa, const LinearSet& comp,
                              const std::vector<LimitSystem>& systems, Nat eval_budget) {
    const size_t ell = static_cast<size_t>(pfa.alphabet_size());
    if (comp.dim() != ell) throw std::invalid_argument("limit_value_set: dimension mismatch");
    if (systems.size() != ell)
        throw std::invalid_argument("limit_value_set: one limit system per letter required");

    const std::vector<size_t> free = free_letters(comp);
    std::vector<char> is_free(ell, 0);
    for (const size_t j : free) is_free[j] = 1;

    Nat W = 1;
    for (const size_t j : free) W = std::lcm(W, systems[j].D);

    const size_t np = comp.periods.size();
    {
        Nat total = 1;
        bool over = false;
        for (size_t i = 0; i < np && !over; ++i) {
            if (total > eval_budget / W)
                over = true;
            else
                total *= W;
        }
        if (over || total > eval_budget)
            throw CapacityError("limit_value_set: " + std::to_string(np) +
                                " periods with modulus " + std::to_string(W) +
                                " exceed the evaluation budget of " +
                                std::to_string(eval_budget));
    }

    // Pinned letters take one exact power; free letters take a cached limit
    // matrix per residue class of their dominant period.
    std::vector<RatMatrix> pinned(ell);
    for (size_t j = 0; j < ell; ++j)
        if (!is_free[j]) pinned[j] = mat_pow(pfa.letters[j].matrix, comp.base[j]);
    std::vector<std::map<Nat, RatMatrix>> limit_cache(ell);

    LimitValueSet out;
    out.modulus = W;
    std::set<Rat> seen;
    std::vector<Nat> r(np, 0);

    auto eval = [&]() {
        RatRowVec row = pfa.initial;
        for (size_t j = 0; j < ell; ++j) {
            if (is_free[j]) {
                Nat a = comp.base[j];
                for (size_t i = 0; i < np; ++i) a += r[i] * comp.periods[i][j];
                const Nat rem = a % systems[j].D;
                auto it = limit_cache[j].find(rem);
                if (it == limit_cache[j].end())
                    it = limit_cache[j]
                             .emplace(rem, limit_matrix(systems[j], systems[j].A, rem))
                             .first;
                row = row * it->second;
            } else {
                row = row * pinned[j];
            }
        }
        const Rat value = dot_accept(row, pfa);
        if (seen.insert(value).second) out.points.push_back(LimitPoint{value, r});
    };

    for (;;) {
        eval();
        size_t d = np;
        for (; d > 0; --d) {
            if (++r[d - 1] < W) break;
            r[d - 1] = 0;
        }
        if (d == 0) break;
    }
    return out;
}

Nat branch_constant(const std::vector<LimitSystem>& systems, const std::vector<size_t>& free,
                    const Rat& bound) {
    if (!(Rat(0) < bound))
        throw std::invalid_argument("branch_constant: bound must be positive");
    for (const size_t j : free)
        if (j >= systems.size())
            throw std::invalid_argument("branch_constant: letter index out of range");
    if (free.empty()) return 1;

    auto total = [&](Nat k) {
        Rat s(0);
        for (const size_t j : free) s += err_bound(systems[j], k);
        return s;
    };

    Nat hi = 1;
    while (total(hi) > bound) {
        hi *= 2;
        if (hi > (Nat(1) << 40))
            throw CapacityError("branch_constant: no exponent below 2^40 meets the bound");
    }
    Nat lo = 0;
    while (lo < hi) {
        const Nat mid = lo + (hi - lo) / 2;
        if (total(mid) <= bound)
            hi = mid;
        else
            lo = mid + 1;
    }
    return std::max<Nat>(Nat(1), lo);
}

namespace {

struct ComponentRun {
    enum class Kind { Skipped, Complete, Witness, Error } kind = Kind::Skipped;
    std::optional<Rat> eps;
    std::optional<Witness> wit;
    std::exception_ptr error;
    Nat nodes = 0;
    std::vector<TraceRecord> trace;
    std::vector<Representative> reps;
};

struct SearchCtx {
    const PFA* pfa = nullptr;
    const std::vector<LimitSystem>* systems = nullptr;
    const Rat* lambda = nullptr;
    const DecideOptions* opts = nullptr;
};

void merge_eps(std::optional<Rat>& acc, const Rat& v) {
    if (!acc || v < *acc) acc = v;
}

// Exhaustive search below one language component. Returns true as soon as a
// witness is found (stored in run); otherwise accumulates the component's
// separation bound into run.eps.
bool dfs(const SearchCtx& ctx, size_t comp_idx, const LinearSet& comp,
         std::vector<BranchStep>& path, ComponentRun& run) {
    if (++run.nodes > ctx.opts->node_budget)
        throw ResourceError("decide_isolation: node budget exceeded in component " +
                            std::to_string(comp_idx));
    const Rat& lambda = *ctx.lambda;
    const std::vector<size_t> free = free_letters(comp);

    if (free.empty()) {
        const Rat value = pfa_value(*ctx.pfa, comp.base);
        if (value == lambda) {
            run.wit = Witness{comp_idx, path, FiniteWitness{comp.base}};
            if (ctx.opts->trace)
                run.trace.push_back({comp_idx, path, "witness",
                                     "word k=" + render_vec(comp.base) +
                                         " attains the cutpoint " + value.str()});
            return true;
        }
        const Rat d = abs(value - lambda);
        merge_eps(run.eps, d);
        if (ctx.opts->collect_representatives)
            run.reps.push_back(Representative{value, comp.base});
        if (ctx.opts->trace)
            run.trace.push_back({comp_idx, path, "leaf",
                                 "k=" + render_vec(comp.base) + " value=" + value.str() +
                                     " distance=" + d.str()});
        return false;
    }

    const LimitValueSet lvs =
        limit_value_set(*ctx.pfa, comp, *ctx.systems, ctx.opts->eval_budget);
    std::optional<Rat> min_gap;
    for (const LimitPoint& pt : lvs.points) {
        if (ctx.opts->collect_representatives)
            run.reps.push_back(
                Representative{pt.value, LimitWitness{comp, pt.residues, lvs.modulus}});
        if (pt.value == lambda) {
            run.wit = Witness{comp_idx, path, LimitWitness{comp, pt.residues, lvs.modulus}};
            if (ctx.opts->trace)
                run.trace.push_back({comp_idx, path, "witness",
                                     "limit family residues=" + render_vec(pt.residues) +
                                         " modulus=" + std::to_string(lvs.modulus) +
                                         " converges to the cutpoint " + lambda.str()});
            return true;
        }
        merge_eps(min_gap, abs(pt.value - lambda));
    }

    const Rat margin = *min_gap / Rat(2);
    merge_eps(run.eps, margin);
    const Nat C = branch_constant(*ctx.systems, free, margin);
    if (ctx.opts->trace) {
        std::ostringstream os;
        os << "limits={";
        for (size_t i = 0; i < lvs.points.size(); ++i) {
            if (i) os << ',';
            os << lvs.points[i].value.str();
        }
        os << "} min_distance=" << min_gap->str() << " margin=" << margin.str() << " C=" << C;
        run.trace.push_back({comp_idx, path, "branch", os.str()});
    }

    for (const size_t j : free) {
        for (Nat k = 0; k < C; ++k) {
            for (const LinearSet& part : fix_coordinate(comp, j, k)) {
                path.push_back(BranchStep{j, k});
                const bool found = dfs(ctx, comp_idx, part, path, run);
                path.pop_back();
                if (found) return true;
            }
        }
    }
    return false;
}

}  // namespace

IsolationResult decide_isolation(const PFA& pfa, const SemilinearSet& lang, const Rat& lambda,
                                 const DecideOptions& opts) {
    require_valid(pfa);
    if (lang.dimension != static_cast<size_t>(pfa.alphabet_size()))
        throw std::invalid_argument(
            "decide_isolation: language dimension " + std::to_string(lang.dimension) +
            " does not match alphabet size " + std::to_string(pfa.alphabet_size()));

    IsolationResult res;
    if (lang.components.empty()) {
        res.verdict = Verdict::Isolated;
        res.epsilon = Rat(1);
        res.note = "empty language: every value is separated";
        return res;
    }

    std::vector<LimitSystem> systems;
    systems.reserve(pfa.letters.size());
    for (const Letter& l : pfa.letters)
        systems.push_back(make_limit_system(l.matrix, opts.m0_ceiling));

    const SearchCtx ctx{&pfa, &systems, &lambda, &opts};
    const size_t n = lang.components.size();
    std::vector<ComponentRun> runs(n);

    auto run_component = [&](size_t i) {
        ComponentRun& run = runs[i];
        run.kind = ComponentRun::Kind::Complete;
        std::vector<BranchStep> path;
        try {
            if (dfs(ctx, i, lang.components[i], path, run))
                run.kind = ComponentRun::Kind::Witness;
        } catch (...) {
            run.error = std::current_exception();
            run.kind = ComponentRun::Kind::Error;
        }
    };

    if (opts.parallel && n > 1) {
        std::atomic<size_t> next{0};
        std::atomic<size_t> win{n};
        auto worker = [&]() {
            for (;;) {
                const size_t i = next.fetch_add(1);
                if (i >= n) return;
                if (i > win.load()) continue;  // a decision at a lower index already stands
                run_component(i);
                if (runs[i].kind != ComponentRun::Kind::Complete) {
                    size_t cur = win.load();
                    while (i < cur && !win.compare_exchange_weak(cur, i)) {
                    }
                }
            }
        };
        const size_t hw = std::max(1u, std::thread::hardware_concurrency());
        const size_t n_threads = std::min(hw, n);
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    } else {
        for (size_t i = 0; i < n; ++i) {
            run_component(i);
            if (runs[i].kind != ComponentRun::Kind::Complete) break;
        }
    }

    // Canonical reduction: replay the serial component order, so parallel
    // runs are observationally identical to serial ones.
    size_t stop = n;
    for (size_t i = 0; i < n; ++i) {
        if (runs[i].kind == ComponentRun::Kind::Witness ||
            runs[i].kind == ComponentRun::Kind::Error) {
            stop = i;
            break;
        }
    }
    if (stop < n && runs[stop].kind == ComponentRun::Kind::Error)
        std::rethrow_exception(runs[stop].error);

    std::optional<Rat> eps;
    const size_t upto = stop < n ? stop : n - 1;
    for (size_t i = 0; i <= upto; ++i) {
        res.nodes += runs[i].nodes;
        if (opts.trace)
            res.trace.insert(res.trace.end(), runs[i].trace.begin(), runs[i].trace.end());
        if (opts.collect_representatives)
            res.representatives.insert(res.representatives.end(), runs[i].reps.begin(),
                                       runs[i].reps.end());
        if (runs[i].eps) merge_eps(eps, *runs[i].eps);
    }

    if (stop < n) {
        res.verdict = Verdict::NonIsolated;
        res.witness = runs[stop].wit;
        res.epsilon = Rat(0);
        return res;
    }
    res.verdict = Verdict::Isolated;
    res.epsilon = *eps;
    return res;
}

std::vector<std::string> verify_witness(const PFA& pfa, const SemilinearSet& lang,
                                        const Rat& lambda, const Witness& w) {
    std::vector<std::string> problems;
    const auto bad = [&](std::string m) { problems.push_back(std::move(m)); };

    if (const auto* fw = std::get_if<FiniteWitness>(&w.kind)) {
        if (fw->exponents.size() != lang.dimension) {
            bad("finite witness dimension does not match the language");
            return problems;
        }
        if (!contains(lang, fw->exponents))
            bad("finite witness word " + render_vec(fw->exponents) + " is not in the language");
        const Rat value = pfa_value(pfa, fw->exponents);
        if (value != lambda)
            bad("finite witness value " + value.str() + " differs from the cutpoint " +
                lambda.str());
        return problems;
    }

    const auto& lw = std::get<LimitWitness>(w.kind);
    if (lw.component.dim() != lang.dimension) {
        bad("limit witness dimension does not match the language");
        return problems;
    }
    if (lw.component.periods.empty()) {
        bad("limit witness family has no periods to grow along");
        return problems;
    }
    if (lw.residues.size() != lw.component.periods.size()) {
        bad("limit witness carries " + std::to_string(lw.residues.size()) + " residues for " +
            std::to_string(lw.component.periods.size()) + " periods");
        return problems;
    }
    if (lw.modulus == 0) {
        bad("limit witness modulus must be positive");
        return problems;
    }

    std::vector<LimitSystem> systems;
    systems.reserve(pfa.letters.size());
    for (const Letter& l : pfa.letters) systems.push_back(make_limit_system(l.matrix));

    const size_t ell = static_cast<size_t>(pfa.alphabet_size());
    const std::vector<size_t> free = free_letters(lw.component);
    std::vector<char> is_free(ell, 0);
    for (const size_t j : free) is_free[j] = 1;

    for (const size_t j : free) {
        if (lw.modulus % systems[j].D != 0)
            bad("modulus " + std::to_string(lw.modulus) +
                " is not a multiple of the dominant period " + std::to_string(systems[j].D) +
                " of letter " + pfa.letters[j].name);
        Nat growth = 0;
        for (const auto& p : lw.component.periods) growth += p[j];
        if (growth == 0)
            bad("letter " + pfa.letters[j].name + " is free but the family never grows it");
    }
    if (!problems.empty()) return problems;

    // Recompute the limit value of the carried residue class.
    RatRowVec row = pfa.initial;
    for (size_t j = 0; j < ell; ++j) {
        Nat a = lw.component.base[j];
        for (size_t i = 0; i < lw.residues.size(); ++i)
            a += lw.residues[i] * lw.component.periods[i][j];
        if (is_free[j])
            row = row * limit_matrix(systems[j], systems[j].A, a % systems[j].D);
        else
            row = row * mat_pow(systems[j].A, a);
    }
    const Rat limit_value = dot_accept(row, pfa);
    if (limit_value != lambda) {
        bad("recomputed limit value " + limit_value.str() + " differs from the cutpoint " +
            lambda.str());
        return problems;
    }

    // Spot-check the first family members: in the language, and inside the
    // certified envelope around the cutpoint, which shrinks to zero as the
    // free exponents grow.
    for (Nat m = 0; m < 20; ++m) {
        const ExponentVec x = limit_family_point(lw, m);
        if (!contains(lang, x)) {
            bad("family member m=" + std::to_string(m) + " with k=" + render_vec(x) +
                " is not in the language");
            break;
        }
        const Rat value = pfa_value(pfa, x);
        Rat envelope(0);
        for (const size_t j : free) envelope += err_bound(systems[j], x[j]);
        if (abs(value - lambda) > envelope) {
            bad("family member m=" + std::to_string(m) + " with k=" + render_vec(x) +
                " has value " + value.str() + " outside the certified envelope " +
                envelope.str());
            break;
        }
    }
    return problems;
}

}  // namespace isolde
