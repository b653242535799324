#include "isolde/applications.hpp"

#include <sstream>
#include <stdexcept>

#include "isolde/errors.hpp"
#include "isolde/matrix.hpp"

namespace isolde {

namespace {

// Take letter for item x: from the summing state, emit x into the
// accumulator with weight x/(x+1); the skip letter routes the same weight
// to the sink instead. Both keep rows stochastic with denominator x+1.
RatMatrix item_letter(Nat x, bool take) {
    const Rat w(static_cast<long>(x), static_cast<long>(x) + 1);
    const Rat d(1, static_cast<long>(x) + 1);
    RatMatrix m(3, 3);
    m.setConstant(Rat(0));
    m(0, 0) = d;
    if (take)
        m(0, 1) = w;
    else
        m(0, 2) = w;
    m(1, 1) = d;
    m(1, 2) = w;
    m(2, 2) = Rat(1);
    return m;
}

}  // namespace

SubsetSumGadget subset_sum_gadget(const std::vector<Nat>& items, Nat target) {
    if (items.empty())
        throw std::invalid_argument("subset_sum_gadget: at least one item required");
    for (const Nat x : items)
        if (x > (Nat(1) << 32))
            throw std::invalid_argument("subset_sum_gadget: item too large");

    SubsetSumGadget g;
    g.items = items;
    g.target = target;
    const size_t k = items.size();

    g.scale = Rat(1);
    for (const Nat x : items) g.scale *= Rat(static_cast<long>(x) + 1);
    const Rat t(static_cast<long>(target));
    if (t > g.scale)
        throw std::invalid_argument("subset_sum_gadget: target " + std::to_string(target) +
                                    " exceeds the scale " + g.scale.str() +
                                    ", the cutpoint would leave [0, 1]");
    g.lambda = t / g.scale;

    g.pfa.initial = rat_row({"1", "0", "0"});
    g.pfa.accept = rat_col({"0", "1", "0"});
    for (size_t i = 0; i < k; ++i) {
        g.pfa.letters.push_back({"a" + std::to_string(i + 1), item_letter(items[i], true)});
        g.pfa.letters.push_back({"b" + std::to_string(i + 1), item_letter(items[i], false)});
    }

    // One single-point component per subset; subsets enumerated take-first
    // with item 1 most significant, so the all-take word comes first.
    std::vector<LinearSet> comps;
    comps.reserve(size_t{1} << k);
    for (Nat c = 0; c < (Nat(1) << k); ++c) {
        NatVec base(2 * k, 0);
        for (size_t i = 0; i < k; ++i) {
            const bool skip = (c >> (k - 1 - i)) & 1;
            base[2 * i + (skip ? 1 : 0)] = 1;
        }
        comps.push_back(LinearSet(base, {}));
    }
    g.language = SemilinearSet(2 * k, comps);
    return g;
}

std::string subset_sum_grammar(const std::vector<Nat>& items) {
    if (items.empty())
        throw std::invalid_argument("subset_sum_grammar: at least one item required");
    std::ostringstream os;
    os << "alphabet:";
    for (size_t i = 0; i < items.size(); ++i) os << " a" << (i + 1) << " b" << (i + 1);
    os << "\nS ->";
    for (size_t i = 0; i < items.size(); ++i) os << " X" << (i + 1);
    os << "\n";
    for (size_t i = 0; i < items.size(); ++i)
        os << "X" << (i + 1) << " -> a" << (i + 1) << " | b" << (i + 1) << "\n";
    return os.str();
}

std::vector<size_t> gadget_choice(const SubsetSumGadget& g, const ExponentVec& exponents) {
    const size_t k = g.items.size();
    if (exponents.size() != 2 * k)
        throw std::invalid_argument("gadget_choice: expected " + std::to_string(2 * k) +
                                    " exponents, got " + std::to_string(exponents.size()));
    std::vector<size_t> taken;
    for (size_t i = 0; i < k; ++i) {
        const Nat a = exponents[2 * i];
        const Nat b = exponents[2 * i + 1];
        if (a + b != 1 || a > 1 || b > 1)
            throw std::invalid_argument("gadget_choice: item " + std::to_string(i + 1) +
                                        " must be taken or skipped exactly once");
        if (a == 1) taken.push_back(i);
    }
    return taken;
}

EmptinessResult emptiness_if_isolated(const PFA& pfa, const SemilinearSet& lang,
                                      const Rat& lambda, const DecideOptions& opts) {
    DecideOptions with_reps = opts;
    with_reps.collect_representatives = true;
    const IsolationResult r = decide_isolation(pfa, lang, lambda, with_reps);

    EmptinessResult out;
    if (r.verdict == Verdict::NonIsolated) {
        out.status = EmptinessStatus::NotIsolated;
        out.non_isolation = r.witness;
        return out;
    }
    out.epsilon = r.epsilon;
    for (const Representative& rep : r.representatives) {
        if (!(lambda < rep.value)) continue;
        out.status = EmptinessStatus::NonEmpty;
        if (const auto* word = std::get_if<ExponentVec>(&rep.source)) {
            out.witness = *word;
            out.witness_value = rep.value;
            return out;
        }
        // A limit above the cutpoint: walk the family until a member
        // crosses. Isolation guarantees this terminates.
        const auto& family = std::get<LimitWitness>(rep.source);
        for (Nat m = 0; m < Nat(1) << 20; ++m) {
            const ExponentVec x = limit_family_point(family, m);
            const Rat value = pfa_value(pfa, x);
            if (lambda < value) {
                out.witness = x;
                out.witness_value = value;
                return out;
            }
        }
        throw ResourceError(
            "emptiness_if_isolated: limit family failed to cross the cutpoint");
    }
    out.status = EmptinessStatus::Empty;
    return out;
}

ValueOneResult value_one(const PFA& pfa, const SemilinearSet& lang,
                         const DecideOptions& opts) {
    const IsolationResult r = decide_isolation(pfa, lang, Rat(1), opts);
    ValueOneResult out;
    out.value_one = r.verdict == Verdict::NonIsolated;
    out.witness = r.witness;
    return out;
}

AlternationResult bounded_alternation_isolation(const PFA& pfa, size_t blocks,
                                                const Rat& lambda, const DecideOptions& opts,
                                                Nat max_problems) {
    require_valid(pfa);
    const size_t ell = static_cast<size_t>(pfa.alphabet_size());
    if (ell == 0) throw std::invalid_argument("bounded_alternation_isolation: no letters");

    {
        Nat total = 1;
        bool over = false;
        for (size_t b = 0; b < blocks && !over; ++b) {
            if (total > max_problems / ell)
                over = true;
            else
                total *= ell;
        }
        if (over || total > max_problems)
            throw CapacityError("bounded_alternation_isolation: " + std::to_string(ell) +
                                "^" + std::to_string(blocks) +
                                " block problems exceed the limit of " +
                                std::to_string(max_problems));
    }

    // The full grid over `blocks` coordinates: one free exponent per block.
    std::vector<NatVec> periods;
    for (size_t b = 0; b < blocks; ++b) {
        NatVec p(blocks, 0);
        p[b] = 1;
        periods.push_back(p);
    }
    const SemilinearSet grid(blocks, {LinearSet(NatVec(blocks, 0), periods)});

    AlternationResult out;
    std::optional<Rat> eps;
    std::vector<size_t> choice(blocks, 0);
    for (;;) {
        PFA sub;
        sub.initial = pfa.initial;
        sub.accept = pfa.accept;
        for (size_t b = 0; b < blocks; ++b)
            sub.letters.push_back({std::to_string(b + 1) + ":" + pfa.letters[choice[b]].name,
                                   pfa.letters[choice[b]].matrix});

        const IsolationResult r = decide_isolation(sub, grid, lambda, opts);
        if (r.verdict == Verdict::NonIsolated) {
            out.verdict = Verdict::NonIsolated;
            out.letter_choice = choice;
            out.witness = r.witness;
            out.epsilon = Rat(0);
            return out;
        }
        if (!eps || r.epsilon < *eps) eps = r.epsilon;

        size_t d = blocks;
        for (; d > 0; --d) {
            if (++choice[d - 1] < ell) break;
            choice[d - 1] = 0;
        }
        if (d == 0) break;
    }
    out.verdict = Verdict::Isolated;
    out.epsilon = *eps;
    return out;
}

}  // namespace isolde
