#include <optional>
#include <set>
#include <vector>

#include "doctest.h"
#include "isolde/errors.hpp"
#include "isolde/isolation.hpp"
#include "isolde/matrix.hpp"
#include "test_util.hpp"

using namespace isolde;

namespace {

// value(a^k) = 1 - 2^-k: a one-letter chain that converges to 1 from below.
PFA halving_pfa() {
    PFA p;
    p.initial = rat_row({"0", "1"});
    p.accept = rat_col({"1", "0"});
    p.letters.push_back({"a", rat_matrix({{"1", "0"}, {"1/2", "1/2"}})});
    return p;
}

// value(a^k) alternates 1, 0, 1, 0, ... : a two-cycle permutation.
PFA swap_pfa() {
    PFA p;
    p.initial = rat_row({"1", "0"});
    p.accept = rat_col({"1", "0"});
    p.letters.push_back({"a", rat_matrix({{"0", "1"}, {"1", "0"}})});
    return p;
}

SemilinearSet all_counts(size_t dim) {
    NatVec base(dim, 0);
    std::vector<NatVec> periods;
    for (size_t j = 0; j < dim; ++j) {
        NatVec p(dim, 0);
        p[j] = 1;
        periods.push_back(p);
    }
    return SemilinearSet(dim, {LinearSet(base, periods)});
}

LimitSystem unit_decay_system() {
    // One absorbed state: D = 1, B = P = I, err_bound(k) = 2^-k.
    LimitSystem ls;
    ls.D = 1;
    ls.A = rat_identity(1);
    ls.B = rat_identity(1);
    ls.P = rat_identity(1);
    ls.cert = DecayCert{1, Rat(1)};
    return ls;
}

Rat brute_min_distance(const PFA& p, const SemilinearSet& lang, const Rat& lambda, Nat bound) {
    std::optional<Rat> best;
    for (const NatVec& k : enumerate_points(lang, bound)) {
        const Rat d = abs(pfa_value(p, k) - lambda);
        if (!best || d < *best) best = d;
    }
    REQUIRE(best.has_value());
    return *best;
}

}  // namespace

TEST_SUITE("isolation") {
    TEST_CASE("limit_value_set of the halving chain is the single point 1") {
        const PFA p = halving_pfa();
        const std::vector<LimitSystem> systems{make_limit_system(p.letters[0].matrix)};
        const LinearSet comp(NatVec{0}, {NatVec{1}});
        const LimitValueSet lvs = limit_value_set(p, comp, systems, 1000);
        CHECK(lvs.modulus == 1);
        REQUIRE(lvs.points.size() == 1);
        CHECK(lvs.points[0].value == Rat(1));
        CHECK(lvs.points[0].residues == std::vector<Nat>{0});
    }

    TEST_CASE("limit_value_set of the two-cycle splits by residue") {
        const PFA p = swap_pfa();
        const std::vector<LimitSystem> systems{make_limit_system(p.letters[0].matrix)};
        const LinearSet comp(NatVec{0}, {NatVec{1}});
        const LimitValueSet lvs = limit_value_set(p, comp, systems, 1000);
        CHECK(lvs.modulus == 2);
        REQUIRE(lvs.points.size() == 2);
        CHECK(lvs.points[0].value == Rat(1));
        CHECK(lvs.points[0].residues == std::vector<Nat>{0});
        CHECK(lvs.points[1].value == Rat(0));
        CHECK(lvs.points[1].residues == std::vector<Nat>{1});
    }

    TEST_CASE("limit_value_set respects pinned coordinates") {
        // Two letters; the first pinned at 3 contributes its exact power.
        PFA p = halving_pfa();
        p.letters.push_back({"b", rat_identity(2)});
        const std::vector<LimitSystem> systems{make_limit_system(p.letters[0].matrix),
                                               make_limit_system(p.letters[1].matrix)};
        const LinearSet comp(NatVec{3, 0}, {NatVec{0, 1}});
        const LimitValueSet lvs = limit_value_set(p, comp, systems, 1000);
        CHECK(lvs.modulus == 1);
        REQUIRE(lvs.points.size() == 1);
        CHECK(lvs.points[0].value == Rat(7, 8));  // value(a^3), b is the identity
    }

    TEST_CASE("limit_value_set enforces its evaluation budget") {
        const PFA p = swap_pfa();
        const std::vector<LimitSystem> systems{make_limit_system(p.letters[0].matrix)};
        const LinearSet comp(NatVec{0}, {NatVec{1}, NatVec{2}, NatVec{3}, NatVec{4}});
        // W = 2 and four periods: 16 classes > budget 10.
        CHECK_THROWS_AS(limit_value_set(p, comp, systems, 10), CapacityError);
        CHECK_NOTHROW(limit_value_set(p, comp, systems, 16));
    }

    TEST_CASE("branch_constant frozen examples") {
        const LimitSystem one = unit_decay_system();
        CHECK(branch_constant({one}, {0}, Rat(1, 8)) == 3);
        const std::vector<LimitSystem> two{one, one};
        CHECK(branch_constant(two, {0, 1}, Rat(1, 8)) == 4);
        // Trivial bounds clamp to 1.
        CHECK(branch_constant({one}, {0}, Rat(2)) == 1);
        CHECK(branch_constant({one}, {}, Rat(1, 100)) == 1);
        CHECK_THROWS_AS(branch_constant({one}, {0}, Rat(0)), std::invalid_argument);
    }

    TEST_CASE("attained cutpoint yields a finite witness") {
        const PFA p = halving_pfa();
        const SemilinearSet lang = all_counts(1);
        const IsolationResult r = decide_isolation(p, lang, Rat(3, 4));
        REQUIRE(r.verdict == Verdict::NonIsolated);
        REQUIRE(r.witness.has_value());
        const auto* fw = std::get_if<FiniteWitness>(&r.witness->kind);
        REQUIRE(fw != nullptr);
        CHECK(fw->exponents == ExponentVec{2});
        CHECK(r.witness->component == 0);
        CHECK(verify_witness(p, lang, Rat(3, 4), *r.witness).empty());
    }

    TEST_CASE("cutpoint at the limit yields a limit witness") {
        const PFA p = halving_pfa();
        const SemilinearSet lang = all_counts(1);
        const IsolationResult r = decide_isolation(p, lang, Rat(1));
        REQUIRE(r.verdict == Verdict::NonIsolated);
        REQUIRE(r.witness.has_value());
        const auto* lw = std::get_if<LimitWitness>(&r.witness->kind);
        REQUIRE(lw != nullptr);
        CHECK(lw->modulus == 1);
        CHECK(lw->residues == std::vector<Nat>{0});
        CHECK(limit_family_point(*lw, 0) == ExponentVec{0});
        CHECK(limit_family_point(*lw, 5) == ExponentVec{5});
        CHECK(verify_witness(p, lang, Rat(1), *r.witness).empty());
    }

    TEST_CASE("isolated cutpoint comes with the exact frozen bound") {
        const PFA p = halving_pfa();
        const SemilinearSet lang = all_counts(1);

        const IsolationResult r = decide_isolation(p, lang, Rat(9, 10));
        REQUIRE(r.verdict == Verdict::Isolated);
        CHECK(r.epsilon == Rat(1, 40));  // min(margin 1/20, leaf distance at k=3)
        CHECK(brute_min_distance(p, lang, Rat(9, 10), 50) == Rat(1, 40));

        const IsolationResult r2 = decide_isolation(p, lang, Rat(1, 3));
        REQUIRE(r2.verdict == Verdict::Isolated);
        CHECK(r2.epsilon == Rat(1, 6));  // leaf distance at k=1 beats the margin 1/3
        CHECK(brute_min_distance(p, lang, Rat(1, 3), 50) == Rat(1, 6));
    }

    TEST_CASE("certified bound stays below the true separation with two letters") {
        PFA p = halving_pfa();
        p.letters.push_back({"b", rat_identity(2)});
        const SemilinearSet lang = all_counts(2);
        const Rat lambda(9, 10);
        const IsolationResult r = decide_isolation(p, lang, lambda);
        REQUIRE(r.verdict == Verdict::Isolated);
        CHECK(Rat(0) < r.epsilon);
        CHECK(r.epsilon <= brute_min_distance(p, lang, lambda, 30));
        CHECK(r.nodes > 1);
    }

    TEST_CASE("empty language is isolated with bound 1") {
        const PFA p = halving_pfa();
        const IsolationResult r = decide_isolation(p, SemilinearSet(1, {}), Rat(1, 2));
        CHECK(r.verdict == Verdict::Isolated);
        CHECK(r.epsilon == Rat(1));
        CHECK(!r.note.empty());
        CHECK(r.nodes == 0);
    }

    TEST_CASE("two-cycle: isolation depends on the residue values") {
        const PFA p = swap_pfa();
        const SemilinearSet lang = all_counts(1);
        // Limits are {1, 0}; the cutpoint 0 is hit by the odd-residue family,
        // which the limit check finds before any leaf.
        const IsolationResult r0 = decide_isolation(p, lang, Rat(0));
        REQUIRE(r0.verdict == Verdict::NonIsolated);
        const auto* lw = std::get_if<LimitWitness>(&r0.witness->kind);
        REQUIRE(lw != nullptr);
        CHECK(lw->residues == std::vector<Nat>{1});
        CHECK(lw->modulus == 2);
        CHECK(verify_witness(p, lang, Rat(0), *r0.witness).empty());

        const IsolationResult rhalf = decide_isolation(p, lang, Rat(1, 2));
        REQUIRE(rhalf.verdict == Verdict::Isolated);
        CHECK(rhalf.epsilon == Rat(1, 4));  // margin: half the distance to {0, 1}
        CHECK(brute_min_distance(p, lang, Rat(1, 2), 50) == Rat(1, 2));
    }

    TEST_CASE("input validation") {
        const PFA p = halving_pfa();
        CHECK_THROWS_AS(decide_isolation(p, SemilinearSet(2, {}), Rat(1, 2)),
                        std::invalid_argument);
        PFA broken = p;
        broken.initial = rat_row({"1/2", "1/4"});
        CHECK_THROWS_AS(decide_isolation(broken, all_counts(1), Rat(1, 2)),
                        std::invalid_argument);
    }

    TEST_CASE("node budget trips deterministically, before later witnesses") {
        const PFA p = halving_pfa();
        // Component 0 needs many nodes; component 1 would witness immediately.
        const SemilinearSet lang(1, {LinearSet(NatVec{0}, {NatVec{1}}),
                                     LinearSet(NatVec{2}, {})});
        DecideOptions tight;
        tight.node_budget = 1;
        CHECK_THROWS_AS(decide_isolation(p, lang, Rat(3, 4), tight), ResourceError);
        DecideOptions tight_parallel = tight;
        tight_parallel.parallel = true;
        CHECK_THROWS_AS(decide_isolation(p, lang, Rat(3, 4), tight_parallel), ResourceError);
        // With room, the earlier component's witness wins.
        const IsolationResult r = decide_isolation(p, lang, Rat(3, 4));
        REQUIRE(r.verdict == Verdict::NonIsolated);
        CHECK(r.witness->component == 0);
    }

    TEST_CASE("parallel exploration replays the serial outcome exactly") {
        const PFA p = halving_pfa();
        // Several components; the witness hides in component 1 at k=3.
        const SemilinearSet lang(1, {LinearSet(NatVec{5}, {}),
                                     LinearSet(NatVec{1}, {NatVec{2}}),
                                     LinearSet(NatVec{3}, {}),
                                     LinearSet(NatVec{0}, {NatVec{1}})});
        const Rat lambda(7, 8);
        DecideOptions serial;
        serial.trace = true;
        DecideOptions parallel = serial;
        parallel.parallel = true;

        const IsolationResult a = decide_isolation(p, lang, lambda, serial);
        const IsolationResult b = decide_isolation(p, lang, lambda, parallel);
        REQUIRE(a.verdict == Verdict::NonIsolated);
        REQUIRE(b.verdict == Verdict::NonIsolated);
        CHECK(a.witness->component == 1);
        const auto* fa = std::get_if<FiniteWitness>(&a.witness->kind);
        const auto* fb = std::get_if<FiniteWitness>(&b.witness->kind);
        REQUIRE(fa != nullptr);
        REQUIRE(fb != nullptr);
        CHECK(fa->exponents == ExponentVec{3});
        CHECK(fa->exponents == fb->exponents);
        CHECK(a.witness->path == b.witness->path);
        CHECK(a.nodes == b.nodes);
        REQUIRE(a.trace.size() == b.trace.size());
        for (size_t i = 0; i < a.trace.size(); ++i) {
            CHECK(a.trace[i].component == b.trace[i].component);
            CHECK(a.trace[i].path == b.trace[i].path);
            CHECK(a.trace[i].event == b.trace[i].event);
            CHECK(a.trace[i].detail == b.trace[i].detail);
        }

        // Isolated instances agree as well, including the certified bound.
        const IsolationResult c = decide_isolation(p, lang, Rat(9, 10), serial);
        const IsolationResult d = decide_isolation(p, lang, Rat(9, 10), parallel);
        REQUIRE(c.verdict == Verdict::Isolated);
        REQUIRE(d.verdict == Verdict::Isolated);
        CHECK(c.epsilon == d.epsilon);
        CHECK(c.nodes == d.nodes);
        CHECK(c.trace.size() == d.trace.size());
    }

    TEST_CASE("verifier rejects tampered witnesses") {
        const PFA p = halving_pfa();
        const SemilinearSet lang = all_counts(1);

        Witness finite;
        finite.kind = FiniteWitness{{3}};  // value 7/8, not 3/4
        CHECK(!verify_witness(p, lang, Rat(3, 4), finite).empty());
        finite.kind = FiniteWitness{{2}};
        CHECK(verify_witness(p, lang, Rat(3, 4), finite).empty());

        Witness limit;
        LimitWitness lw;
        lw.component = LinearSet(NatVec{0}, {NatVec{1}});
        lw.residues = {0};
        lw.modulus = 1;
        limit.kind = lw;
        CHECK(verify_witness(p, lang, Rat(1), limit).empty());
        CHECK(!verify_witness(p, lang, Rat(9, 10), limit).empty());  // limit is 1

        LimitWitness no_growth = lw;
        no_growth.modulus = 0;
        limit.kind = no_growth;
        CHECK(!verify_witness(p, lang, Rat(1), limit).empty());

        LimitWitness bad_residues = lw;
        bad_residues.residues = {0, 1};
        limit.kind = bad_residues;
        CHECK(!verify_witness(p, lang, Rat(1), limit).empty());

        // Family not inside the language.
        const SemilinearSet evens(1, {LinearSet(NatVec{0}, {NatVec{2}})});
        limit.kind = lw;  // steps through odd counts as well
        CHECK(!verify_witness(p, evens, Rat(1), limit).empty());
    }

    TEST_CASE("random exactness: certified bound never exceeds observed distances") {
        test_util::Rng rng(77001);
        int checked = 0;
        for (int trial = 0; trial < 40; ++trial) {
            PFA p;
            const int n = 2 + static_cast<int>(rng.below(2));
            p.initial = test_util::random_stochastic(rng, n, 6).row(0);
            RatColVec v(n, 1);
            bool any = false;
            for (int i = 0; i < n; ++i) {
                const bool one = rng.below(2) == 1;
                v(i, 0) = Rat(one ? 1 : 0);
                any |= one;
            }
            if (!any) v(0, 0) = Rat(1);
            p.accept = v;
            p.letters.push_back({"a", test_util::random_stochastic(rng, n, 6)});

            const SemilinearSet lang = all_counts(1);
            const Rat lambda(static_cast<long>(1 + rng.below(9)), 10);
            IsolationResult r;
            try {
                r = decide_isolation(p, lang, lambda);
            } catch (const ResourceError&) {
                continue;  // decay search may exceed the ceiling for gnarly draws
            }
            ++checked;
            const Rat brute = brute_min_distance(p, lang, lambda, 60);
            if (r.verdict == Verdict::Isolated) {
                CHECK(Rat(0) < r.epsilon);
                CHECK(r.epsilon <= brute);
            } else {
                REQUIRE(r.witness.has_value());
                CHECK(verify_witness(p, lang, lambda, *r.witness).empty());
            }
        }
        CHECK(checked > 20);
    }
}
