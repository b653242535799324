#include <cmath>

#include "doctest.h"
#include "isolde/matrix.hpp"
#include "isolde/poly.hpp"
#include "isolde/rat.hpp"
#include "test_util.hpp"

using namespace isolde;
using test_util::R;
using test_util::Rng;

TEST_SUITE("exactmath") {

TEST_CASE("Rat canonical form and parsing") {
    CHECK(Rat(mpz_class(3), mpz_class(6)).str() == "1/2");
    CHECK(Rat(mpz_class(-4), mpz_class(8)).str() == "-1/2");
    CHECK(Rat(mpz_class(2), mpz_class(-4)).str() == "-1/2");
    CHECK(R("7").str() == "7");
    CHECK(R("-3/9").str() == "-1/3");
    CHECK(R("0/5") == Rat(0));
    CHECK_THROWS_AS(Rat::from_string("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rat::from_string(""), std::invalid_argument);
    CHECK_THROWS_AS(Rat::from_string("1/-2"), std::invalid_argument);
    CHECK_THROWS_AS(Rat::from_string("a/2"), std::invalid_argument);
    CHECK_THROWS_AS(R("1") / R("0"), std::domain_error);
    CHECK(R("1/3") + R("1/6") == R("1/2"));
    CHECK(R("1/3") * R("3/5") == R("1/5"));
    CHECK(abs(R("-7/2")) == R("7/2"));
    CHECK(R("1/3") < R("1/2"));

    // Denominator positivity and lowest terms survive arithmetic.
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        Rat a = test_util::random_rat(rng, 20, 9);
        Rat b = test_util::random_rat(rng, 20, 9);
        Rat c = a * b + a - b;
        CHECK(c.den() > 0);
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), c.num().get_mpz_t(), c.den().get_mpz_t());
        CHECK(g == 1);
        CHECK(Rat::from_string(c.str()) == c);
    }
}

TEST_CASE("mat_mul on fixed inputs") {
    const RatMatrix id = rat_identity(2);
    CHECK(mat_mul(id, id) == id);

    const RatMatrix perm = rat_matrix({{"0", "1"}, {"1", "0"}});
    CHECK(mat_mul(perm, perm) == id);

    const RatMatrix a = rat_matrix({{"1/2", "1/2"}, {"0", "1"}});
    const RatMatrix b = rat_matrix({{"1", "0"}, {"1/2", "1/2"}});
    const RatMatrix expected = rat_matrix({{"3/4", "1/4"}, {"1/2", "1/2"}});
    CHECK(mat_mul(a, b) == expected);

    // Cross-check the frozen product against plain double arithmetic.
    const DoubleMatrix fd = to_double(a) * to_double(b);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(std::abs(fd(i, j) - expected(i, j).to_double()) < 1e-12);

    CHECK_THROWS_AS(mat_mul(a, rat_matrix({{"1", "0", "0"}})), std::invalid_argument);
}

TEST_CASE("mat_pow on fixed inputs") {
    const RatMatrix a = rat_matrix({{"1", "0"}, {"1/2", "1/2"}});
    CHECK(mat_pow(a, 0) == rat_identity(2));

    const RatMatrix perm = rat_matrix({{"0", "1"}, {"1", "0"}});
    CHECK(mat_pow(perm, 5) == perm);

    CHECK(mat_pow(a, 3) == rat_matrix({{"1", "0"}, {"7/8", "1/8"}}));
    // Iterated-multiplication oracle for the same power.
    RatMatrix it = rat_identity(2);
    for (int i = 0; i < 3; ++i) it = mat_mul(it, a);
    CHECK(mat_pow(a, 3) == it);

    CHECK_THROWS_AS(mat_pow(rat_matrix({{"1", "0"}}), 2), std::invalid_argument);
}

TEST_CASE("mat_pow is a monoid homomorphism") {
    Rng rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(4));
        const RatMatrix a = test_util::random_rat_matrix(rng, n, 3, 4);
        const std::uint64_t j = rng.below(17);
        const std::uint64_t k = rng.below(17);
        CHECK(mat_pow(a, j + k) == mat_mul(mat_pow(a, j), mat_pow(a, k)));
    }
}

TEST_CASE("char_poly on fixed inputs") {
    CHECK(char_poly(rat_identity(2)) == RatPoly({R("1"), R("-2"), R("1")}));
    CHECK(char_poly(rat_matrix({{"0", "1"}, {"1", "0"}})) == RatPoly({R("-1"), R("0"), R("1")}));
    // Symbolic 2x2 expansion: x^2 - tr x + det with tr = 3/2, det = 1/2.
    CHECK(char_poly(rat_matrix({{"1", "0"}, {"1/2", "1/2"}})) ==
          RatPoly({R("1/2"), R("-3/2"), R("1")}));
}

TEST_CASE("min_poly on fixed inputs") {
    CHECK(min_poly(rat_identity(3)) == RatPoly({R("-1"), R("1")}));
    CHECK(min_poly(rat_matrix({{"0", "1"}, {"1", "0"}})) == RatPoly({R("-1"), R("0"), R("1")}));
    const RatMatrix a = rat_matrix({{"1", "0"}, {"1/2", "1/2"}});
    CHECK(min_poly(a) == char_poly(a));
}

TEST_CASE("Cayley-Hamilton and minimal polynomial divisibility") {
    Rng rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(4));
        const RatMatrix a = test_util::random_rat_matrix(rng, n, 3, 4);
        const RatPoly cp = char_poly(a);
        const RatPoly mp = min_poly(a);
        CHECK(cp.eval_matrix(a) == RatMatrix::Zero(n, n));
        CHECK(mp.eval_matrix(a) == RatMatrix::Zero(n, n));
        CHECK(poly_divides(mp, cp));
        CHECK(mp.degree() >= 1);
        CHECK(mp.leading() == Rat(1));
    }
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic(1) == RatPoly({R("-1"), R("1")}));
    CHECK(cyclotomic(2) == RatPoly({R("1"), R("1")}));
    CHECK(cyclotomic(4) == RatPoly({R("1"), R("0"), R("1")}));
    CHECK(cyclotomic(6) == RatPoly({R("1"), R("-1"), R("1")}));
    CHECK_THROWS_AS(cyclotomic(0), std::invalid_argument);

    for (unsigned k = 1; k <= 24; ++k) {
        RatPoly prod = RatPoly::constant(Rat(1));
        for (unsigned d = 1; d <= k; ++d)
            if (k % d == 0) prod = prod * cyclotomic(d);
        CHECK(prod == RatPoly::x_pow_minus_one(k));
    }
}

TEST_CASE("poly division and divisibility") {
    const RatPoly x2m1 = RatPoly::x_pow_minus_one(2);
    CHECK(poly_divides(RatPoly({R("-1"), R("1")}), x2m1));
    CHECK(!poly_divides(RatPoly({R("1"), R("0"), R("1")}), x2m1));
    CHECK(poly_divides(RatPoly({R("2"), R("4")}), RatPoly()));
    CHECK_THROWS_AS(poly_divides(RatPoly(), x2m1), std::invalid_argument);

    auto [q, r] = poly_divmod(RatPoly({R("1"), R("0"), R("0"), R("1")}),
                              RatPoly({R("1"), R("1")}));
    CHECK(r.is_zero());
    CHECK(q == RatPoly({R("1"), R("-1"), R("1")}));

    // Exactness on random pairs: a = q*b + r with deg r < deg b.
    Rng rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Rat> ac, bc;
        const int da = static_cast<int>(rng.below(7));
        const int db = static_cast<int>(rng.below(4));
        for (int i = 0; i <= da; ++i) ac.push_back(test_util::random_rat(rng, 4, 3));
        for (int i = 0; i <= db; ++i) bc.push_back(test_util::random_rat(rng, 4, 3));
        const RatPoly a(std::move(ac));
        RatPoly b(std::move(bc));
        if (b.is_zero()) b = RatPoly({R("1"), R("2")});
        auto [qq, rr] = poly_divmod(a, b);
        CHECK(qq * b + rr == a);
        CHECK(rr.degree() < b.degree());
    }
}

TEST_CASE("zero polynomial degree sentinel") {
    CHECK(RatPoly().degree() == -1);
    CHECK(RatPoly({R("0"), R("0")}).degree() == -1);
    CHECK(RatPoly({R("0"), R("1")}).degree() == 1);
}

TEST_CASE("inf_norm") {
    const RatMatrix a = rat_matrix({{"1", "0"}, {"1/2", "1/2"}});
    CHECK(inf_norm(a) == Rat(1));
    CHECK(inf_norm(rat_matrix({{"1", "-2"}, {"0", "1"}})) == Rat(3));
    CHECK(inf_norm(RatMatrix::Zero(3, 3)) == Rat(0));

    Rng rng(19);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(4));
        const RatMatrix x = test_util::random_rat_matrix(rng, n, 3, 4);
        const RatMatrix y = test_util::random_rat_matrix(rng, n, 3, 4);
        CHECK(inf_norm(mat_mul(x, y)) <= inf_norm(x) * inf_norm(y));
        const RatMatrix s = test_util::random_stochastic(rng, n, 6);
        CHECK(inf_norm(s) == Rat(1));
    }
}

}  // TEST_SUITE
