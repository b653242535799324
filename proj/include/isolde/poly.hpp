#pragma once

#include <vector>

#include "isolde/matrix.hpp"
#include "isolde/rat.hpp"

namespace isolde {

/// Univariate polynomial over the rationals, dense coefficient form.
/// coeff(i) is the coefficient of x^i. The zero polynomial has an empty
/// coefficient vector and degree() == -1 (the distinguished sentinel).
class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

    static RatPoly constant(const Rat& a);
    /// c1 * x + c0
    static RatPoly linear(const Rat& c1, const Rat& c0);
    /// x^k - 1
    static RatPoly x_pow_minus_one(unsigned k);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Rat coeff(int i) const;
    const Rat& leading() const;

    Rat eval(const Rat& x) const;
    RatMatrix eval_matrix(const RatMatrix& a) const;

    RatPoly& operator+=(const RatPoly& o);
    RatPoly& operator-=(const RatPoly& o);
    friend RatPoly operator+(RatPoly a, const RatPoly& b) { a += b; return a; }
    friend RatPoly operator-(RatPoly a, const RatPoly& b) { a -= b; return a; }
    friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
    friend RatPoly operator*(const Rat& s, RatPoly p);
    friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.c_ == b.c_; }

    /// Text form for diagnostics, e.g. "x^2 - 3/2 x + 1/2".
    std::string str() const;

private:
    void trim();
    std::vector<Rat> c_;
};

/// Exact division with remainder: a = q*b + r, deg r < deg b. b must be nonzero.
std::pair<RatPoly, RatPoly> poly_divmod(const RatPoly& a, const RatPoly& b);

/// Whether p divides q exactly. p must be nonzero; p | 0 holds for any p.
bool poly_divides(const RatPoly& p, const RatPoly& q);

/// Characteristic polynomial det(xI - a), monic of degree n, by the
/// Faddeev-LeVerrier recurrence (divisions only by the integers 1..n,
/// so everything stays exact).
RatPoly char_poly(const RatMatrix& a);

/// Minimal polynomial: least monic p with p(a) = 0, found by exact rank
/// tests on the vectorized powers I, a, a^2, ...
RatPoly min_poly(const RatMatrix& a);

/// k-th cyclotomic polynomial, by exact division of x^k - 1 by all lower
/// cyclotomics at divisors of k.
RatPoly cyclotomic(unsigned k);

std::ostream& operator<<(std::ostream& os, const RatPoly& p);

}  // namespace isolde
