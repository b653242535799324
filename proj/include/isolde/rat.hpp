#pragma once

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace isolde {

/// Natural number as used for exponents, Parikh coordinates, periods.
using Nat = std::uint64_t;

/// Exact rational number.
///
/// Invariants: always in lowest terms, denominator strictly positive.
/// Every constructor canonicalizes, and GMP's rational arithmetic
/// preserves canonical form, so the invariants hold for all values
/// that can be observed.
class Rat {
public:
    Rat() : v_(0) {}

    template <std::integral I>
    Rat(I n) {
        if constexpr (std::is_signed_v<I>)
            v_ = mpq_class(static_cast<long>(n));
        else
            v_ = mpq_class(static_cast<unsigned long>(n));
    }

    Rat(const mpz_class& num, const mpz_class& den) : v_(num, den) {
        if (den == 0) throw std::invalid_argument("Rat: zero denominator");
        v_.canonicalize();
    }

    explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    /// Parses "p/q" or an integer literal. An optional leading '-' is
    /// allowed on the numerator only; the denominator must be a positive
    /// digit string. Rejects everything else, including "1/0".
    static Rat from_string(const std::string& s);

    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }

    bool is_zero() const { return v_ == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    /// Canonical text form: "p" when the denominator is 1, else "p/q".
    std::string str() const;

    double to_double() const { return v_.get_d(); }
    const mpq_class& raw() const { return v_; }

    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
    friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
    friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
    friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }
    friend Rat operator-(const Rat& a) { Rat r; r.v_ = -a.v_; return r; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

private:
    mpq_class v_;
};

inline Rat abs(const Rat& a) { return a.sign() < 0 ? -a : a; }

/// 2^(-e) as an exact rational, e >= 0.
Rat inv_pow2(unsigned long e);

std::ostream& operator<<(std::ostream& os, const Rat& a);

}  // namespace isolde
