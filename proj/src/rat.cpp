#include "isolde/rat.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace isolde {

namespace {

bool digits_only(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rat Rat::from_string(const std::string& s) {
    std::string num = s, den = "1";
    if (auto slash = s.find('/'); slash != std::string::npos) {
        num = s.substr(0, slash);
        den = s.substr(slash + 1);
    }
    std::string num_digits = num;
    if (!num_digits.empty() && num_digits[0] == '-') num_digits.erase(0, 1);
    if (!digits_only(num_digits) || !digits_only(den))
        throw std::invalid_argument("malformed rational \"" + s + "\"");
    mpz_class d(den);
    if (d == 0)
        throw std::invalid_argument("zero denominator in rational \"" + s + "\"");
    return Rat(mpz_class(num), d);
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw std::domain_error("Rat: division by zero");
    v_ /= o.v_;
    return *this;
}

std::string Rat::str() const {
    std::string out = num().get_str();
    if (den() != 1) out += "/" + den().get_str();
    return out;
}

Rat inv_pow2(unsigned long e) {
    mpz_class d = 1;
    mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), e);
    return Rat(1, d);
}

std::ostream& operator<<(std::ostream& os, const Rat& a) { return os << a.str(); }

}  // namespace isolde
