#include "isolde/stochastic.hpp"

#include <numeric>
#include <set>
#include <sstream>

#include "isolde/errors.hpp"
#include "isolde/poly.hpp"

namespace isolde {

namespace {

void check_stochastic_rows(const RatMatrix& m, const std::string& what,
                           std::vector<std::string>& out) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Rat sum(0);
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (m(i, j).sign() < 0)
                out.push_back(what + ": entry (" + std::to_string(i) + "," +
                              std::to_string(j) + ") is negative");
            sum += m(i, j);
        }
        if (sum != Rat(1))
            out.push_back(what + ": row " + std::to_string(i) + " sums to " +
                          sum.str() + ", expected 1");
    }
}

void require_square_stochastic(const RatMatrix& a, const char* who) {
    if (a.rows() != a.cols() || a.rows() == 0)
        throw std::invalid_argument(std::string(who) + ": matrix must be square and nonempty");
    std::vector<std::string> bad;
    check_stochastic_rows(a, "matrix", bad);
    if (!bad.empty())
        throw std::invalid_argument(std::string(who) + ": " + bad.front());
}

}  // namespace

std::vector<std::string> validate_pfa(const PFA& p) {
    std::vector<std::string> out;
    const Eigen::Index n = p.n();
    if (n == 0) {
        out.push_back("initial: must have at least one state");
        return out;
    }
    {
        Rat sum(0);
        for (Eigen::Index j = 0; j < n; ++j) {
            if (p.initial(0, j).sign() < 0)
                out.push_back("initial: entry " + std::to_string(j) + " is negative");
            sum += p.initial(0, j);
        }
        if (sum != Rat(1))
            out.push_back("initial: entries sum to " + sum.str() + ", expected 1");
    }
    if (p.accept.rows() != n) {
        out.push_back("final: length " + std::to_string(p.accept.rows()) +
                      " does not match state count " + std::to_string(n));
    } else {
        for (Eigen::Index i = 0; i < n; ++i)
            if (p.accept(i, 0) != Rat(0) && p.accept(i, 0) != Rat(1))
                out.push_back("final: entry " + std::to_string(i) + " is not 0 or 1");
    }
    std::set<std::string> seen;
    for (size_t li = 0; li < p.letters.size(); ++li) {
        const Letter& l = p.letters[li];
        const std::string what = "letter " + (l.name.empty() ? "#" + std::to_string(li) : l.name);
        if (l.name.empty()) out.push_back(what + ": empty name");
        if (!seen.insert(l.name).second) out.push_back(what + ": duplicate name");
        if (l.matrix.rows() != n || l.matrix.cols() != n) {
            out.push_back(what + ": matrix is " + std::to_string(l.matrix.rows()) + "x" +
                          std::to_string(l.matrix.cols()) + ", expected " + std::to_string(n) +
                          "x" + std::to_string(n));
            continue;
        }
        check_stochastic_rows(l.matrix, what, out);
    }
    return out;
}

void require_valid(const PFA& p) {
    const auto bad = validate_pfa(p);
    if (bad.empty()) return;
    std::ostringstream os;
    os << "invalid PFA:";
    for (const auto& b : bad) os << " [" << b << "]";
    throw std::invalid_argument(os.str());
}

Rat pfa_value(const PFA& p, const std::vector<Nat>& ks) {
    if (ks.size() != p.letters.size())
        throw std::invalid_argument("pfa_value: got " + std::to_string(ks.size()) +
                                    " exponents for " + std::to_string(p.letters.size()) +
                                    " letters");
    RatRowVec cur = p.initial;
    for (size_t i = 0; i < ks.size(); ++i)
        cur = cur * mat_pow(p.letters[i].matrix, ks[i]);
    Rat out(0);
    for (Eigen::Index j = 0; j < cur.cols(); ++j) out += cur(0, j) * p.accept(j, 0);
    return out;
}

Nat dominant_period(const RatMatrix& a) {
    require_square_stochastic(a, "dominant_period");
    const RatPoly cp = char_poly(a);
    const Nat n = static_cast<Nat>(a.rows());
    Nat d = 1;
    for (Nat k = 1; k <= n; ++k)
        if (poly_divides(cyclotomic(static_cast<unsigned>(k)), cp))
            d = std::lcm(d, k);
    return d;
}

RatMatrix power_projection(const RatMatrix& a, Nat D) {
    require_square_stochastic(a, "power_projection");
    const RatMatrix b = mat_pow(a, D);
    const RatPoly mp = min_poly(b);
    auto [h, rem] = poly_divmod(mp, RatPoly::linear(Rat(1), Rat(-1)));
    if (!rem.is_zero())
        throw std::invalid_argument(
            "power_projection: x - 1 does not divide the minimal polynomial of A^D");
    const Rat h1 = h.eval(Rat(1));
    if (h1.is_zero())
        throw std::invalid_argument(
            "power_projection: (x - 1)^2 divides the minimal polynomial of A^D");
    return (Rat(1) / h1) * h.eval_matrix(b);
}

DecayCert decay_certificate(const RatMatrix& a, Nat D, const RatMatrix& P, Nat m0_ceiling) {
    require_square_stochastic(a, "decay_certificate");
    const RatMatrix b = mat_pow(a, D);
    const RatMatrix r = b - P;
    const Rat half(mpz_class(1), mpz_class(2));

    Nat m0 = 0;
    for (Nat m = 1; m <= m0_ceiling; m *= 2) {
        if (inf_norm(mat_pow(r, m)) <= half) {
            m0 = m;
            break;
        }
    }
    if (m0 == 0)
        throw CapacityError("decay_certificate: no power up to " + std::to_string(m0_ceiling) +
                            " brought the residual norm below 1/2");

    Rat k(1);
    RatMatrix cur = rat_identity(b.rows());
    for (Nat i = 0; i < m0; ++i) {
        const Rat norm = inf_norm(RatMatrix(cur - P));
        if (k < norm) k = norm;
        if (i + 1 < m0) cur = mat_mul(cur, b);
    }
    return DecayCert{m0, k};
}

LimitSystem make_limit_system(const RatMatrix& a, Nat m0_ceiling) {
    LimitSystem ls;
    ls.D = dominant_period(a);
    ls.A = a;
    ls.B = mat_pow(a, ls.D);
    ls.P = power_projection(a, ls.D);
    ls.cert = decay_certificate(a, ls.D, ls.P, m0_ceiling);
    return ls;
}

Rat err_bound(const LimitSystem& ls, Nat k) {
    const Nat s = (k / ls.D) / ls.cert.m0;
    return ls.cert.K * inv_pow2(s);
}

RatMatrix limit_matrix(const LimitSystem& ls, const RatMatrix& a, Nat r) {
    return mat_mul(ls.P, mat_pow(a, r % ls.D));
}

}  // namespace isolde
