#include "isolde/poly.hpp"

#include <optional>
#include <ostream>
#include <stdexcept>

namespace isolde {

void RatPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

RatPoly RatPoly::constant(const Rat& a) { return RatPoly({a}); }

RatPoly RatPoly::linear(const Rat& c1, const Rat& c0) { return RatPoly({c0, c1}); }

RatPoly RatPoly::x_pow_minus_one(unsigned k) {
    std::vector<Rat> c(k + 1, Rat(0));
    c[0] = Rat(-1);
    c[k] = Rat(1);
    return RatPoly(std::move(c));
}

Rat RatPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return Rat(0);
    return c_[static_cast<size_t>(i)];
}

const Rat& RatPoly::leading() const {
    if (is_zero()) throw std::invalid_argument("leading coefficient of zero polynomial");
    return c_.back();
}

Rat RatPoly::eval(const Rat& x) const {
    Rat acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

RatMatrix RatPoly::eval_matrix(const RatMatrix& a) const {
    if (a.rows() != a.cols())
        throw std::invalid_argument("eval_matrix: matrix is not square");
    const Eigen::Index n = a.rows();
    RatMatrix acc = RatMatrix::Zero(n, n);
    const RatMatrix id = rat_identity(n);
    for (size_t i = c_.size(); i-- > 0;) acc = mat_mul(acc, a) + c_[i] * id;
    return acc;
}

RatPoly& RatPoly::operator+=(const RatPoly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rat(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

RatPoly& RatPoly::operator-=(const RatPoly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rat(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return RatPoly();
    std::vector<Rat> c(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return RatPoly(std::move(c));
}

RatPoly operator*(const Rat& s, RatPoly p) {
    for (auto& c : p.c_) c *= s;
    p.trim();
    return p;
}

std::string RatPoly::str() const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        Rat c = coeff(i);
        if (c.is_zero()) continue;
        if (!out.empty()) {
            out += c.sign() < 0 ? " - " : " + ";
            c = abs(c);
        } else if (c.sign() < 0) {
            out += "-";
            c = abs(c);
        }
        const bool unit = (c == Rat(1));
        if (i == 0 || !unit) out += c.str();
        if (i > 0) {
            if (!unit) out += " ";
            out += "x";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

std::pair<RatPoly, RatPoly> poly_divmod(const RatPoly& a, const RatPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("poly_divmod: division by zero polynomial");
    RatPoly r = a;
    std::vector<Rat> q(a.degree() >= b.degree() ? a.degree() - b.degree() + 1 : 0, Rat(0));
    while (!r.is_zero() && r.degree() >= b.degree()) {
        const int shift = r.degree() - b.degree();
        const Rat f = r.leading() / b.leading();
        q[static_cast<size_t>(shift)] = f;
        std::vector<Rat> sub(static_cast<size_t>(shift), Rat(0));
        for (int i = 0; i <= b.degree(); ++i) sub.push_back(f * b.coeff(i));
        r -= RatPoly(std::move(sub));
    }
    return {RatPoly(std::move(q)), r};
}

bool poly_divides(const RatPoly& p, const RatPoly& q) {
    if (p.is_zero()) throw std::invalid_argument("poly_divides: zero divisor polynomial");
    if (q.is_zero()) return true;
    return poly_divmod(q, p).second.is_zero();
}

RatPoly char_poly(const RatMatrix& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("char_poly: matrix is not square");
    const Eigen::Index n = a.rows();
    std::vector<Rat> c(static_cast<size_t>(n) + 1, Rat(0));
    c[static_cast<size_t>(n)] = Rat(1);
    if (n == 0) return RatPoly(std::move(c));

    // Faddeev-LeVerrier: M_1 = I, c_{n-k} = -tr(A M_k)/k, M_{k+1} = A M_k + c_{n-k} I.
    const RatMatrix id = rat_identity(n);
    RatMatrix m = id;
    for (Eigen::Index k = 1; k <= n; ++k) {
        const RatMatrix am = mat_mul(a, m);
        Rat tr(0);
        for (Eigen::Index i = 0; i < n; ++i) tr += am(i, i);
        const Rat ck = -tr / Rat(k);
        c[static_cast<size_t>(n - k)] = ck;
        if (k < n) m = am + ck * id;
    }
    return RatPoly(std::move(c));
}

namespace {

std::vector<Rat> vectorize(const RatMatrix& a) {
    std::vector<Rat> v;
    v.reserve(static_cast<size_t>(a.rows() * a.cols()));
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) v.push_back(a(i, j));
    return v;
}

// Solves sum_i x_i cols[i] = target exactly, if a solution exists.
std::optional<std::vector<Rat>> solve_exact(const std::vector<std::vector<Rat>>& cols,
                                            const std::vector<Rat>& target) {
    const size_t m = cols.size();
    const size_t rows = target.size();
    // Augmented matrix [cols | target], eliminated to reduced row echelon form.
    std::vector<std::vector<Rat>> aug(rows, std::vector<Rat>(m + 1, Rat(0)));
    for (size_t r = 0; r < rows; ++r) {
        for (size_t c = 0; c < m; ++c) aug[r][c] = cols[c][r];
        aug[r][m] = target[r];
    }
    std::vector<size_t> pivot_row_of_col(m, SIZE_MAX);
    size_t pivot_row = 0;
    for (size_t col = 0; col < m && pivot_row < rows; ++col) {
        size_t sel = SIZE_MAX;
        for (size_t r = pivot_row; r < rows; ++r)
            if (!aug[r][col].is_zero()) { sel = r; break; }
        if (sel == SIZE_MAX) continue;
        std::swap(aug[sel], aug[pivot_row]);
        const Rat inv = Rat(1) / aug[pivot_row][col];
        for (size_t c = col; c <= m; ++c) aug[pivot_row][c] *= inv;
        for (size_t r = 0; r < rows; ++r) {
            if (r == pivot_row || aug[r][col].is_zero()) continue;
            const Rat f = aug[r][col];
            for (size_t c = col; c <= m; ++c) aug[r][c] -= f * aug[pivot_row][c];
        }
        pivot_row_of_col[col] = pivot_row;
        ++pivot_row;
    }
    for (size_t r = pivot_row; r < rows; ++r)
        if (!aug[r][m].is_zero()) return std::nullopt;
    std::vector<Rat> x(m, Rat(0));
    for (size_t col = 0; col < m; ++col)
        if (pivot_row_of_col[col] != SIZE_MAX) x[col] = aug[pivot_row_of_col[col]][m];
    return x;
}

}  // namespace

RatPoly min_poly(const RatMatrix& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("min_poly: matrix is not square");
    const Eigen::Index n = a.rows();
    if (n == 0) return RatPoly::constant(Rat(1));

    std::vector<std::vector<Rat>> pow_vecs;  // vec(a^0), vec(a^1), ...
    RatMatrix p = rat_identity(n);
    pow_vecs.push_back(vectorize(p));
    for (Eigen::Index m = 1; m <= n; ++m) {
        p = mat_mul(p, a);
        const std::vector<Rat> target = vectorize(p);
        if (auto sol = solve_exact(pow_vecs, target)) {
            std::vector<Rat> c(static_cast<size_t>(m) + 1, Rat(0));
            for (Eigen::Index i = 0; i < m; ++i) c[static_cast<size_t>(i)] = -(*sol)[static_cast<size_t>(i)];
            c[static_cast<size_t>(m)] = Rat(1);
            return RatPoly(std::move(c));
        }
        pow_vecs.push_back(target);
    }
    throw std::logic_error("min_poly: no annihilating polynomial up to degree n");
}

RatPoly cyclotomic(unsigned k) {
    if (k == 0) throw std::invalid_argument("cyclotomic: k must be >= 1");
    RatPoly p = RatPoly::x_pow_minus_one(k);
    for (unsigned d = 1; d < k; ++d) {
        if (k % d != 0) continue;
        auto [q, r] = poly_divmod(p, cyclotomic(d));
        if (!r.is_zero()) throw std::logic_error("cyclotomic: inexact division");
        p = q;
    }
    return p;
}

std::ostream& operator<<(std::ostream& os, const RatPoly& p) { return os << p.str(); }

}  // namespace isolde
