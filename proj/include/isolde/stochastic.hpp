#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "isolde/matrix.hpp"
#include "isolde/rat.hpp"

namespace isolde {

struct Letter {
    std::string name;
    RatMatrix matrix;
};

/// Probabilistic finite automaton with one row-stochastic matrix per
/// letter. Word values are <u| A_1^{k_1} ... A_l^{k_l} |v>.
struct PFA {
    RatRowVec initial;           // u, stochastic row vector
    RatColVec accept;            // v, 0/1 column vector
    std::vector<Letter> letters; // ordered alphabet a_1 ... a_l

    Eigen::Index n() const { return initial.cols(); }
    Eigen::Index alphabet_size() const { return static_cast<Eigen::Index>(letters.size()); }
};

/// All structural violations, empty when the PFA is well formed.
std::vector<std::string> validate_pfa(const PFA& p);

/// Throws std::invalid_argument listing the violations, if any.
void require_valid(const PFA& p);

/// Exact value of the letter-power word a_1^{k_1} ... a_l^{k_l}.
Rat pfa_value(const PFA& p, const std::vector<Nat>& ks);

/// Certificate that powers of B = A^D approach the projection P:
/// inf_norm((B-P)^{m0}) <= 1/2 and K bounds every residual before the
/// decay kicks in, so inf_norm(A^k - P A^(k mod D)) <= K * 2^(-floor(floor(k/D)/m0)).
struct DecayCert {
    Nat m0 = 1;
    Rat K;
};

/// Everything needed to evaluate one letter at infinity: the dominant
/// period D, powers B = A^D, the limit projection P of B^m, and the decay
/// certificate backing the error bound.
struct LimitSystem {
    Nat D = 1;
    RatMatrix A;
    RatMatrix B;  // A^D
    RatMatrix P;  // lim_m B^m
    DecayCert cert;
};

/// Least common multiple of the orders of the root-of-unity eigenvalues,
/// detected exactly as { k <= n : cyclotomic(k) divides char_poly(a) }.
/// Always >= 1 since 1 is an eigenvalue of every stochastic matrix.
Nat dominant_period(const RatMatrix& a);

/// Limit projection P = h(B)/h(1) where B = a^D and min_poly(B) = (x-1) h(x).
/// P satisfies P B = B P = P, P^2 = P, and P is row-stochastic.
RatMatrix power_projection(const RatMatrix& a, Nat D);

inline constexpr Nat kDefaultDecayCeiling = Nat(1) << 16;

/// Searches m0 by doubling (1, 2, 4, ...) until inf_norm((B-P)^m0) <= 1/2,
/// then takes K = max(1, max over 0 <= i < m0 of inf_norm(B^i - P)).
/// Note B^i - P = (B-P)^i for i >= 1, while the i = 0 residual is I - P.
DecayCert decay_certificate(const RatMatrix& a, Nat D, const RatMatrix& P,
                            Nat m0_ceiling = kDefaultDecayCeiling);

/// Convenience composition of the three steps above.
LimitSystem make_limit_system(const RatMatrix& a, Nat m0_ceiling = kDefaultDecayCeiling);

/// Exact upper bound on inf_norm(a^k - limit_matrix(ls, a, k mod D)),
/// monotone nonincreasing in k and geometrically decaying.
Rat err_bound(const LimitSystem& ls, Nat k);

/// P * a^(r mod D): the limit along exponents congruent to r.
RatMatrix limit_matrix(const LimitSystem& ls, const RatMatrix& a, Nat r);

}  // namespace isolde
