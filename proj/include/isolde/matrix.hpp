#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>

#include "isolde/rat.hpp"

namespace Eigen {

template <>
struct NumTraits<isolde::Rat> : GenericNumTraits<isolde::Rat> {
    typedef isolde::Rat Real;
    typedef isolde::Rat NonInteger;
    typedef isolde::Rat Nested;

    static inline Real epsilon() { return isolde::Rat(0); }
    static inline Real dummy_precision() { return isolde::Rat(0); }
    static inline int digits10() { return 0; }

    enum {
        IsInteger = 0,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 60,
        MulCost = 60,
    };
};

}  // namespace Eigen

namespace isolde {

using RatMatrix = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RatRowVec = Eigen::Matrix<Rat, 1, Eigen::Dynamic>;
using RatColVec = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;

using DoubleMatrix = Eigen::MatrixXd;

inline Rat abs_value(const Rat& a) { return abs(a); }
inline double abs_value(double a) { return a < 0 ? -a : a; }

/// Exact matrix product with an explicit dimension check (Eigen only
/// asserts in debug builds; an input file can trigger this at runtime).
template <typename Matrix>
Matrix mat_mul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("mat_mul: dimension mismatch " +
                                    std::to_string(a.cols()) + " vs " +
                                    std::to_string(b.rows()));
    return a * b;
}

/// a^k by repeated squaring; a^0 is the identity.
template <typename Matrix>
Matrix mat_pow(const Matrix& a, std::uint64_t k) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("mat_pow: matrix is not square");
    Matrix result = Matrix::Identity(a.rows(), a.cols());
    Matrix base = a;
    while (k != 0) {
        if (k & 1) result = mat_mul(result, base);
        k >>= 1;
        if (k != 0) base = mat_mul(base, base);
    }
    return result;
}

/// Max absolute row sum. For row-stochastic matrices this is exactly 1,
/// which is what makes it the right norm for all tail bounds here.
template <typename Matrix>
typename Matrix::Scalar inf_norm(const Matrix& a) {
    using Scalar = typename Matrix::Scalar;
    Scalar best(0);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        Scalar row_sum(0);
        for (Eigen::Index j = 0; j < a.cols(); ++j) row_sum += abs_value(a(i, j));
        if (best < row_sum) best = row_sum;
    }
    return best;
}

inline RatMatrix rat_identity(Eigen::Index n) { return RatMatrix::Identity(n, n); }

/// Literal builder used by the tests and docs: rat_matrix({{"1/2","1/2"},{"0","1"}}).
RatMatrix rat_matrix(std::initializer_list<std::initializer_list<const char*>> rows);
RatRowVec rat_row(std::initializer_list<const char*> entries);
RatColVec rat_col(std::initializer_list<const char*> entries);

DoubleMatrix to_double(const RatMatrix& a);

}  // namespace isolde
