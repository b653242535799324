#include "isolde/matrix.hpp"

namespace isolde {

RatMatrix rat_matrix(std::initializer_list<std::initializer_list<const char*>> rows) {
    const Eigen::Index r = static_cast<Eigen::Index>(rows.size());
    if (r == 0) return RatMatrix(0, 0);
    const Eigen::Index c = static_cast<Eigen::Index>(rows.begin()->size());
    RatMatrix m(r, c);
    Eigen::Index i = 0;
    for (const auto& row : rows) {
        if (static_cast<Eigen::Index>(row.size()) != c)
            throw std::invalid_argument("rat_matrix: ragged rows");
        Eigen::Index j = 0;
        for (const char* e : row) m(i, j++) = Rat::from_string(e);
        ++i;
    }
    return m;
}

RatRowVec rat_row(std::initializer_list<const char*> entries) {
    RatRowVec v(1, static_cast<Eigen::Index>(entries.size()));
    Eigen::Index j = 0;
    for (const char* e : entries) v(0, j++) = Rat::from_string(e);
    return v;
}

RatColVec rat_col(std::initializer_list<const char*> entries) {
    RatColVec v(static_cast<Eigen::Index>(entries.size()), 1);
    Eigen::Index i = 0;
    for (const char* e : entries) v(i++, 0) = Rat::from_string(e);
    return v;
}

DoubleMatrix to_double(const RatMatrix& a) {
    DoubleMatrix m(a.rows(), a.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) m(i, j) = a(i, j).to_double();
    return m;
}

}  // namespace isolde
