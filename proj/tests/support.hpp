#pragma once

#include <cmath>
#include <filesystem>
#include <string>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "kbiframe/kbiframe.hpp"

namespace kbiframe::test {

inline std::filesystem::path fixture(const std::string& rel) {
    return std::filesystem::path(KBIFRAME_FIXTURE_DIR) / rel;
}

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix& a) {
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(a.rows()), static_cast<Eigen::Index>(a.cols()));
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = a(r, c);
    }
    return m;
}

inline double diff(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).frobenius_norm(); }

inline Vector basis(std::size_t n, std::size_t i, Complex s = 1.0) {
    Vector v(n);
    v[i] = s;
    return v;
}

inline ComplexMatrix diag(std::initializer_list<double> d) {
    return ComplexMatrix::diagonal(std::span<const double>(d.begin(), d.size()));
}

/// Random m x n matrix of the given rank (rank 0 gives zeros).
inline ComplexMatrix random_rank(Rng& rng, std::size_t m, std::size_t n, std::size_t r) {
    if (r == 0) return ComplexMatrix::zeros(m, n);
    return rng.ginibre(m, r) * rng.ginibre(r, n);
}

inline VectorPairSystem pair_of(std::initializer_list<Vector> x, std::initializer_list<Vector> y) {
    return {std::vector<Vector>(x), std::vector<Vector>(y)};
}

} // namespace kbiframe::test
