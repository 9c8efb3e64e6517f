#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "vnqg/numlin.hpp"

namespace vnqg::testing {

inline CMatrix random_matrix(Index rows, Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    CMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = cplx(g(rng), g(rng));
    return m;
}

inline CVector random_vector(Index n, std::mt19937_64& rng) {
    return random_matrix(n, 1, rng).col(0);
}

inline CMatrix random_hermitian(Index n, std::mt19937_64& rng) {
    CMatrix a = random_matrix(n, n, rng);
    return 0.5 * (a + a.adjoint());
}

inline CMatrix random_positive(Index n, std::mt19937_64& rng) {
    CMatrix a = random_matrix(n, n, rng);
    return a.adjoint() * a + identity(n);
}

inline CMatrix random_unitary(Index n, std::mt19937_64& rng) {
    Eigen::HouseholderQR<CMatrix> qr(random_matrix(n, n, rng));
    return qr.householderQ() * identity(n);
}

inline std::vector<CMatrix> matrix_units(Index d) {
    std::vector<CMatrix> out;
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) {
            CMatrix e = CMatrix::Zero(d, d);
            e(i, j) = 1.0;
            out.push_back(e);
        }
    return out;
}

}  // namespace vnqg::testing
