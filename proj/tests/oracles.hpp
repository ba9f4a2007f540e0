#pragma once

// Independent reference computations used only by the tests. Nothing here
// goes through the library's matrix-product or Gram-matrix code paths.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <Eigen/Dense>

namespace oracles {

using cplx = std::complex<double>;

// Literal quadruple sum sum_{q,r,k,l} b(q,r) b*(k,r) b(k,l) b*(q,l).
inline double quadruple_sum_purity(const Eigen::MatrixXcd &b) {
    const Eigen::Index s = b.rows();
    cplx total = 0.0;
    for (Eigen::Index q = 0; q < s; ++q)
        for (Eigen::Index r = 0; r < s; ++r)
            for (Eigen::Index k = 0; k < s; ++k)
                for (Eigen::Index l = 0; l < s; ++l)
                    total += b(q, r) * std::conj(b(k, r)) * b(k, l) * std::conj(b(q, l));
    return total.real();
}

// Sum of fourth powers of the singular values.
inline double singular_value_purity(const Eigen::MatrixXcd &b) {
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(b);
    return svd.singularValues().array().pow(4).sum();
}

// beta(q,r) = [sum_{k=-M}^{M} UA(q,k) UB(r,-k) - f UA(q,0) UB(r,0)] / sqrt(m), element by element.
inline Eigen::MatrixXcd literal_spread(const Eigen::MatrixXcd &ua, const Eigen::MatrixXcd &ub, int m) {
    const int n = static_cast<int>(ua.rows());
    const int half = (n - 1) / 2;
    const int big_m = m / 2;
    const double f = (m % 2 == 0) ? 1.0 : 0.0;
    Eigen::MatrixXcd beta(n, n);
    for (int q = -half; q <= half; ++q) {
        for (int r = -half; r <= half; ++r) {
            cplx sum = 0.0;
            for (int k = -big_m; k <= big_m; ++k) sum += ua(q + half, k + half) * ub(r + half, -k + half);
            sum -= f * ua(q + half, half) * ub(r + half, half);
            beta(q + half, r + half) = sum / std::sqrt(static_cast<double>(m));
        }
    }
    return beta;
}

// sqrt(2) cos(2 pi (q - r) / n) / n
inline double cosine_beta(int n, int q, int r) {
    return std::numbers::sqrt2 * std::cos(2.0 * std::numbers::pi * (q - r) / n) / n;
}

inline Eigen::MatrixXcd gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd z(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) z(i, j) = cplx(g(rng), g(rng));
    return z;
}

} // namespace oracles
