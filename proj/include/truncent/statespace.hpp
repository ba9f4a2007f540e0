#pragma once

#include <complex>

#include <Eigen/Dense>

namespace truncent {

using cplx = std::complex<double>;

/// Local dimensions of a bipartite system: total n = 2N+1, encoding m, truncation s = 2S+1.
///
/// Basis labels run over the symmetric range {-N, ..., N}; every array in this
/// library stores label q at offset q + N.
class HilbertDims {
public:
    // Truncation dimension defaults to the full space (s = n).
    HilbertDims(int n, int m);
    HilbertDims(int n, int m, int s);

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] int m() const noexcept { return m_; }
    [[nodiscard]] int s() const noexcept { return s_; }

    [[nodiscard]] int half_width() const noexcept { return (n_ - 1) / 2; }
    // M: m = 2M for even m, m = 2M+1 for odd m.
    [[nodiscard]] int encoding_half_width() const noexcept { return m_ / 2; }
    [[nodiscard]] int truncation_half_width() const noexcept { return (s_ - 1) / 2; }

private:
    int n_;
    int m_;
    int s_;
};

// Throws DimensionError unless value is odd and >= minimum; `what` names the quantity.
void require_odd(int value, int minimum, const char *what);

[[nodiscard]] constexpr int label_offset(int label, int half_width) noexcept { return label + half_width; }

// f_m: 1 for even m, 0 for odd m.
[[nodiscard]] double parity_flag(int m);

/// Coefficients beta(q, r) of a pure state sum_{q,r} beta(q, r) |q>_A |r>_B.
class CoefficientMatrix {
public:
    explicit CoefficientMatrix(Eigen::MatrixXcd entries);

    [[nodiscard]] int dim() const noexcept { return static_cast<int>(entries_.rows()); }
    [[nodiscard]] int half_width() const noexcept { return (dim() - 1) / 2; }

    // Indexed by basis labels q, r in [-N, N].
    [[nodiscard]] cplx operator()(int q, int r) const {
        return entries_(label_offset(q, half_width()), label_offset(r, half_width()));
    }

    [[nodiscard]] const Eigen::MatrixXcd &entries() const noexcept { return entries_; }
    [[nodiscard]] double norm() const { return entries_.norm(); }

private:
    Eigen::MatrixXcd entries_;
};

// Maximally entangled state on the m x m encoding subspace, centred on label 0.
// For even m the |0>|0> term is dropped.
[[nodiscard]] CoefficientMatrix make_initial_state(const HilbertDims &dims);

} // namespace truncent
