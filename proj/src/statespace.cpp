#include "truncent/statespace.hpp"

#include <cmath>
#include <string>

#include "truncent/errors.hpp"

namespace truncent {

void require_odd(int value, int minimum, const char *what) {
    if (value < minimum || value % 2 == 0) {
        throw DimensionError(std::string(what) + " must be odd and >= " + std::to_string(minimum) + ", got " +
                             std::to_string(value));
    }
}

HilbertDims::HilbertDims(int n, int m) : HilbertDims(n, m, n) {}

HilbertDims::HilbertDims(int n, int m, int s) : n_(n), m_(m), s_(s) {
    require_odd(n, 3, "n");
    require_odd(s, 3, "s");
    if (m < 2 || m > n) {
        throw DimensionError("m must lie in [2, n], got m=" + std::to_string(m) + " with n=" + std::to_string(n));
    }
    if (s > n) {
        throw DimensionError("s must not exceed n, got s=" + std::to_string(s) + " with n=" + std::to_string(n));
    }
}

double parity_flag(int m) {
    if (m < 2) throw DimensionError("m must be >= 2, got " + std::to_string(m));
    return m % 2 == 0 ? 1.0 : 0.0;
}

CoefficientMatrix::CoefficientMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() % 2 == 0) {
        throw DimensionError("coefficient matrix must be square with odd dimension, got " +
                             std::to_string(entries_.rows()) + "x" + std::to_string(entries_.cols()));
    }
}

CoefficientMatrix make_initial_state(const HilbertDims &dims) {
    const int n = dims.n();
    const int big_n = dims.half_width();
    const int big_m = dims.encoding_half_width();
    const bool drop_centre = parity_flag(dims.m()) == 1.0;
    const double amplitude = 1.0 / std::sqrt(static_cast<double>(dims.m()));

    Eigen::MatrixXcd beta = Eigen::MatrixXcd::Zero(n, n);
    for (int k = -big_m; k <= big_m; ++k) {
        if (k == 0 && drop_centre) continue;
        beta(label_offset(k, big_n), label_offset(-k, big_n)) = amplitude;
    }
    return CoefficientMatrix(std::move(beta));
}

} // namespace truncent
