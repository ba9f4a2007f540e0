#include "truncent/analytics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "truncent/errors.hpp"
#include "truncent/statespace.hpp"

namespace truncent::analytics {

namespace {

constexpr double kPi = std::numbers::pi;

double sq(double x) { return x * x; }

} // namespace

double sinc(double x) {
    if (x == 0.0) return 1.0;
    return std::sin(x) / x;
}

double beta_uniform(int n, int m, int q, int r) {
    const HilbertDims dims(n, m);
    const int half = dims.half_width();
    if (std::abs(q) > half || std::abs(r) > half) {
        throw DimensionError("labels (" + std::to_string(q) + ", " + std::to_string(r) + ") outside [-" +
                             std::to_string(half) + ", " + std::to_string(half) + "]");
    }
    const double f = parity_flag(m);
    const double root_m = std::sqrt(static_cast<double>(m));
    if (q == r) return root_m / n;

    const double width = m + f;
    const double d = q - r;
    return width * sinc(d * width * kPi / n) / (n * root_m * sinc(d * kPi / n)) - f / (n * root_m);
}

double purity_m2(int n, int s) {
    const HilbertDims dims(n, 2, s);
    const double nn = dims.n();
    const double ss = dims.s();
    const double numerator = 8.0 * ss * ss * sq(std::sin(2.0 * kPi / nn)) * sq(std::sin(2.0 * kPi * ss / nn));
    const double denominator = sq(ss * ss * std::cos(4.0 * kPi / nn) + std::cos(4.0 * kPi * ss / nn) - ss * ss - 1.0);
    return 0.5 + numerator / denominator;
}

// The conjecture is also evaluated off the physical lattice (even n, s = m even),
// so only positivity and m <= n are enforced.
double conjectured_purity(int n, int m, int s) {
    if (n < 1 || m < 1 || s < 1 || m > n || s > n) {
        throw DimensionError("conjectured_purity needs 1 <= m, s <= n, got n=" + std::to_string(n) +
                             " m=" + std::to_string(m) + " s=" + std::to_string(s));
    }
    return 2.0 / s + 1.0 / m - 2.0 / n;
}

double entanglement_loss(int n, int m) {
    if (m < 2 || m > n) {
        throw DimensionError("entanglement_loss needs 2 <= m <= n, got n=" + std::to_string(n) +
                             " m=" + std::to_string(m));
    }
    const double nn = n;
    const double mm = m;
    return 2.0 * mm * (mm - nn) / (2.0 * mm - 3.0 * nn);
}

double linear_approx_schmidt(int n, int m, int s) {
    const HilbertDims dims(n, m, s);
    return static_cast<double>(dims.m()) * dims.s() / dims.n();
}

} // namespace truncent::analytics
