#include <doctest.h>

#include <cmath>

#include "truncent/errors.hpp"
#include "truncent/pipeline.hpp"
#include "truncent/statespace.hpp"

using namespace truncent;

TEST_CASE("parity flag follows the parity of m") {
    CHECK(parity_flag(2) == 1.0);
    CHECK(parity_flag(3) == 0.0);
    CHECK(parity_flag(4) == 1.0);
    CHECK(parity_flag(201) == 0.0);
    CHECK_THROWS_AS((void)parity_flag(1), DimensionError);
}

TEST_CASE("HilbertDims rejects invalid dimensions") {
    CHECK_NOTHROW(HilbertDims(7, 2, 3));
    CHECK_NOTHROW(HilbertDims(3, 3));
    CHECK_THROWS_AS(HilbertDims(8, 2), DimensionError);    // even n
    CHECK_THROWS_AS(HilbertDims(1, 2), DimensionError);
    CHECK_THROWS_AS(HilbertDims(7, 1), DimensionError);    // separable encoding
    CHECK_THROWS_AS(HilbertDims(7, 8), DimensionError);    // m > n
    CHECK_THROWS_AS(HilbertDims(7, 2, 4), DimensionError); // even s
    CHECK_THROWS_AS(HilbertDims(7, 2, 9), DimensionError); // s > n
    CHECK_THROWS_AS(HilbertDims(7, 2, 1), DimensionError);

    const HilbertDims d(201, 6, 51);
    CHECK(d.half_width() == 100);
    CHECK(d.encoding_half_width() == 3);
    CHECK(d.truncation_half_width() == 25);
    CHECK(HilbertDims(201, 7).encoding_half_width() == 3);
}

namespace {

int nonzero_count(const CoefficientMatrix &c) {
    int count = 0;
    for (Eigen::Index i = 0; i < c.entries().size(); ++i) count += c.entries().data()[i] != cplx(0.0) ? 1 : 0;
    return count;
}

} // namespace

TEST_CASE("initial state n=7 m=2 has support on (1,-1) and (-1,1) only") {
    const auto c = make_initial_state(HilbertDims(7, 2));
    const double amp = 1.0 / std::sqrt(2.0);
    CHECK(nonzero_count(c) == 2);
    CHECK(c(1, -1) == cplx(amp));
    CHECK(c(-1, 1) == cplx(amp));
    CHECK(c(0, 0) == cplx(0.0));
}

TEST_CASE("initial state n=7 m=3 keeps the centre") {
    const auto c = make_initial_state(HilbertDims(7, 3));
    const double amp = 1.0 / std::sqrt(3.0);
    CHECK(nonzero_count(c) == 3);
    CHECK(c(-1, 1) == cplx(amp));
    CHECK(c(0, 0) == cplx(amp));
    CHECK(c(1, -1) == cplx(amp));
}

TEST_CASE("initial state n=5 m=4 drops the centre") {
    const auto c = make_initial_state(HilbertDims(5, 4));
    CHECK(nonzero_count(c) == 4);
    for (int k : {-2, -1, 1, 2}) CHECK(c(k, -k) == cplx(0.5));
    CHECK(c(0, 0) == cplx(0.0));
}

TEST_CASE("initial states are normalised, anti-diagonal and maximally entangled in dimension m") {
    for (int n = 3; n <= 31; n += 2) {
        for (int m = 2; m <= n; ++m) {
            CAPTURE(n);
            CAPTURE(m);
            const auto c = make_initial_state(HilbertDims(n, m));
            CHECK(std::abs(c.norm() - 1.0) < 1e-12);
            CHECK(nonzero_count(c) == m);
            const int half = c.half_width();
            for (int q = -half; q <= half; ++q)
                for (int r = -half; r <= half; ++r)
                    if (c(q, r) != cplx(0.0)) CHECK(r == -q);
            CHECK(std::abs(reduced_purity(truncate(c, n)) - 1.0 / m) < 1e-12);
        }
    }
}

TEST_CASE("CoefficientMatrix requires a square odd array") {
    CHECK_THROWS_AS(CoefficientMatrix(Eigen::MatrixXcd::Zero(4, 4)), DimensionError);
    CHECK_THROWS_AS(CoefficientMatrix(Eigen::MatrixXcd::Zero(5, 3)), DimensionError);
}
