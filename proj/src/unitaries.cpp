#include "truncent/unitaries.hpp"

#include <array>
#include <cmath>
#include <iostream>
#include <numbers>
#include <string>

#include "truncent/errors.hpp"

namespace truncent {

LocalUnitary::LocalUnitary(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() % 2 == 0) {
        throw DimensionError("local unitary must be square with odd dimension, got " +
                             std::to_string(entries_.rows()) + "x" + std::to_string(entries_.cols()));
    }
}

double unitarity_deviation(const Eigen::MatrixXcd &u) {
    const Eigen::MatrixXcd product = u * u.adjoint();
    return (product - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

std::mt19937_64 RngStream::engine(std::uint64_t attempt) const {
    const auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
    const auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    const std::array<std::uint32_t, 8> words{lo(master_seed),  hi(master_seed), lo(stream_index), hi(stream_index),
                                             lo(lane),         hi(lane),        lo(attempt),      hi(attempt)};
    std::seed_seq seq(words.begin(), words.end());
    return std::mt19937_64(seq);
}

LocalUnitary uniform_spreading_unitary(int n) {
    require_odd(n, 3, "n");
    const int half = (n - 1) / 2;
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    Eigen::MatrixXcd u(n, n);
    for (int l = -half; l <= half; ++l) {
        for (int k = -half; k <= half; ++k) {
            // Reduce k*l mod n first so the phase argument stays in [0, 2pi).
            const int residue = ((k * l) % n + n) % n;
            const double phase = 2.0 * std::numbers::pi * residue / n;
            u(label_offset(l, half), label_offset(k, half)) = std::polar(norm, phase);
        }
    }
    return LocalUnitary(std::move(u));
}

Eigen::MatrixXcd draw_ginibre(int n, std::mt19937_64 &engine) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double scale = 1.0 / std::numbers::sqrt2;
    Eigen::MatrixXcd z(n, n);
    // Column-major fill order is part of the reproducibility contract.
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const double re = gauss(engine);
            const double im = gauss(engine);
            z(i, j) = cplx(re * scale, im * scale);
        }
    }
    return z;
}

std::optional<LocalUnitary> haar_from_ginibre(const Eigen::MatrixXcd &ginibre) {
    const Eigen::Index n = ginibre.rows();
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(ginibre);
    const Eigen::MatrixXcd &packed = qr.matrixQR();
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const cplx r_jj = packed(j, j);
        const double magnitude = std::abs(r_jj);
        if (magnitude == 0.0) return std::nullopt;
        q.col(j) *= std::conj(r_jj) / magnitude;
    }
    return LocalUnitary(std::move(q));
}

LocalUnitary sample_cue(int n, const RngStream &stream) {
    require_odd(n, 3, "n");
    for (std::uint64_t attempt = 0;; ++attempt) {
        auto engine = stream.engine(attempt);
        if (auto u = haar_from_ginibre(draw_ginibre(n, engine))) return std::move(*u);
        std::clog << "truncent: degenerate Ginibre draw (seed=" << stream.master_seed
                  << ", stream=" << stream.stream_index << ", lane=" << stream.lane << ", attempt=" << attempt
                  << "), resampling\n";
    }
}

} // namespace truncent
