#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include <Eigen/Dense>

#include "truncent/statespace.hpp"

namespace truncent {

class LocalUnitary {
public:
    explicit LocalUnitary(Eigen::MatrixXcd entries);

    [[nodiscard]] int dim() const noexcept { return static_cast<int>(entries_.rows()); }
    [[nodiscard]] int half_width() const noexcept { return (dim() - 1) / 2; }
    [[nodiscard]] cplx operator()(int l, int k) const {
        return entries_(label_offset(l, half_width()), label_offset(k, half_width()));
    }
    [[nodiscard]] const Eigen::MatrixXcd &matrix() const noexcept { return entries_; }

private:
    Eigen::MatrixXcd entries_;
};

// max_{ij} |(U U^dagger - I)_{ij}|
[[nodiscard]] double unitarity_deviation(const Eigen::MatrixXcd &u);

/// Reproducible random source for one realization.
///
/// The engine is std::mt19937_64 seeded through std::seed_seq from the 32-bit
/// halves of (master_seed, stream_index, lane, attempt). Both components are
/// fully specified by the standard, so a given stream yields the same draws
/// on every conforming library; the Gaussian transform is std::normal_distribution.
struct RngStream {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;
    // Independent sub-streams of one realization (e.g. party A and party B).
    std::uint64_t lane = 0;

    [[nodiscard]] RngStream with_lane(std::uint64_t l) const { return {master_seed, stream_index, l}; }
    [[nodiscard]] std::mt19937_64 engine(std::uint64_t attempt = 0) const;

    friend bool operator==(const RngStream &, const RngStream &) = default;
};

// U(l, k) = exp(2 pi i k l / n) / sqrt(n); its columns are mutually unbiased with the computational basis.
[[nodiscard]] LocalUnitary uniform_spreading_unitary(int n);

// n x n matrix of i.i.d. (x + i y) / sqrt(2), x, y ~ N(0, 1).
[[nodiscard]] Eigen::MatrixXcd draw_ginibre(int n, std::mt19937_64 &engine);

// Q of the QR factorisation with column j multiplied by conj(R_jj)/|R_jj|.
// Empty when some R_jj is exactly zero.
[[nodiscard]] std::optional<LocalUnitary> haar_from_ginibre(const Eigen::MatrixXcd &ginibre);

// Haar-distributed unitary (CUE), a pure function of (n, stream).
[[nodiscard]] LocalUnitary sample_cue(int n, const RngStream &stream);

} // namespace truncent
