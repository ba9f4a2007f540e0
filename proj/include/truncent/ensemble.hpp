#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "truncent/pipeline.hpp"
#include "truncent/statespace.hpp"
#include "truncent/unitaries.hpp"

namespace truncent {

enum class UnitaryKind { UniformSpreading, RandomCUE };

[[nodiscard]] std::string_view to_string(UnitaryKind kind);

struct SweepConfig {
    int n = 0;
    std::vector<int> m_values;  // ascending, each in [2, n]
    std::vector<int> s_values;  // ascending, odd, each in [3, n]
    UnitaryKind kind = UnitaryKind::RandomCUE;
    int realizations = 1;       // ignored for UniformSpreading
    std::uint64_t master_seed = 0;
    bool independent_ab = true; // false: U_B = U_A

    // Throws DimensionError on the first violated constraint.
    void validate() const;
    // Realizations actually performed (1 for the deterministic kind).
    [[nodiscard]] int effective_realizations() const;
};

// Every odd s in [3, n].
[[nodiscard]] std::vector<int> all_odd_truncations(int n);

struct UnitaryPair {
    LocalUnitary a;
    LocalUnitary b;
};

// Lane 0 of the stream feeds U_A and lane 1 feeds U_B.
[[nodiscard]] UnitaryPair make_unitary_pair(int n, UnitaryKind kind, const RngStream &stream, bool independent_ab = true);

// evolve(make_initial_state(dims), a, b) as a rank-m sum of outer products, O(n^2 m).
[[nodiscard]] CoefficientMatrix spread_encoding(const HilbertDims &dims, const UnitaryPair &pair);

struct CellPoint {
    int s;
    double schmidt_number;
    double captured_weight;
};

/// Schmidt number of every nested central truncation of one state.
///
/// The Gram matrix of the window is grown two rows/columns at a time, so a
/// full scan over s = 3, 5, ..., n costs O(n^3) instead of O(n^4).
[[nodiscard]] std::vector<CellPoint> scan_truncations(const CoefficientMatrix &state, std::span<const int> s_values);

// One realization for one m: draw (or build) the pair, evolve once, truncate to every s.
[[nodiscard]] std::vector<CellPoint> run_cell(int n, int m, std::span<const int> s_values, UnitaryKind kind,
                                              const RngStream &stream);

struct CellStats {
    int m = 0;
    int s = 0;
    double mean_K = 0.0;
    double std_K = 0.0; // population standard deviation
    int realizations = 0;
    double mean_captured_weight = 0.0;

    friend bool operator==(const CellStats &, const CellStats &) = default;
};

class EnsembleStats {
public:
    EnsembleStats() = default;
    explicit EnsembleStats(std::vector<CellStats> cells) : cells_(std::move(cells)) {}

    [[nodiscard]] const std::vector<CellStats> &cells() const noexcept { return cells_; }
    // Throws std::out_of_range if (m, s) was not part of the sweep.
    [[nodiscard]] const CellStats &at(int m, int s) const;

    friend bool operator==(const EnsembleStats &, const EnsembleStats &) = default;

private:
    std::vector<CellStats> cells_; // ordered by m, then s
};

struct RunOptions {
    unsigned workers = 0; // 0: std::thread::hardware_concurrency()
};

[[nodiscard]] EnsembleStats run_ensemble(const SweepConfig &config, const RunOptions &options = {});

struct LossPoint {
    int m = 0;
    double mean_loss = 0.0; // m - mean K at s = m
    double std_loss = 0.0;
    int realizations = 0;
};

// Truncation into the encoding subspace. config.m_values must equal config.s_values.
[[nodiscard]] std::vector<LossPoint> loss_sweep(const SweepConfig &config, const RunOptions &options = {});

// Cells of a loss sweep (s = m) in the EnsembleStats form.
[[nodiscard]] EnsembleStats run_loss_cells(const SweepConfig &config, const RunOptions &options = {});

} // namespace truncent
