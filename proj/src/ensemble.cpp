#include "truncent/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>

#include "truncent/errors.hpp"

namespace truncent {

std::string_view to_string(UnitaryKind kind) {
    switch (kind) {
    case UnitaryKind::UniformSpreading: return "uniform";
    case UnitaryKind::RandomCUE: return "cue";
    }
    return "unknown";
}

namespace {

void require_ascending_unique(const std::vector<int> &values, const char *what) {
    if (values.empty()) throw DimensionError(std::string(what) + " list is empty");
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] <= values[i - 1]) {
            throw DimensionError(std::string(what) + " list must be strictly ascending");
        }
    }
}

void require_truncations(int n, std::span<const int> s_values) {
    int previous = 0;
    for (int s : s_values) {
        require_odd(s, 3, "s");
        if (s > n) throw DimensionError("s=" + std::to_string(s) + " exceeds n=" + std::to_string(n));
        if (s <= previous) throw DimensionError("s list must be strictly ascending");
        previous = s;
    }
}

// Label k of the encoding contributes a_k b_{-k}^T (unnormalised).
Eigen::MatrixXcd encoding_term(const UnitaryPair &pair, int k) {
    const int half = pair.a.half_width();
    return pair.a.matrix().col(label_offset(k, half)) * pair.b.matrix().col(label_offset(-k, half)).transpose();
}

/// Builds the evolved encoding states for increasing m from one unitary pair,
/// reusing the partial sum over labels +-1, ..., +-M.
class EncodingAccumulator {
public:
    explicit EncodingAccumulator(const UnitaryPair &pair)
        : pair_(pair), pairs_sum_(Eigen::MatrixXcd::Zero(pair.a.dim(), pair.a.dim())), centre_(encoding_term(pair, 0)) {}

    CoefficientMatrix state(int m) {
        const int big_m = m / 2;
        if (big_m < included_) throw std::logic_error("EncodingAccumulator: m must be non-decreasing");
        for (int k = included_ + 1; k <= big_m; ++k) {
            pairs_sum_ += encoding_term(pair_, k);
            pairs_sum_ += encoding_term(pair_, -k);
        }
        included_ = big_m;
        Eigen::MatrixXcd beta = (m % 2 == 1) ? Eigen::MatrixXcd(pairs_sum_ + centre_) : pairs_sum_;
        beta /= std::sqrt(static_cast<double>(m));
        return CoefficientMatrix(std::move(beta));
    }

private:
    const UnitaryPair &pair_;
    Eigen::MatrixXcd pairs_sum_;
    Eigen::MatrixXcd centre_;
    int included_ = 0;
};

struct GridRow {
    int m;
    std::vector<int> s_values;
};

struct RealizationResult {
    std::vector<CellPoint> points; // grid order: rows, then s
    std::exception_ptr error;
};

RealizationResult run_realization(int n, UnitaryKind kind, const RngStream &stream, bool independent_ab,
                                  const std::vector<GridRow> &grid) {
    RealizationResult result;
    int current_m = 0;
    try {
        const UnitaryPair pair = make_unitary_pair(n, kind, stream, independent_ab);
        EncodingAccumulator accumulator(pair);
        for (const GridRow &row : grid) {
            current_m = row.m;
            const CoefficientMatrix state = accumulator.state(row.m);
            auto points = scan_truncations(state, row.s_values);
            result.points.insert(result.points.end(), points.begin(), points.end());
        }
    } catch (const DegenerateTruncationError &e) {
        result.error = std::make_exception_ptr(DegenerateTruncationError(
            "cell n=" + std::to_string(n) + " m=" + std::to_string(current_m) + " realization=" +
            std::to_string(stream.stream_index) + ": " + e.what()));
    } catch (...) {
        result.error = std::current_exception();
    }
    return result;
}

EnsembleStats run_grid(int n, UnitaryKind kind, int realizations, std::uint64_t seed, bool independent_ab,
                       const std::vector<GridRow> &grid, const RunOptions &options) {
    std::vector<RealizationResult> results(static_cast<std::size_t>(realizations));

    unsigned workers = options.workers != 0 ? options.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(realizations));

    std::atomic<int> next{0};
    auto work = [&] {
        for (int r = next.fetch_add(1); r < realizations; r = next.fetch_add(1)) {
            const RngStream stream{seed, static_cast<std::uint64_t>(r)};
            results[static_cast<std::size_t>(r)] = run_realization(n, kind, stream, independent_ab, grid);
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }

    for (const auto &result : results) {
        if (result.error) std::rethrow_exception(result.error);
    }

    // Two-pass statistics, accumulated in realization order.
    std::vector<CellStats> cells;
    std::size_t index = 0;
    const double count = realizations;
    for (const GridRow &row : grid) {
        for (int s : row.s_values) {
            double sum_k = 0.0;
            double sum_w = 0.0;
            for (const auto &result : results) {
                sum_k += result.points[index].schmidt_number;
                sum_w += result.points[index].captured_weight;
            }
            const double mean_k = sum_k / count;
            double sum_sq = 0.0;
            for (const auto &result : results) {
                const double d = result.points[index].schmidt_number - mean_k;
                sum_sq += d * d;
            }
            cells.push_back(CellStats{row.m, s, mean_k, std::sqrt(sum_sq / count), realizations, sum_w / count});
            ++index;
        }
    }
    return EnsembleStats(std::move(cells));
}

} // namespace

void SweepConfig::validate() const {
    require_odd(n, 3, "n");
    require_ascending_unique(m_values, "m");
    for (int m : m_values) {
        if (m < 2 || m > n) {
            throw DimensionError("m=" + std::to_string(m) + " outside [2, n=" + std::to_string(n) + "]");
        }
    }
    require_ascending_unique(s_values, "s");
    require_truncations(n, s_values);
    if (realizations < 1) throw DimensionError("realizations must be >= 1");
}

int SweepConfig::effective_realizations() const {
    return kind == UnitaryKind::UniformSpreading ? 1 : realizations;
}

std::vector<int> all_odd_truncations(int n) {
    require_odd(n, 3, "n");
    std::vector<int> s_values;
    for (int s = 3; s <= n; s += 2) s_values.push_back(s);
    return s_values;
}

UnitaryPair make_unitary_pair(int n, UnitaryKind kind, const RngStream &stream, bool independent_ab) {
    if (kind == UnitaryKind::UniformSpreading) {
        LocalUnitary u = uniform_spreading_unitary(n);
        return UnitaryPair{u, u};
    }
    LocalUnitary a = sample_cue(n, stream.with_lane(0));
    if (!independent_ab) return UnitaryPair{a, a};
    return UnitaryPair{std::move(a), sample_cue(n, stream.with_lane(1))};
}

CoefficientMatrix spread_encoding(const HilbertDims &dims, const UnitaryPair &pair) {
    if (pair.a.dim() != dims.n() || pair.b.dim() != dims.n()) {
        throw DimensionError("spread_encoding: unitary dimension does not match n=" + std::to_string(dims.n()));
    }
    return EncodingAccumulator(pair).state(dims.m());
}

std::vector<CellPoint> scan_truncations(const CoefficientMatrix &state, std::span<const int> s_values) {
    require_truncations(state.dim(), s_values);
    const Eigen::MatrixXcd &beta = state.entries();
    const int n = state.dim();
    const int centre = state.half_width();

    // gram(i, j) = sum_{c in window} beta(i, c) conj(beta(j, c)), valid on the window only.
    Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(n, n);
    int lo = centre;
    int hi = centre;
    gram(centre, centre) = std::norm(beta(centre, centre));

    std::vector<CellPoint> points;
    points.reserve(s_values.size());
    for (int s : s_values) {
        while (hi - lo + 1 < s) {
            const int width = hi - lo + 1;
            // Columns entering the window, restricted to the old rows.
            const Eigen::VectorXcd left = beta.block(lo, lo - 1, width, 1);
            const Eigen::VectorXcd right = beta.block(lo, hi + 1, width, 1);
            gram.block(lo, lo, width, width).noalias() += left * left.adjoint();
            gram.block(lo, lo, width, width).noalias() += right * right.adjoint();
            --lo;
            ++hi;
            // Rows entering the window, against every row of the new window.
            const int grown = width + 2;
            const auto window = beta.block(lo, lo, grown, grown);
            for (int edge : {lo, hi}) {
                const Eigen::RowVectorXcd row = beta.block(edge, lo, 1, grown) * window.adjoint();
                gram.block(edge, lo, 1, grown) = row;
                gram.block(lo, edge, grown, 1) = row.adjoint();
            }
        }
        const auto block = gram.block(lo, lo, s, s);
        const double weight = block.diagonal().real().sum();
        if (!(weight >= TruncatedState::kMinCapturedWeight)) {
            throw DegenerateTruncationError("truncation window s=" + std::to_string(s) + " captures weight " +
                                            std::to_string(weight) + " < 1e-12");
        }
        const double purity = block.squaredNorm() / (weight * weight);
        points.push_back(CellPoint{s, schmidt_number(purity), weight});
    }
    return points;
}

std::vector<CellPoint> run_cell(int n, int m, std::span<const int> s_values, UnitaryKind kind,
                                const RngStream &stream) {
    const HilbertDims dims(n, m);
    require_truncations(n, s_values);
    const std::vector<GridRow> grid{GridRow{m, std::vector<int>(s_values.begin(), s_values.end())}};
    RealizationResult result = run_realization(dims.n(), kind, stream, true, grid);
    if (result.error) std::rethrow_exception(result.error);
    return std::move(result.points);
}

const CellStats &EnsembleStats::at(int m, int s) const {
    const auto it = std::find_if(cells_.begin(), cells_.end(), [&](const CellStats &c) { return c.m == m && c.s == s; });
    if (it == cells_.end()) {
        throw std::out_of_range("no cell (m=" + std::to_string(m) + ", s=" + std::to_string(s) + ")");
    }
    return *it;
}

EnsembleStats run_ensemble(const SweepConfig &config, const RunOptions &options) {
    config.validate();
    std::vector<GridRow> grid;
    for (int m : config.m_values) grid.push_back(GridRow{m, config.s_values});
    return run_grid(config.n, config.kind, config.effective_realizations(), config.master_seed, config.independent_ab,
                    grid, options);
}

EnsembleStats run_loss_cells(const SweepConfig &config, const RunOptions &options) {
    config.validate();
    if (config.m_values != config.s_values) {
        throw DimensionError("loss sweep requires identical m and s lists (truncation into the encoding subspace)");
    }
    std::vector<GridRow> grid;
    for (int m : config.m_values) grid.push_back(GridRow{m, {m}});
    return run_grid(config.n, config.kind, config.effective_realizations(), config.master_seed, config.independent_ab,
                    grid, options);
}

std::vector<LossPoint> loss_sweep(const SweepConfig &config, const RunOptions &options) {
    const EnsembleStats stats = run_loss_cells(config, options);
    std::vector<LossPoint> points;
    points.reserve(stats.cells().size());
    for (const CellStats &cell : stats.cells()) {
        points.push_back(LossPoint{cell.m, cell.m - cell.mean_K, cell.std_K, cell.realizations});
    }
    return points;
}

} // namespace truncent
