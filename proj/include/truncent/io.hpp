#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "truncent/ensemble.hpp"

namespace truncent {

enum class TableFormat { Csv, Json };
// K against s for each m, or the entanglement loss against m (rows with s = m).
enum class SweepShape { SchmidtVsTruncation, LossVsEncoding };

struct TableMetadata {
    int n = 0;
    UnitaryKind kind = UnitaryKind::RandomCUE;
    int realizations = 1;
    std::uint64_t master_seed = 0;
    SweepShape shape = SweepShape::SchmidtVsTruncation;
    std::string version = TRUNCENT_VERSION;

    friend bool operator==(const TableMetadata &, const TableMetadata &) = default;
};

struct TableRow {
    int m = 0;
    int s = 0;
    double mean_K = 0.0;
    std::optional<double> std_K;      // absent for deterministic runs
    std::optional<double> analytic_K; // present where a closed form applies
    double captured_weight = 0.0;

    friend bool operator==(const TableRow &, const TableRow &) = default;
};

struct ResultTable {
    TableMetadata meta;
    std::vector<TableRow> rows;

    friend bool operator==(const ResultTable &, const ResultTable &) = default;
};

// Closed-form K for a cell, if one applies to the run kind:
//   RandomCUE        -> 1 / conjectured purity
//   UniformSpreading -> exact m = 2 purity, or K = s when m = n
[[nodiscard]] std::optional<double> analytic_schmidt(UnitaryKind kind, int n, int m, int s);

[[nodiscard]] ResultTable make_table(const SweepConfig &config, const EnsembleStats &stats,
                                     SweepShape shape = SweepShape::SchmidtVsTruncation);

// Shortest representation that parses back to the same double.
[[nodiscard]] std::string format_number(double value);

inline constexpr std::string_view kCsvHeader = "m,s,mean_K,std_K,analytic_K,captured_weight";

[[nodiscard]] std::string to_csv(const ResultTable &table);
[[nodiscard]] std::string to_json(const ResultTable &table);
// CSV carries rows only, so the returned metadata is default-constructed.
[[nodiscard]] ResultTable parse_csv(std::string_view text);
[[nodiscard]] ResultTable parse_json(std::string_view text);

// Throws DimensionError for an empty or duplicate-cell table, IoError on write failure.
void emit_table(const ResultTable &table, TableFormat format, const std::filesystem::path &path);
// Format chosen by extension: .json, anything else CSV.
[[nodiscard]] ResultTable read_table(const std::filesystem::path &path);

[[nodiscard]] std::string render_svg(const ResultTable &table);
void emit_plot(const ResultTable &table, const std::filesystem::path &path);

} // namespace truncent
