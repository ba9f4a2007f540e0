#include "truncent/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "truncent/analytics.hpp"
#include "truncent/errors.hpp"

namespace truncent {

using json = nlohmann::json;

std::optional<double> analytic_schmidt(UnitaryKind kind, int n, int m, int s) {
    if (kind == UnitaryKind::RandomCUE) return 1.0 / analytics::conjectured_purity(n, m, s);
    if (m == 2) return 1.0 / analytics::purity_m2(n, s);
    if (m == n) return static_cast<double>(s);
    return std::nullopt;
}

ResultTable make_table(const SweepConfig &config, const EnsembleStats &stats, SweepShape shape) {
    ResultTable table;
    table.meta.n = config.n;
    table.meta.kind = config.kind;
    table.meta.realizations = config.effective_realizations();
    table.meta.master_seed = config.master_seed;
    table.meta.shape = shape;
    for (const CellStats &cell : stats.cells()) {
        TableRow row;
        row.m = cell.m;
        row.s = cell.s;
        row.mean_K = cell.mean_K;
        if (config.kind == UnitaryKind::RandomCUE) row.std_K = cell.std_K;
        row.analytic_K = analytic_schmidt(config.kind, config.n, cell.m, cell.s);
        row.captured_weight = cell.mean_captured_weight;
        table.rows.push_back(row);
    }
    return table;
}

std::string format_number(double value) {
    char buffer[64];
    const auto [end, ec] = std::to_chars(std::begin(buffer), std::end(buffer), value);
    if (ec != std::errc{}) throw IoError("cannot format number");
    return std::string(buffer, end);
}

namespace {

std::string_view shape_name(SweepShape shape) {
    return shape == SweepShape::LossVsEncoding ? "loss_vs_encoding" : "schmidt_vs_truncation";
}

SweepShape parse_shape(const std::string &name) {
    if (name == "loss_vs_encoding") return SweepShape::LossVsEncoding;
    if (name == "schmidt_vs_truncation") return SweepShape::SchmidtVsTruncation;
    throw IoError("unknown sweep shape '" + name + "'");
}

UnitaryKind parse_kind(const std::string &name) {
    if (name == "cue") return UnitaryKind::RandomCUE;
    if (name == "uniform") return UnitaryKind::UniformSpreading;
    throw IoError("unknown unitary kind '" + name + "'");
}

void check_table(const ResultTable &table) {
    if (table.rows.empty()) throw DimensionError("result table has no rows");
    std::set<std::pair<int, int>> seen;
    for (const TableRow &row : table.rows) {
        if (!seen.emplace(row.m, row.s).second) {
            throw DimensionError("duplicate cell (m=" + std::to_string(row.m) + ", s=" + std::to_string(row.s) + ")");
        }
    }
}

double parse_double(std::string_view field, std::size_t line) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw IoError("line " + std::to_string(line) + ": malformed number '" + std::string(field) + "'");
    }
    return value;
}

int parse_int(std::string_view field, std::size_t line) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw IoError("line " + std::to_string(line) + ": malformed integer '" + std::string(field) + "'");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(sep, start);
        fields.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return fields;
}

void write_file(const std::filesystem::path &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

} // namespace

std::string to_csv(const ResultTable &table) {
    std::string text(kCsvHeader);
    text += '\n';
    for (const TableRow &row : table.rows) {
        text += std::to_string(row.m) + ',' + std::to_string(row.s) + ',' + format_number(row.mean_K) + ',';
        if (row.std_K) text += format_number(*row.std_K);
        text += ',';
        if (row.analytic_K) text += format_number(*row.analytic_K);
        text += ',' + format_number(row.captured_weight) + '\n';
    }
    return text;
}

std::string to_json(const ResultTable &table) {
    json meta = {
        {"n", table.meta.n},
        {"unitary_kind", std::string(to_string(table.meta.kind))},
        {"realizations", table.meta.realizations},
        {"master_seed", table.meta.master_seed},
        {"sweep", std::string(shape_name(table.meta.shape))},
        {"version", table.meta.version},
    };
    json rows = json::array();
    for (const TableRow &row : table.rows) {
        json r = {{"m", row.m}, {"s", row.s}, {"mean_K", row.mean_K}};
        if (row.std_K) r["std_K"] = *row.std_K;
        if (row.analytic_K) r["analytic_K"] = *row.analytic_K;
        r["captured_weight"] = row.captured_weight;
        rows.push_back(std::move(r));
    }
    json doc = {{"metadata", std::move(meta)}, {"rows", std::move(rows)}};
    return doc.dump(2) + '\n';
}

ResultTable parse_csv(std::string_view text) {
    ResultTable table;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (!text.empty()) {
        const std::size_t eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != kCsvHeader) throw IoError("unexpected CSV header '" + std::string(line) + "'");
            header_seen = true;
            continue;
        }
        const auto fields = split(line, ',');
        if (fields.size() != 6) throw IoError("line " + std::to_string(line_no) + ": expected 6 fields");
        TableRow row;
        row.m = parse_int(fields[0], line_no);
        row.s = parse_int(fields[1], line_no);
        row.mean_K = parse_double(fields[2], line_no);
        if (!fields[3].empty()) row.std_K = parse_double(fields[3], line_no);
        if (!fields[4].empty()) row.analytic_K = parse_double(fields[4], line_no);
        row.captured_weight = parse_double(fields[5], line_no);
        table.rows.push_back(row);
    }
    if (!header_seen) throw IoError("CSV input has no header");
    return table;
}

ResultTable parse_json(std::string_view text) {
    ResultTable table;
    try {
        const json doc = json::parse(text);
        const json &meta = doc.at("metadata");
        table.meta.n = meta.at("n").get<int>();
        table.meta.kind = parse_kind(meta.at("unitary_kind").get<std::string>());
        table.meta.realizations = meta.at("realizations").get<int>();
        table.meta.master_seed = meta.at("master_seed").get<std::uint64_t>();
        table.meta.shape = parse_shape(meta.at("sweep").get<std::string>());
        table.meta.version = meta.at("version").get<std::string>();
        for (const json &r : doc.at("rows")) {
            TableRow row;
            row.m = r.at("m").get<int>();
            row.s = r.at("s").get<int>();
            row.mean_K = r.at("mean_K").get<double>();
            if (r.contains("std_K")) row.std_K = r.at("std_K").get<double>();
            if (r.contains("analytic_K")) row.analytic_K = r.at("analytic_K").get<double>();
            row.captured_weight = r.at("captured_weight").get<double>();
            table.rows.push_back(row);
        }
    } catch (const json::exception &e) {
        throw IoError(std::string("malformed JSON table: ") + e.what());
    }
    return table;
}

void emit_table(const ResultTable &table, TableFormat format, const std::filesystem::path &path) {
    check_table(table);
    write_file(path, format == TableFormat::Json ? to_json(table) : to_csv(table));
}

ResultTable read_table(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    ResultTable table = path.extension() == ".json" ? parse_json(text) : parse_csv(text);
    if (path.extension() != ".json") {
        // CSV has no metadata block; a diagonal table (every s = m, one row per m) is a loss sweep.
        std::set<int> ms;
        const bool diagonal = std::all_of(table.rows.begin(), table.rows.end(), [&](const TableRow &row) {
            return row.s == row.m && ms.insert(row.m).second;
        });
        if (diagonal && table.rows.size() > 1) table.meta.shape = SweepShape::LossVsEncoding;
    }
    return table;
}

// ---------------------------------------------------------------------------
// SVG rendering

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 560.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr const char *kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                    "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"};

struct PlotPoint {
    double x;
    double y;
    std::optional<double> err;
    std::optional<double> analytic;
};

struct Series {
    std::string label;
    std::vector<PlotPoint> points;
};

std::string fixed(double v, int digits = 2) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.*f", digits, v);
    return buffer;
}

double nice_step(double span) {
    if (span <= 0.0) return 1.0;
    const double raw = span / 6.0;
    const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
    for (double factor : {1.0, 2.0, 5.0}) {
        if (raw <= factor * magnitude) return factor * magnitude;
    }
    return 10.0 * magnitude;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void include(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (hi - lo < 1e-12) {
            lo -= 1.0;
            hi += 1.0;
        }
    }
};

} // namespace

std::string render_svg(const ResultTable &table) {
    check_table(table);
    const bool loss = table.meta.shape == SweepShape::LossVsEncoding;

    std::vector<Series> series;
    if (loss) {
        Series s{"loss", {}};
        for (const TableRow &row : table.rows) {
            std::optional<double> analytic;
            if (row.analytic_K) analytic = row.m - *row.analytic_K;
            s.points.push_back(PlotPoint{static_cast<double>(row.m), row.m - row.mean_K, row.std_K, analytic});
        }
        series.push_back(std::move(s));
    } else {
        std::map<int, Series> by_m;
        for (const TableRow &row : table.rows) {
            Series &s = by_m[row.m];
            s.label = "m = " + std::to_string(row.m);
            s.points.push_back(PlotPoint{static_cast<double>(row.s), row.mean_K, row.std_K, row.analytic_K});
        }
        for (auto &[m, s] : by_m) series.push_back(std::move(s));
    }
    for (Series &s : series) {
        std::sort(s.points.begin(), s.points.end(), [](const PlotPoint &a, const PlotPoint &b) { return a.x < b.x; });
    }

    Range xr;
    Range yr;
    for (const Series &s : series) {
        for (const PlotPoint &p : s.points) {
            xr.include(p.x);
            yr.include(p.y - p.err.value_or(0.0));
            yr.include(p.y + p.err.value_or(0.0));
            if (p.analytic) yr.include(*p.analytic);
        }
    }
    yr.include(0.0);
    xr.pad();
    yr.pad();

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
    auto py = [&](double y) { return kTop + plot_h - (y - yr.lo) / (yr.hi - yr.lo) * plot_h; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << kLeft << "\" y=\"24\" font-size=\"14\">n = " << table.meta.n << ", "
        << to_string(table.meta.kind) << ", realizations = " << table.meta.realizations << "</text>\n";

    // Axes and ticks.
    svg << "<g stroke=\"black\" fill=\"none\">\n";
    svg << "<line x1=\"" << fixed(kLeft) << "\" y1=\"" << fixed(kTop + plot_h) << "\" x2=\"" << fixed(kLeft + plot_w)
        << "\" y2=\"" << fixed(kTop + plot_h) << "\"/>\n";
    svg << "<line x1=\"" << fixed(kLeft) << "\" y1=\"" << fixed(kTop) << "\" x2=\"" << fixed(kLeft) << "\" y2=\""
        << fixed(kTop + plot_h) << "\"/>\n";
    svg << "</g>\n<g font-size=\"11\">\n";
    const double xstep = nice_step(xr.hi - xr.lo);
    for (double x = std::ceil(xr.lo / xstep) * xstep; x <= xr.hi + 1e-9; x += xstep) {
        svg << "<line x1=\"" << fixed(px(x)) << "\" y1=\"" << fixed(kTop + plot_h) << "\" x2=\"" << fixed(px(x))
            << "\" y2=\"" << fixed(kTop + plot_h + 5) << "\" stroke=\"black\"/>";
        svg << "<text x=\"" << fixed(px(x)) << "\" y=\"" << fixed(kTop + plot_h + 18)
            << "\" text-anchor=\"middle\">" << fixed(x, xstep < 1 ? 1 : 0) << "</text>\n";
    }
    const double ystep = nice_step(yr.hi - yr.lo);
    for (double y = std::ceil(yr.lo / ystep) * ystep; y <= yr.hi + 1e-9; y += ystep) {
        svg << "<line x1=\"" << fixed(kLeft - 5) << "\" y1=\"" << fixed(py(y)) << "\" x2=\"" << fixed(kLeft)
            << "\" y2=\"" << fixed(py(y)) << "\" stroke=\"black\"/>";
        svg << "<text x=\"" << fixed(kLeft - 8) << "\" y=\"" << fixed(py(y) + 4) << "\" text-anchor=\"end\">"
            << fixed(y, ystep < 1 ? 2 : 0) << "</text>\n";
    }
    svg << "</g>\n";
    svg << "<text x=\"" << fixed(kLeft + plot_w / 2) << "\" y=\"" << fixed(kHeight - 15)
        << "\" text-anchor=\"middle\">" << (loss ? "encoding dimension m (s = m)" : "truncation dimension s")
        << "</text>\n";
    svg << "<text transform=\"translate(20 " << fixed(kTop + plot_h / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
        << (loss ? "entanglement loss m - K" : "Schmidt number K") << "</text>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const Series &s = series[i];
        const char *colour = kPalette[i % std::size(kPalette)];
        svg << "<g stroke=\"" << colour << "\" fill=\"" << colour << "\">\n";

        const bool has_analytic = std::any_of(s.points.begin(), s.points.end(), [](const PlotPoint &p) { return p.analytic.has_value(); });
        if (has_analytic) {
            svg << "<polyline fill=\"none\" stroke-dasharray=\"6 4\" points=\"";
            bool first = true;
            for (const PlotPoint &p : s.points) {
                if (!p.analytic) continue;
                svg << (first ? "" : " ") << fixed(px(p.x)) << ',' << fixed(py(*p.analytic));
                first = false;
            }
            svg << "\"/>\n";
        }
        if (s.points.size() > 1) {
            svg << "<polyline fill=\"none\" points=\"";
            for (std::size_t j = 0; j < s.points.size(); ++j) {
                svg << (j ? " " : "") << fixed(px(s.points[j].x)) << ',' << fixed(py(s.points[j].y));
            }
            svg << "\"/>\n";
        }
        for (const PlotPoint &p : s.points) {
            if (p.err && *p.err > 0.0) {
                svg << "<line x1=\"" << fixed(px(p.x)) << "\" y1=\"" << fixed(py(p.y - *p.err)) << "\" x2=\""
                    << fixed(px(p.x)) << "\" y2=\"" << fixed(py(p.y + *p.err)) << "\"/>";
            }
            svg << "<circle cx=\"" << fixed(px(p.x)) << "\" cy=\"" << fixed(py(p.y)) << "\" r=\"2.5\"/>\n";
        }
        const double ly = kTop + 10 + 18.0 * static_cast<double>(i);
        svg << "<line x1=\"" << fixed(kWidth - kRight + 15) << "\" y1=\"" << fixed(ly) << "\" x2=\""
            << fixed(kWidth - kRight + 40) << "\" y2=\"" << fixed(ly) << "\"/>";
        svg << "<text stroke=\"none\" x=\"" << fixed(kWidth - kRight + 46) << "\" y=\"" << fixed(ly + 4) << "\">"
            << s.label << "</text>\n";
        svg << "</g>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void emit_plot(const ResultTable &table, const std::filesystem::path &path) { write_file(path, render_svg(table)); }

} // namespace truncent
