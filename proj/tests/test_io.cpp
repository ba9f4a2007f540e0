#include <doctest.h>

#include <charconv>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "truncent/errors.hpp"
#include "truncent/io.hpp"

using namespace truncent;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string &name) {
    const fs::path dir = fs::temp_directory_path() / "truncent_test_io";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::uint64_t bits(double d) {
    std::uint64_t b;
    std::memcpy(&b, &d, sizeof b);
    return b;
}

ResultTable random_table(std::mt19937_64 &rng, int rows) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> e(-300, 300);
    ResultTable t;
    t.meta.n = 51;
    t.meta.realizations = 100;
    t.meta.master_seed = 0xfedcba9876543210ull;
    for (int i = 0; i < rows; ++i) {
        TableRow r;
        r.m = 2 + i / 5;
        r.s = 3 + 2 * (i % 5);
        r.mean_K = std::ldexp(u(rng), e(rng) / 10);
        if (i % 3 != 0) r.std_K = std::abs(u(rng)) / 3.0;
        if (i % 2 == 0) r.analytic_K = u(rng) * 1e5;
        r.captured_weight = std::abs(u(rng));
        t.rows.push_back(r);
    }
    return t;
}

ResultTable three_rows() {
    ResultTable t;
    t.meta.n = 7;
    t.meta.kind = UnitaryKind::UniformSpreading;
    t.rows = {TableRow{2, 3, 1.25, std::nullopt, 1.25, 0.5}, TableRow{2, 5, 1.5, std::nullopt, 1.5, 0.75},
              TableRow{2, 7, 2.0, std::nullopt, 2.0, 1.0}};
    return t;
}

} // namespace

TEST_CASE("number formatting round-trips bit for bit") {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<std::uint64_t> any;
    for (int i = 0; i < 20000; ++i) {
        std::uint64_t b = any(rng);
        double d;
        std::memcpy(&d, &b, sizeof d);
        if (!std::isfinite(d)) continue;
        const std::string text = format_number(d);
        double back = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), back);
        CHECK(ec == std::errc{});
        CHECK(ptr == text.data() + text.size());
        CHECK(bits(back) == bits(d));
    }
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(2.0) == "2");
}

TEST_CASE("CSV layout: header plus one line per row") {
    const std::string csv = to_csv(three_rows());
    CHECK(csv.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    CHECK(csv.find("2,3,1.25,,1.25,0.5\n") != std::string::npos);
}

TEST_CASE("emit then read reproduces every row exactly") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        const ResultTable t = random_table(rng, 1 + trial * 3);
        const fs::path csv = scratch("roundtrip.csv");
        const fs::path json = scratch("roundtrip.json");
        emit_table(t, TableFormat::Csv, csv);
        emit_table(t, TableFormat::Json, json);
        CHECK(read_table(csv).rows == t.rows);
        CHECK(read_table(json) == t);
    }
}

TEST_CASE("JSON carries metadata and omits absent columns") {
    const std::string text = to_json(three_rows());
    CHECK(text.find("\"unitary_kind\": \"uniform\"") != std::string::npos);
    CHECK(text.find("std_K") == std::string::npos);
    CHECK(text.find("analytic_K") != std::string::npos);
    CHECK(parse_json(text) == three_rows());
}

TEST_CASE("empty or duplicate tables are rejected without writing a file") {
    const fs::path p = scratch("empty.csv");
    fs::remove(p);
    ResultTable empty;
    CHECK_THROWS_AS(emit_table(empty, TableFormat::Csv, p), DimensionError);
    CHECK_FALSE(fs::exists(p));

    ResultTable dup = three_rows();
    dup.rows.push_back(dup.rows.front());
    CHECK_THROWS_AS(emit_table(dup, TableFormat::Json, p), DimensionError);
    CHECK_FALSE(fs::exists(p));
}

TEST_CASE("I/O failures name the path") {
    const fs::path p = scratch("no/such/dir/out.csv");
    try {
        emit_table(three_rows(), TableFormat::Csv, p);
        FAIL("expected IoError");
    } catch (const IoError &e) {
        CHECK(std::string(e.what()).find(p.string()) != std::string::npos);
    }
    CHECK_THROWS_AS((void)read_table(scratch("missing.csv")), IoError);
}

TEST_CASE("malformed inputs are reported") {
    CHECK_THROWS_AS((void)parse_csv("a,b\n1,2\n"), IoError);
    CHECK_THROWS_AS((void)parse_csv(std::string(kCsvHeader) + "\n2,3,x,,,1\n"), IoError);
    CHECK_THROWS_AS((void)parse_csv(std::string(kCsvHeader) + "\n2,3,1\n"), IoError);
    CHECK_THROWS_AS((void)parse_csv(""), IoError);
    CHECK_THROWS_AS((void)parse_json("{\"rows\": []}"), IoError);
    CHECK_THROWS_AS((void)parse_json("not json"), IoError);
}

TEST_CASE("make_table fills std and analytic columns by run kind") {
    SweepConfig cue;
    cue.n = 21;
    cue.m_values = {2, 5};
    cue.s_values = {3, 21};
    cue.realizations = 4;
    cue.master_seed = 9;
    const ResultTable t = make_table(cue, run_ensemble(cue));
    REQUIRE(t.rows.size() == 4);
    for (const auto &r : t.rows) {
        CHECK(r.std_K.has_value());
        CHECK(r.analytic_K.has_value());
    }
    CHECK(t.meta.realizations == 4);

    SweepConfig uni = cue;
    uni.kind = UnitaryKind::UniformSpreading;
    uni.m_values = {2, 5, 21};
    const ResultTable u = make_table(uni, run_ensemble(uni));
    CHECK(u.meta.realizations == 1);
    for (const auto &r : u.rows) {
        CHECK_FALSE(r.std_K.has_value());
        CHECK(r.analytic_K.has_value() == (r.m == 2 || r.m == 21));
        if (r.analytic_K) CHECK(std::abs(*r.analytic_K - r.mean_K) < 1e-9);
    }
}

TEST_CASE("SVG: deterministic, one polyline per m, error bars when std is present") {
    SweepConfig cue;
    cue.n = 21;
    cue.m_values = {2, 5, 13};
    cue.s_values = all_odd_truncations(21);
    cue.realizations = 10;
    cue.master_seed = 1;
    const ResultTable t = make_table(cue, run_ensemble(cue));
    const std::string svg = render_svg(t);
    CHECK(svg == render_svg(t));
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("m = 13") != std::string::npos);
    // measured + dashed analytic line per m
    std::size_t polylines = 0;
    for (std::size_t pos = 0; (pos = svg.find("<polyline", pos)) != std::string::npos; ++pos) ++polylines;
    CHECK(polylines == 6);
    CHECK(svg.find("<line x1") != std::string::npos);
}

TEST_CASE("SVG: single point table gives one marker") {
    ResultTable t;
    t.meta.n = 7;
    t.rows = {TableRow{2, 3, 1.2, std::nullopt, std::nullopt, 0.4}};
    const std::string svg = render_svg(t);
    std::size_t circles = 0;
    for (std::size_t pos = 0; (pos = svg.find("<circle", pos)) != std::string::npos; ++pos) ++circles;
    CHECK(circles == 1);
    CHECK(svg.find("nan") == std::string::npos);
    const fs::path p = scratch("single.svg");
    emit_plot(t, p);
    CHECK(slurp(p) == svg);
    CHECK_THROWS_AS(emit_plot(ResultTable{}, p), DimensionError);
}

TEST_CASE("uniform n=201, m=2 table shows the secondary maximum near s = 101") {
    SweepConfig uni;
    uni.n = 201;
    uni.kind = UnitaryKind::UniformSpreading;
    uni.m_values = {2};
    uni.s_values = all_odd_truncations(201);
    const ResultTable t = make_table(uni, run_ensemble(uni));
    std::size_t best = 1;
    for (std::size_t i = 1; i + 1 < t.rows.size(); ++i) {
        if (t.rows[i].mean_K > t.rows[i - 1].mean_K && t.rows[i].mean_K > t.rows[i + 1].mean_K) best = i;
    }
    CHECK(std::abs(t.rows[best].s - 101) <= 4);
    CHECK(render_svg(t).find("m = 2") != std::string::npos);
}

TEST_CASE("CSV loss tables are recognised on read") {
    ResultTable loss;
    loss.meta.shape = SweepShape::LossVsEncoding;
    loss.rows = {TableRow{3, 3, 1.5, 0.2, 1.1, 0.1}, TableRow{5, 5, 2.1, 0.2, 1.8, 0.2}};
    const fs::path p = scratch("loss.csv");
    emit_table(loss, TableFormat::Csv, p);
    CHECK(read_table(p).meta.shape == SweepShape::LossVsEncoding);
    CHECK(render_svg(read_table(p)).find("entanglement loss") != std::string::npos);
}
