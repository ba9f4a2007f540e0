#include "truncent/cli.hpp"

#include <charconv>
#include <cmath>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "truncent/analytics.hpp"
#include "truncent/errors.hpp"

namespace truncent::cli {

namespace {

int to_int(std::string_view token, const std::string &whole) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw UsageError("malformed integer '" + std::string(token) + "' in list '" + whole + "'");
    }
    return value;
}

std::vector<int> checked_list(const std::string &flag, const std::string &text) {
    try {
        return parse_int_list(text);
    } catch (const UsageError &e) {
        throw UsageError(flag + ": " + e.what());
    }
}

const char *command_name(Command c) {
    switch (c) {
    case Command::SweepUniform: return "sweep-uniform";
    case Command::SweepRandom: return "sweep-random";
    case Command::CheckConjecture: return "check-conjecture";
    case Command::Loss: return "loss";
    case Command::Plot: return "plot";
    }
    return "?";
}

} // namespace

std::vector<int> parse_int_list(const std::string &text) {
    std::vector<int> values;
    std::string_view rest = text;
    while (true) {
        const std::size_t comma = rest.find(',');
        const std::string_view item = rest.substr(0, comma);
        if (item.empty()) throw UsageError("empty item in list '" + text + "'");

        const std::size_t colon = item.find(':');
        if (colon == std::string_view::npos) {
            values.push_back(to_int(item, text));
        } else {
            const std::string_view start_text = item.substr(0, colon);
            std::string_view stop_text = item.substr(colon + 1);
            int step = 1;
            if (const std::size_t second = stop_text.find(':'); second != std::string_view::npos) {
                step = to_int(stop_text.substr(second + 1), text);
                stop_text = stop_text.substr(0, second);
            }
            const int start = to_int(start_text, text);
            const int stop = to_int(stop_text, text);
            if (step <= 0 || stop < start) throw UsageError("bad range '" + std::string(item) + "' in '" + text + "'");
            for (int v = start; v <= stop; v += step) values.push_back(v);
        }
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
    }
    return values;
}

Options parse_config(const std::vector<std::string> &args) {
    Options opts;
    CLI::App app{"Entanglement of truncated bipartite states", "truncent"};
    app.require_subcommand(1);

    int n = 0;
    std::string m_text;
    std::string s_text;
    std::string seed_text = "0";
    int realizations = 100;
    std::string out_text;
    std::string format_text = "csv";
    std::string input_text;

    auto add_sweep_flags = [&](CLI::App *sub, bool with_s, bool with_tolerance) {
        sub->add_option("--n", n, "Total local dimension (odd)")->required();
        sub->add_option("--m", m_text, "Encoding dimensions, e.g. 2,5,7 or 3:51:2")->required();
        if (with_s) sub->add_option("--s", s_text, "Truncation dimensions (odd); default all odd 3..n");
        sub->add_option("--realizations", realizations, "Random realizations per cell");
        sub->add_option("--seed", seed_text, "Master seed (64-bit unsigned)");
        sub->add_option("--out", out_text, "Output file (default stdout)");
        sub->add_option("--format", format_text, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--threads", opts.threads, "Worker threads (0 = hardware concurrency)");
        if (with_tolerance) sub->add_option("--tolerance", opts.tolerance, "Relative tolerance on K");
    };

    CLI::App *uniform = app.add_subcommand("sweep-uniform", "K(s) under uniform spreading (deterministic)");
    add_sweep_flags(uniform, true, false);
    CLI::App *random = app.add_subcommand("sweep-random", "Mean and std of K(s) under independent CUE unitaries");
    add_sweep_flags(random, true, false);
    CLI::App *check = app.add_subcommand("check-conjecture", "Compare the CUE ensemble with 1/(2/s + 1/m - 2/n)");
    add_sweep_flags(check, true, true);
    CLI::App *loss = app.add_subcommand("loss", "Entanglement loss for truncation into the encoding subspace");
    add_sweep_flags(loss, false, false);
    CLI::App *plot = app.add_subcommand("plot", "Render a CSV/JSON result table as SVG");
    plot->add_option("input", input_text, "Result table (.csv or .json)")->required();
    plot->add_option("--out", out_text, "SVG output path")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        opts.help = true;
        const CLI::App *target = &app;
        for (CLI::App *sub : app.get_subcommands()) target = sub;
        opts.help_text = target->help();
        return opts;
    } catch (const CLI::ParseError &e) {
        throw UsageError(e.what());
    }

    if (plot->parsed()) {
        opts.command = Command::Plot;
        opts.input = input_text;
        opts.out = out_text;
        return opts;
    }
    if (uniform->parsed()) opts.command = Command::SweepUniform;
    else if (random->parsed()) opts.command = Command::SweepRandom;
    else if (check->parsed()) opts.command = Command::CheckConjecture;
    else opts.command = Command::Loss;

    if (n < 3 || n % 2 == 0) throw UsageError("--n: must be odd and >= 3, got " + std::to_string(n));
    SweepConfig &config = opts.config;
    config.n = n;
    config.kind = opts.command == Command::SweepUniform ? UnitaryKind::UniformSpreading : UnitaryKind::RandomCUE;
    config.independent_ab = true;

    config.m_values = checked_list("--m", m_text);
    for (int m : config.m_values) {
        if (m < 2 || m > n) throw UsageError("--m: " + std::to_string(m) + " outside [2, n=" + std::to_string(n) + "]");
    }
    if (opts.command == Command::Loss) {
        for (int m : config.m_values) {
            if (m % 2 == 0 || m < 3) throw UsageError("--m: loss sweeps need odd m >= 3, got " + std::to_string(m));
        }
        config.s_values = config.m_values;
    } else if (s_text.empty()) {
        config.s_values = all_odd_truncations(n);
    } else {
        config.s_values = checked_list("--s", s_text);
        for (int s : config.s_values) {
            if (s < 3 || s % 2 == 0) throw UsageError("--s: must be odd and >= 3, got " + std::to_string(s));
            if (s > n) throw UsageError("--s: " + std::to_string(s) + " exceeds n=" + std::to_string(n));
        }
    }
    if (realizations < 1) throw UsageError("--realizations: must be >= 1");
    config.realizations = realizations;

    {
        std::uint64_t seed = 0;
        const auto [ptr, ec] = std::from_chars(seed_text.data(), seed_text.data() + seed_text.size(), seed);
        if (seed_text.empty() || ec != std::errc{} || ptr != seed_text.data() + seed_text.size()) {
            throw UsageError("--seed: malformed seed '" + seed_text + "' (expected a 64-bit unsigned integer)");
        }
        config.master_seed = seed;
    }
    if (!(opts.tolerance > 0.0)) throw UsageError("--tolerance: must be positive");
    opts.format = format_text == "json" ? TableFormat::Json : TableFormat::Csv;
    if (!out_text.empty()) opts.out = out_text;

    try {
        config.validate();
    } catch (const DimensionError &e) {
        throw UsageError(std::string("--m/--s: ") + e.what());
    }
    return opts;
}

bool is_expected_deviation(int n, int m, int s) { return m < 5 && 2 * s < n; }

ConjectureReport check_conjecture(const SweepConfig &config, const EnsembleStats &stats, double tolerance) {
    ConjectureReport report;
    for (const CellStats &cell : stats.cells()) {
        ConjectureCell c;
        c.m = cell.m;
        c.s = cell.s;
        c.mean_K = cell.mean_K;
        c.std_K = cell.std_K;
        c.analytic_K = 1.0 / analytics::conjectured_purity(config.n, cell.m, cell.s);
        const double diff = std::abs(c.analytic_K - c.mean_K);
        const double error_bar = 2.0 * cell.std_K / std::sqrt(static_cast<double>(cell.realizations));
        c.relative_deviation = diff / c.mean_K;
        c.outside_error_bar = diff > error_bar;
        c.within_tolerance = diff <= std::max(tolerance * c.mean_K, error_bar);
        c.expected_deviation = !c.within_tolerance && is_expected_deviation(config.n, cell.m, cell.s);

        report.max_relative_deviation = std::max(report.max_relative_deviation, c.relative_deviation);
        report.outside_error_bar += c.outside_error_bar ? 1 : 0;
        report.expected_deviations += c.expected_deviation ? 1 : 0;
        report.failures += (!c.within_tolerance && !c.expected_deviation) ? 1 : 0;
        report.cells.push_back(c);
    }
    return report;
}

void print_report(std::ostream &os, const ConjectureReport &report, double tolerance) {
    os << "cells: " << report.cells.size() << '\n'
       << "max relative deviation: " << format_number(report.max_relative_deviation) << '\n'
       << "analytic outside mean +- 2 std/sqrt(R): " << report.outside_error_bar << '\n'
       << "expected small-m small-s deviations: " << report.expected_deviations << '\n'
       << "failures (tolerance " << format_number(tolerance) << "): " << report.failures << '\n';
    for (const ConjectureCell &c : report.cells) {
        if (c.within_tolerance) continue;
        os << (c.expected_deviation ? "  expected " : "  FAIL     ") << "m=" << c.m << " s=" << c.s
           << " mean_K=" << format_number(c.mean_K) << " analytic_K=" << format_number(c.analytic_K)
           << " rel=" << format_number(c.relative_deviation) << '\n';
    }
    os << (report.passed() ? "PASS" : "FAIL") << '\n';
}

namespace {

void write_table(const Options &opts, const ResultTable &table, std::ostream &out) {
    if (opts.out) {
        emit_table(table, opts.format, *opts.out);
        return;
    }
    if (table.rows.empty()) throw DimensionError("result table has no rows");
    out << (opts.format == TableFormat::Json ? to_json(table) : to_csv(table));
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    Options opts;
    try {
        opts = parse_config(args);
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << "\nrun with --help for usage\n";
        return kUsageError;
    }
    if (opts.help) {
        out << opts.help_text;
        return kOk;
    }

    const RunOptions run_options{opts.threads};
    try {
        switch (opts.command) {
        case Command::SweepUniform:
        case Command::SweepRandom: {
            const EnsembleStats stats = run_ensemble(opts.config, run_options);
            write_table(opts, make_table(opts.config, stats), out);
            return kOk;
        }
        case Command::Loss: {
            const EnsembleStats stats = run_loss_cells(opts.config, run_options);
            write_table(opts, make_table(opts.config, stats, SweepShape::LossVsEncoding), out);
            return kOk;
        }
        case Command::CheckConjecture: {
            const EnsembleStats stats = run_ensemble(opts.config, run_options);
            const ConjectureReport report = check_conjecture(opts.config, stats, opts.tolerance);
            if (opts.out) emit_table(make_table(opts.config, stats), opts.format, *opts.out);
            print_report(out, report, opts.tolerance);
            return report.passed() ? kOk : kConjectureFailed;
        }
        case Command::Plot: {
            emit_plot(read_table(*opts.input), *opts.out);
            return kOk;
        }
        }
    } catch (const IoError &e) {
        err << command_name(opts.command) << ": I/O error: " << e.what() << '\n';
        return kIoError;
    } catch (const DimensionError &e) {
        err << command_name(opts.command) << ": " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception &e) {
        err << command_name(opts.command) << ": numerical error: " << e.what() << '\n';
        return kNumericalError;
    }
    return kOk;
}

} // namespace truncent::cli
