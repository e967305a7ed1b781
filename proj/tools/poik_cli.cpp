// poik: command-line front end. Reproduces the distribution tables and figure
// data as deterministic CSV or JSON-lines files.
//
// Exit codes: 0 success, 2 usage/parameter error, 3 precision failure,
// 4 conjecture check failed.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "poik/detail/parallel.hpp"
#include "poik/errors.hpp"
#include "poik/eval.hpp"
#include "poik/fitting.hpp"
#include "poik/report.hpp"
#include "poik/search.hpp"
#include "poik/stats.hpp"

namespace {

using namespace poik;
namespace rep = poik::report;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitPrecision = 3;
constexpr int kExitConjecture = 4;

struct OutputOptions {
    std::string format = "csv";
    std::string out_path;  // empty = stdout
};

void add_output_flags(CLI::App* cmd, OutputOptions* out) {
    cmd->add_option("--format", out->format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", out->out_path, "Output file (default: standard output)");
}

void emit(const rep::Table& table, const OutputOptions& out) {
    const rep::Format format = rep::parse_format(out.format);
    if (out.out_path.empty()) {
        rep::write(std::cout, table, format);
        return;
    }
    std::ofstream file(out.out_path, std::ios::binary);
    if (!file) throw InvalidParamsError("cannot open output file '" + out.out_path + "'");
    rep::write(file, table, format);
}

// ---------------------------------------------------------------------------
// pmf

struct PmfArgs {
    std::int64_t k = 1;
    double lambda = 0.0;
    std::optional<std::int64_t> n_max;
    OutputOptions out;
};

int run_pmf(const PmfArgs& args) {
    DistParams params(args.k, args.lambda);
    const std::int64_t n_max = args.n_max.value_or(default_n_max(params));
    if (n_max < 0) throw InvalidParamsError("n-max must be >= 0");

    EvalOptions eopts;
    eopts.auto_check_n_cap = 2048;  // keep the dual-recurrence check on at CLI scales
    const ScaledSeries f = pmf_series(params, n_max, eopts);

    rep::Table table;
    table.columns = {"n", "pmf", "h"};
    const double h_offset = params.lambda * static_cast<double>(params.k);
    for (std::int64_t n = 0; n <= n_max; ++n) {
        const double pmf = f.at(n);
        const double h = std::exp(f.log_at(n) + h_offset);
        table.add_row({rep::cell_int(n), rep::cell_real(pmf), rep::cell_real(h)});
    }
    emit(table, args.out);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// double-mode

struct SweepArgs {
    std::int64_t k_min = 2;
    std::int64_t k_max = 2;
    double tol = 1e-12;
    OutputOptions out;
};

void check_k_range(std::int64_t k_min, std::int64_t k_max, std::int64_t floor_k) {
    if (k_min < floor_k)
        throw InvalidParamsError("k-min must be >= " + std::to_string(floor_k));
    if (k_max < k_min) throw InvalidParamsError("k-max must be >= k-min");
}

int run_double_mode(const SweepArgs& args) {
    check_k_range(args.k_min, args.k_max, 2);
    SearchOptions sopts;
    sopts.root_tol = args.tol;

    struct Row {
        DoubleModeResult dm;
        double rk = 0.0;
    };
    const std::int64_t count = args.k_max - args.k_min + 1;
    std::vector<Row> rows(static_cast<std::size_t>(count));
    detail::parallel_for(count, [&](std::int64_t i) {
        const std::int64_t k = args.k_min + i;
        rows[static_cast<std::size_t>(i)].dm = first_double_mode(k, sopts);
        rows[static_cast<std::size_t>(i)].rk = root_rk(k, sopts);
    });

    rep::Table table;
    table.columns = {"k", "m_hat", "lambda_hat", "r_k", "mean", "mean_minus_mode"};
    for (const Row& row : rows) {
        const double mu = static_cast<double>(row.dm.k * (row.dm.k + 1) / 2) * row.dm.lambda_hat;
        const double diff = mu - static_cast<double>(row.dm.m_hat);
        if (!(diff > 0.0))
            throw DataIntegrityError("mode does not fall below the mean at k = " +
                                     std::to_string(row.dm.k));
        table.add_row({rep::cell_int(row.dm.k), rep::cell_int(row.dm.m_hat),
                       rep::cell_rate(row.dm.lambda_hat), rep::cell_rate(row.rk),
                       rep::cell_real(mu), rep::cell_real(diff)});
    }
    emit(table, args.out);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// excluded / tables

struct ExcludedArgs {
    std::int64_t k = 2;
    std::optional<std::int64_t> n_upper;
    double tol = 1e-12;
    OutputOptions out;
};

std::string intervals_text(const ExcludedReport& report) {
    std::string text;
    for (std::size_t i = 0; i < report.intervals.size(); ++i) {
        if (i) text += ' ';
        text += rep::interval_text(report.intervals[i].first, report.intervals[i].second);
    }
    return text;
}

int run_excluded(const ExcludedArgs& args) {
    SearchOptions sopts;
    sopts.root_tol = args.tol;
    const ExcludedReport report = excluded_values(args.k, args.n_upper, sopts);

    rep::Table table;
    table.columns = {"k", "n_upper", "ceiling_source", "excluded_intervals"};
    table.add_row({rep::cell_int(report.k), rep::cell_int(report.n_upper),
                   rep::cell_text(report.ceiling_source == CeilingSource::User
                                      ? "user"
                                      : "regular_regime_conjecture"),
                   rep::cell_text(intervals_text(report))});
    emit(table, args.out);
    return kExitOk;
}

struct TablesArgs {
    std::int64_t k_min = 2;
    std::int64_t k_max = 41;
    double tol = 1e-12;
    OutputOptions out;
};

// Table block and singleton/range conventions follow the typeset originals:
// block 1 covers k in [2,14] with up to three columns, blocks 2-4 two columns.
int run_tables(const TablesArgs& args) {
    check_k_range(args.k_min, args.k_max, 2);
    SearchOptions sopts;
    sopts.root_tol = args.tol;

    const std::int64_t count = args.k_max - args.k_min + 1;
    std::vector<ExcludedReport> reports(static_cast<std::size_t>(count));
    detail::parallel_for(count, [&](std::int64_t i) {
        reports[static_cast<std::size_t>(i)] = excluded_values(args.k_min + i, {}, sopts);
    });

    auto interval_cell = [](std::int64_t lo, std::int64_t hi) {
        return rep::cell_text(lo == hi ? std::to_string(lo) : rep::interval_text(lo, hi));
    };

    rep::Table table;
    table.columns = {"table", "k", "interval1", "interval2", "interval3"};
    for (const ExcludedReport& report : reports) {
        const std::int64_t k = report.k;
        const int block = k <= 14 ? 1 : (k <= 28 ? 2 : (k <= 37 ? 3 : 4));
        std::vector<rep::Cell> cells = {rep::cell_int(block), rep::cell_int(k)};
        for (std::size_t c = 0; c < 3; ++c) {
            if (c < report.intervals.size())
                cells.push_back(interval_cell(report.intervals[c].first, report.intervals[c].second));
            else
                cells.push_back(rep::cell_text(""));
        }
        table.add_row(std::move(cells));
    }
    emit(table, args.out);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// fit

struct FitArgs {
    std::string input;
    std::string model = "powerlaw";
    std::string x_col = "x";
    std::string y_col = "y";
    OutputOptions out;
};

int run_fit(const FitArgs& args) {
    std::ifstream file(args.input);
    if (!file) throw InvalidParamsError("cannot open input file '" + args.input + "'");
    const auto rows = rep::read_csv(file);
    if (rows.size() < 2) throw InvalidParamsError("fit input needs a header row and data rows");

    const auto& header = rows.front();
    auto col_index = [&](const std::string& name) -> std::size_t {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        throw InvalidParamsError("column '" + name + "' not found in '" + args.input + "'");
    };
    const std::size_t xi = col_index(args.x_col);
    const std::size_t yi = col_index(args.y_col);

    std::vector<FitPoint> points;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() <= std::max(xi, yi))
            throw InvalidParamsError("short row " + std::to_string(r) + " in '" + args.input + "'");
        try {
            points.push_back({std::stod(rows[r][xi]), std::stod(rows[r][yi])});
        } catch (const std::exception&) {
            throw InvalidParamsError("non-numeric value in row " + std::to_string(r) + " of '" +
                                     args.input + "'");
        }
    }

    const FitResult fit =
        args.model == "powerlaw" ? power_law_fit(points) : linear_fit(points);

    rep::Table table;
    table.columns = {"model", "c0", "c1", "residual", "n_points", "x_min", "x_max"};
    table.add_row({rep::cell_text(args.model), rep::cell_real(fit.c0), rep::cell_real(fit.c1),
                   rep::cell_real(fit.residual), rep::cell_int(fit.n_points),
                   rep::cell_real(fit.domain.first), rep::cell_real(fit.domain.second)});
    emit(table, args.out);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// conjectures

struct ConjectureArgs {
    std::int64_t k_min = 2;
    std::int64_t k_max = 41;
    double tol = 1e-12;
    int digits = 30;
    OutputOptions out;
};

int run_conjectures(const ConjectureArgs& args) {
    check_k_range(args.k_min, args.k_max, 2);
    SearchOptions sopts;
    sopts.root_tol = args.tol;
    sopts.extended_digits = args.digits;

    struct Row {
        std::int64_t k = 0;
        bool regular_regime_ok = true;
        int single_interval = -1;  // -1 n/a, 0 fail, 1 pass
        bool k_plus_1_excluded = false;
    };
    const std::int64_t count = args.k_max - args.k_min + 1;
    std::vector<Row> rows(static_cast<std::size_t>(count));

    detail::parallel_for(count, [&](std::int64_t i) {
        const std::int64_t k = args.k_min + i;
        Row& row = rows[static_cast<std::size_t>(i)];
        row.k = k;

        // (a) mode at lambda = n/kappa equals n - floor((3k+5)/8) for ten
        //     sampled n in the regular regime n >= 2*kappa.
        const std::int64_t kappa = k * (k + 1) / 2;
        const std::int64_t stride = std::max<std::int64_t>(1, kappa / 3);
        for (int j = 0; j < 10; ++j) {
            if (!check_mode_conjecture(k, 2 * kappa + j * stride, sopts)) {
                row.regular_regime_ok = false;
                break;
            }
        }

        // (b) for k >= 42 the excluded set is the single interval
        //     [1, m_hat - 1]; (c) k+1 is excluded for every k.
        const ExcludedReport report = excluded_values(k, {}, sopts);
        row.k_plus_1_excluded = false;
        for (const auto& [lo, hi] : report.intervals)
            if (lo <= k + 1 && k + 1 <= hi) row.k_plus_1_excluded = true;
        if (k >= 42) {
            const DoubleModeResult dm = first_double_mode(k, sopts);
            row.single_interval =
                (report.intervals.size() == 1 && report.intervals.front().first == 1 &&
                 report.intervals.front().second == dm.m_hat - 1)
                    ? 1
                    : 0;
        }
    });

    bool any_failure = false;
    rep::Table table;
    table.columns = {"k", "regular_regime_mode", "single_interval", "k_plus_1_excluded"};
    for (const Row& row : rows) {
        any_failure = any_failure || !row.regular_regime_ok || row.single_interval == 0 ||
                      !row.k_plus_1_excluded;
        table.add_row({rep::cell_int(row.k),
                       rep::cell_text(row.regular_regime_ok ? "pass" : "fail"),
                       rep::cell_text(row.single_interval < 0 ? "n/a"
                                      : row.single_interval   ? "pass"
                                                              : "fail"),
                       rep::cell_text(row.k_plus_1_excluded ? "pass" : "fail")});
    }
    emit(table, args.out);
    return any_failure ? kExitConjecture : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Poisson distribution of order k: pmf, modes, double modes, excluded values"};
    app.require_subcommand(1);

    PmfArgs pmf_args;
    CLI::App* pmf_cmd = app.add_subcommand("pmf", "Emit n, pmf(n), h(n) rows for one (k, lambda)");
    pmf_cmd->add_option("--k", pmf_args.k, "Order k (>= 1)")->required();
    pmf_cmd->add_option("--lambda", pmf_args.lambda, "Rate lambda (> 0)")->required();
    std::int64_t pmf_n_max = -1;
    pmf_cmd->add_option("--n-max", pmf_n_max, "Largest n (default: mean + 20 sigma)");
    add_output_flags(pmf_cmd, &pmf_args.out);

    SweepArgs dm_args;
    CLI::App* dm_cmd =
        app.add_subcommand("double-mode", "First double mode (m_hat, lambda_hat) per k");
    dm_cmd->add_option("--k-min", dm_args.k_min, "Smallest k (>= 2)")->required();
    dm_cmd->add_option("--k-max", dm_args.k_max, "Largest k")->required();
    dm_cmd->add_option("--tol", dm_args.tol, "Root bracket tolerance")->capture_default_str();
    add_output_flags(dm_cmd, &dm_args.out);

    ExcludedArgs ex_args;
    CLI::App* ex_cmd = app.add_subcommand("excluded", "Excluded mode values for one k");
    ex_cmd->add_option("--k", ex_args.k, "Order k (>= 2)")->required();
    std::int64_t ex_n_upper = -1;
    ex_cmd->add_option("--n-upper", ex_n_upper, "Search ceiling (default: regular-regime bound)");
    ex_cmd->add_option("--tol", ex_args.tol, "Transition localization tolerance")
        ->capture_default_str();
    add_output_flags(ex_cmd, &ex_args.out);

    TablesArgs tb_args;
    CLI::App* tb_cmd = app.add_subcommand("tables", "Excluded-value table blocks for a k range");
    tb_cmd->add_option("--k-min", tb_args.k_min, "Smallest k (default 2)")->capture_default_str();
    tb_cmd->add_option("--k-max", tb_args.k_max, "Largest k (default 41)")->capture_default_str();
    tb_cmd->add_option("--tol", tb_args.tol, "Transition localization tolerance")
        ->capture_default_str();
    add_output_flags(tb_cmd, &tb_args.out);

    FitArgs fit_args;
    CLI::App* fit_cmd = app.add_subcommand("fit", "Least-squares fit over a CSV column pair");
    fit_cmd->add_option("--input", fit_args.input, "Input CSV file")->required();
    fit_cmd->add_option("--model", fit_args.model, "powerlaw or linear")
        ->check(CLI::IsMember({"powerlaw", "linear"}))
        ->capture_default_str();
    fit_cmd->add_option("--x", fit_args.x_col, "Abscissa column name")->capture_default_str();
    fit_cmd->add_option("--y", fit_args.y_col, "Ordinate column name")->capture_default_str();
    add_output_flags(fit_cmd, &fit_args.out);

    ConjectureArgs cj_args;
    CLI::App* cj_cmd =
        app.add_subcommand("conjectures", "Check the numerical conjectures over a k range");
    cj_cmd->add_option("--k-min", cj_args.k_min, "Smallest k (>= 2)")->required();
    cj_cmd->add_option("--k-max", cj_args.k_max, "Largest k")->required();
    cj_cmd->add_option("--tol", cj_args.tol, "Root bracket tolerance")->capture_default_str();
    cj_cmd->add_option("--digits", cj_args.digits, "Extended-precision decimal digits")
        ->capture_default_str();
    add_output_flags(cj_cmd, &cj_args.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (pmf_cmd->parsed()) {
            if (pmf_n_max >= 0) pmf_args.n_max = pmf_n_max;
            return run_pmf(pmf_args);
        }
        if (dm_cmd->parsed()) return run_double_mode(dm_args);
        if (ex_cmd->parsed()) {
            if (ex_n_upper >= 0) ex_args.n_upper = ex_n_upper;
            return run_excluded(ex_args);
        }
        if (tb_cmd->parsed()) return run_tables(tb_args);
        if (fit_cmd->parsed()) return run_fit(fit_args);
        if (cj_cmd->parsed()) return run_conjectures(cj_args);
    } catch (const InvalidParamsError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UnsupportedRangeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const PrecisionLossError& e) {
        std::cerr << "precision error: " << e.what() << "\n";
        return kExitPrecision;
    } catch (const DataIntegrityError& e) {
        std::cerr << "data integrity error: " << e.what() << "\n";
        return kExitPrecision;
    } catch (const Error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
