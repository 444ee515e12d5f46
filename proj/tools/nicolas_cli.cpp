// Command-line surface for the Nicolas-inequality verification toolkit:
// configures sweeps and diagnostics, writes CSV/JSON reports, emits gnuplot
// scripts, and manages sweep checkpoints. Summary goes to stdout, data to
// the report file.

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nicolas/checkpoint.hpp"
#include "nicolas/constants.hpp"
#include "nicolas/errors.hpp"
#include "nicolas/functions.hpp"
#include "nicolas/report.hpp"
#include "nicolas/sieve.hpp"
#include "nicolas/theta_mertens.hpp"
#include "nicolas/verify.hpp"

namespace {

using namespace nicolas;

struct CommonOptions {
    std::string output;
    std::string format = "csv";
    std::string precision = "standard";
    bool emit_plot = false;
};

ReportFormat report_format(const CommonOptions& common) {
    return common.format == "json" ? ReportFormat::json : ReportFormat::csv;
}

bool extended(const CommonOptions& common) { return common.precision == "extended"; }

std::filesystem::path resolve_output(const CommonOptions& common, Command cmd) {
    if (!common.output.empty()) return common.output;
    const char* dir = std::getenv("NICOLAS_OUT_DIR");
    const std::filesystem::path base = (dir && *dir) ? dir : ".";
    return base / (std::string(command_name(cmd)) +
                   (report_format(common) == ReportFormat::csv ? ".csv" : ".json"));
}

// Opens the report, runs `fill(writer)`, then emits the plot script when
// requested. Returns the report path for the summary line.
template <typename Fill>
std::filesystem::path write_report(const CommonOptions& common, Command cmd, Fill&& fill) {
    if (common.emit_plot && report_format(common) != ReportFormat::csv)
        throw std::invalid_argument("--emit-plot requires --format csv");
    std::filesystem::path path = resolve_output(common, cmd);
    {
        ReportWriter writer(path, report_format(common), report_columns(cmd));
        fill(writer);
        writer.finish();
    }
    if (common.emit_plot) {
        std::filesystem::path script = path;
        script += ".gp";
        emit_plot_script(path, cmd, script);
    }
    return path;
}

void add_common_options(CLI::App* cmd, CommonOptions& common) {
    cmd->add_option("-o,--output", common.output,
                    "Report file (default: $NICOLAS_OUT_DIR/<command>.<format>)");
    cmd->add_option("--format", common.format, "Report format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--precision", common.precision, "Floating-point backend")
        ->check(CLI::IsMember({"standard", "extended"}))
        ->capture_default_str();
    cmd->add_flag("--emit-plot", common.emit_plot, "Also write a gnuplot script (CSV only)");
}

// ---------------------------------------------------------------------- sweep

struct SweepArgs {
    std::uint64_t n_max = 1000;
    std::uint64_t stride = 1;
    std::string checkpoint;
    std::uint64_t segment_size = SieveConfig{}.segment_size;
};

template <typename Real>
void run_sweep(const SweepArgs& args, const CommonOptions& common) {
    if (!args.checkpoint.empty() && extended(common))
        throw std::invalid_argument("sweep: checkpoints require --precision standard");

    SieveConfig cfg;
    cfg.segment_size = args.segment_size;
    ThetaMertensState<Real> state;
    SweepOptions opt;
    opt.n_max = args.n_max;
    opt.stride = args.stride;

    if (!args.checkpoint.empty() && std::filesystem::exists(args.checkpoint)) {
        const Checkpoint ck = read_checkpoint_file(args.checkpoint);
        if (ck.n >= args.n_max)
            throw std::invalid_argument("sweep: checkpoint is already at n=" +
                                        std::to_string(ck.n) + ", nothing to do");
        cfg.start_checkpoint = ck;
        if constexpr (std::is_same_v<Real, double>) state = load_checkpoint(ck);
        if (ck.min_margin) opt.initial_min_margin = *ck.min_margin;
        if (ck.min_margin_n) opt.initial_min_margin_n = *ck.min_margin_n;
    }

    PrimeStream primes(cfg);
    SweepSummary summary;
    const auto path = write_report(common, Command::sweep, [&](ReportWriter& w) {
        summary = nicolas_sweep<Real>(primes, state, opt, [&](const NicolasRecord& r) {
            w.cell(r.n).cell(r.p_n).cell(r.theta).cell(r.lhs).cell(r.margin).cell(r.q).cell(
                r.ratio_form_margin);
            w.end_row();
        });
    });

    if (!args.checkpoint.empty()) {
        if constexpr (std::is_same_v<Real, double>) {
            Checkpoint ck = save_checkpoint(state);
            ck.min_margin = summary.min_margin;
            ck.min_margin_n = summary.min_margin_n;
            write_checkpoint_file(ck, args.checkpoint);
        }
    }

    std::printf("sweep: min margin %.17g at n=%" PRIu64 " (n=1..%" PRIu64 ", %" PRIu64
                " rows, margin>0 %s, q>0 %s) -> %s\n",
                summary.min_margin, summary.min_margin_n, summary.n, summary.records,
                summary.all_margins_positive ? "yes" : "NO",
                summary.all_q_positive ? "yes" : "NO", path.string().c_str());
}

// ----------------------------------------------------------------------- qseq

struct QseqArgs {
    std::vector<std::uint64_t> ns;
};

template <typename Real>
void run_qseq(const QseqArgs& args, const CommonOptions& common) {
    std::vector<std::uint64_t> targets = args.ns;
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    if (targets.empty() || targets.front() < 1)
        throw std::invalid_argument("qseq: need at least one --n >= 1");

    PrimeStream primes{SieveConfig{}};
    ThetaMertensState<Real> state;
    std::vector<QValueT<Real>> rows;
    std::vector<std::uint64_t> row_p;
    rows.reserve(targets.size());
    row_p.reserve(targets.size());
    std::size_t next = 0;
    while (next < targets.size()) {
        auto block = primes.next_block();
        if (!block) throw std::logic_error("qseq: prime stream exhausted");
        for (const std::uint64_t p : block->primes) {
            state.fold_prime(p);
            if (next < targets.size() && state.n == targets[next]) {
                rows.push_back(q_from_state(state));
                row_p.push_back(state.p_n);
                ++next;
            }
        }
    }

    const auto path = write_report(common, Command::qseq, [&](ReportWriter& w) {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            w.cell(rows[i].n)
                .cell(row_p[i])
                .cell(static_cast<double>(rows[i].theta))
                .cell(static_cast<double>(rows[i].exponent))
                .cell(static_cast<double>(rows[i].q));
            w.end_row();
        }
    });
    std::printf("qseq: %zu rows, q at n=%" PRIu64 " is %.17g -> %s\n", rows.size(),
                rows.back().n, static_cast<double>(rows.back().q), path.string().c_str());
}

// --------------------------------------------------------------------- fsolve

struct FsolveArgs {
    std::vector<double> xs;
};

template <typename Real>
void run_fsolve(const FsolveArgs& args, const CommonOptions& common) {
    std::vector<double> xs = args.xs;
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    if (xs.empty()) throw std::invalid_argument("fsolve: need at least one --x");

    std::vector<FSolveResultT<Real>> rows;
    for (const double x : xs) rows.push_back(f_of(static_cast<Real>(x)));

    const auto path = write_report(common, Command::fsolve, [&](ReportWriter& w) {
        for (const auto& r : rows) {
            w.cell(static_cast<double>(r.x))
                .cell(static_cast<double>(r.f))
                .cell(static_cast<double>(r.residual))
                .cell(r.iterations);
            w.end_row();
        }
    });
    std::printf("fsolve: %zu rows, f(%.17g) = %.17g (residual %.3g, %d iterations) -> %s\n",
                rows.size(), static_cast<double>(rows.back().x),
                static_cast<double>(rows.back().f), static_cast<double>(rows.back().residual),
                rows.back().iterations, path.string().c_str());
}

// ---------------------------------------------------------------- diagnostics

struct DiagnosticsArgs {
    double x_min = 1e2;
    double x_max = 1e8;
    int per_decade = 1;
    std::vector<std::string> lemmas;
};

template <typename Real>
void run_diagnostics(const DiagnosticsArgs& args, const CommonOptions& common) {
    if (!(args.x_min > 1) || !(args.x_max >= args.x_min) || args.per_decade < 1)
        throw std::invalid_argument("diagnostics: need 1 < x-min <= x-max and per-decade >= 1");

    std::vector<LemmaId> which;
    if (args.lemmas.empty()) {
        which.assign(all_lemmas.begin(), all_lemmas.end());
    } else {
        for (const std::string& name : args.lemmas) {
            const auto id = lemma_from_name(name);
            if (!id) throw std::invalid_argument("diagnostics: unknown lemma id '" + name + "'");
            if (std::find(which.begin(), which.end(), *id) == which.end()) which.push_back(*id);
        }
    }

    // Geometric grid, per_decade points per factor of ten.
    std::vector<double> grid;
    const double step = std::pow(10.0, 1.0 / args.per_decade);
    for (double x = args.x_min; x <= args.x_max * (1 + 1e-12); x *= step) grid.push_back(x);

    const auto samples = lemma_residuals<Real>(grid, which);
    const auto path = write_report(common, Command::diagnostics, [&](ReportWriter& w) {
        for (const auto& s : samples) {
            w.cell(lemma_name(s.lemma)).cell(s.x).cell(s.residual);
            w.end_row();
        }
    });
    std::printf("diagnostics: %zu samples, %zu lemmas, x in [%.3g, %.3g] -> %s\n",
                samples.size(), which.size(), grid.front(), grid.back(),
                path.string().c_str());
}

// ------------------------------------------------------------------ crossover

struct CrossoverArgs {
    double lo = 2.718281828459045;
    double hi = 100;
    double tol = 1e-6;
};

template <typename Real>
void run_crossover(const CrossoverArgs& args, const CommonOptions& common) {
    const CrossoverResult result = gym_crossover_search<Real>(args.lo, args.hi, args.tol);
    const auto path = write_report(common, Command::crossover, [&](ReportWriter& w) {
        for (const auto& s : result.certificate) {
            w.cell(s.x).cell(s.residual);
            w.end_row();
        }
    });
    std::printf("crossover: x* = %.17g (E4(x*) = %.3g, E4 < 0 at %zu/%zu decade samples) -> %s\n",
                result.x_star, result.e4_at_x_star,
                static_cast<std::size_t>(result.certificate_all_negative
                                             ? result.certificate.size()
                                             : std::count_if(result.certificate.begin(),
                                                             result.certificate.end(),
                                                             [](const ResidualSample& s) {
                                                                 return s.residual < 0;
                                                             })),
                result.certificate.size(), path.string().c_str());
}

// ----------------------------------------------------------------- recurrence

struct RecurrenceArgs {
    std::uint64_t u_min = 2;
    std::uint64_t u_max = 1000;
};

template <typename Real>
void run_recurrence(const RecurrenceArgs& args, const CommonOptions& common) {
    RecurrenceSummary summary;
    const auto rows = recurrence_check_sweep<Real>(args.u_min, args.u_max, &summary);
    const auto path = write_report(common, Command::recurrence, [&](ReportWriter& w) {
        for (const auto& r : rows) {
            w.cell(r.u)
                .cell(r.direct_q_next)
                .cell(r.literal_rhs)
                .cell(r.simplified_rhs)
                .cell(r.residual_literal)
                .cell(r.residual_paths);
            w.end_row();
        }
    });
    std::printf("recurrence: u in [%" PRIu64 ", %" PRIu64
                "], max |direct-literal| = %.3g, max |literal-simplified| = %.3g -> %s\n",
                args.u_min, args.u_max, summary.max_abs_residual_literal,
                summary.max_abs_residual_paths, path.string().c_str());
}

// ------------------------------------------------------------------------ pnt

struct PntArgs {
    std::vector<std::uint64_t> ns{1000, 10000, 100000, 1000000};
};

template <typename Real>
void run_pnt(const PntArgs& args, const CommonOptions& common) {
    std::vector<std::uint64_t> grid = args.ns;
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    PntSummary summary;
    const auto rows = pnt_ratio_sweep<Real>(grid, &summary);
    const auto path = write_report(common, Command::pnt, [&](ReportWriter& w) {
        for (const auto& r : rows) {
            w.cell(r.n).cell(r.p_n).cell(r.theta).cell(r.ratio);
            w.end_row();
        }
    });
    std::printf("pnt: ratio at n=%" PRIu64
                " is %.17g, max |1-ratio| in top decade = %.3g -> %s\n",
                rows.back().n, summary.last_ratio, summary.max_abs_dev_top_decade,
                path.string().c_str());
}

// ----------------------------------------------------------------------- gaps

struct GapsArgs {
    std::vector<double> xs{1e3, 1e6};
    int iterate_steps = 3;
};

template <typename Real>
void run_gaps(const GapsArgs& args, const CommonOptions& common) {
    std::vector<double> grid = args.xs;
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<GapIterates> iterates;
    const auto rows = synth_gap_compare<Real>(grid, args.iterate_steps, &iterates);
    const auto path = write_report(common, Command::gaps, [&](ReportWriter& w) {
        for (const auto& r : rows) {
            w.cell(r.x).cell(r.mean_gap).cell(r.f_gap).cell(r.ratio);
            w.end_row();
        }
    });
    std::printf("gaps: ratio at x=%.17g is %.17g (mean gap %.17g, f gap %.17g) -> %s\n",
                rows.back().x, rows.back().ratio, rows.back().mean_gap, rows.back().f_gap,
                path.string().c_str());
    for (const auto& it : iterates) {
        std::printf("# iterate x=%.6g:", it.x);
        for (const double y : it.steps) std::printf(" %.10g", y);
        std::printf("\n");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nicolas inequality margin sweeps and companion diagnostics"};
    app.require_subcommand(1);

    SweepArgs sweep_args;
    CommonOptions sweep_common;
    CLI::App* sweep = app.add_subcommand("sweep", "Nicolas margin sweep over n = 1..n-max");
    sweep->add_option("--n-max", sweep_args.n_max, "Last prime index")->capture_default_str();
    sweep->add_option("--stride", sweep_args.stride, "Emit every stride-th index")
        ->capture_default_str();
    sweep->add_option("--checkpoint", sweep_args.checkpoint,
                      "Checkpoint file: resume from it if present, update it afterwards");
    sweep->add_option("--segment-size", sweep_args.segment_size, "Sieve segment size (integers)")
        ->capture_default_str();
    add_common_options(sweep, sweep_common);

    QseqArgs qseq_args;
    CommonOptions qseq_common;
    CLI::App* qseq = app.add_subcommand("qseq", "q offsets at chosen prime indices");
    qseq->add_option("--n", qseq_args.ns, "Prime index (repeatable)")->required();
    add_common_options(qseq, qseq_common);

    FsolveArgs fsolve_args;
    CommonOptions fsolve_common;
    CLI::App* fsolve = app.add_subcommand("fsolve", "Solve log(y)(1-1/y) = log(x)");
    fsolve->add_option("--x", fsolve_args.xs, "Abscissa (repeatable)")->required();
    add_common_options(fsolve, fsolve_common);

    DiagnosticsArgs diag_args;
    CommonOptions diag_common;
    CLI::App* diag = app.add_subcommand("diagnostics", "Limit-lemma residuals on a log grid");
    diag->add_option("--x-min", diag_args.x_min, "Grid start")->capture_default_str();
    diag->add_option("--x-max", diag_args.x_max, "Grid end")->capture_default_str();
    diag->add_option("--per-decade", diag_args.per_decade, "Grid points per decade")
        ->capture_default_str();
    diag->add_option("--lemma", diag_args.lemmas,
                     "Lemma id: L1-b, L1-f-plus, L1-f-minus, L2, L3, L4 (repeatable; "
                     "default all)");
    add_common_options(diag, diag_common);

    CrossoverArgs cross_args;
    CommonOptions cross_common;
    CLI::App* cross = app.add_subcommand("crossover", "Locate the sign change of f(x)-x-log(x)");
    cross->add_option("--lo", cross_args.lo, "Bracket start, E4 > 0")->capture_default_str();
    cross->add_option("--hi", cross_args.hi, "Bracket end, E4 < 0")->capture_default_str();
    cross->add_option("--tol", cross_args.tol, "Bracket width target")->capture_default_str();
    add_common_options(cross, cross_common);

    RecurrenceArgs rec_args;
    CommonOptions rec_common;
    CLI::App* rec = app.add_subcommand("recurrence", "q-recurrence residuals, three paths");
    rec->add_option("--u-min", rec_args.u_min, "First index (>= 2)")->capture_default_str();
    rec->add_option("--u-max", rec_args.u_max, "Last index")->capture_default_str();
    add_common_options(rec, rec_common);

    PntArgs pnt_args;
    CommonOptions pnt_common;
    CLI::App* pnt = app.add_subcommand("pnt", "theta(p_n)/p_n ratios");
    pnt->add_option("--n", pnt_args.ns, "Prime index (repeatable)")->capture_default_str();
    add_common_options(pnt, pnt_common);

    GapsArgs gaps_args;
    CommonOptions gaps_common;
    CLI::App* gaps = app.add_subcommand("gaps", "Mean prime gap below x vs f(x)-x");
    gaps->add_option("--x", gaps_args.xs, "Cutoff (repeatable, each >= 10)")
        ->capture_default_str();
    gaps->add_option("--iterate-steps", gaps_args.iterate_steps, "f-iteration steps to print")
        ->capture_default_str();
    add_common_options(gaps, gaps_common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        constants::self_check<double>();
        constants::self_check<long double>();

        const auto dispatch = [](const CommonOptions& common, auto&& run_standard,
                                 auto&& run_extended) {
            if (extended(common))
                run_extended();
            else
                run_standard();
        };

        if (*sweep)
            dispatch(
                sweep_common, [&] { run_sweep<double>(sweep_args, sweep_common); },
                [&] { run_sweep<long double>(sweep_args, sweep_common); });
        else if (*qseq)
            dispatch(
                qseq_common, [&] { run_qseq<double>(qseq_args, qseq_common); },
                [&] { run_qseq<long double>(qseq_args, qseq_common); });
        else if (*fsolve)
            dispatch(
                fsolve_common, [&] { run_fsolve<double>(fsolve_args, fsolve_common); },
                [&] { run_fsolve<long double>(fsolve_args, fsolve_common); });
        else if (*diag)
            dispatch(
                diag_common, [&] { run_diagnostics<double>(diag_args, diag_common); },
                [&] { run_diagnostics<long double>(diag_args, diag_common); });
        else if (*cross)
            dispatch(
                cross_common, [&] { run_crossover<double>(cross_args, cross_common); },
                [&] { run_crossover<long double>(cross_args, cross_common); });
        else if (*rec)
            dispatch(
                rec_common, [&] { run_recurrence<double>(rec_args, rec_common); },
                [&] { run_recurrence<long double>(rec_args, rec_common); });
        else if (*pnt)
            dispatch(
                pnt_common, [&] { run_pnt<double>(pnt_args, pnt_common); },
                [&] { run_pnt<long double>(pnt_args, pnt_common); });
        else if (*gaps)
            dispatch(
                gaps_common, [&] { run_gaps<double>(gaps_args, gaps_common); },
                [&] { run_gaps<long double>(gaps_args, gaps_common); });
        return 0;
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
