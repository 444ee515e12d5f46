// Acceptance suite: every release criterion as an executable check, one
// PASS/FAIL line each. Runs all criteria by default; pass criterion numbers
// as arguments to run a subset. Exit status 0 iff everything passed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "nicolas/functions.hpp"
#include "nicolas/sieve.hpp"
#include "nicolas/theta_mertens.hpp"
#include "nicolas/verify.hpp"

using namespace nicolas;
namespace fs = std::filesystem;

namespace {

constexpr double kE = 2.718281828459045;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string format(const char* fmt, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    return buf;
}

int run_cli(const std::string& args, const fs::path& dir) {
    const std::string cmd = "cd '" + dir.string() + "' && '" + NICOLAS_CLI_PATH + "' " + args +
                            " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "nicolas_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

// Reads q from the single data row of a qseq CSV report.
double q_from_report(const fs::path& csv) {
    std::ifstream in(csv);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    const auto last_comma = row.find_last_of(',');
    return std::stod(row.substr(last_comma + 1));
}

// --------------------------------------------------------------------------

bool q_anchor(std::uint64_t n, double expected, std::string& detail) {
    const auto dir = scratch_dir();
    const auto t0 = std::chrono::steady_clock::now();
    const int code = run_cli(format("qseq --n %llu", static_cast<unsigned long long>(n)), dir);
    const double secs = seconds_since(t0);
    if (code != 0) {
        detail = format("qseq exited with %d", code);
        return false;
    }
    const double q = q_from_report(dir / "qseq.csv");
    fs::remove_all(dir);
    const double err = std::abs(q - expected);
    detail = format("q = %.9f, |q - %.3f| = %.2e (tol 5e-03), %.2fs (< 1s)", q, expected, err,
                    secs);
    return err <= 0.005 && secs < 1.0;
}

bool criterion_1(std::string& detail) { return q_anchor(10, 12.388, detail); }
bool criterion_2(std::string& detail) { return q_anchor(100, 53.275, detail); }

bool criterion_3(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    PrimeStream primes{SieveConfig{}};
    ThetaMertensState<double> state;
    SweepOptions opt;
    opt.n_max = 1'000'000;
    opt.stride = 100'000;
    const SweepSummary s = nicolas_sweep(primes, state, opt, [](const NicolasRecord&) {});
    const double secs = seconds_since(t0);
    detail = format("n=1..%llu: margin>0 %s, q>0 %s, min margin %.6e at n=%llu, %.1fs (< 60s)",
                    static_cast<unsigned long long>(s.n),
                    s.all_margins_positive ? "everywhere" : "VIOLATED",
                    s.all_q_positive ? "everywhere" : "VIOLATED", s.min_margin,
                    static_cast<unsigned long long>(s.min_margin_n), secs);
    return s.n == opt.n_max && s.all_margins_positive && s.all_q_positive && secs < 60.0;
}

bool criterion_4(std::string& detail) {
    const auto rows = recurrence_check_sweep(2, 10'000);
    double worst_literal = 0, worst_paths = 0;
    bool ok = true;
    for (const auto& r : rows) {
        const double scale = std::max(1.0, std::abs(r.direct_q_next));
        worst_literal = std::max(worst_literal, std::abs(r.residual_literal) / scale);
        worst_paths = std::max(worst_paths, std::abs(r.residual_paths) / scale);
        ok &= std::abs(r.residual_literal) < 1e-9 * scale;
        ok &= std::abs(r.residual_paths) < 1e-9 * scale;
    }
    detail = format("u=2..10000: max |direct-literal| %.2e rel, max |literal-simplified| %.2e "
                    "rel (tol 1e-09)",
                    worst_literal, worst_paths);
    return ok && rows.size() == 9'999;
}

bool criterion_5(std::string& detail) {
    if (f_of(1.0).f != 1.0) {
        detail = "f(1) != 1";
        return false;
    }
    bool ok = true;
    double worst = 0, prev_f = 1.0;
    int points = 0;
    const double step = std::pow(10.0, 0.25);
    for (double x = 2.0; x < 1.0000001e9; x = std::min(x * step, 1e9)) {
        const auto r = f_of(x);
        const double scaled = std::abs(r.residual) / std::max(1.0, std::abs(std::log(x)));
        worst = std::max(worst, scaled);
        ok &= scaled < 1e-12;
        ok &= r.f > prev_f;
        prev_f = r.f;
        ++points;
        if (x == 1e9) break;
    }
    detail = format("f(1)=1 exact; %d grid points in [2,1e9]: worst residual %.2e rel "
                    "(tol 1e-12), strictly increasing",
                    points, worst);
    return ok;
}

bool criterion_6(std::string& detail) {
    bool ok = true;
    double prev2 = 1e300, prev3 = 1e300, e2 = 0, e3 = 0;
    for (double x = 1e2; x <= 1.0000001e8; x *= 10) {
        e2 = std::abs(lemma_e2_residual(x));
        e3 = std::abs(lemma_e3_residual(x));
        ok &= e2 < prev2 && e3 < prev3;
        prev2 = e2;
        prev3 = e3;
    }
    ok &= e3 < 1e-4;
    const double l1b = std::abs(lemma_residual(LemmaId::L1B, 1e8));
    const double l1fp = std::abs(lemma_residual(LemmaId::L1FPlus, 1e8));
    ok &= l1b < 1e-4 && l1fp < 1e-4;
    detail = format("|E2|,|E3| decreasing over 1e2..1e8; |E3(1e8)| = %.2e (< 1e-4); "
                    "|L1-b(1e8)| = %.2e, |L1-f-plus(1e8)| = %.2e (< 1e-4)",
                    e3, l1b, l1fp);
    return ok;
}

bool criterion_7(std::string& detail) {
    const auto r = gym_crossover_search(kE, 100.0, 1e-6);
    const bool located = r.x_star > 6.5 && r.x_star < 7.0;
    const bool negative = r.certificate_all_negative && r.certificate.size() == 6;
    detail = format("x* = %.7f in (6.5, 7.0) at tol 1e-06; E4 < 0 at %zu/6 decade points "
                    "10..1e6",
                    r.x_star,
                    static_cast<std::size_t>(
                        std::count_if(r.certificate.begin(), r.certificate.end(),
                                      [](const ResidualSample& s) { return s.residual < 0; })));
    return located && negative;
}

bool criterion_8(std::string& detail) {
    const std::vector<std::uint64_t> grid{1'000, 10'000, 100'000, 1'000'000};
    const auto rows = pnt_ratio_sweep(grid);
    bool increasing = true;
    for (std::size_t i = 1; i < rows.size(); ++i) increasing &= rows[i].ratio > rows[i - 1].ratio;
    const double last = rows.back().ratio;
    detail = format("theta(p_n)/p_n = %.6f, %.6f, %.6f, %.6f over n=1e3..1e6; "
                    "last in (0.995, 1.0): %s",
                    rows[0].ratio, rows[1].ratio, rows[2].ratio, rows[3].ratio,
                    (last > 0.995 && last < 1.0) ? "yes" : "NO");
    return increasing && last > 0.995 && last < 1.0;
}

bool criterion_9(std::string& detail) {
    const std::vector<double> grid{1e3, 1e6};
    const auto rows = synth_gap_compare(grid, 0);
    const double r3 = rows[0].ratio, r6 = rows[1].ratio;
    detail = format("mean-gap/(f(x)-x) = %.6f at 1e3, %.6f at 1e6; 1e6 value in (0.90, 1.00) "
                    "and above 1e3 value",
                    r3, r6);
    return r6 > 0.90 && r6 < 1.00 && r6 > r3;
}

bool criterion_10(std::string& detail) {
    // checkpointed two-stage sweep == single shot, byte for byte
    const auto dir = scratch_dir();
    bool cli_ok = run_cli("sweep --n-max 2000 --stride 500 --output oneshot.csv", dir) == 0;
    cli_ok &= run_cli("sweep --n-max 1000 --stride 500 --checkpoint ck.txt --output s1.csv",
                      dir) == 0;
    cli_ok &= run_cli("sweep --n-max 2000 --stride 500 --checkpoint ck.txt --output s2.csv",
                      dir) == 0;
    bool bytes_equal = false;
    if (cli_ok) {
        const std::string stage2 = slurp(dir / "s2.csv");
        const std::string body = stage2.substr(stage2.find('\n') + 1);
        bytes_equal = slurp(dir / "s1.csv") + body == slurp(dir / "oneshot.csv");
    }
    fs::remove_all(dir);

    // block-size independence of the accumulators, bit-exact to n = 1e5
    PrimeStream primes{SieveConfig{}};
    std::vector<std::uint64_t> first;
    while (first.size() < 100'000) {
        auto block = primes.next_block();
        first.insert(first.end(), block->primes.begin(), block->primes.end());
    }
    first.resize(100'000);
    ThetaMertensState<double> one_by_one, chunked;
    for (const std::uint64_t p : first) one_by_one.fold_prime(p);
    for (std::size_t at = 0; at < first.size();) {
        const std::size_t take = std::min<std::size_t>(997, first.size() - at);
        chunked.extend(PrimeBlock{at + 1, {first.begin() + at, first.begin() + at + take}});
        at += take;
    }
    const bool blocks_equal = one_by_one == chunked;

    detail = format("two-stage sweep bytes %s one-shot; block sizes 1 vs 997 bit-exact to "
                    "n=1e5: %s",
                    bytes_equal ? "==" : "!=", blocks_equal ? "yes" : "NO");
    return cli_ok && bytes_equal && blocks_equal;
}

struct Criterion {
    int id;
    const char* label;
    std::function<bool(std::string&)> check;
};

} // namespace

int main(int argc, char** argv) {
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

    const std::vector<Criterion> criteria{
        {1, "q anchor at n=10 (12.388 +/- 0.005, < 1s)", criterion_1},
        {2, "q anchor at n=100 (53.275 +/- 0.005, < 1s)", criterion_2},
        {3, "Nicolas margin and q positive for all n <= 1e6", criterion_3},
        {4, "recurrence identity, three paths, u in 2..1e4", criterion_4},
        {5, "f-solver residual, exactness at 1, monotonicity", criterion_5},
        {6, "lemma residual decay across decades", criterion_6},
        {7, "f crossover located in (6.5, 7.0)", criterion_7},
        {8, "PNT ratio trend toward 1", criterion_8},
        {9, "mean gap vs f(x)-x agreement", criterion_9},
        {10, "checkpoint resume and block-size determinism", criterion_10},
    };

    bool all_ok = true;
    for (const auto& c : criteria) {
        if (!selected.empty() && !selected.count(c.id)) continue;
        std::string detail;
        bool ok = false;
        try {
            ok = c.check(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] %2d. %s: %s\n", ok ? "PASS" : "FAIL", c.id, c.label, detail.c_str());
        all_ok &= ok;
    }
    return all_ok ? 0 : 1;
}
