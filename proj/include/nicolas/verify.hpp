#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "nicolas/constants.hpp"
#include "nicolas/functions.hpp"
#include "nicolas/sieve.hpp"
#include "nicolas/theta_mertens.hpp"

namespace nicolas {

// ---------------------------------------------------------------------------
// Nicolas margin sweep
// ---------------------------------------------------------------------------

// Per-index evidence for the inequality log(theta(p_n)) * prod(1-1/p_j)
// < e^-gamma. margin is the distance from the bound (positive = inequality
// holds); q is the equivalent offset form, positive exactly when margin is;
// ratio_form_margin restates the primorial form -mertens_log - gamma -
// log(log(theta)), defined only once theta > 1 (NaN at n = 1).
struct NicolasRecord {
    std::uint64_t n = 0;
    std::uint64_t p_n = 0;
    double theta = 0;
    double lhs = 0;
    double margin = 0;
    double q = 0;
    double ratio_form_margin = std::numeric_limits<double>::quiet_NaN();
};

struct SweepOptions {
    std::uint64_t n_max = 0;
    std::uint64_t stride = 1;
    // Running-minimum seed, carried across checkpointed stages so that a
    // resumed sweep emits exactly the rows a single-shot sweep would.
    double initial_min_margin = std::numeric_limits<double>::infinity();
    std::uint64_t initial_min_margin_n = 0;
};

struct SweepSummary {
    std::uint64_t records = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    std::uint64_t min_margin_n = 0;
    std::uint64_t n = 0; // final index reached
    std::uint64_t p_n = 0;
    bool all_margins_positive = true; // over the indices this run processed
    bool all_q_positive = true;
};

// Folds primes through `state` up to n_max, emitting a NicolasRecord at
// every stride-th index and at every index whose margin is a new running
// minimum. `primes` must continue exactly where `state` stops (both fresh,
// or both built from the same checkpoint); a mismatch surfaces as the
// accumulator's index-gap error.
template <typename Real = double, typename Emit>
SweepSummary nicolas_sweep(PrimeStream& primes, ThetaMertensState<Real>& state,
                           const SweepOptions& opt, Emit&& emit) {
    if (opt.n_max < 1) throw std::invalid_argument("nicolas_sweep: n_max must be >= 1");
    if (opt.stride < 1) throw std::invalid_argument("nicolas_sweep: stride must be >= 1");
    if (state.n >= opt.n_max)
        throw std::invalid_argument("nicolas_sweep: state is already at or past n_max");

    SweepSummary summary;
    summary.min_margin = opt.initial_min_margin;
    summary.min_margin_n = opt.initial_min_margin_n;

    std::uint64_t expected_index = state.n + 1;
    while (state.n < opt.n_max) {
        auto block = primes.next_block();
        if (!block) break; // bounded stream ran out before n_max
        if (block->first_index != expected_index)
            throw std::invalid_argument("nicolas_sweep: prime stream does not continue the state");
        for (const std::uint64_t p : block->primes) {
            if (state.n >= opt.n_max) break;
            state.fold_prime(p);
            ++expected_index;

            const QValueT<Real> qv = q_from_state(state);
            const Real theta = qv.theta;
            const Real mertens = state.mertens_log.value();
            const Real log_theta = std::log(theta);
            const Real lhs = log_theta * std::exp(mertens);
            const Real margin = constants::exp_neg_gamma_v<Real> - lhs;

            NicolasRecord rec;
            rec.n = state.n;
            rec.p_n = state.p_n;
            rec.theta = static_cast<double>(theta);
            rec.lhs = static_cast<double>(lhs);
            rec.margin = static_cast<double>(margin);
            rec.q = static_cast<double>(qv.q);
            if (theta > 1)
                rec.ratio_form_margin = static_cast<double>(
                    -mertens - constants::gamma_v<Real> - std::log(log_theta));

            summary.all_margins_positive &= rec.margin > 0;
            summary.all_q_positive &= rec.q > 0;
            const bool new_min = rec.margin < summary.min_margin;
            if (new_min) {
                summary.min_margin = rec.margin;
                summary.min_margin_n = rec.n;
            }
            if (new_min || rec.n % opt.stride == 0) {
                emit(rec);
                ++summary.records;
            }
        }
    }
    summary.n = state.n;
    summary.p_n = state.p_n;
    return summary;
}

// ---------------------------------------------------------------------------
// Lemma residual diagnostics
// ---------------------------------------------------------------------------

// The tracked limit expressions, all of which the asymptotics claim tend
// to zero except L1-f-minus (kept as printed; it tracks -2 log x):
//   L1-b       x^(1+1/b_x) - x - log x
//   L1-f-plus  x^(1+1/(f(x)-1)) - x - log x
//   L1-f-minus x^(1-1/(f(x)-1)) - x - log x
//   L2         x(x log(1+log(x)/x) - log x) + log^2(x)/2
//   L3         log(x)/2 - b_x + x
//   L4         f(x) - x - log x
enum class LemmaId { L1B, L1FPlus, L1FMinus, L2, L3, L4 };

inline constexpr std::array<LemmaId, 6> all_lemmas{LemmaId::L1B,     LemmaId::L1FPlus,
                                                   LemmaId::L1FMinus, LemmaId::L2,
                                                   LemmaId::L3,       LemmaId::L4};

std::string_view lemma_name(LemmaId id);
std::optional<LemmaId> lemma_from_name(std::string_view name);

struct ResidualSample {
    LemmaId lemma;
    double x;
    double residual;
};

template <typename Real = double>
Real lemma_e1_residual(Real x, Real g) {
    if (!(x > Real(1))) throw std::domain_error("lemma_e1_residual: needs x > 1");
    return std::exp((1 + 1 / g) * std::log(x)) - x - std::log(x);
}

// L2 and L3 subtract near-equal quantities of size ~x at large x, so both
// are evaluated through s = r - log1p(r), r = log(x)/x, which isolates the
// small difference before any large term is formed.
template <typename Real = double>
Real lemma_e2_residual(Real x) {
    if (!(x > Real(1))) throw std::domain_error("lemma_e2_residual: needs x > 1");
    const Real log_x = std::log(x);
    const Real r = log_x / x;
    const Real s = r - std::log1p(r);
    return log_x * log_x / 2 - x * x * s;
}

template <typename Real = double>
Real lemma_e3_residual(Real x) {
    if (!(x > Real(1))) throw std::domain_error("lemma_e3_residual: needs x > 1");
    const Real log_x = std::log(x);
    const Real r = log_x / x;
    const Real ell = std::log1p(r);
    const Real s = r - ell;
    return log_x / 2 - x * s / ell; // x*s/ell == b_x - x
}

template <typename Real = double>
Real lemma_e4_residual(Real x) {
    if (!(x > Real(1))) throw std::domain_error("lemma_e4_residual: needs x > 1");
    return f_of(x).f - x - std::log(x);
}

template <typename Real = double>
Real lemma_residual(LemmaId id, Real x) {
    switch (id) {
        case LemmaId::L1B: return lemma_e1_residual(x, b_of(x));
        case LemmaId::L1FPlus: return lemma_e1_residual(x, f_of(x).f - 1);
        case LemmaId::L1FMinus: {
            const Real g = f_of(x).f - 1;
            return std::exp((1 - 1 / g) * std::log(x)) - x - std::log(x);
        }
        case LemmaId::L2: return lemma_e2_residual(x);
        case LemmaId::L3: return lemma_e3_residual(x);
        case LemmaId::L4: return lemma_e4_residual(x);
    }
    throw std::invalid_argument("lemma_residual: unknown lemma id");
}

// Evaluates the requested residuals over a strictly increasing grid.
// Samples whose evaluation leaves a lemma's domain are skipped rather than
// aborting the run.
template <typename Real = double>
std::vector<ResidualSample> lemma_residuals(std::span<const double> grid,
                                            std::span<const LemmaId> which) {
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("lemma_residuals: grid must be strictly increasing");
    std::vector<ResidualSample> samples;
    samples.reserve(grid.size() * which.size());
    for (const double x : grid) {
        for (const LemmaId id : which) {
            try {
                const Real r = lemma_residual<Real>(id, static_cast<Real>(x));
                if (std::isfinite(static_cast<double>(r)))
                    samples.push_back({id, x, static_cast<double>(r)});
            } catch (const std::domain_error&) {
            } catch (const convergence_error&) {
            }
        }
    }
    return samples;
}

// ---------------------------------------------------------------------------
// Crossover of f(x) against x + log(x)
// ---------------------------------------------------------------------------

struct CrossoverResult {
    double x_star = 0;
    double e4_at_x_star = 0;
    int iterations = 0;
    // Sampled sign certificate: L4 at decade points above x_star up to 1e6.
    // A sampled check, not a proof of "for all w > x_star".
    std::vector<ResidualSample> certificate;
    bool certificate_all_negative = true;
};

// Bisects f(x) - x - log(x) on [lo, hi]; requires a valid sign bracket
// E4(lo) > 0 > E4(hi).
template <typename Real = double>
CrossoverResult gym_crossover_search(double lo, double hi, double tol) {
    if (!(lo < hi) || !(tol > 0))
        throw std::invalid_argument("gym_crossover_search: need lo < hi and tol > 0");
    Real a = static_cast<Real>(lo);
    Real b = static_cast<Real>(hi);
    const Real fa = lemma_e4_residual(a);
    const Real fb = lemma_e4_residual(b);
    if (!(fa > 0) || !(fb < 0))
        throw std::invalid_argument(
            "gym_crossover_search: bracket invalid, need E4(lo) > 0 > E4(hi)");

    CrossoverResult result;
    while (static_cast<double>(b - a) > tol) {
        const Real mid = a + (b - a) / 2;
        if (mid <= a || mid >= b) break;
        ++result.iterations;
        if (lemma_e4_residual(mid) > 0)
            a = mid;
        else
            b = mid;
    }
    const Real x_star = a + (b - a) / 2;
    result.x_star = static_cast<double>(x_star);
    result.e4_at_x_star = static_cast<double>(lemma_e4_residual(x_star));
    for (double x = 10; x <= 1e6; x *= 10) {
        if (x <= result.x_star) continue;
        const double e4 = static_cast<double>(lemma_e4_residual(static_cast<Real>(x)));
        result.certificate.push_back({LemmaId::L4, x, e4});
        result.certificate_all_negative &= e4 < 0;
    }
    return result;
}

// ---------------------------------------------------------------------------
// q-recurrence check
// ---------------------------------------------------------------------------

struct RecurrenceResidual {
    std::uint64_t u = 0;
    double direct_q_next = 0;   // q at n = u+1 straight from the definition
    double literal_rhs = 0;     // recurrence as printed, via the f-solver
    double simplified_rhs = 0;  // algebraically reduced form
    double residual_literal = 0; // direct - literal
    double residual_paths = 0;   // literal - simplified
};

struct RecurrenceSummary {
    double max_abs_residual_literal = 0;
    double max_abs_residual_paths = 0;
};

// For each u in [u_min, u_max]: q_{u+1} three ways. u >= 2 because the
// literal form takes a base-theta(p_u) logarithm.
template <typename Real = double>
std::vector<RecurrenceResidual> recurrence_check_sweep(std::uint64_t u_min, std::uint64_t u_max,
                                                       RecurrenceSummary* summary = nullptr) {
    if (u_min < 2) throw std::invalid_argument("recurrence_check_sweep: u_min must be >= 2");
    if (u_max < u_min) throw std::invalid_argument("recurrence_check_sweep: empty u range");

    PrimeStream primes{SieveConfig{}};
    ThetaMertensState<Real> state;
    PrimeBlock block;
    std::size_t pos = 0;
    const auto next_prime = [&]() -> std::uint64_t {
        if (pos == block.primes.size()) {
            auto next = primes.next_block();
            if (!next) throw std::logic_error("recurrence_check_sweep: prime stream exhausted");
            block = std::move(*next);
            pos = 0;
        }
        return block.primes[pos++];
    };

    while (state.n < u_min) state.fold_prime(next_prime());

    std::vector<RecurrenceResidual> rows;
    rows.reserve(u_max - u_min + 1);
    RecurrenceSummary acc;
    for (std::uint64_t u = u_min; u <= u_max; ++u) {
        const QValueT<Real> qu = q_from_state(state);
        const std::uint64_t p_next = next_prime();

        RecurrenceResidual row;
        row.u = u;
        row.literal_rhs = static_cast<double>(recurrence_rhs_literal(state, qu.q, p_next));
        row.simplified_rhs = static_cast<double>(recurrence_rhs_simplified(
            qu.theta, qu.q, p_next, std::log(static_cast<Real>(p_next))));

        state.fold_prime(p_next);
        row.direct_q_next = static_cast<double>(q_from_state(state).q);
        row.residual_literal = row.direct_q_next - row.literal_rhs;
        row.residual_paths = row.literal_rhs - row.simplified_rhs;
        acc.max_abs_residual_literal =
            std::max(acc.max_abs_residual_literal, std::abs(row.residual_literal));
        acc.max_abs_residual_paths =
            std::max(acc.max_abs_residual_paths, std::abs(row.residual_paths));
        rows.push_back(row);
    }
    if (summary) *summary = acc;
    return rows;
}

// ---------------------------------------------------------------------------
// Prime Number Theorem ratio sweep
// ---------------------------------------------------------------------------

struct PntRatio {
    std::uint64_t n = 0;
    std::uint64_t p_n = 0;
    double theta = 0;
    double ratio = 0; // theta(p_n) / p_n
};

struct PntSummary {
    double last_ratio = 0;
    // max |1 - ratio| among grid points in the top decade [n_max/10, n_max]
    double max_abs_dev_top_decade = 0;
};

template <typename Real = double>
std::vector<PntRatio> pnt_ratio_sweep(std::span<const std::uint64_t> n_grid,
                                      PntSummary* summary = nullptr) {
    if (n_grid.empty()) throw std::invalid_argument("pnt_ratio_sweep: empty grid");
    for (std::size_t i = 0; i < n_grid.size(); ++i)
        if (n_grid[i] < 1 || (i > 0 && n_grid[i] <= n_grid[i - 1]))
            throw std::invalid_argument("pnt_ratio_sweep: grid must be strictly increasing, >= 1");

    PrimeStream primes{SieveConfig{}};
    ThetaMertensState<Real> state;
    std::vector<PntRatio> rows;
    rows.reserve(n_grid.size());
    std::size_t next = 0;
    while (next < n_grid.size()) {
        auto block = primes.next_block();
        if (!block) throw std::logic_error("pnt_ratio_sweep: prime stream exhausted");
        for (const std::uint64_t p : block->primes) {
            state.fold_prime(p);
            if (next < n_grid.size() && state.n == n_grid[next]) {
                const Real theta = state.theta.value();
                rows.push_back({state.n, state.p_n, static_cast<double>(theta),
                                static_cast<double>(theta / static_cast<Real>(state.p_n))});
                ++next;
            }
        }
        if (next == n_grid.size()) break;
    }
    if (summary) {
        summary->last_ratio = rows.back().ratio;
        summary->max_abs_dev_top_decade = 0;
        const std::uint64_t top = n_grid.back() / 10;
        for (const auto& row : rows)
            if (row.n >= top)
                summary->max_abs_dev_top_decade =
                    std::max(summary->max_abs_dev_top_decade, std::abs(1 - row.ratio));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Mean prime gap vs f(x) - x
// ---------------------------------------------------------------------------

struct GapComparison {
    double x = 0;        // cutoff
    double mean_gap = 0; // (p_pi(x) - 2) / (pi(x) - 1)
    double f_gap = 0;    // f(x) - x
    double ratio = 0;    // mean_gap / f_gap
};

// First steps of the f-iteration from each cutoff, for side-by-side
// inspection of synthetic vs real gaps.
struct GapIterates {
    double x = 0;
    std::vector<double> steps;
};

template <typename Real = double>
std::vector<GapComparison> synth_gap_compare(std::span<const double> x_grid, int iterate_steps = 3,
                                             std::vector<GapIterates>* iterates = nullptr) {
    if (x_grid.empty()) throw std::invalid_argument("synth_gap_compare: empty grid");
    for (std::size_t i = 0; i < x_grid.size(); ++i)
        if (!(x_grid[i] >= 10) || (i > 0 && !(x_grid[i] > x_grid[i - 1])))
            throw std::invalid_argument(
                "synth_gap_compare: grid must be strictly increasing, each x >= 10");

    SieveConfig cfg;
    cfg.limit = static_cast<std::uint64_t>(x_grid.back());
    PrimeStream primes{cfg};

    std::vector<GapComparison> rows(x_grid.size());
    std::uint64_t count = 0, last_prime = 0;
    std::size_t next = 0;
    const auto flush_upto = [&](double p_value) {
        while (next < x_grid.size() && x_grid[next] < p_value) {
            rows[next].x = x_grid[next];
            rows[next].mean_gap =
                static_cast<double>(last_prime - 2) / static_cast<double>(count - 1);
            ++next;
        }
    };
    while (auto block = primes.next_block()) {
        for (const std::uint64_t p : block->primes) {
            flush_upto(static_cast<double>(p));
            ++count;
            last_prime = p;
        }
    }
    flush_upto(std::numeric_limits<double>::infinity());

    for (auto& row : rows) {
        const Real fg = f_of(static_cast<Real>(row.x)).f - static_cast<Real>(row.x);
        row.f_gap = static_cast<double>(fg);
        row.ratio = row.mean_gap / row.f_gap;
    }
    if (iterates) {
        iterates->clear();
        for (const double x : x_grid) {
            GapIterates it;
            it.x = x;
            for (const Real y : iterate_f(static_cast<Real>(x), iterate_steps))
                it.steps.push_back(static_cast<double>(y));
            iterates->push_back(std::move(it));
        }
    }
    return rows;
}

} // namespace nicolas
