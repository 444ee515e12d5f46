#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "nicolas/checkpoint.hpp"
#include "nicolas/compensated.hpp"
#include "nicolas/errors.hpp"
#include "nicolas/sieve.hpp"

namespace nicolas {

// Running pair (theta(p_n), sum log(1-1/p_k)) over the first n primes.
//
// theta is the Chebyshev sum of log p_k, i.e. log of the n-th primorial;
// mertens_log is the log of the Mertens product prod(1-1/p_k), i.e.
// -log(N_n/phi(N_n)). Keeping both in log space avoids big-integer
// arithmetic entirely. Keeping both compensated holds the accumulation
// error near one ulp at any n; the Nicolas margins being measured shrink
// toward zero (~4e-6 by n = 10^7), while naive summation error grows with n.
//
// Folding is strictly sequential and term-ordered, so the result is
// bit-identical however the prime stream is partitioned into blocks.
template <typename Real = double>
struct ThetaMertensState {
    std::uint64_t n = 0;
    std::uint64_t p_n = 0;
    CompensatedSum<Real> theta;
    CompensatedSum<Real> mertens_log;

    // Inner fold: p becomes prime number n+1. log(1-1/p) goes through
    // log1p, which keeps the term accurate when 1/p is tiny.
    void fold_prime(std::uint64_t p) {
        const Real rp = static_cast<Real>(p);
        theta.add(std::log(rp));
        mertens_log.add(std::log1p(Real(-1) / rp));
        p_n = p;
        ++n;
    }

    // Folds one block. The block must continue the state exactly
    // (block.first_index == n + 1), else std::invalid_argument: a gap means
    // the sieve and the accumulator have desynchronized.
    void extend(const PrimeBlock& block) {
        if (block.first_index != n + 1)
            throw std::invalid_argument(
                "ThetaMertensState::extend: block starts at index " +
                std::to_string(block.first_index) + ", state expects " +
                std::to_string(n + 1));
        for (const std::uint64_t p : block.primes) fold_prime(p);
    }

    friend bool operator==(const ThetaMertensState&, const ThetaMertensState&) = default;
};

// Checkpointing is defined for the standard (double) backend; the file
// format carries exactly one bit pattern per field.
inline Checkpoint save_checkpoint(const ThetaMertensState<double>& state) {
    Checkpoint ck;
    ck.format_version = checkpoint_format_version;
    ck.n = state.n;
    ck.p_n = state.p_n;
    ck.theta_sum = state.theta.sum;
    ck.theta_compensation = state.theta.compensation;
    ck.mertens_sum = state.mertens_log.sum;
    ck.mertens_compensation = state.mertens_log.compensation;
    return ck;
}

inline ThetaMertensState<double> load_checkpoint(const Checkpoint& ck) {
    if (ck.format_version != checkpoint_format_version)
        throw checkpoint_version_error(
            "checkpoint format_version " + std::to_string(ck.format_version) +
            " not supported (expected " + std::to_string(checkpoint_format_version) + ")");
    ThetaMertensState<double> state;
    state.n = ck.n;
    state.p_n = ck.p_n;
    state.theta.sum = ck.theta_sum;
    state.theta.compensation = ck.theta_compensation;
    state.mertens_log.sum = ck.mertens_sum;
    state.mertens_log.compensation = ck.mertens_compensation;
    return state;
}

} // namespace nicolas
