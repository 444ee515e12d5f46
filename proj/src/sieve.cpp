#include "nicolas/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nicolas {

namespace {

// Largest v with v*v <= x, safe at the top of the uint64 range.
std::uint64_t isqrt(std::uint64_t x) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
    while (r > 0 && r > x / r) --r;
    while ((r + 1) <= x / (r + 1)) ++r;
    return r;
}

// Odd primes <= limit by a plain odd-only sieve. Used for base primes,
// which never exceed sqrt of the streamed range.
std::vector<std::uint64_t> odd_primes_upto(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    if (limit < 3) return out;
    const std::size_t count = static_cast<std::size_t>((limit - 1) / 2); // odds 3,5,...
    std::vector<std::uint8_t> composite(count, 0);
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::uint64_t p = 2 * i + 3;
        if (p * p > limit) break;
        if (composite[i]) continue;
        for (std::uint64_t j = (p * p - 3) / 2; j < count; j += p)
            composite[static_cast<std::size_t>(j)] = 1;
    }
    for (std::size_t i = 0; i < count; ++i)
        if (!composite[i]) out.push_back(2 * i + 3);
    return out;
}

// Core segment sieve: appends primes in [low, high) to out, given odd base
// primes covering sqrt(high-1). flags is caller-owned scratch.
void append_primes_in_range(std::uint64_t low, std::uint64_t high,
                            const std::vector<std::uint64_t>& base,
                            std::vector<std::uint8_t>& flags,
                            std::vector<std::uint64_t>& out) {
    if (low < 2) low = 2;
    if (high <= low) return;
    if (low <= 2 && high > 2) out.push_back(2);

    // Odd candidates in [low, high).
    std::uint64_t first_odd = std::max<std::uint64_t>(low, 3);
    if (first_odd % 2 == 0) ++first_odd;
    if (first_odd >= high) return;
    const std::size_t n_odd = static_cast<std::size_t>((high - first_odd + 1) / 2);
    flags.assign(n_odd, 1);

    const std::uint64_t top = high - 1;
    for (std::uint64_t p : base) {
        if (p * p > top) break;
        std::uint64_t start = std::max(p * p, ((first_odd + p - 1) / p) * p);
        if (start % 2 == 0) start += p;
        for (std::uint64_t m = start; m < high; m += 2 * p)
            flags[static_cast<std::size_t>((m - first_odd) / 2)] = 0;
    }
    for (std::size_t i = 0; i < n_odd; ++i)
        if (flags[i]) out.push_back(first_odd + 2 * i);
}

} // namespace

std::vector<std::uint64_t> sieve_range(std::uint64_t low, std::uint64_t high) {
    std::vector<std::uint64_t> out;
    if (high <= low || high <= 2) return out;
    const std::vector<std::uint64_t> base = odd_primes_upto(isqrt(high - 1));
    std::vector<std::uint8_t> flags;
    append_primes_in_range(low, high, base, flags, out);
    return out;
}

PrimeStream::PrimeStream(SieveConfig config) : config_(config) {
    if (config_.segment_size < 1024)
        throw std::invalid_argument("PrimeStream: segment_size must be >= 1024");
    if (config_.limit && *config_.limit < 2)
        throw std::invalid_argument("PrimeStream: limit must be >= 2");
    if (config_.start_checkpoint) {
        next_value_ = config_.start_checkpoint->p_n + 1;
        next_index_ = config_.start_checkpoint->n + 1;
    } else {
        next_value_ = 2;
        next_index_ = 1;
    }
}

std::optional<PrimeBlock> PrimeStream::next_block() {
    constexpr auto unbounded = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t stop = config_.limit ? *config_.limit + 1 : unbounded;

    PrimeBlock block;
    block.first_index = next_index_;
    while (block.primes.empty()) {
        if (next_value_ >= stop) return std::nullopt;
        const std::uint64_t low = next_value_;
        const std::uint64_t step = std::min<std::uint64_t>(config_.segment_size, stop - low);
        const std::uint64_t high = low + step;
        const std::uint64_t need = isqrt(high - 1);
        if (need > base_limit_) {
            base_limit_ = std::max(need, base_limit_ * 2);
            base_ = odd_primes_upto(base_limit_);
        }
        append_primes_in_range(low, high, base_, flags_, block.primes);
        next_value_ = high;
    }
    next_index_ += block.primes.size();
    return block;
}

} // namespace nicolas
