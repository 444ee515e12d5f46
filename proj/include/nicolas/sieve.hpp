#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nicolas/checkpoint.hpp"

namespace nicolas {

struct SieveConfig {
    // Integers covered per segment. Cache-sized by default: 1 MiB of odd
    // flags covers 2^21 integers.
    std::size_t segment_size = std::size_t{1} << 21;
    // Inclusive upper bound on prime values. Absent = unbounded streaming.
    std::optional<std::uint64_t> limit;
    // Resume point: streaming continues with the first prime above
    // start_checkpoint->p_n, carrying index start_checkpoint->n + 1.
    std::optional<Checkpoint> start_checkpoint;
};

// One ordered batch of primes. first_index is 1-based: first_index = n
// means primes.front() is the n-th prime. Consecutive blocks from a
// PrimeStream carry contiguous indices and partition the primes exactly.
struct PrimeBlock {
    std::uint64_t first_index = 1;
    std::vector<std::uint64_t> primes;
};

// Primes in [low, high), by segmented sieve with locally computed base
// primes. Pure function: distinct ranges may be sieved concurrently and
// reassembled in order by the caller.
std::vector<std::uint64_t> sieve_range(std::uint64_t low, std::uint64_t high);

// Ordered prime stream over one segmented sieve cursor. Blocks come out in
// increasing order, one segment at a time; next_block() returns nullopt
// once the configured limit is exhausted (never an empty block).
class PrimeStream {
public:
    // Throws std::invalid_argument if segment_size < 1024 or limit < 2.
    explicit PrimeStream(SieveConfig config);

    std::optional<PrimeBlock> next_block();

    const SieveConfig& config() const { return config_; }

private:
    SieveConfig config_;
    std::uint64_t next_value_; // first integer not yet sieved
    std::uint64_t next_index_; // 1-based index of the next prime to emit
    std::vector<std::uint64_t> base_; // odd base primes, ascending
    std::uint64_t base_limit_ = 1;    // base_ holds all odd primes <= base_limit_
    std::vector<std::uint8_t> flags_; // segment scratch, odd positions only
};

} // namespace nicolas
