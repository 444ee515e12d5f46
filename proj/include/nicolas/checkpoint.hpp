#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

namespace nicolas {

// Serialized accumulator state. The file format is a flat key/value text
// record, one field per line, in this order:
//
//   format_version 1
//   n <uint>
//   p_n <uint>
//   theta_sum <decimal %.17g> <hex %a>
//   theta_compensation <decimal> <hex>
//   mertens_sum <decimal> <hex>
//   mertens_compensation <decimal> <hex>
//   min_margin <decimal> <hex>        (optional, written by sweep resume)
//   min_margin_n <uint>               (optional)
//
// The decimal column is for reading; the hex column is authoritative and
// restores every double bit-exactly, compensation terms included.
struct Checkpoint {
    std::int32_t format_version = 1;
    std::uint64_t n = 0;
    std::uint64_t p_n = 0;
    double theta_sum = 0;
    double theta_compensation = 0;
    double mertens_sum = 0;
    double mertens_compensation = 0;

    // Sweep-resume extras: running minimum margin seen so far, and where.
    // Absent in checkpoints written outside a sweep.
    std::optional<double> min_margin;
    std::optional<std::uint64_t> min_margin_n;

    friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

inline constexpr std::int32_t checkpoint_format_version = 1;

// Throws io_error if the path cannot be written.
void write_checkpoint_file(const Checkpoint& ck, const std::filesystem::path& path);

// Throws io_error (unreadable), checkpoint_version_error (unsupported
// format_version) or checkpoint_corrupt_error (unparseable record).
Checkpoint read_checkpoint_file(const std::filesystem::path& path);

} // namespace nicolas
