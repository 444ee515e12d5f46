#pragma once

#include <stdexcept>
#include <string>

namespace nicolas {

// File-level failures (missing, unreadable, unwritable). CLI maps these to
// exit status 3; everything else derived from std::exception maps to 2.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Checkpoint record with an unsupported format_version.
struct checkpoint_version_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Checkpoint record that cannot be parsed.
struct checkpoint_corrupt_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Root solver failed to reach its residual target.
struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace nicolas
