#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nicolas::constants {

// Euler-Mascheroni constant and e^-gamma. Every margin computed by this
// toolkit is a comparison against e^-gamma, so both values are pinned here
// and cross-checked: at start-up via self_check(), and in the test suite
// against the harmonic-sum definition sum(1/k) - log(m) with Euler-Maclaurin
// extrapolation.
template <typename Real = double>
inline constexpr Real gamma_v = Real(0.5772156649015328606065120900824024310422L);

template <typename Real = double>
inline constexpr Real exp_neg_gamma_v = Real(0.5614594835668851698241432147908807867657L);

inline constexpr double gamma = gamma_v<double>;
inline constexpr double exp_neg_gamma = exp_neg_gamma_v<double>;

// Verifies exp(-gamma) == exp_neg_gamma at working precision (a couple of
// ulps of slack for the libm exp). Throws std::logic_error on mismatch.
template <typename Real = double>
inline void self_check() {
    const Real computed = std::exp(-gamma_v<Real>);
    const Real stored = exp_neg_gamma_v<Real>;
    const Real tol = 4 * std::numeric_limits<Real>::epsilon() * stored;
    if (std::abs(computed - stored) > tol)
        throw std::logic_error("constants: exp(-gamma) does not match stored e^-gamma");
}

} // namespace nicolas::constants
