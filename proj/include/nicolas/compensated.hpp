#pragma once

#ifdef __FAST_MATH__
#error "-ffast-math breaks compensated summation; build without it."
#endif

#include <cmath>

namespace nicolas {

// Neumaier-compensated accumulator. The running error term is kept
// separately so that value() = sum + compensation, and so that the pair
// can be serialized and restored bit-exactly. The accumulated error after
// folding a list stays below 4*u*sum(|term|) with u the unit roundoff,
// independent of the number of terms at any realistic length.
template <typename Real = double>
struct CompensatedSum {
    Real sum{0};
    Real compensation{0};

    void add(Real term) noexcept {
        const Real t = sum + term;
        if (std::abs(sum) >= std::abs(term))
            compensation += (sum - t) + term;
        else
            compensation += (term - t) + sum;
        sum = t;
    }

    Real value() const noexcept { return sum + compensation; }

    friend bool operator==(const CompensatedSum&, const CompensatedSum&) = default;
};

} // namespace nicolas
