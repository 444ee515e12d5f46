#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "nicolas/constants.hpp"
#include "nicolas/errors.hpp"
#include "nicolas/theta_mertens.hpp"

namespace nicolas {

template <typename Real = double>
struct FSolveResultT {
    Real x;
    Real f;        // the unique y > 1 with log(y)*(1-1/y) = log(x)
    Real residual; // log(f)*(1-1/f) - log(x) at the accepted root
    int iterations;
};
using FSolveResult = FSolveResultT<double>;

// Solves log(y)*(1-1/y) = log(x) for y.
//
// The left side is strictly increasing on (1, inf), so the root is unique
// there. Safeguarded Newton inside a sign bracket, run to machine
// convergence (the downstream recurrence checks need the residual at ulp
// scale, far below the 1e-12 acceptance tolerance). Bracket: [x, x+log(x)+1]
// for x >= 7, since x < f(x) and f(x) < x + log(x) past the crossover near
// 6.83; [1+eps, 2x+2] below, where the asymptotic bound is not yet valid.
//
// x = 1 returns f = 1 exactly (both factors vanish). x < 1 has no solution
// (the left side is nonnegative for y > 0) and throws std::domain_error.
template <typename Real = double>
FSolveResultT<Real> f_of(Real x) {
    if (std::isnan(x) || x < Real(1))
        throw std::domain_error("f_of: no y satisfies log(y)(1-1/y) = log(x) for x < 1");
    if (x == Real(1)) return {x, Real(1), Real(0), 0};

    const Real log_x = std::log(x);
    const auto g = [log_x](Real y) { return std::log(y) * (1 - 1 / y) - log_x; };

    Real lo, hi, y;
    if (x >= Real(7)) {
        lo = x;
        hi = x + log_x + 1;
        y = x + log_x - log_x * log_x / (2 * x);
    } else {
        lo = 1 + std::numeric_limits<Real>::epsilon();
        hi = 2 * x + 2;
        y = x + log_x;
    }
    while (g(hi) < 0) hi *= 2;
    if (y <= lo || y >= hi) y = lo + (hi - lo) / 2;

    int iterations = 0;
    for (int guard = 0; guard < 200; ++guard) {
        const Real gy = g(y);
        ++iterations;
        if (gy == 0) break;
        if (gy < 0)
            lo = y;
        else
            hi = y;
        const Real slope = (y - 1 + std::log(y)) / (y * y);
        Real next = y - gy / slope;
        if (!(next > lo && next < hi)) next = lo + (hi - lo) / 2;
        if (next == y) break;
        y = next;
    }

    const Real residual = g(y);
    const Real tol = Real(1e-12) * std::max<Real>(1, std::abs(log_x));
    if (std::abs(residual) > tol)
        throw convergence_error("f_of: residual above tolerance after max iterations");
    return {x, y, residual, iterations};
}

// b_x: the number with x^(1 + 1/b_x) = x + log(x). Closed form
// log(x)/log(1 + log(x)/x), evaluated through log1p.
template <typename Real = double>
Real b_of(Real x) {
    if (!(x > Real(1)))
        throw std::domain_error("b_of: domain is x > 1");
    const Real log_x = std::log(x);
    return log_x / std::log1p(log_x / x);
}

// h(x) = e^(f(x) - x), i.e. the number with x + log(h(x)) = f(x).
template <typename Real = double>
Real h_of(Real x) {
    return std::exp(f_of(x).f - x);
}

template <typename Real = double>
struct QValueT {
    std::uint64_t n;
    Real theta;    // theta(p_n)
    Real q;        // offset with log(theta+q) * prod(1-1/p_k) = e^-gamma
    Real exponent; // e^-gamma * exp(-mertens_log); theta + q = exp(exponent)
};
using QValue = QValueT<double>;

// q at theta(p_n), with the product running over the first n primes (the
// reading that reproduces the reference values ~12.388 at n=10 and ~53.275
// at n=100). Positive exactly when the Nicolas margin at n is positive.
template <typename Real>
QValueT<Real> q_from_state(const ThetaMertensState<Real>& state) {
    if (state.n < 1)
        throw std::invalid_argument("q_from_state: state holds no primes");
    const Real theta = state.theta.value();
    const Real exponent =
        constants::exp_neg_gamma_v<Real> * std::exp(-state.mertens_log.value());
    return {state.n, theta, std::exp(exponent) - theta, exponent};
}

// One step of the q-recurrence, evaluated exactly as printed:
//
//   F^A - log(p_next) - theta_u,   F = f(theta_u),
//   A = [(1-1/F)/(1-1/p_next)] * log_{theta_u}(theta_u + q_u)
//
// with every power taken as exp of a log. Needs theta_u > 1 for the log
// base, which excludes u = 1 (theta(p_1) = log 2).
template <typename Real = double>
Real recurrence_rhs_literal(const ThetaMertensState<Real>& state, Real q_u,
                            std::uint64_t p_next) {
    const Real theta_u = state.theta.value();
    if (!(theta_u > Real(1)))
        throw std::domain_error("recurrence_rhs_literal: needs theta(p_u) > 1, so u >= 2");
    const Real big_f = f_of(theta_u).f;
    const Real rp = static_cast<Real>(p_next);
    const Real a = ((1 - 1 / big_f) / (1 - 1 / rp)) *
                   (std::log(theta_u + q_u) / std::log(theta_u));
    return std::exp(a * std::log(big_f)) - std::log(rp) - theta_u;
}

// Algebraic reduction of the literal form: (1-1/F)*log(F) = log(theta_u) by
// the definition of f, so the f-dependence cancels and the right side is
//
//   (theta_u + q_u)^(1/(1-1/p_next)) - theta_u - log(p_next).
//
// Kept as an independent second path for the recurrence check.
template <typename Real = double>
Real recurrence_rhs_simplified(Real theta_u, Real q_u, std::uint64_t p_next,
                               Real log_p_next) {
    if (!(theta_u + q_u > Real(1)))
        throw std::domain_error("recurrence_rhs_simplified: needs theta_u + q_u > 1");
    const Real exponent = std::log(theta_u + q_u) / (1 - 1 / static_cast<Real>(p_next));
    return std::exp(exponent) - theta_u - log_p_next;
}

// [y(x0,0), ..., y(x0,k)] with y(x0,0) = x0 and y(x0,j) = f(y(x0,j-1)).
template <typename Real = double>
std::vector<Real> iterate_f(Real x0, int k) {
    if (k < 0)
        throw std::invalid_argument("iterate_f: k must be >= 0");
    std::vector<Real> ys;
    ys.reserve(static_cast<std::size_t>(k) + 1);
    ys.push_back(x0);
    for (int i = 0; i < k; ++i) ys.push_back(f_of(ys.back()).f);
    return ys;
}

} // namespace nicolas
