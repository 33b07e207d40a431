#pragma once

// Adaptive embedded Runge-Kutta (Dormand-Prince 5(4)) for the complex
// first-order system y' = f(x, y) with y = (u, u'). Used for all
// Schroedinger initial value problems u'' = (q(x) - z) u.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "singweyl/types.hpp"

namespace singweyl {

struct State2 {
    Complex u;
    Complex du;
};

inline State2 operator+(State2 a, State2 b) { return {a.u + b.u, a.du + b.du}; }
inline State2 operator*(double s, State2 a) { return {s * a.u, s * a.du}; }

struct OdeOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    double initial_step = 1e-4;
    double min_step = 1e-14;
    std::size_t max_steps = 50'000'000;
};

namespace detail {

// Dormand-Prince coefficients (5th order propagation, 4th order error).
constexpr double dp_c[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double dp_a[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
constexpr double dp_b5[7] = {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr double dp_b4[7] = {5179.0 / 57600, 0.0,           7571.0 / 16695, 393.0 / 640,
                             -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

}  // namespace detail

// Integrates y' = f(x, y) from x0 to x1 (either direction). Calls
// observe(x, y) after the initial state and after every accepted step when
// observe is nonempty.
template <class F>
inline State2 integrate_ode(F&& f, double x0, double x1, State2 y0, const OdeOptions& opt = {},
                            const std::function<void(double, const State2&)>& observe = {}) {
    if (!std::isfinite(x0) || !std::isfinite(x1)) throw precondition_error("integrate_ode: nonfinite endpoint");
    if (x0 == x1) return y0;
    const double dir = (x1 > x0) ? 1.0 : -1.0;
    double x = x0;
    State2 y = y0;
    double h = dir * std::min(opt.initial_step, std::abs(x1 - x0));
    if (observe) observe(x, y);
    State2 k[7];
    k[0] = f(x, y);
    bool have_first_same_as_last = true;
    for (std::size_t step = 0; step < opt.max_steps; ++step) {
        if (dir * (x - x1) >= 0.0) return y;
        if (dir * (x + h - x1) > 0.0) {
            h = x1 - x;
            have_first_same_as_last = false;  // k[0] still valid, stages recompute anyway
        }
        if (!have_first_same_as_last) k[0] = f(x, y);
        for (int i = 1; i < 7; ++i) {
            State2 yi = y;
            for (int j = 0; j < i; ++j) yi = yi + (h * detail::dp_a[i][j]) * k[j];
            k[i] = f(x + detail::dp_c[i] * h, yi);
        }
        State2 y5 = y, y4 = y;
        for (int i = 0; i < 7; ++i) {
            y5 = y5 + (h * detail::dp_b5[i]) * k[i];
            y4 = y4 + (h * detail::dp_b4[i]) * k[i];
        }
        const double scale_u = opt.abs_tol + opt.rel_tol * std::max(std::abs(y.u), std::abs(y5.u));
        const double scale_du = opt.abs_tol + opt.rel_tol * std::max(std::abs(y.du), std::abs(y5.du));
        const double err = std::sqrt(0.5 * (std::norm(y5.u - y4.u) / (scale_u * scale_u) +
                                            std::norm(y5.du - y4.du) / (scale_du * scale_du)));
        if (err <= 1.0) {
            x += h;
            y = y5;
            k[0] = k[6];  // FSAL
            have_first_same_as_last = true;
            if (observe) observe(x, y);
        } else {
            have_first_same_as_last = true;  // k[0] unchanged, still valid at (x, y)
        }
        double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
        fac = std::clamp(fac, 0.2, 5.0);
        h *= fac;
        if (std::abs(h) < opt.min_step) {
            if (dir * (x - x1) >= 0.0) return y;
            throw numeric_error("integrate_ode: step size underflow at x = " + std::to_string(x));
        }
    }
    throw numeric_error("integrate_ode: step budget exhausted");
}

// Convenience wrapper for u'' = (q(x) - z) u.
template <class Q>
inline State2 integrate_schroedinger(Q&& q, Complex z, double x0, double x1, State2 y0,
                                     const OdeOptions& opt = {},
                                     const std::function<void(double, const State2&)>& observe = {}) {
    auto rhs = [&](double x, const State2& y) -> State2 { return {y.du, (q(x) - z) * y.u}; };
    return integrate_ode(rhs, x0, x1, y0, opt, observe);
}

}  // namespace singweyl
