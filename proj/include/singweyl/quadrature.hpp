#pragma once

#include <array>
#include <cmath>
#include <functional>

#include "singweyl/types.hpp"

// Quadrature and extrapolation helpers.

namespace singweyl {

namespace detail {

inline constexpr std::array<double, 8> gl16_x = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
inline constexpr std::array<double, 8> gl16_w = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

template <typename F, typename R>
R gl16_panel(F&& f, double a, double b) {
    const double h = 0.5 * (b - a), m = 0.5 * (a + b);
    R s{};
    for (int i = 0; i < 8; ++i) {
        s += gl16_w[i] * (f(m + h * gl16_x[i]) + f(m - h * gl16_x[i]));
    }
    return h * s;
}

template <typename F, typename R>
R adaptive_simpson_rec(F&& f, double a, double b, R fa, R fm, R fb, R whole,
                       double tol, int depth) {
    const double m = 0.5 * (a + b);
    R fl = f(0.5 * (a + m)), fr = f(0.5 * (m + b));
    R left = (m - a) / 6.0 * (fa + 4.0 * fl + fm);
    R right = (b - m) / 6.0 * (fm + 4.0 * fr + fb);
    R delta = left + right - whole;
    if (depth <= 0) throw numeric_error("adaptive_simpson: recursion limit reached");
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, fl, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, fr, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson on [a,b]; R is double or Complex.
template <typename R = double, typename F>
R integrate_adaptive(F&& f, double a, double b, double tol = 1e-10, int max_depth = 40) {
    if (a == b) return R{};
    R fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    R whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// Composite 16-point Gauss-Legendre with a caller-supplied frequency hint:
// panel count is chosen so each panel spans at most roughly half an
// oscillation period. Suited to integrands like phi(lambda,x) with
// frequency |sqrt(lambda)|.
template <typename R = double, typename F>
R integrate_oscillatory(F&& f, double a, double b, double freq_hint, int min_panels = 4) {
    if (a == b) return R{};
    const double len = std::abs(b - a);
    int panels = std::max<int>(min_panels, (int)std::ceil(len * std::max(freq_hint, 0.0) / pi));
    const double h = (b - a) / panels;
    R s{};
    for (int p = 0; p < panels; ++p)
        s += detail::gl16_panel<F&, R>(f, a + p * h, a + (p + 1) * h);
    return s;
}

// Semi-infinite integral of a decaying integrand: march unit-ish panels until
// the running tail falls below tol relative to the accumulated value.
template <typename R = double, typename F>
R integrate_to_infinity(F&& f, double a, double panel = 1.0, double tol = 1e-12,
                        int max_panels = 100000) {
    R total{};
    double x = a;
    int quiet = 0;
    for (int p = 0; p < max_panels; ++p) {
        R chunk = integrate_adaptive<R>(f, x, x + panel, tol * 1e-2);
        total += chunk;
        x += panel;
        if (std::abs(chunk) < tol * (1.0 + std::abs(total))) {
            if (++quiet >= 3) return total;
        } else {
            quiet = 0;
        }
    }
    throw numeric_error("integrate_to_infinity: no decay detected");
}

// Two-level Richardson extrapolation of g(eps) -> g(0) assuming
// g = g0 + c1*eps + c2*eps^2 + ..., over a decreasing schedule.
inline double richardson_to_zero(const std::vector<double>& eps,
                                 const std::vector<double>& val) {
    if (eps.size() != val.size() || eps.empty())
        throw precondition_error("richardson_to_zero: bad schedule");
    std::size_t n = eps.size();
    if (n == 1) return val[0];
    auto lvl1 = [&](std::size_t i) {
        return (eps[i] * val[i + 1] - eps[i + 1] * val[i]) / (eps[i] - eps[i + 1]);
    };
    if (n == 2) return lvl1(0);
    // eliminate the linear term pairwise, then the quadratic one once
    double a = lvl1(n - 3), b = lvl1(n - 2);
    double ea = eps[n - 3] * eps[n - 2], eb = eps[n - 2] * eps[n - 1];
    return (ea * b - eb * a) / (ea - eb);
}

}  // namespace singweyl
