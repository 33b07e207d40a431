#pragma once

// Distinguished solutions of -u'' + q u = z u on (a,b) with a singular
// left endpoint: the regular solution phi normalized at a, a numeric
// second solution theta anchored at an interior point, Pruefer zero
// counting, and Wronskian helpers.

#include <cmath>
#include <functional>

#include "singweyl/ode.hpp"
#include "singweyl/potential.hpp"
#include "singweyl/types.hpp"

namespace singweyl {

struct SolutionSample {
    Complex z;
    double x = 0.0;
    Complex u;
    Complex du;
};

// u dv - du v at a common point.
inline Complex lagrange_bracket(const SolutionSample& u, const SolutionSample& v) {
    if (u.x != v.x) throw precondition_error("lagrange_bracket: samples at different x");
    return u.u * v.du - u.du * v.u;
}

namespace detail {

// (2l+1)!! extended to real l via Gamma.
inline double double_factorial_odd(double l) {
    return std::pow(2.0, l + 1.0) * std::tgamma(l + 1.5) / std::sqrt(pi);
}

// Frobenius data of the regular solution at offset s from the endpoint:
// u = s^{l+1}/(2l+1)!! (1 + c1 s + c2 s^2).
struct FrobeniusStart {
    Complex u, du;
};

inline FrobeniusStart frobenius_start(const Potential& pot, Complex z, double s) {
    const double l = pot.regular_left ? 0.0 : pot.l;
    const double q1 = std::isfinite(pot.q1) ? pot.q1 : 0.0;
    const double q0 = std::isfinite(pot.q0) ? pot.q0 : 0.0;
    const double c1 = q1 / (2.0 * (l + 1.0));
    const Complex c2 = (c1 * q1 + q0 - z) / (4.0 * l + 6.0);
    const double norm = double_factorial_odd(l);
    const double sl = std::pow(s, l);
    FrobeniusStart fs;
    fs.u = sl * s / norm * (1.0 + c1 * s + c2 * (s * s));
    fs.du = sl / norm * ((l + 1.0) + (l + 2.0) * c1 * s + (l + 3.0) * c2 * (s * s));
    return fs;
}

inline double frobenius_offset(const Potential& pot, double tol) {
    const double l = pot.regular_left ? 0.0 : pot.l;
    return std::min(0.01, std::pow(std::max(tol, 1e-300), 1.0 / (2.0 * l + 3.0)));
}

}  // namespace detail

// The solution square integrable near a, normalized so that
// u ~ (x-a)^{l+1}/(2l+1)!! as x -> a.
inline SolutionSample regular_solution_phi(const Potential& pot, Complex z, double x, double tol = 1e-12) {
    pot.validate();
    if (!(x > pot.a && x < pot.b)) throw precondition_error("regular_solution_phi: x outside (a,b)");
    Potential p = pot;  // cheap: copies the std::function handle
    estimate_frobenius_coeffs(p);
    const double delta = detail::frobenius_offset(p, tol);
    const double s = std::min(delta, x - p.a);
    auto fs = detail::frobenius_start(p, z, s);
    SolutionSample out{z, x, fs.u, fs.du};
    if (x - p.a > s) {
        OdeOptions opt;
        opt.abs_tol = opt.rel_tol = std::min(tol, 1e-10);
        State2 y = integrate_schroedinger(p.q, z, p.a + s, x, {fs.u, fs.du}, opt);
        out.u = y.u;
        out.du = y.du;
    }
    return out;
}

// Second solution anchored at c with W(theta, phi) = 1 there. Only
// reliable for z on or near the real axis: the anchor data
// theta(c) = beta/(alpha^2 + beta^2) has poles off it.
inline SolutionSample second_solution_theta_numeric(const Potential& pot, Complex z, double c, double x,
                                                    double tol = 1e-12) {
    const SolutionSample phi_c = regular_solution_phi(pot, z, c, tol);
    const Complex alpha = phi_c.u, beta = phi_c.du;
    const Complex denom = alpha * alpha + beta * beta;
    if (std::abs(denom) < 1e-10 * (std::norm(alpha) + std::norm(beta)))
        throw numeric_error("second_solution_theta_numeric: anchor denominator near zero; reduce |Im z|");
    SolutionSample out{z, x, beta / denom, -alpha / denom};
    if (x != c) {
        OdeOptions opt;
        opt.abs_tol = opt.rel_tol = std::min(tol, 1e-10);
        State2 y = integrate_schroedinger(pot.q, z, c, x, {out.u, out.du}, opt);
        out.u = y.u;
        out.du = y.du;
    }
    return out;
}

enum class BoundaryCondition { Dirichlet, Neumann };

// Pruefer phase of the regular solution at c: u = r sin(theta),
// u' = r cos(theta), theta' = cos^2 + (z - q) sin^2, theta(a+) = 0.
inline double pruefer_phase(const Potential& pot, double z, double c, double tol = 1e-10) {
    pot.validate();
    if (!(c > pot.a && c < pot.b)) throw precondition_error("pruefer_phase: c outside (a,b)");
    Potential p = pot;
    estimate_frobenius_coeffs(p);
    const double delta = detail::frobenius_offset(p, tol);
    const double s = std::min(delta, 0.5 * (c - p.a));
    auto fs = detail::frobenius_start(p, Complex(z, 0.0), s);
    double theta0 = std::atan2(fs.u.real(), fs.du.real());
    auto rhs = [&](double x, const State2& y) -> State2 {
        double th = y.u.real();
        double sn = std::sin(th), cs = std::cos(th);
        return {Complex(cs * cs + (z - p.q(x)) * sn * sn, 0.0), Complex(0.0, 0.0)};
    };
    OdeOptions opt;
    opt.abs_tol = opt.rel_tol = std::min(tol, 1e-10);
    State2 y = integrate_ode(rhs, p.a + s, c, {Complex(theta0, 0.0), Complex(0.0, 0.0)}, opt);
    return y.u.real();
}

// Number of zeros of phi(z,.) (Dirichlet) or phi'(z,.) (Neumann) in (a,c).
inline int pruefer_count(const Potential& pot, double z, double c, BoundaryCondition bc) {
    if (bc == BoundaryCondition::Dirichlet) {
        double th = pruefer_phase(pot, z, c);
        // phase crosses multiples of pi strictly upward
        return std::max(0, (int)std::floor(th / pi));
    }
    // track crossings of pi/2 mod pi on subintervals short enough that the
    // phase moves by less than pi/2 across each
    Potential p = pot;
    estimate_frobenius_coeffs(p);
    const double tol = 1e-10;
    const double delta = detail::frobenius_offset(p, tol);
    const double s = std::min(delta, 0.5 * (c - p.a));
    auto fs = detail::frobenius_start(p, Complex(z, 0.0), s);
    double theta = std::atan2(fs.u.real(), fs.du.real());
    auto rhs = [&](double x, const State2& y) -> State2 {
        double th = y.u.real();
        double sn = std::sin(th), cs = std::cos(th);
        return {Complex(cs * cs + (z - p.q(x)) * sn * sn, 0.0), Complex(0.0, 0.0)};
    };
    OdeOptions opt;
    opt.abs_tol = opt.rel_tol = tol;
    double rate = std::sqrt(std::abs(z)) + 1.0;
    double step = std::min((c - p.a - s) / 8.0, 0.5 * pi / rate);
    int count = 0;
    double x0 = p.a + s;
    while (x0 < c) {
        double x1 = std::min(c, x0 + step);
        double th1 = integrate_ode(rhs, x0, x1, {Complex(theta, 0.0), Complex(0.0, 0.0)}, opt).u.real();
        long k0 = (long)std::floor((theta - 0.5 * pi) / pi);
        long k1 = (long)std::floor((th1 - 0.5 * pi) / pi);
        count += (int)std::abs(k1 - k0);
        theta = th1;
        x0 = x1;
    }
    return count;
}

}  // namespace singweyl
