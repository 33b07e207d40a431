#pragma once

// Half-line Weyl theory: the decaying m-function at the right endpoint,
// the singular m-function M(z) assembled from an entire system (phi,
// theta), the Weyl solution psi, the Green function, and high-energy
// asymptotic diagnostics.

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "singweyl/quadrature.hpp"
#include "singweyl/schrodinger.hpp"
#include "singweyl/types.hpp"

namespace singweyl {

struct SolutionSystem {
    std::function<SolutionSample(Complex, double)> phi;
    std::function<SolutionSample(Complex, double)> theta;
    bool entire_theta = false;
    // Rescaling freedom: M -> e^{-2g} M + e^{-g} f with g, f real entire.
    std::function<Complex(Complex)> gauge_g;
    std::function<Complex(Complex)> gauge_f;
};

struct MTrace {
    std::vector<std::pair<Complex, Complex>> samples;
    std::string note = "principal branch, cut along [0,inf)";
};

// System built from the ODE solutions; theta is only trustworthy near the
// real axis.
inline SolutionSystem system_from_potential(const Potential& pot, double c, double tol = 1e-11) {
    Potential p = pot;
    estimate_frobenius_coeffs(p);
    SolutionSystem sys;
    sys.phi = [p, tol](Complex z, double x) { return regular_solution_phi(p, z, x, tol); };
    sys.theta = [p, c, tol](Complex z, double x) { return second_solution_theta_numeric(p, z, c, x, tol); };
    sys.entire_theta = false;
    return sys;
}

// m_+(z) = u'(c)/u(c) for the solution decaying at +infinity, by backward
// integration from a far field with data proportional to (1, -sqrt(-z)),
// renormalized along the way to avoid overflow. The far field is pushed
// out until the value is Cauchy-stable.
inline Complex m_plus(const Potential& pot, double c, Complex z, double tol = 1e-9) {
    pot.validate();
    if (!(c > pot.a)) throw precondition_error("m_plus: c must exceed the left endpoint");
    if (z.imag() == 0.0 && z.real() >= 0.0)
        throw precondition_error("m_plus: need Im z != 0 or z below the spectrum");
    const Complex kappa = sqrt_cut(-z);  // Re kappa > 0
    auto run = [&](double X) -> Complex {
        State2 y{Complex(1.0, 0.0), -kappa};
        OdeOptions opt;
        opt.abs_tol = opt.rel_tol = 1e-12;
        double seg = std::max(0.25, 2.0 / std::max(1.0, kappa.real()));
        double x = X;
        while (x > c) {
            double next = std::max(c, x - seg);
            y = integrate_schroedinger(pot.q, z, x, next, y, opt);
            double scale = std::max(std::abs(y.u), std::abs(y.du));
            if (scale > 1e10 || scale < 1e-10) {
                y.u /= scale;
                y.du /= scale;
            }
            x = next;
        }
        if (std::abs(y.u) < 1e-280 * std::abs(y.du))
            throw numeric_error("m_plus: pole (u vanishes at the base point)");
        return y.du / y.u;
    };
    double X = std::max(c + 5.0, 2.0 * c);
    Complex prev = run(X);
    for (int it = 0; it < 12; ++it) {
        X = c + 2.0 * (X - c);
        Complex cur = run(X);
        if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    throw numeric_error("m_plus: far field not Cauchy-convergent; tail may be non-decaying");
}

// M(z) = -(gamma m_+ - delta) / (alpha m_+ - beta) from the system data at
// the base point c, followed by the gauge rescaling if one is attached.
inline Complex singular_M(const SolutionSystem& sys, const Potential& pot, double c, Complex z,
                          double tol = 1e-9) {
    SolutionSample ph = sys.phi(z, c);
    SolutionSample th = sys.theta(z, c);
    Complex mp = m_plus(pot, c, z, tol);
    Complex denom = ph.u * mp - ph.du;
    if (std::abs(denom) < 1e-12 * (std::abs(ph.u * mp) + std::abs(ph.du)))
        throw numeric_error("singular_M: base-point denominator near zero (real-axis proximity)");
    Complex M = -(th.u * mp - th.du) / denom;
    if (sys.gauge_g) {
        Complex g = sys.gauge_g(z);
        Complex f = sys.gauge_f ? sys.gauge_f(z) : Complex(0.0, 0.0);
        M = std::exp(-2.0 * g) * M + std::exp(-g) * f;
    }
    return M;
}

// psi(z,x) = theta(z,x) + M(z) phi(z,x), square integrable toward b.
inline SolutionSample weyl_solution_psi(const SolutionSystem& sys, const Potential& pot, double c, Complex z,
                                        double x, double tol = 1e-9) {
    Complex M;
    {
        SolutionSystem base = sys;
        base.gauge_g = nullptr;
        base.gauge_f = nullptr;
        M = singular_M(base, pot, c, z, tol);
    }
    SolutionSample ph = sys.phi(z, x);
    SolutionSample th = sys.theta(z, x);
    SolutionSample out{z, x, th.u + M * ph.u, th.du + M * ph.du};
    return out;
}

inline Complex green_function(const SolutionSystem& sys, const Potential& pot, double c, Complex z, double x,
                              double y, double tol = 1e-9) {
    double lo = std::min(x, y), hi = std::max(x, y);
    SolutionSample ph = sys.phi(z, lo);
    SolutionSample ps = weyl_solution_psi(sys, pot, c, z, hi, tol);
    return ph.u * ps.u;
}

struct AsymptoticRayReport {
    double angle = 0.0;
    double max_scaled_m = 0.0;   // sup |(M + theta/phi) sqrt(-z) phi^2|
    double final_psi_dev = 0.0;  // |2 sqrt(-z) phi psi - 1| at the largest |z|
    double final_phi_dev = 0.0;  // |phi(z,x)/phi(z,x0) e^{(x-x0) sqrt(-z)} - 1|
};

struct AsymptoticReport {
    std::vector<AsymptoticRayReport> rays;
};

// Samples |z| log-spaced along each nonreal ray and reports the three
// high-energy diagnostics at x and the reference point x0.
inline AsymptoticReport asymptotic_check(const SolutionSystem& sys, const Potential& pot, double c,
                                         const std::vector<double>& ray_angles, double x = 1.0,
                                         double x0 = 0.5, double r_lo = 1e2, double r_hi = 1e4,
                                         int nsamples = 7) {
    AsymptoticReport rep;
    for (double ang : ray_angles) {
        if (std::abs(std::sin(ang)) < 1e-12)
            throw precondition_error("asymptotic_check: ray must be nonreal");
        AsymptoticRayReport ray;
        ray.angle = ang;
        for (int i = 0; i < nsamples; ++i) {
            double r = r_lo * std::pow(r_hi / r_lo, (double)i / (nsamples - 1));
            Complex z = r * Complex(std::cos(ang), std::sin(ang));
            Complex rt = sqrt_cut(-z);
            Complex M = singular_M(sys, pot, c, z);
            SolutionSample ph = sys.phi(z, x);
            SolutionSample th = sys.theta(z, x);
            Complex a = (M + th.u / ph.u) * rt * ph.u * ph.u;
            ray.max_scaled_m = std::max(ray.max_scaled_m, std::abs(a));
            if (i == nsamples - 1) {
                SolutionSample ps = weyl_solution_psi(sys, pot, c, z, x);
                ray.final_psi_dev = std::abs(2.0 * rt * ph.u * ps.u - 1.0);
                SolutionSample ph0 = sys.phi(z, x0);
                ray.final_phi_dev = std::abs(ph.u / ph0.u * std::exp(-(x - x0) * rt) - 1.0);
            }
        }
        rep.rays.push_back(ray);
    }
    return rep;
}

}  // namespace singweyl
