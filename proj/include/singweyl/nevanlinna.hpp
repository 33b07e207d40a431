#pragma once

// Generalized Nevanlinna analytics: negative squares of the Nevanlinna
// kernel, minimal representation power from measure tails, integral
// representations with polynomial/exponential regularizers, Herglotz
// rescaling, and growth/moment equivalences.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "singweyl/quadrature.hpp"
#include "singweyl/spectral.hpp"
#include "singweyl/types.hpp"

namespace singweyl {

struct NevanlinnaReport {
    int kappa = 0;                       // negative squares estimate
    int k = 0;                           // representation power
    bool k_indeterminate = false;
    std::vector<double> poly_coeffs;     // fitted entire part, low degree
    std::vector<bool> moments_ok;        // moment/growth equivalence per tested k
    std::vector<double> growth_exponents;
};

// max negative-eigenvalue count of the kernel (M(z_j) - M(z_k)*)/(z_j - z_k*)
// over `trials` random point sets; an estimate from below of the true count.
inline int kernel_negative_squares(const MEvaluator& M, int npoints = 30, int trials = 20,
                                   unsigned long long seed = 12345) {
    if (npoints < 2 || trials < 1) throw precondition_error("kernel_negative_squares: bad sizes");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> re(-10.0, 10.0);
    std::uniform_real_distribution<double> logim(std::log(0.1), std::log(10.0));
    int best = 0;
    for (int t = 0; t < trials; ++t) {
        // all points in the open upper half plane: distinct and never
        // conjugate-paired
        std::vector<Complex> pts;
        while ((int)pts.size() < npoints) {
            Complex z(re(rng), std::exp(logim(rng)));
            bool dup = false;
            for (auto& p : pts)
                if (std::abs(p - z) < 1e-8) dup = true;
            if (!dup) pts.push_back(z);
        }
        std::vector<Complex> mv(pts.size());
        for (std::size_t j = 0; j < pts.size(); ++j) mv[j] = M(pts[j]);
        Eigen::MatrixXcd K(npoints, npoints);
        for (int j = 0; j < npoints; ++j)
            for (int kk = 0; kk < npoints; ++kk)
                K(j, kk) = (mv[j] - std::conj(mv[kk])) / (pts[j] - std::conj(pts[kk]));
        K = Complex(0.5) * (K + K.adjoint().eval());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(K, Eigen::EigenvaluesOnly);
        double scale = std::max(es.eigenvalues().cwiseAbs().maxCoeff(), 1e-300);
        int neg = 0;
        for (int j = 0; j < npoints; ++j)
            if (es.eigenvalues()(j) < -1e-10 * scale) ++neg;
        best = std::max(best, neg);
    }
    return best;
}

struct MinimalKResult {
    int k = 0;
    bool indeterminate = false;
    double tail_exponent = 0.0;  // fitted p with density ~ lambda^p
};

namespace detail {

// weighted least-squares exponent of the density over the last decade of
// the grid; -infinity when the tail is effectively zero
inline double measure_tail_exponent(const SpectralMeasure& m) {
    if (m.grid.empty()) throw precondition_error("tail exponent: empty measure");
    double hi = m.grid.back();
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < m.grid.size(); ++i) {
        if (m.grid[i] < hi / 10.0 || m.grid[i] <= 0.0) continue;
        if (m.density[i] <= 0.0) continue;
        lx.push_back(std::log(m.grid[i]));
        ly.push_back(std::log(m.density[i]));
    }
    if (lx.size() < 5) return -std::numeric_limits<double>::infinity();
    return fit_line(lx, ly).slope;
}

}  // namespace detail

// smallest k with int (1+lambda^2)^(-k-1) d rho finite, from the tail
// exponent: density ~ lambda^p converges iff p - 2k - 2 < -1.
inline MinimalKResult minimal_k(const SpectralMeasure& measure, int kmax = 8) {
    MinimalKResult r;
    double p = detail::measure_tail_exponent(measure);
    r.tail_exponent = p;
    if (!std::isfinite(p)) return r;  // finite measure: k = 0
    for (int k = 0; k <= kmax; ++k) {
        double margin = (p - 2.0 * k - 2.0) - (-1.0);
        if (margin < 0.0) {
            r.k = k;
            r.indeterminate = std::abs(margin) < 0.1;
            return r;
        }
        if (std::abs(margin) < 0.1) {
            r.k = k + 1;
            r.indeterminate = true;
            return r;
        }
    }
    throw precondition_error("minimal_k: tail exponent exceeds kmax range");
}

enum class Regularizer { poly, exp_z, exp_z2 };

inline const char* regularizer_name(Regularizer g) {
    switch (g) {
        case Regularizer::poly: return "(1+z^2)^k";
        case Regularizer::exp_z: return "exp(z)";
        default: return "exp(z^2)";
    }
}

// ghat(z) * int (1/(lambda-z) - lambda/(1+lambda^2)) d rho(lambda)/ghat(lambda)
// over the computed grid and atoms; M minus the result must be entire.
inline Complex integral_representation(const SpectralMeasure& measure, Regularizer ghat, int k, Complex z) {
    auto g_of = [&](double lam) -> double {
        switch (ghat) {
            case Regularizer::poly: return std::pow(1.0 + lam * lam, k);
            case Regularizer::exp_z: return std::exp(lam);
            default: return std::exp(lam * lam);
        }
    };
    // integrability of (1+lambda^2)^{-1} / ghat under the measure: the
    // weighted integrand must decay over the last decade of the grid
    {
        double hi = measure.grid.back();
        double w_mid = 0.0, w_end = 0.0;
        for (std::size_t i = 0; i < measure.grid.size(); ++i) {
            double lam = measure.grid[i];
            double w = measure.density[i] / ((1.0 + lam * lam) * g_of(lam));
            if (std::abs(lam - hi / 2.0) < std::abs(hi) * 0.26) w_mid = std::max(w_mid, w * std::abs(lam));
            if (lam > hi * 0.9) w_end = std::max(w_end, w * std::abs(lam));
        }
        if (w_end > 0.9 * w_mid && w_end > 1e-12)
            throw precondition_error(std::string("integral_representation: tail of d rho / ghat with ghat = ") +
                                     regularizer_name(ghat) + " does not converge");
    }
    auto term = [&](double lam) { return 1.0 / (lam - z) - lam / (1.0 + lam * lam); };
    Complex acc = 0.0;
    for (std::size_t i = 0; i + 1 < measure.grid.size(); ++i) {
        double l0 = measure.grid[i], l1 = measure.grid[i + 1];
        Complex g0 = term(l0) * measure.density[i] / g_of(l0);
        Complex g1 = term(l1) * measure.density[i + 1] / g_of(l1);
        acc += 0.5 * (g0 + g1) * (l1 - l0);
    }
    for (const auto& a : measure.atoms) acc += term(a.lambda) * a.mass / g_of(a.lambda);
    Complex gz;
    switch (ghat) {
        case Regularizer::poly: gz = std::pow(1.0 + z * z, k); break;
        case Regularizer::exp_z: gz = std::exp(z); break;
        default: gz = std::exp(z * z);
    }
    return gz * acc;
}

struct HerglotzGauge {
    std::function<double(double)> g;  // spectral gauge; weight is exp(-2 g)
    MEvaluator mtilde;                // Herglotz function of the rescaled measure
    double total_mass = 0.0;
};

// rescales d rho by exp(-lambda) (g = lambda/2), which renders power-law
// tails finite, and returns the Herglotz transform of the finite measure.
inline HerglotzGauge herglotzify(const SpectralMeasure& measure) {
    SpectralMeasure resc = measure;
    double wmax = 0.0;
    for (std::size_t i = 0; i < resc.grid.size(); ++i) {
        resc.density[i] *= std::exp(-resc.grid[i]);
        wmax = std::max(wmax, resc.density[i]);
    }
    for (auto& a : resc.atoms) a.mass *= std::exp(-a.lambda);
    if (!resc.grid.empty() && resc.density.back() > 1e-6 * std::max(wmax, 1e-300))
        throw precondition_error("herglotzify: exp(-lambda) weight insufficient; rerun with g(lambda) = lambda^2");
    HerglotzGauge out;
    out.g = [](double lam) { return 0.5 * lam; };
    double mass = 0.0;
    for (std::size_t i = 0; i + 1 < resc.grid.size(); ++i)
        mass += 0.5 * (resc.density[i] + resc.density[i + 1]) * (resc.grid[i + 1] - resc.grid[i]);
    for (const auto& a : resc.atoms) mass += a.mass;
    out.total_mass = mass;
    out.mtilde = [resc](Complex z) {
        Complex acc = 0.0;
        for (std::size_t i = 0; i + 1 < resc.grid.size(); ++i) {
            Complex g0 = resc.density[i] / (resc.grid[i] - z);
            Complex g1 = resc.density[i + 1] / (resc.grid[i + 1] - z);
            acc += 0.5 * (g0 + g1) * (resc.grid[i + 1] - resc.grid[i]);
        }
        for (const auto& a : resc.atoms) acc += a.mass / (a.lambda - z);
        return acc;
    };
    return out;
}

struct GrowthKappa {
    int kappa = 0;
    double exponent = 0.0;      // fitted s with |M(iy)| ~ y^s
    Complex limit_low = 0.0;    // -M(iy)/(iy)^(2 kappa - 1) at the largest y
    Complex limit_high = 0.0;   // M(iy)/(iy)^(2 kappa + 1) at the largest y
    bool indeterminate = false;
};

// kappa from the growth of M along the imaginary axis: the unique integer
// with 2 kappa - 1 <= s < 2 kappa + 1 for |M(iy)| ~ y^s.
inline GrowthKappa kappa_from_growth(const MEvaluator& M, double y_lo = 1e2, double y_hi = 1e5,
                                     int npoints = 25) {
    std::vector<double> lx, ly;
    for (int i = 0; i < npoints; ++i) {
        double y = y_lo * std::pow(y_hi / y_lo, double(i) / (npoints - 1));
        double a = std::abs(M(Complex(0.0, y)));
        if (!(a > 0.0) || !std::isfinite(a)) continue;
        lx.push_back(std::log(y));
        ly.push_back(std::log(a));
    }
    if (lx.size() < 5) throw precondition_error("kappa_from_growth: M not evaluable along iy");
    GrowthKappa out;
    out.exponent = fit_line(lx, ly).slope;
    out.kappa = std::max(0, (int)std::floor((out.exponent + 1.0) / 2.0));
    double margin = std::abs(out.exponent - (2.0 * out.kappa - 1.0));
    out.indeterminate = std::min(margin, std::abs(out.exponent - (2.0 * out.kappa + 1.0))) < 0.1;
    Complex iy(0.0, y_hi);
    out.limit_low = -M(iy) / std::pow(iy, 2.0 * out.kappa - 1.0);
    out.limit_high = M(iy) / std::pow(iy, 2.0 * out.kappa + 1.0);
    return out;
}

struct MomentGrowthReport {
    bool lhs_finite = false;   // int d rho / (1+|lambda|^(2k+gamma))
    bool rhs_finite = false;   // int_1^inf (-1)^k Im M(iy)/y^(2k+gamma) dy
    bool equivalent = false;
    double measure_exponent = 0.0;
    double growth_exponent = 0.0;
};

// tail-exponent comparison of the moment condition against the Im M growth
// condition; for gamma = 0, finiteness of the 2k-moment against boundedness
// of (-1)^k Im M(iy)/y^(2k-1).
inline MomentGrowthReport moment_growth_check(const SpectralMeasure& measure, const MEvaluator& M, int k,
                                              double gamma, double y_lo = 1e2, double y_hi = 1e5) {
    if (gamma < 0.0 || gamma >= 2.0) throw precondition_error("moment_growth_check: gamma must be in [0,2)");
    MomentGrowthReport rep;
    double p = detail::measure_tail_exponent(measure);
    rep.measure_exponent = p;
    std::vector<double> lx, ly;
    double sign = (k % 2 == 0) ? 1.0 : -1.0;
    for (int i = 0; i < 25; ++i) {
        double y = y_lo * std::pow(y_hi / y_lo, double(i) / 24.0);
        double v = sign * M(Complex(0.0, y)).imag();
        if (!(v > 0.0)) continue;
        lx.push_back(std::log(y));
        ly.push_back(std::log(v));
    }
    double t = lx.size() >= 5 ? fit_line(lx, ly).slope : -std::numeric_limits<double>::infinity();
    rep.growth_exponent = t;
    if (gamma > 0.0) {
        rep.lhs_finite = std::isfinite(p) ? (p - 2.0 * k - gamma < -1.0) : true;
        rep.rhs_finite = std::isfinite(t) ? (t - 2.0 * k - gamma < -1.0) : true;
    } else {
        rep.lhs_finite = std::isfinite(p) ? (p - 2.0 * k < -1.0) : true;
        rep.rhs_finite = std::isfinite(t) ? (t <= 2.0 * k - 1.0 + 1e-9) : true;
    }
    rep.equivalent = (rep.lhs_finite == rep.rhs_finite);
    return rep;
}

// upper bound for the representation power of a Bessel-type operator with
// angular momentum l; the true kappa = floor(l/2 + 3/4) can be smaller.
inline int bessel_k_bound(double l) {
    if (l < -0.5) throw precondition_error("bessel_k_bound: l must be >= -1/2");
    return (int)std::ceil((l + 1.0) / 2.0);
}

// kappa of an irreducible representation with minimal power k, entire part
// of degree ldeg and leading coefficient a_l
inline int kappa_from_representation(int k, int ldeg, double a_l) {
    if (ldeg <= 2 * k) return k;
    if (ldeg % 2 == 0 || a_l > 0.0) return ldeg / 2;
    return ldeg / 2 + 1;
}

}  // namespace singweyl
