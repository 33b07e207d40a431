#pragma once

// Spectral measure via Stieltjes inversion of the singular m-function,
// the spectral transform and its inverse, norming constants, support
// classification, and the resolvent-image identities.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "singweyl/ode.hpp"
#include "singweyl/quadrature.hpp"
#include "singweyl/types.hpp"
#include "singweyl/weyl.hpp"

namespace singweyl {

using MEvaluator = std::function<Complex(Complex)>;

struct SpectralAtom {
    double lambda = 0.0;
    double mass = 0.0;
};

struct SpectralMeasure {
    std::vector<double> grid;      // increasing lambda values
    std::vector<double> density;   // a.c. density d rho / d lambda
    std::vector<SpectralAtom> atoms;
    std::vector<int> flagged;      // grid indices where extrapolation failed
};

struct TransformedFunction {
    std::vector<double> grid;
    std::vector<double> values;        // fhat on the density grid
    std::vector<double> atom_values;   // fhat at the atoms
};

inline std::vector<double> default_eps_schedule() { return {1e-1, 3e-2, 1e-2, 3e-3, 1e-3}; }

namespace detail {

// limit of eps * Im M(lambda + i eps): the atom mass at lambda (0 when
// lambda is not an atom)
inline double atom_mass_limit(const MEvaluator& M, double lambda, const std::vector<double>& eps) {
    std::vector<double> vals;
    for (double e : eps) vals.push_back(e * M(Complex(lambda, e)).imag());
    return richardson_to_zero(eps, vals);
}

}  // namespace detail

// Density by Richardson extrapolation of Im M(lambda + i eps)/pi over the
// eps schedule; atoms where eps * Im M tends to a positive limit, located
// by a local search around flagged grid points.
inline SpectralMeasure stieltjes_invert(const MEvaluator& M, double lam0, double lam1, int npoints,
                                        std::vector<double> eps_schedule = default_eps_schedule()) {
    if (!(lam1 > lam0) || npoints < 2) throw precondition_error("stieltjes_invert: bad window");
    for (std::size_t i = 1; i < eps_schedule.size(); ++i)
        if (!(eps_schedule[i] < eps_schedule[i - 1]) || eps_schedule.back() < 1e-6)
            throw precondition_error("stieltjes_invert: eps schedule must decrease and stay >= 1e-6");
    SpectralMeasure out;
    const double h = (lam1 - lam0) / (npoints - 1);
    std::vector<double> atom_candidates;
    for (int i = 0; i < npoints; ++i) {
        double lam = lam0 + h * i;
        out.grid.push_back(lam);
        std::vector<double> vals;
        bool ok = true;
        for (double e : eps_schedule) {
            Complex m = M(Complex(lam, e));
            if (!std::isfinite(m.imag())) {
                ok = false;
                break;
            }
            vals.push_back(m.imag() / pi);
        }
        double dens = ok ? richardson_to_zero(eps_schedule, vals) : 0.0;
        if (!ok || !std::isfinite(dens)) {
            out.flagged.push_back(i);
            dens = 0.0;
        }
        // pole proximity: eps * Im M stabilizing at a positive value
        double a_last = eps_schedule.back() * vals.back() * pi;
        if (ok && a_last > 1e-3) {
            double a_prev = eps_schedule[eps_schedule.size() - 2] *
                            vals[vals.size() - 2] * pi;
            if (a_prev > 0.0 && a_last / a_prev > 0.5) {
                atom_candidates.push_back(lam);
                dens = 0.0;  // the grid point sits on (or next to) a pole
                out.flagged.push_back(i);
            }
        }
        out.density.push_back(std::max(0.0, dens));
    }
    // refine candidates: maximize Im M at the smallest eps over +-h, then
    // extrapolate the mass
    double e_min = eps_schedule.back();
    for (double lam : atom_candidates) {
        double lo = lam - h, hi = lam + h;
        for (int it = 0; it < 80; ++it) {
            double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
            double v1 = M(Complex(m1, e_min)).imag();
            double v2 = M(Complex(m2, e_min)).imag();
            if (v1 < v2)
                lo = m1;
            else
                hi = m2;
        }
        double loc = 0.5 * (lo + hi);
        double mass = detail::atom_mass_limit(M, loc, eps_schedule);
        if (!(mass > 0.0) || !std::isfinite(mass)) continue;
        bool dup = false;
        for (auto& a : out.atoms)
            if (std::abs(a.lambda - loc) < 2.0 * h) dup = true;
        if (!dup) out.atoms.push_back({loc, mass});
    }
    return out;
}

// fhat(lambda) = integral of phi(lambda, x) f(x) dx over the support.
inline TransformedFunction transform_forward(const SolutionSystem& sys, const std::function<double(double)>& f,
                                             double sup_lo, double sup_hi, const SpectralMeasure& measure) {
    if (!(sup_hi > sup_lo)) throw precondition_error("transform_forward: empty support");
    TransformedFunction out;
    out.grid = measure.grid;
    auto eval = [&](double lam) {
        auto g = [&](double x) { return (sys.phi(Complex(lam, 0.0), x).u * f(x)).real(); };
        double freq = std::sqrt(std::max(lam, 0.0));
        return integrate_oscillatory<double>(g, sup_lo, sup_hi, freq, 4);
    };
    for (double lam : measure.grid) out.values.push_back(eval(lam));
    for (const auto& a : measure.atoms) out.atom_values.push_back(eval(a.lambda));
    return out;
}

// integral of phi(lambda, x) fhat(lambda) d rho(lambda): trapezoid on the
// density grid plus the atom sum.
inline double transform_inverse(const SolutionSystem& sys, const SpectralMeasure& measure,
                                const TransformedFunction& fhat, double x) {
    if (fhat.grid.size() != measure.grid.size())
        throw precondition_error("transform_inverse: fhat not sampled on the measure grid");
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < measure.grid.size(); ++i) {
        double g0 = sys.phi(Complex(measure.grid[i], 0.0), x).u.real() * fhat.values[i] * measure.density[i];
        double g1 = sys.phi(Complex(measure.grid[i + 1], 0.0), x).u.real() * fhat.values[i + 1] *
                    measure.density[i + 1];
        acc += 0.5 * (g0 + g1) * (measure.grid[i + 1] - measure.grid[i]);
    }
    for (std::size_t j = 0; j < measure.atoms.size(); ++j)
        acc += sys.phi(Complex(measure.atoms[j].lambda, 0.0), x).u.real() * fhat.atom_values[j] *
               measure.atoms[j].mass;
    return acc;
}

// squared rho-norm of fhat on the computed grid
inline double norm_sq_rho(const SpectralMeasure& measure, const TransformedFunction& fhat) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < measure.grid.size(); ++i) {
        double g0 = fhat.values[i] * fhat.values[i] * measure.density[i];
        double g1 = fhat.values[i + 1] * fhat.values[i + 1] * measure.density[i + 1];
        acc += 0.5 * (g0 + g1) * (measure.grid[i + 1] - measure.grid[i]);
    }
    for (std::size_t j = 0; j < measure.atoms.size(); ++j)
        acc += fhat.atom_values[j] * fhat.atom_values[j] * measure.atoms[j].mass;
    return acc;
}

// minus the residue of M at an eigenvalue: lim (lambda0 - z) M(z) along
// z = lambda0 + i eps; equals 1 / integral phi(lambda0)^2.
inline double norming_constant(const MEvaluator& M, double lambda0,
                               std::vector<double> eps_schedule = default_eps_schedule()) {
    std::vector<double> re, im;
    for (double e : eps_schedule) {
        Complex v = Complex(0.0, -e) * M(Complex(lambda0, e));
        re.push_back(v.real());
        im.push_back(v.imag());
    }
    double lr = richardson_to_zero(eps_schedule, re);
    double li = richardson_to_zero(eps_schedule, im);
    // at an eigenvalue eps * Im M stabilizes; on a.c. spectrum it decays
    // proportionally to eps and the extrapolated limit is spurious
    double a_prev = re[re.size() - 2], a_last = re.back();
    bool stabilized = a_last > 0.0 && a_last > 0.5 * a_prev;
    if (!(lr > 0.0) || !stabilized || std::abs(li) > 1e-3 * std::max(1.0, std::abs(lr)))
        throw precondition_error("norming_constant: limit not positive; lambda0 is not an eigenvalue");
    return lr;
}

struct SupportClassification {
    std::vector<double> ac;  // lim Im M in (0, inf)
    std::vector<double> s;   // growth proxy: factor >= 3 per schedule step
    std::vector<double> p;   // eps * Im M converging to a positive value
};

inline SupportClassification classify_supports(const MEvaluator& M, double lam0, double lam1, int npoints,
                                               std::vector<double> eps_schedule = default_eps_schedule()) {
    SupportClassification out;
    const double h = (lam1 - lam0) / (npoints - 1);
    for (int i = 0; i < npoints; ++i) {
        double lam = lam0 + h * i;
        std::vector<double> im;
        for (double e : eps_schedule) im.push_back(M(Complex(lam, e)).imag());
        std::size_t n = im.size();
        double a_last = eps_schedule[n - 1] * im[n - 1];
        double a_prev = eps_schedule[n - 2] * im[n - 2];
        // eps * Im M stabilizing at a positive value marks a pole; for an
        // a.c. point it decays proportionally to eps
        if (a_last > 1e-3 && a_prev > 0.0 && a_last / a_prev > 0.7) {
            out.p.push_back(lam);
            continue;
        }
        bool growing = true;
        for (std::size_t k = 1; k < im.size(); ++k)
            if (!(im[k] >= 3.0 * im[k - 1] && im[k] > 0.0)) growing = false;
        if (growing && im.back() > 1.0) {
            out.s.push_back(lam);
            continue;
        }
        double lim = richardson_to_zero(eps_schedule, im);
        if (std::isfinite(lim) && lim > 1e-8) out.ac.push_back(lam);
    }
    return out;
}

namespace detail {

// dense representation of the decaying solution at +infinity, built from a
// single backward integration; quintic Hermite between accepted steps
struct DecayingSolution {
    std::vector<double> x;
    std::vector<Complex> u, du, d2u;

    Complex eval(double y) const {
        auto it = std::upper_bound(x.begin(), x.end(), y);
        std::size_t j = (it == x.begin()) ? 0 : (it - x.begin() - 1);
        if (j + 1 >= x.size()) j = x.size() - 2;
        double h = x[j + 1] - x[j];
        double t = (y - x[j]) / h;
        double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
        Complex p0 = u[j], p1 = u[j + 1];
        Complex m0 = du[j] * h, m1 = du[j + 1] * h;
        Complex s0 = d2u[j] * h * h, s1 = d2u[j + 1] * h * h;
        return p0 * (1 - 10 * t3 + 15 * t4 - 6 * t5) + m0 * (t - 6 * t3 + 8 * t4 - 3 * t5) +
               s0 * (0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5) + p1 * (10 * t3 - 15 * t4 + 6 * t5) +
               m1 * (-4 * t3 + 7 * t4 - 3 * t5) + s1 * (0.5 * t3 - t4 + 0.5 * t5);
    }
};

inline DecayingSolution build_decaying_solution(const Potential& pot, Complex z, double lo, double hi) {
    Complex kappa = sqrt_cut(-z);
    if (kappa.real() <= 0.0) throw precondition_error("decaying solution: need Re sqrt(-z) > 0");
    double X = hi + std::min(40.0, 30.0 / kappa.real());
    if (kappa.real() * (X - lo) > 600.0)
        throw precondition_error("decaying solution: dynamic range exceeds double precision");
    DecayingSolution out;
    auto observe = [&](double xx, const State2& s) {
        out.x.push_back(xx);
        out.u.push_back(s.u);
        out.du.push_back(s.du);
        out.d2u.push_back((pot.q(xx) - z) * s.u);
    };
    integrate_schroedinger(pot.q, z, X, lo, State2{Complex(1.0, 0.0), -kappa}, OdeOptions{}, observe);
    std::reverse(out.x.begin(), out.x.end());
    std::reverse(out.u.begin(), out.u.end());
    std::reverse(out.du.begin(), out.du.end());
    std::reverse(out.d2u.begin(), out.d2u.end());
    return out;
}

}  // namespace detail

struct ResolventImageReport {
    double max_rel_dev = 0.0;         // transform of G(z,x,.) vs phi(lambda,x)/(lambda-z)
    double max_rel_dev_deriv = 0.0;   // first z-derivative variant
};

// U maps y -> G(z,x,y) to lambda -> phi(lambda,x)/(lambda-z); checked on a
// lambda grid, together with the k=1 derivative identity.  psi is computed
// by backward integration and rescaled to match theta + M phi at a small
// anchor; the combination theta + M phi itself cancels catastrophically at
// large y.
inline ResolventImageReport resolvent_image_check(const SolutionSystem& sys, const Potential& pot, double c,
                                                  Complex z, double x, const std::vector<double>& lambda_grid,
                                                  double y_max = 40.0) {
    SolutionSystem base = sys;
    base.gauge_g = nullptr;
    base.gauge_f = nullptr;
    const double hz = 1e-4 * std::max(1.0, std::abs(z));
    const double eps_lo = pot.a + 1e-8;
    const double anchor = std::min(1.0, 0.5 * (eps_lo + y_max));
    auto make_psi = [&](Complex zz) {
        Complex Mz = singular_M(base, pot, c, zz);
        auto dec = detail::build_decaying_solution(pot, zz, eps_lo, y_max);
        Complex ref = sys.theta(zz, anchor).u + Mz * sys.phi(zz, anchor).u;
        Complex scale = ref / dec.eval(anchor);
        return [dec = std::move(dec), scale](double y) { return scale * dec.eval(y); };
    };
    auto psi0 = make_psi(z);
    auto psip = make_psi(z + hz);
    auto psim = make_psi(z - hz);
    auto G_at = [&](Complex zz, const std::function<Complex(double)>& psi, double y) {
        double lo = std::min(x, y), hi = std::max(x, y);
        return sys.phi(zz, lo).u * psi(hi);
    };
    ResolventImageReport rep;
    // G has a derivative kink at y = x: integrate the two sides separately
    auto split_integral = [&](const std::function<double(double)>& fn, double freq) {
        return integrate_oscillatory<double>(fn, eps_lo, x, freq, 4) +
               integrate_oscillatory<double>(fn, x, y_max, freq, 8);
    };
    for (double lam : lambda_grid) {
        double freq = std::sqrt(std::max(lam, 0.0));
        auto f0 = [&](double y) { return (G_at(z, psi0, y) * sys.phi(Complex(lam, 0.0), y).u).real(); };
        double lhs = split_integral(f0, freq);
        double rhs = (sys.phi(Complex(lam, 0.0), x).u / (lam - z)).real();
        rep.max_rel_dev = std::max(rep.max_rel_dev, std::abs(lhs - rhs) / std::max(1e-12, std::abs(rhs)));
        auto f1 = [&](double y) {
            Complex dG = (G_at(z + hz, psip, y) - G_at(z - hz, psim, y)) / (2.0 * hz);
            return (dG * sys.phi(Complex(lam, 0.0), y).u).real();
        };
        double lhs1 = split_integral(f1, freq);
        Complex den = (lam - z) * (lam - z);
        double rhs1 = (sys.phi(Complex(lam, 0.0), x).u / den).real();
        rep.max_rel_dev_deriv =
            std::max(rep.max_rel_dev_deriv, std::abs(lhs1 - rhs1) / std::max(1e-12, std::abs(rhs1)));
    }
    return rep;
}

struct EfEntireReport {
    double max_cr_residual = 0.0;   // discretized d/dzbar of E_f on the disc
    double max_conj_asym = 0.0;     // |E_f(z*)* - E_f(z)|
    double scale = 0.0;             // typical |E_f| for normalization
};

// E_f(z) = m_f(z) - fhat(z) fhat(z*)* M(z) must be entire across the real
// axis; checked by Cauchy-Riemann residuals on a small grid crossing the
// window.
inline EfEntireReport ef_entire_check(const SolutionSystem& sys, const MEvaluator& M,
                                      const std::function<double(double)>& f, double sup_lo, double sup_hi,
                                      double win_lo, double win_hi) {
    // cumulative inner integrals on a fixed fine grid
    const int N = 2000;
    const double dx = (sup_hi - sup_lo) / N;
    auto E_at = [&](Complex z) {
        std::vector<Complex> phi(N + 1), psi(N + 1);
        Complex Mz = M(z);
        for (int i = 0; i <= N; ++i) {
            double x = sup_lo + dx * i;
            if (x <= 0.0) x = 1e-9;
            SolutionSample ph = sys.phi(z, x);
            SolutionSample th = sys.theta(z, x);
            phi[i] = ph.u;
            psi[i] = th.u + Mz * ph.u;
        }
        // m_f = int f (psi Phi + phi (Psi_end - Psi)) with Phi, Psi cumulative
        std::vector<Complex> Phi(N + 1, 0.0), Psi(N + 1, 0.0);
        for (int i = 1; i <= N; ++i) {
            double x0 = sup_lo + dx * (i - 1), x1 = sup_lo + dx * i;
            Phi[i] = Phi[i - 1] + 0.5 * dx * (phi[i - 1] * f(x0) + phi[i] * f(x1));
            Psi[i] = Psi[i - 1] + 0.5 * dx * (psi[i - 1] * f(x0) + psi[i] * f(x1));
        }
        Complex mf = 0.0, fhat = Phi[N];
        for (int i = 0; i <= N; ++i) {
            double x = sup_lo + dx * i;
            double wgt = (i == 0 || i == N) ? 0.5 : 1.0;
            mf += wgt * dx * f(x) * (psi[i] * Phi[i] + phi[i] * (Psi[N] - Psi[i]));
        }
        return mf - fhat * fhat * Mz;  // f real: fhat(z*)* = fhat(z)
    };
    double lc = 0.5 * (win_lo + win_hi);
    double r = std::min(1.0, 0.4 * (win_hi - win_lo));
    double h = 0.5 * r;
    EfEntireReport rep;
    for (int i = -1; i <= 1; ++i) {
        for (int j = -1; j <= 1; ++j) {
            Complex z(lc + i * h, j * h);
            if (j == 0) z += Complex(0.0, 1e-6);  // stay off the axis for M
            Complex E = E_at(z);
            rep.scale = std::max(rep.scale, std::abs(E));
            Complex Econj = E_at(std::conj(z));
            rep.max_conj_asym = std::max(rep.max_conj_asym, std::abs(std::conj(Econj) - E));
            // circle average of E(z + h e^{it}) e^{it} equals h dE/dzbar and
            // vanishes for analytic E at every order in h (up to the n = 7
            // Taylor term with 8 points)
            Complex cr = 0.0;
            for (int k = 0; k < 8; ++k) {
                double t = 2.0 * pi * k / 8.0;
                Complex w = std::polar(1.0, t);
                cr += E_at(z + h * w) * w;
            }
            cr /= 8.0 * h;
            rep.max_cr_residual = std::max(rep.max_cr_residual, std::abs(cr));
        }
    }
    return rep;
}

// CSV-facing helper: measure density rescaled by the gauge weight.
inline SpectralMeasure gauge_rescale(const SpectralMeasure& m, const std::function<double(double)>& g) {
    SpectralMeasure out = m;
    for (std::size_t i = 0; i < m.grid.size(); ++i) out.density[i] *= std::exp(-2.0 * g(m.grid[i]));
    for (auto& a : out.atoms) a.mass *= std::exp(-2.0 * g(a.lambda));
    return out;
}

}  // namespace singweyl
