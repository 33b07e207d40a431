#pragma once

// Dirichlet/Neumann spectra of the truncated problem on (a,c), counting
// functions, interlacing and gap diagnostics, the Krein two-sequence
// product for m_-, and product reconstruction of the regular solution.

#include <cmath>
#include <string>
#include <vector>

#include "singweyl/schrodinger.hpp"
#include "singweyl/specfun.hpp"
#include "singweyl/types.hpp"

namespace singweyl {

struct EigenData {
    double c = 0.0;
    ZeroSequence mu;   // Dirichlet eigenvalues mu_1, mu_2, ...
    ZeroSequence nu;   // Neumann eigenvalues nu_0, nu_1, ...
    double delta = 0.0;  // Weyl-law slope: sqrt(mu_j) ~ (pi/delta) j
    double krein_scale = 0.0;  // C' with m_-(0) = -C'
};

namespace detail {

// Illinois-damped false position on a real function with a sign change.
template <class F>
inline double refine_root(F&& f, double lo, double hi, double flo, double fhi, double rel_tol) {
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0)) throw numeric_error("refine_root: endpoints do not bracket");
    double scale = std::max({std::abs(lo), std::abs(hi), 1.0});
    int side = 0;
    for (int it = 0; it < 200; ++it) {
        double mid = (hi * flo - lo * fhi) / (flo - fhi);
        if (!(mid > std::min(lo, hi) && mid < std::max(lo, hi))) mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0.0 || std::abs(hi - lo) < rel_tol * scale) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
            if (side == -1) fhi *= 0.5;
            side = -1;
        } else {
            hi = mid;
            fhi = fm;
            if (side == +1) flo *= 0.5;
            side = +1;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

// First `count` zeros of z -> phi(z,c), bracketed through the Pruefer
// count and refined to 1e-10 relative.
inline ZeroSequence dirichlet_eigs(const Potential& pot, double c, int count, double tol = 1e-10) {
    pot.validate();
    if (count <= 0) throw precondition_error("dirichlet_eigs: count must be positive");
    auto phi_at = [&](double z) { return regular_solution_phi(pot, Complex(z, 0.0), c, 1e-11).u.real(); };
    auto N = [&](double z) { return pruefer_count(pot, z, c, BoundaryCondition::Dirichlet); };
    // lower edge: push down until no zeros are below
    double zlo = 0.0;
    double span = 10.0;
    while (N(zlo) > 0) {
        zlo -= span;
        span *= 2.0;
        if (span > 1e12) throw numeric_error("dirichlet_eigs: no lower bound on the spectrum");
    }
    ZeroSequence out;
    const double l_eff = pot.regular_left ? 0.0 : pot.l;
    const double weyl = pi / (c - pot.a);
    int have = 0;
    double left = zlo;
    int n_left = N(left);
    for (int j = 1; j <= count; ++j) {
        double guess = std::pow(weyl * (j + 0.5 * l_eff + 0.25), 2.0);
        double right = std::max(guess, left + 1.0);
        int n_right = N(right);
        while (n_right < j) {
            right += std::max(2.0 * weyl * weyl * (j + 1.0), 10.0);
            n_right = N(right);
        }
        // shrink the bracket until it holds exactly one new zero
        double lo = left, hi = right;
        int n_lo = n_left;
        while (N(hi) > j || n_lo < j - 1) {
            double mid = 0.5 * (lo + hi);
            int n_mid = N(mid);
            if (n_mid >= j)
                hi = mid;
            else {
                lo = mid;
                n_lo = n_mid;
            }
            if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi)))
                throw numeric_error("dirichlet_eigs: bracket collapse at index " + std::to_string(j));
        }
        double flo = phi_at(lo), fhi = phi_at(hi);
        double root = detail::refine_root(phi_at, lo, hi, flo, fhi, tol);
        out.zeros.push_back(root);
        ++have;
        left = root + std::abs(root) * 1e-9 + 1e-12;
        n_left = j;
    }
    (void)have;
    for (std::size_t i = 0; i < out.zeros.size(); ++i)
        if (std::abs(out.zeros[i]) < 1e-9) out.has_zero_eigenvalue = true;
    return out;
}

// First `count` zeros of z -> phi'(z,c). Uses interlacing with the
// Dirichlet sequence for the brackets.
inline ZeroSequence neumann_eigs(const Potential& pot, double c, int count, double tol = 1e-10) {
    pot.validate();
    if (count <= 0) throw precondition_error("neumann_eigs: count must be positive");
    ZeroSequence mu = dirichlet_eigs(pot, c, count, tol);
    auto dphi_at = [&](double z) { return regular_solution_phi(pot, Complex(z, 0.0), c, 1e-11).du.real(); };
    ZeroSequence out;
    // nu_0 sits below mu_1
    {
        double hi = mu.zeros[0] - 1e-8 * std::max(1.0, std::abs(mu.zeros[0]));
        double fhi = dphi_at(hi);
        double step = std::max(1.0, std::abs(mu.zeros[0]));
        double lo = mu.zeros[0] - step;
        double flo = dphi_at(lo);
        while ((flo > 0) == (fhi > 0)) {
            step *= 2.0;
            lo = mu.zeros[0] - step;
            flo = dphi_at(lo);
            if (step > 1e12) throw numeric_error("neumann_eigs: no sign change below the first Dirichlet eigenvalue");
        }
        out.zeros.push_back(detail::refine_root(dphi_at, lo, hi, flo, fhi, tol));
    }
    for (int j = 1; j < count; ++j) {
        double pad_lo = 1e-8 * std::max(1.0, std::abs(mu.zeros[j - 1]));
        double pad_hi = 1e-8 * std::max(1.0, std::abs(mu.zeros[j]));
        double lo = mu.zeros[j - 1] + pad_lo, hi = mu.zeros[j] - pad_hi;
        double flo = dphi_at(lo), fhi = dphi_at(hi);
        if ((flo > 0) == (fhi > 0))
            throw numeric_error("neumann_eigs: interlacing bracket failed at index " + std::to_string(j));
        out.zeros.push_back(detail::refine_root(dphi_at, lo, hi, flo, fhi, tol));
    }
    for (double v : out.zeros)
        if (std::abs(v) < 1e-9) out.has_zero_eigenvalue = true;
    return out;
}

inline int counting_function(const ZeroSequence& eigs, double R) {
    if (eigs.empty()) throw precondition_error("counting_function: empty sequence");
    if (R > eigs.zeros.back())
        throw precondition_error("counting_function: R beyond the computed range; compute more eigenvalues");
    int n = 0;
    for (double v : eigs.zeros)
        if (v <= R) ++n;
    return n;
}

inline EigenData compute_eigen_data(const Potential& pot, double c, int count, double tol = 1e-10) {
    EigenData data;
    data.c = c;
    data.mu = dirichlet_eigs(pot, c, count, tol);
    data.nu = neumann_eigs(pot, c, count, tol);
    // Weyl slope from sqrt(mu_j) ~ (pi/delta) j + const, skipping the head
    std::vector<double> js, sq;
    for (std::size_t j = data.mu.count() / 2; j < data.mu.count(); ++j) {
        if (data.mu.zeros[j] <= 0.0) continue;
        js.push_back((double)(j + 1));
        sq.push_back(std::sqrt(data.mu.zeros[j]));
    }
    if (js.size() >= 2) {
        LineFit fit = fit_line(js, sq);
        data.delta = pi / fit.slope;
    } else {
        data.delta = c - pot.a;
    }
    double phi0, dphi0;
    {
        auto s = regular_solution_phi(pot, Complex(0.0, 0.0), c, 1e-11);
        phi0 = s.u.real();
        dphi0 = s.du.real();
    }
    if (std::abs(phi0) < 1e-12)
        data.krein_scale = std::numeric_limits<double>::quiet_NaN();  // zero eigenvalue; product rule applies
    else
        data.krein_scale = dphi0 / phi0;
    return data;
}

struct HypothesisReport {
    bool interlacing_ok = false;
    int first_violation = -1;  // interlacing violation index, -1 if none
    int gap_index = -1;        // smallest index from which both gap bounds hold
    double delta_fit = 0.0;
    double r = 1.0;
};

// Interlacing and the gap inequalities mu_j - nu_{j-1} >= nu_{j-1}^{-r} + mu_j^{-r},
// nu_j - mu_j >= nu_j^{-r} + mu_j^{-r}; reports the first index from which
// they hold through the end of the data.
inline HypothesisReport verify_hypothesis_ev(const EigenData& data, double r) {
    if (data.mu.count() < 10 || data.nu.count() < 10)
        throw precondition_error("verify_hypothesis_ev: need at least 10 eigenvalue pairs");
    HypothesisReport rep;
    rep.r = r;
    rep.delta_fit = data.delta;
    rep.interlacing_ok = true;
    std::size_t n = std::min(data.mu.count(), data.nu.count());
    for (std::size_t j = 0; j < n; ++j) {
        // stored order: nu_j < mu_{j+1} < nu_{j+1}
        bool ok = data.mu.zeros[j] > data.nu.zeros[j];
        if (j + 1 < data.nu.count()) ok = ok && data.nu.zeros[j + 1] > data.mu.zeros[j];
        if (!ok) {
            rep.interlacing_ok = false;
            rep.first_violation = (int)j;
            break;
        }
    }
    auto pw = [r](double v) { return std::pow(std::max(std::abs(v), 1e-300), -r); };
    int last_bad = -1;
    for (std::size_t j = 0; j < n; ++j) {
        // mu_j here is the (j+1)-th Dirichlet eigenvalue, nu_{j-1} the j-th
        // stored Neumann one
        double mu = data.mu.zeros[j], nu_prev = data.nu.zeros[j];
        bool ok1 = (mu - nu_prev) >= pw(nu_prev) + pw(mu);
        bool ok2 = true;
        if (j + 1 < data.nu.count()) {
            double nu = data.nu.zeros[j + 1];
            ok2 = (nu - mu) >= pw(nu) + pw(mu);
        }
        if (!(ok1 && ok2)) last_bad = (int)j;
    }
    rep.gap_index = last_bad + 1;
    return rep;
}

// Krein product for m_- on (a,c): -C' prod (1 - z/nu_{j-1}) / (1 - z/mu_j)
// with a fitted two-sequence tail.
inline Complex krein_m_minus(const EigenData& data, Complex z) {
    std::size_t n = std::min(data.mu.count(), data.nu.count());
    if (n < 4) throw precondition_error("krein_m_minus: need eigenvalue data");
    if (!std::isfinite(data.krein_scale))
        throw precondition_error("krein_m_minus: zero Dirichlet eigenvalue; scale undefined");
    Complex prod = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        Complex denom = 1.0 - z / data.mu.zeros[j];
        if (std::abs(denom) < 1e-14)
            throw numeric_error("krein_m_minus: z at a Dirichlet eigenvalue pole");
        prod *= (1.0 - z / data.nu.zeros[j]) / denom;
    }
    // tail: log of the remaining ratio ~ -z sum_j (1/nu_{j-1} - 1/mu_j)
    // using Weyl-law fits of both sequences
    std::vector<double> js, smu, snu;
    for (std::size_t j = n / 2; j < n; ++j) {
        if (data.mu.zeros[j] <= 0 || data.nu.zeros[j] <= 0) continue;
        js.push_back((double)(j + 1));
        smu.push_back(std::sqrt(data.mu.zeros[j]));
        snu.push_back(std::sqrt(data.nu.zeros[j]));
    }
    if (js.size() >= 2) {
        LineFit fmu = fit_line(js, smu);
        LineFit fnu = fit_line(js, snu);
        double tail = 0.0;
        for (std::size_t j = n + 1; j <= n + 200000; ++j) {
            double ru = fnu.slope * (double)j + fnu.intercept;
            double rm = fmu.slope * (double)j + fmu.intercept;
            tail += 1.0 / (ru * ru) - 1.0 / (rm * rm);
        }
        prod *= std::exp(-z * tail);
    }
    return -data.krein_scale * prod;
}

// phi and phi' at x from the eigenvalue products anchored at z = 0.
struct ProductSolution {
    Complex phi, dphi;
};

inline ProductSolution phi_from_products(const EigenData& data, const Potential& pot, Complex z) {
    auto s0 = regular_solution_phi(pot, Complex(0.0, 0.0), data.c, 1e-11);
    HadamardOptions opt;
    ProductSolution out;
    out.phi = hadamard_eval(data.mu, z, s0.u.real(), opt);
    out.dphi = hadamard_eval(data.nu, z, s0.du.real(), opt);
    return out;
}

struct CoronaReport {
    double A = 0.0;       // fitted decay exponent in B exp(-A |z|^s)
    double B = 0.0;       // fitted floor
    double s = 1.0;
    double min_value = 0.0;  // grid minimum of |phi| + |phi'|
    bool positive = false;   // no common zeros seen on the grid
    double sharp_A = 0.0;    // same fit against exp(-A |sqrt z|)
    double sharp_B = 0.0;
};

// Lower bound fit for |phi(z,c)| + |phi'(z,c)| >= B exp(-A |z|^s) on the
// given grid; the sharp variant replaces |z|^s by |z|^{1/2}.
inline CoronaReport corona_bound_check(const EigenData& data, const Potential& pot,
                                       const std::vector<Complex>& zgrid, double s) {
    if (!(s > 0.5)) throw precondition_error("corona_bound_check: need s > 1/2");
    if (zgrid.size() < 3) throw precondition_error("corona_bound_check: need at least 3 grid points");
    CoronaReport rep;
    rep.s = s;
    std::vector<double> t_s, t_half, logs;
    double minval = std::numeric_limits<double>::infinity();
    for (Complex z : zgrid) {
        auto sol = regular_solution_phi(pot, z, data.c, 1e-11);
        double v = std::abs(sol.u) + std::abs(sol.du);
        minval = std::min(minval, v);
        if (v <= 0.0) continue;
        t_s.push_back(std::pow(std::abs(z), s));
        t_half.push_back(std::sqrt(std::abs(z)));
        logs.push_back(std::log(v));
    }
    rep.min_value = minval;
    rep.positive = minval > 0.0;
    auto lower_fit = [&](const std::vector<double>& t, double& A, double& B) {
        LineFit f = fit_line(t, logs);
        A = std::max(0.0, -f.slope);
        double c0 = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < t.size(); ++i) c0 = std::min(c0, logs[i] + A * t[i]);
        B = std::exp(c0);
    };
    lower_fit(t_s, rep.A, rep.B);
    lower_fit(t_half, rep.sharp_A, rep.sharp_B);
    return rep;
}

}  // namespace singweyl
