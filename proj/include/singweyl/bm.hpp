#pragma once

// Numerical uniqueness comparator: if two half-line operators with the same
// singularity strength agree on (0, c), the difference of their singular
// m-functions is an entire function plus a remainder decaying like
// exp(-2 (c - eps) |Im sqrt(z)|) along nonreal rays.  The comparator removes
// a low-degree polynomial and fits the decay rate of what is left.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "singweyl/types.hpp"
#include "singweyl/weyl.hpp"

namespace singweyl {

struct RayFit {
    double angle = 0.0;
    double slope = 0.0;          // fitted d log|remainder| / d |Im sqrt(z)|
    bool below_floor = false;    // remainder at noise level along the whole ray
};

struct BMReport {
    std::vector<RayFit> rays;
    double threshold = 0.0;      // -2 (c - eps)
    double phi_ratio_dev = 0.0;  // |phi1/phi0 - 1| at the largest sample
    std::string verdict;         // consistent-equal | inconsistent
};

struct BMOptions {
    std::vector<double> ray_angles = {pi / 3.0, pi / 2.0, 2.0 * pi / 3.0};
    int f_fit_degree = 3;
    double r_lo = 4.0;
    double r_hi = 400.0;
    int samples_per_ray = 10;
    double noise_floor = 1e-8;      // relative to the m-function scale
    double slope_slack = 0.2;       // absolute slack on the fitted slope
};

inline BMReport bm_compare(const Potential& pot0, const Potential& pot1, const SolutionSystem& sys0,
                           const SolutionSystem& sys1, double c, double eps, BMOptions opt = {}) {
    if (!(eps > 0.0) || !(eps < c)) throw precondition_error("bm_compare: need 0 < eps < c");
    // same singularity strength: phi1/phi0 -> 1 for large |z| along i y
    {
        double x_probe = 0.05;
        double dev_prev = 1e300;
        for (double r : {1e2, 1e3, 1e4}) {
            Complex z(0.0, r);
            Complex ratio = sys1.phi(z, x_probe).u / sys0.phi(z, x_probe).u;
            double dev = std::abs(ratio - 1.0);
            if (r == 1e4) {
                if (dev > 0.1 || dev > 2.0 * dev_prev)
                    throw precondition_error("bm_compare: phi normalizations incomparable (different singularity strength)");
            }
            dev_prev = dev;
        }
    }
    BMReport rep;
    rep.threshold = -2.0 * (c - eps);
    {
        Complex z(0.0, 1e4);
        rep.phi_ratio_dev = std::abs(sys1.phi(z, 0.05).u / sys0.phi(z, 0.05).u - 1.0);
    }
    // sample the difference on all rays
    std::vector<Complex> zs, diffs;
    std::vector<double> mscale;
    for (double ang : opt.ray_angles) {
        for (int i = 0; i < opt.samples_per_ray; ++i) {
            double r = opt.r_lo * std::pow(opt.r_hi / opt.r_lo, double(i) / (opt.samples_per_ray - 1));
            Complex z = std::polar(r, ang);
            Complex m0 = singular_M(sys0, pot0, c, z);
            Complex m1 = singular_M(sys1, pot1, c, z);
            zs.push_back(z);
            diffs.push_back(m1 - m0);
            mscale.push_back(std::max(std::abs(m0), std::abs(m1)));
        }
    }
    // slopes of log|remainder| against |Im sqrt(z)|, per ray, using only
    // points above the numerical noise floor
    auto evaluate = [&](const std::vector<Complex>& rem) {
        std::vector<RayFit> fits;
        bool all_ok = true;
        for (std::size_t ri = 0; ri < opt.ray_angles.size(); ++ri) {
            RayFit rf;
            rf.angle = opt.ray_angles[ri];
            std::vector<double> xs, ys;
            for (int i = 0; i < opt.samples_per_ray; ++i) {
                std::size_t j = ri * opt.samples_per_ray + i;
                double v = std::abs(rem[j]);
                double floor = opt.noise_floor * std::max(1.0, mscale[j]);
                if (v <= floor) continue;
                xs.push_back(std::abs(sqrt_cut(zs[j]).imag()));
                ys.push_back(std::log(v));
            }
            if (xs.size() < 3) {
                rf.below_floor = true;
                rf.slope = -std::numeric_limits<double>::infinity();
            } else {
                rf.slope = fit_line(xs, ys).slope;
                if (!(rf.slope <= rep.threshold + opt.slope_slack)) all_ok = false;
            }
            fits.push_back(rf);
        }
        return std::pair<std::vector<RayFit>, bool>(fits, all_ok);
    };
    // first attempt: no entire part at all (the systems share the gauge
    // when they agree near the endpoint)
    auto [fits_raw, ok_raw] = evaluate(diffs);
    if (ok_raw) {
        rep.rays = fits_raw;
        rep.verdict = "consistent-equal";
        return rep;
    }
    // remove the entire gauge freedom: least-squares polynomial over the
    // outer half of every ray, where a decaying remainder is negligible
    int deg = opt.f_fit_degree;
    std::vector<int> fit_idx;
    for (std::size_t j = 0; j < zs.size(); ++j)
        if ((int)(j % opt.samples_per_ray) >= opt.samples_per_ray / 2) fit_idx.push_back((int)j);
    Eigen::MatrixXcd V(fit_idx.size(), deg + 1);
    Eigen::VectorXcd b(fit_idx.size());
    for (std::size_t r = 0; r < fit_idx.size(); ++r) {
        Complex z = zs[fit_idx[r]];
        double w = 1.0 / std::max(1.0, std::abs(diffs[fit_idx[r]]));  // relative weighting
        Complex p = 1.0;
        for (int d = 0; d <= deg; ++d) {
            V(r, d) = w * p;
            p *= z;
        }
        b(r) = w * diffs[fit_idx[r]];
    }
    Eigen::VectorXcd coef = V.colPivHouseholderQr().solve(b);
    std::vector<Complex> rem(zs.size());
    for (std::size_t j = 0; j < zs.size(); ++j) {
        Complex acc = 0.0, p = 1.0;
        for (int d = 0; d <= deg; ++d) {
            acc += coef(d) * p;
            p *= zs[j];
        }
        rem[j] = diffs[j] - acc;
    }
    auto [fits, ok] = evaluate(rem);
    rep.rays = fits;
    rep.verdict = ok ? "consistent-equal" : "inconsistent";
    return rep;
}

}  // namespace singweyl
