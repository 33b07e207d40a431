#pragma once

#include <cmath>
#include <vector>

#include "singweyl/types.hpp"

// Bessel/Neumann functions of real order and complex argument, the upper
// incomplete Gamma function, and genus-0 Hadamard product evaluation.
// Branch cuts along the negative real axis throughout.

namespace singweyl {

namespace detail {

constexpr double euler_gamma = 0.5772156649015328606065120900824024;
constexpr double bessel_switch_radius = 20.0;
// the Hankel expansion is already at full accuracy here while the series
// still cancels mildly; used for orders without a closed trigonometric form
constexpr double bessel_switch_radius_generic = 14.0;
constexpr double overflow_im = 690.0;  // e^|Im w| beyond double range

inline bool is_half_integer(double nu) {
    return std::abs(nu - std::floor(nu) - 0.5) < 1e-12;
}
inline bool is_nonneg_integer(double nu) {
    return nu >= -1e-12 && std::abs(nu - std::round(nu)) < 1e-12;
}

// digamma at positive integer m
inline double psi_int(int m) {
    double s = -euler_gamma;
    for (int j = 1; j < m; ++j) s += 1.0 / j;
    return s;
}

// ascending series, |w| moderate; works for any real nu with Gamma(nu+k+1) finite
inline Complex bessel_j_series(double nu, Complex w) {
    if (std::abs(w) == 0.0) {
        if (nu == 0.0) return 1.0;
        if (nu > 0.0) return 0.0;
        throw precondition_error("bessel_j: negative order at w=0");
    }
    // long double accumulation: the alternating series cancels ~e^{|w|/..}
    // orders of magnitude near the switch radius
    using LComplex = std::complex<long double>;
    LComplex half = LComplex(w) * 0.5L;
    LComplex q = -half * half;
    Complex pref = std::exp(nu * std::log(0.5 * w));
    LComplex term = 1.0L / (long double)std::tgamma(nu + 1.0), sum = term;
    for (int k = 1; k <= 400; ++k) {
        term *= q / ((long double)k * (long double)(nu + k));
        sum += term;
        if (std::abs(term) < 1e-21L * std::abs(sum))
            return pref * Complex((double)sum.real(), (double)sum.imag());
    }
    throw numeric_error("bessel_j: series did not converge");
}

// Hankel asymptotic expansion pieces P(nu,w), Q(nu,w)
inline void bessel_pq(double nu, Complex w, Complex& P, Complex& Q) {
    const double mu = 4.0 * nu * nu;
    Complex w8 = 8.0 * w;
    P = 1.0;
    Q = (mu - 1.0) / w8;
    Complex termP = 1.0, termQ = Q;
    double prevP = 1e300, prevQ = 1e300;
    for (int k = 1; k <= 30; ++k) {
        double f1 = mu - (4.0 * k - 3.0) * (4.0 * k - 3.0);
        double f2 = mu - (4.0 * k - 1.0) * (4.0 * k - 1.0);
        termP *= -f1 * f2 / (2.0 * k * (2.0 * k - 1.0)) / (w8 * w8);
        double f3 = mu - (4.0 * k + 1.0) * (4.0 * k + 1.0);
        termQ *= -f2 * f3 / (2.0 * k * (2.0 * k + 1.0)) / (w8 * w8);
        if (std::abs(termP) > prevP || std::abs(termQ) > prevQ) break;  // divergence onset
        P += termP;
        Q += termQ;
        prevP = std::abs(termP);
        prevQ = std::abs(termQ);
        if (prevP < 1e-17 && prevQ < 1e-17) break;
    }
}

inline void check_bessel_overflow(Complex w) {
    if (std::abs(w.imag()) > overflow_im)
        throw numeric_error("bessel: e^|Im w| overflows double range (scaled output not requested)");
}

// half-integer orders via spherical closed forms + upward recurrence
inline Complex bessel_j_half(double nu, Complex w) {
    Complex pref = std::sqrt(2.0 / (pi * w));
    Complex jm = pref * std::cos(w);   // J_{-1/2}
    Complex j = pref * std::sin(w);    // J_{1/2}
    double v = 0.5;
    while (v < nu - 0.5 + 1e-9) {
        Complex jn = (2.0 * v / w) * j - jm;
        jm = j;
        j = jn;
        v += 1.0;
    }
    return j;
}

inline Complex bessel_y_half(double nu, Complex w) {
    Complex pref = std::sqrt(2.0 / (pi * w));
    Complex ym = pref * std::sin(w);   // Y_{-1/2}
    Complex y = -pref * std::cos(w);   // Y_{1/2}
    double v = 0.5;
    while (v < nu - 0.5 + 1e-9) {
        Complex yn = (2.0 * v / w) * y - ym;
        ym = y;
        y = yn;
        v += 1.0;
    }
    return y;
}

// Y_n for integer n >= 0, small/moderate |w|, via the logarithmic series
inline Complex bessel_y_int_series(int n, Complex w, Complex jn) {
    Complex half = 0.5 * w;
    Complex lw = std::log(half);
    Complex sum1{};
    if (n > 0) {
        Complex p = std::exp(-double(n) * lw);  // (w/2)^{-n}
        double fact = 1.0;
        for (int k = 1; k <= n - 1; ++k) fact *= k;  // (n-1)!
        Complex t = fact * p;
        for (int k = 0; k < n; ++k) {
            sum1 += t;
            // next: (n-k-2)!/(k+1)! (w/2)^{2k+2-n} = t * (w/2)^2 / ((k+1)(n-k-1))
            if (k < n - 1) t *= half * half / (double(k + 1) * double(n - k - 1));
        }
    }
    Complex sum2{};
    {
        Complex q = -half * half;
        double lg = std::lgamma(n + 1.0);
        Complex t = std::exp(double(n) * lw - lg);
        for (int k = 0; k <= 400; ++k) {
            double co = psi_int(k + 1) + psi_int(n + k + 1);
            sum2 += co * t;
            t *= q / (double(k + 1) * double(n + k + 1));
            if (std::abs(t) * (std::abs(co) + 3.0) < 1e-18 * (std::abs(sum2) + 1e-300)) break;
        }
    }
    return (2.0 / pi) * lw * jn - sum1 / pi - sum2 / pi;
}

}  // namespace detail

// J_nu(w), nu >= 0 real, principal branch.
inline Complex bessel_j(double nu, Complex w) {
    if (!(nu >= 0.0) || !std::isfinite(nu)) throw precondition_error("bessel_j: order must be finite and >= 0");
    detail::check_bessel_overflow(w);
    const double cut = detail::is_half_integer(nu) ? detail::bessel_switch_radius
                                                   : detail::bessel_switch_radius_generic;
    if (std::abs(w) <= cut || std::abs(w) <= 1.5 * nu)
        return detail::bessel_j_series(nu, w);
    if (detail::is_half_integer(nu)) return detail::bessel_j_half(nu, w);
    Complex P, Q;
    detail::bessel_pq(nu, w, P, Q);
    Complex omega = w - (0.5 * nu + 0.25) * pi;
    return std::sqrt(2.0 / (pi * w)) * (P * std::cos(omega) - Q * std::sin(omega));
}

// J_{-nu}(w) for noninteger nu > 0 (used by reflection-type formulas).
inline Complex bessel_j_negative(double nu, Complex w) {
    if (!(nu > 0.0) || detail::is_nonneg_integer(nu))
        throw precondition_error("bessel_j_negative: order must be positive noninteger");
    detail::check_bessel_overflow(w);
    if (std::abs(w) <= detail::bessel_switch_radius_generic || std::abs(w) <= 1.5 * nu)
        return detail::bessel_j_series(-nu, w);
    Complex P, Q;
    detail::bessel_pq(nu, w, P, Q);  // depends on nu^2 only
    Complex omega = w - (-0.5 * nu + 0.25) * pi;
    return std::sqrt(2.0 / (pi * w)) * (P * std::cos(omega) - Q * std::sin(omega));
}

// Y_nu(w), nu >= 0 real, principal branch.
inline Complex bessel_y(double nu, Complex w) {
    if (!(nu >= 0.0) || !std::isfinite(nu)) throw precondition_error("bessel_y: order must be finite and >= 0");
    detail::check_bessel_overflow(w);
    if (detail::is_half_integer(nu)) return detail::bessel_y_half(nu, w);
    const bool small = std::abs(w) <= detail::bessel_switch_radius_generic || std::abs(w) <= 1.5 * nu;
    if (detail::is_nonneg_integer(nu)) {
        if (small) {
            int n = (int)std::llround(nu);
            return detail::bessel_y_int_series(n, w, detail::bessel_j_series(nu, w));
        }
    } else if (small) {
        // reflection formula; fine away from integer orders
        double s = std::sin(nu * pi), c = std::cos(nu * pi);
        return (detail::bessel_j_series(nu, w) * c - detail::bessel_j_series(-nu, w)) / s;
    }
    Complex P, Q;
    detail::bessel_pq(nu, w, P, Q);
    Complex omega = w - (0.5 * nu + 0.25) * pi;
    return std::sqrt(2.0 / (pi * w)) * (P * std::sin(omega) + Q * std::cos(omega));
}

// Upper incomplete Gamma function Gamma(a, w), w off the negative real cut
// for noninteger a. Continued fraction for large |w|, series otherwise.
inline Complex incomplete_gamma_upper(double a, Complex w) {
    if (std::abs(w) == 0.0) {
        if (a <= 0.0) throw precondition_error("incomplete_gamma_upper: Gamma(a,0) diverges for a <= 0");
        return std::tgamma(a);
    }
    const bool nonpos_int = (a <= 1e-12) && std::abs(a - std::round(a)) < 1e-12;
    if (std::abs(w) > std::abs(a) + 4.0) {
        // Lentz continued fraction
        const double tiny = 1e-300;
        Complex b = w + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
        for (int i = 1; i <= 500; ++i) {
            double an = -i * (i - a);
            b += 2.0;
            d = an * d + b;
            if (std::abs(d) < tiny) d = tiny;
            c = b + an / c;
            if (std::abs(c) < tiny) c = tiny;
            d = 1.0 / d;
            Complex delta = d * c;
            h *= delta;
            if (std::abs(delta - 1.0) < 1e-16)
                return std::exp(-w + a * std::log(w)) * h;
        }
        throw numeric_error("incomplete_gamma_upper: continued fraction did not converge");
    }
    if (!nonpos_int) {
        // Gamma(a) - lower incomplete series
        Complex ap = a, sum = 1.0 / ap, term = sum;
        for (int n = 1; n <= 600; ++n) {
            ap += 1.0;
            term *= w / ap;
            sum += term;
            if (std::abs(term) < 1e-17 * std::abs(sum)) {
                Complex low = sum * std::exp(-w + a * std::log(w));
                return std::tgamma(a) - low;
            }
        }
        throw numeric_error("incomplete_gamma_upper: series did not converge");
    }
    // a = 0, -1, -2, ... : start from Gamma(0,w) = E1(w) and recurse down
    Complex g;
    {
        Complex term = -w, sum = -w;  // sum of (-1)^{k+1} w^k/(k k!) with sign folded
        // E1 series: -gamma - log w + sum_{k>=1} (-1)^{k+1} w^k/(k k!)
        Complex t = w;
        sum = t;
        for (int k = 2; k <= 400; ++k) {
            t *= -w / double(k);
            Complex add = t / double(k);
            sum += add;
            if (std::abs(add) < 1e-17 * (std::abs(sum) + 1.0)) break;
        }
        (void)term;
        g = -detail::euler_gamma - std::log(w) + sum;
    }
    int n = -(int)std::llround(a);
    double av = 0.0;
    for (int j = 0; j < n; ++j) {
        av -= 1.0;
        g = (g - std::exp((av)*std::log(w) - w)) / av;
    }
    return g;
}

// Options for hadamard_eval truncation.
struct HadamardOptions {
    std::size_t truncation = SIZE_MAX;  // use at most this many stored zeros
    bool tail_correction = true;        // exp(-z * estimated tail sum)
};

// scale * prod_{j<=J} (1 - z/mu_j), with the tail of the genus-0 product
// estimated from a Weyl-law fit sqrt(mu_j) ~ s j + t of the stored zeros.
// With the flagged zero eigenvalue, its factor is replaced by z itself.
inline Complex hadamard_eval(const ZeroSequence& zeros, Complex z, double scale,
                             const HadamardOptions& opt = {}) {
    if (zeros.empty()) throw precondition_error("hadamard_eval: empty zero sequence");
    std::size_t J = std::min<std::size_t>(opt.truncation, zeros.count());
    Complex p = scale;
    for (std::size_t j = 0; j < J; ++j) {
        double mu = zeros.zeros[j];
        if (mu == 0.0) {
            if (!zeros.has_zero_eigenvalue)
                throw precondition_error("hadamard_eval: unflagged zero eigenvalue");
            p *= z;
        } else {
            p *= (1.0 - z / mu);
        }
    }
    if (opt.tail_correction && J >= 8 && zeros.zeros[J - 1] > 0.0) {
        // fit sqrt(mu_j) over the last half of the used zeros
        std::vector<double> xs, ys;
        for (std::size_t j = J / 2; j < J; ++j) {
            if (zeros.zeros[j] <= 0.0) continue;
            xs.push_back(double(j + 1));
            ys.push_back(std::sqrt(zeros.zeros[j]));
        }
        if (xs.size() >= 2) {
            LineFit f = fit_line(xs, ys);
            if (f.slope > 0.0) {
                double edge = f.slope * (double(J) + 0.5) + f.intercept;
                if (edge > 0.0) {
                    double tail_sum = 1.0 / (f.slope * edge);  // int_{J+1/2}^inf (s j + t)^{-2} dj
                    p *= std::exp(-z * tail_sum);
                }
            }
        }
    }
    return p;
}

struct ProductBoundReport {
    bool excluded = false;  // z inside an exclusion disc |z - zeta_j| < |zeta_j|^{-r}
    double bound = 0.0;     // B exp(-A |z|^s)
    double value = 0.0;     // |prod (1 - z/zeta_j)|
};

// Numerical check of the Hadamard lower bound |prod(1-z/zeta_j)| >= B e^{-A|z|^s}
// outside the exclusion discs. (A, B) are fitted over a calibration grid on the
// negative real axis, where the product has no zeros.
inline ProductBoundReport product_lower_bound_check(const ZeroSequence& zeros, Complex z,
                                                    double r, double s) {
    if (!(s > 0.0 && s < 1.0)) throw precondition_error("product_lower_bound_check: need 0 < s < 1");
    ProductBoundReport rep;
    for (double zeta : zeros.zeros) {
        if (zeta == 0.0) continue;
        if (std::abs(z - zeta) < std::pow(std::abs(zeta), -r)) {
            rep.excluded = true;
            break;
        }
    }
    HadamardOptions opt;
    rep.value = std::abs(hadamard_eval(zeros, z, 1.0, opt));
    // calibration on z = -t, t in logspace
    std::vector<double> xs, ys;
    for (int k = 0; k <= 24; ++k) {
        double t = std::pow(10.0, -1.0 + 0.25 * k * 0.75);  // 0.1 .. ~3e3
        double v = std::abs(hadamard_eval(zeros, Complex(-t, 0.0), 1.0, opt));
        if (v <= 0.0) continue;
        xs.push_back(std::pow(t, s));
        ys.push_back(std::log(v));
    }
    LineFit f = fit_line(xs, ys);
    double A = std::max(-f.slope, 0.0);
    // lower the intercept so the fitted envelope sits below every calibration sample
    double logB = f.intercept;
    for (std::size_t i = 0; i < xs.size(); ++i)
        logB = std::min(logB, ys[i] + A * xs[i]);
    rep.bound = std::exp(logB - A * std::pow(std::abs(z), s));
    return rep;
}

}  // namespace singweyl
