#pragma once

#include <complex>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

// Core scalar types and branch-cut conventions shared by the whole library.
// All complex powers and square roots use the principal branch with the cut
// along the negative real axis.

namespace singweyl {

using Complex = std::complex<double>;

constexpr double pi = 3.141592653589793238462643383279502884;

// Numeric failure while evaluating an operator/function (iteration cap,
// step underflow, pole proximity, ...). CLI maps this to exit code 3.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Violated precondition (unsupported singularity, out-of-range request, ...).
// CLI maps this to exit code 4.
struct precondition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Principal square root, cut along the negative real axis.
inline Complex sqrt_cut(Complex z) { return std::sqrt(z); }

// (-z)^p with the cut of (-z) along negative real axis in -z, i.e. the
// convention used for sqrt(-z) and (-z)^{l+1/2} throughout.
inline Complex pow_minus_z(Complex z, double p) { return std::pow(-z, p); }

inline Complex log_cut(Complex z) { return std::log(z); }

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Ordered sequence of real zeros (eigenvalues) of an entire function.
// Strictly increasing; a zero exactly at 0 must be flagged so product
// evaluators can apply the replacement rule.
struct ZeroSequence {
    std::vector<double> zeros;
    bool has_zero_eigenvalue = false;

    std::size_t count() const { return zeros.size(); }
    bool empty() const { return zeros.empty(); }

    void validate() const {
        for (std::size_t j = 1; j < zeros.size(); ++j)
            if (!(zeros[j] > zeros[j - 1]))
                throw precondition_error("ZeroSequence: zeros must be strictly increasing");
        for (double m : zeros)
            if (m == 0.0 && !has_zero_eigenvalue)
                throw precondition_error("ZeroSequence: zero eigenvalue present but not flagged");
    }
};

// Least-squares fit of y = slope*x + intercept.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y,
                        const std::vector<double>* w = nullptr) {
    if (x.size() != y.size() || x.size() < 2)
        throw precondition_error("fit_line: need at least two points");
    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double wi = w ? (*w)[i] : 1.0;
        sw += wi;
        sx += wi * x[i];
        sy += wi * y[i];
        sxx += wi * x[i] * x[i];
        sxy += wi * x[i] * y[i];
    }
    double det = sw * sxx - sx * sx;
    if (det == 0) throw numeric_error("fit_line: degenerate abscissae");
    return {(sw * sxy - sx * sy) / det, (sxx * sy - sx * sxy) / det};
}

}  // namespace singweyl
