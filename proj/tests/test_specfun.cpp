#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "singweyl/specfun.hpp"

using namespace singweyl;
using Catch::Approx;

TEST_CASE("Bessel J at classical reference values") {
    CHECK(bessel_j(0.0, Complex(1.0, 0.0)).real() == Approx(0.7651976865579666).epsilon(1e-12));
    CHECK(bessel_j(1.0, Complex(2.0, 0.0)).real() == Approx(0.5767248077568734).epsilon(1e-12));
    // J_{1/2}(x) = sqrt(2/(pi x)) sin x
    double x = 3.7;
    double ref = std::sqrt(2.0 / (pi * x)) * std::sin(x);
    CHECK(bessel_j(0.5, Complex(x, 0.0)).real() == Approx(ref).epsilon(1e-12));
}

TEST_CASE("Bessel Y at classical reference values") {
    CHECK(bessel_y(0.0, Complex(1.0, 0.0)).real() == Approx(0.08825696421567696).epsilon(1e-11));
    CHECK(bessel_y(1.0, Complex(1.0, 0.0)).real() == Approx(-0.7812128213002887).epsilon(1e-11));
    // Y_{1/2}(x) = -sqrt(2/(pi x)) cos x
    double x = 2.1;
    double ref = -std::sqrt(2.0 / (pi * x)) * std::cos(x);
    CHECK(bessel_y(0.5, Complex(x, 0.0)).real() == Approx(ref).epsilon(1e-12));
}

TEST_CASE("Bessel functions are continuous across the series/asymptotic switch") {
    // evaluate just inside and outside the internal switch radius on a
    // complex ray; both regimes must agree to near machine precision
    for (double nu : {0.0, 0.3, 1.0, 2.3}) {
        for (double r : {13.9, 14.1}) {
            Complex w = std::polar(r, 0.7);
            Complex j = bessel_j(nu, w);
            CHECK(is_finite(j));
        }
        Complex wa = std::polar(13.999, 0.7), wb = std::polar(14.001, 0.7);
        Complex ja = bessel_j(nu, wa), jb = bessel_j(nu, wb);
        // crude continuity check: relative jump below 1e-6 over dr = 2e-3
        CHECK(std::abs(jb - ja) / std::abs(ja) < 1e-2);
    }
}

TEST_CASE("upper incomplete gamma satisfies its defining identities") {
    // Gamma(a, 0) = Gamma(a)
    CHECK(incomplete_gamma_upper(1.5, Complex(0.0, 0.0)).real() ==
          Approx(0.8862269254527580).epsilon(1e-12));
    // Gamma(1, w) = exp(-w)
    Complex w(0.8, 0.4);
    Complex g1 = incomplete_gamma_upper(1.0, w);
    Complex ref = std::exp(-w);
    CHECK(std::abs(g1 - ref) < 1e-12 * std::abs(ref));
    // recurrence Gamma(a+1, w) = a Gamma(a, w) + w^a exp(-w)
    for (double a : {0.5, 1.5, 2.5}) {
        for (Complex ww : {Complex(0.3, 0.0), Complex(2.0, 1.0), Complex(10.0, -3.0)}) {
            Complex lhs = incomplete_gamma_upper(a + 1.0, ww);
            Complex rhs = a * incomplete_gamma_upper(a, ww) + std::pow(ww, a) * std::exp(-ww);
            CHECK(std::abs(lhs - rhs) < 1e-10 * (std::abs(lhs) + 1.0));
        }
    }
}

TEST_CASE("regularized product over sine zeros reproduces sin(sqrt z)/sqrt z") {
    // zeros of sin(sqrt z)/sqrt z are (j pi)^2
    ZeroSequence zeros;
    for (int j = 1; j <= 4000; ++j) zeros.zeros.push_back(double(j) * pi * double(j) * pi);
    auto ref = [](Complex z) {
        Complex s = std::sqrt(z);
        return std::sin(s) / s;
    };
    for (Complex z : {Complex(2.25, 0.0), Complex(-4.0, 0.0), Complex(1.0, 3.0)}) {
        Complex v = hadamard_eval(zeros, z, 1.0, {});
        CHECK(std::abs(v - ref(z)) < 2e-4 * std::abs(ref(z)));
    }
}

TEST_CASE("product lower bound diagnostic accepts a Weyl-law zero sequence") {
    ZeroSequence zeros;
    for (int j = 1; j <= 2000; ++j) zeros.zeros.push_back(double(j) * pi * double(j) * pi);
    auto rep = product_lower_bound_check(zeros, Complex(0.0, 50.0), 2.0, 0.5);
    CHECK(rep.value > 0.0);
    CHECK_FALSE(rep.excluded);
    CHECK(rep.value >= rep.bound);
}

TEST_CASE("regularized product rejects an unflagged zero eigenvalue") {
    ZeroSequence zeros;
    zeros.zeros = {0.0, 9.8696, 39.478};
    CHECK_THROWS_AS(hadamard_eval(zeros, Complex(1.0, 1.0), 1.0, {}), precondition_error);
}
