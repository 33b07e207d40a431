#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "singweyl/golden.hpp"
#include "singweyl/models.hpp"
#include "singweyl/nevanlinna.hpp"

using namespace singweyl;
using Catch::Approx;

TEST_CASE("kernel negative-square count grows with the singularity strength") {
    for (double l : {0.0, 1.0, 2.0}) {
        auto M = [l](Complex z) { return bessel_M(l, z); };
        int expected = int(std::floor(l / 2.0 + 0.75));
        CHECK(kernel_negative_squares(M) == expected);
    }
}

TEST_CASE("kernel count is deterministic for a fixed seed") {
    auto M = [](Complex z) { return bessel_M(2.0, z); };
    CHECK(kernel_negative_squares(M, 30, 5, 999) == kernel_negative_squares(M, 30, 5, 999));
}

TEST_CASE("minimal representation power follows the measure tail") {
    for (double l : {0.0, 1.0, 2.0, 3.0}) {
        SpectralMeasure m = golden::reference_measure(l, 1e-2, 1e6, 4000);
        MinimalKResult r = minimal_k(m);
        CHECK(r.tail_exponent == Approx(l + 0.5).margin(0.05));
        CHECK(r.k <= bessel_k_bound(l));
    }
    CHECK(bessel_k_bound(0.0) == 1);
    CHECK(bessel_k_bound(2.0) == 2);
    CHECK_THROWS_AS(bessel_k_bound(-0.75), precondition_error);
}

TEST_CASE("exponential gauge renders the measure finite and Herglotz") {
    SpectralMeasure m = golden::reference_measure(0.0, 1e-8, 80.0, 100000);
    HerglotzGauge hg = herglotzify(m);
    // total mass int_0^inf e^{-lambda} sqrt(lambda)/pi dlambda = Gamma(3/2)/pi
    CHECK(hg.total_mass == Approx(std::tgamma(1.5) / pi).epsilon(1e-4));
    for (Complex z : {Complex(0.0, 1.0), Complex(-3.0, 0.5), Complex(2.0, 2.0)}) {
        CHECK(hg.mtilde(z).imag() > 0.0);
    }
    // matches the closed incomplete-gamma form
    Complex ref = bessel_herglotz_M(0.0, Complex(0.0, 1.0));
    CHECK(std::abs(hg.mtilde(Complex(0.0, 1.0)) - ref) < 1e-4 * std::abs(ref));
}

TEST_CASE("integral representation differs from M by a real polynomial") {
    SpectralMeasure m = golden::reference_measure(1.0, 1e-8, 1e6, 200000);
    int k = 1;
    // on the real axis away from the spectrum the difference must be real
    for (double t : {-8.0, -4.0, -1.0}) {
        Complex rep = integral_representation(m, Regularizer::poly, k, Complex(t, 0.0));
        Complex diff = bessel_M(1.0, Complex(t, 0.0)) - rep;
        CHECK(std::abs(diff.imag()) < 1e-6 * std::max(1.0, std::abs(diff)));
    }
    // k = 0 leaves the tail non-integrable for l = 1
    CHECK_THROWS_AS(integral_representation(m, Regularizer::poly, 0, Complex(0.0, 1.0)),
                    precondition_error);
}

TEST_CASE("growth along the imaginary axis determines kappa") {
    for (double l : {0.0, 1.0, 2.0}) {
        auto M = [l](Complex z) { return bessel_M(l, z); };
        GrowthKappa g = kappa_from_growth(M);
        CHECK(g.exponent == Approx(l + 0.5).margin(0.05));
        CHECK(g.kappa == int(std::floor((l + 0.5 + 1.0) / 2.0)));
        CHECK_FALSE(g.indeterminate);
    }
}

TEST_CASE("moment condition and growth condition agree for the free operator") {
    SpectralMeasure m = golden::reference_measure(0.0, 1e-2, 1e6, 4000);
    auto M = [](Complex z) { return bessel_M(0.0, z); };
    MomentGrowthReport r = moment_growth_check(m, M, 1, 1.0);
    CHECK(r.equivalent);
    CHECK(r.lhs_finite);
    CHECK(r.rhs_finite);
}

TEST_CASE("kappa from the representation polynomial degree") {
    // degree at most 2k: kappa = k
    CHECK(kappa_from_representation(1, 2, 0.5) == 1);
    CHECK(kappa_from_representation(2, 1, -3.0) == 2);
    // higher even degree: kappa = degree/2
    CHECK(kappa_from_representation(1, 4, 2.0) == 2);
    // higher odd degree: ceil or floor by the sign of the leading coefficient
    CHECK(kappa_from_representation(1, 5, 1.0) == 2);
    CHECK(kappa_from_representation(1, 5, -1.0) == 3);
}
