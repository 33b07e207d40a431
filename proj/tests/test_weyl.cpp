#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "singweyl/models.hpp"
#include "singweyl/weyl.hpp"

using namespace singweyl;
using Catch::Approx;

TEST_CASE("half-line m-function is i sqrt z for the free operator") {
    Potential pot = bessel_potential(0.0);
    for (Complex z : {Complex(-4.0, 0.0), Complex(0.0, 2.0), Complex(-1.0, 1.0)}) {
        Complex mp = m_plus(pot, 1.0, z);
        Complex ref = Complex(0.0, 1.0) * std::sqrt(z);
        if (ref.imag() < 0.0) ref = -ref;  // decaying branch
        CHECK(std::abs(mp - ref) < 1e-7 * std::abs(ref));
    }
}

TEST_CASE("singular m-function from the ODE matches the closed Bessel form") {
    for (double l : {0.0, 1.0}) {
        SolutionSystem sys = bessel_system(l);
        Potential pot = bessel_potential(l);
        for (Complex z : {Complex(-4.0, 0.0), Complex(1.0, 2.0), Complex(-9.0, 0.5)}) {
            Complex got = singular_M(sys, pot, 1.0, z);
            Complex ref = bessel_M(l, z);
            CHECK(std::abs(got - ref) < 1e-8 * std::max(1.0, std::abs(ref)));
        }
    }
}

TEST_CASE("gauge rescaling transforms M exactly as e^{-2g} M + e^{-g} f") {
    SolutionSystem sys = bessel_system(1.0);
    Potential pot = bessel_potential(1.0);
    Complex z(-2.0, 1.0);
    Complex m0 = singular_M(sys, pot, 1.0, z);
    sys.gauge_g = [](Complex w) { return 0.5 * w; };
    sys.gauge_f = [](Complex w) { return 1.0 + w; };
    Complex m1 = singular_M(sys, pot, 1.0, z);
    Complex ref = std::exp(-z) * m0 + std::exp(-0.5 * z) * (1.0 + z);
    CHECK(std::abs(m1 - ref) < 1e-12 * std::abs(ref));
}

TEST_CASE("Weyl solution decays toward infinity for negative energy") {
    SolutionSystem sys = bessel_system(0.0);
    Potential pot = bessel_potential(0.0);
    Complex z(-1.0, 0.0);
    double a5 = std::abs(weyl_solution_psi(sys, pot, 1.0, z, 5.0).u);
    double a8 = std::abs(weyl_solution_psi(sys, pot, 1.0, z, 8.0).u);
    CHECK(a8 < a5);
    // free-operator decay rate e^{-x}
    CHECK(std::log(a5 / a8) == Approx(3.0).margin(1e-4));
}

TEST_CASE("Green function is symmetric and matches the free closed form") {
    SolutionSystem sys = bessel_system(0.0);
    Potential pot = bessel_potential(0.0);
    Complex z(-4.0, 0.0);
    // G(x,y) = sinh(2 min)/2 * e^{-2 max} * ... for q = 0, kappa = 2:
    // phi = sinh(2x)/2, psi = e^{-2x} (up to the normalization fixed by M)
    Complex g12 = green_function(sys, pot, 1.0, z, 1.0, 2.0);
    Complex g21 = green_function(sys, pot, 1.0, z, 2.0, 1.0);
    CHECK(std::abs(g12 - g21) < 1e-9 * std::abs(g12));
    Complex ref = std::sinh(2.0) / 2.0 * std::exp(-4.0);
    CHECK(std::abs(g12 - ref) < 1e-7 * std::abs(ref));
}

TEST_CASE("high-energy diagnostics hold along nonreal rays") {
    // moderate radii: theta + M phi cancels catastrophically once the
    // exponential amplitude exceeds the double-precision budget
    SolutionSystem sys = bessel_system(0.0);
    Potential pot = bessel_potential(0.0);
    auto rep = asymptotic_check(sys, pot, 1.0, {pi / 2.0, 2.0 * pi / 3.0}, 0.5, 0.25, 16.0, 256.0);
    for (const auto& ray : rep.rays) {
        CHECK(ray.final_psi_dev < 1e-2);
        CHECK(ray.final_phi_dev < 2e-2);
        CHECK(ray.max_scaled_m < 10.0);
    }
    CHECK_THROWS_AS(asymptotic_check(sys, pot, 1.0, {0.0}), precondition_error);
}
