#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "singweyl/models.hpp"

using namespace singweyl;
using Catch::Approx;

TEST_CASE("closed-form Bessel solutions have unit Lagrange bracket") {
    for (double l : {0.0, 0.5, 1.0, 2.3}) {
        for (Complex z : {Complex(-4.0, 0.0), Complex(2.0, 1.0)}) {
            for (double x : {0.3, 1.0, 3.0}) {
                Complex w = bessel_theta(l, z, x) * bessel_phi_dx(l, z, x) -
                            bessel_theta_dx(l, z, x) * bessel_phi(l, z, x);
                CHECK(std::abs(w - 1.0) < 1e-9);
            }
        }
    }
}

TEST_CASE("Bessel m-function closed values") {
    // l = 0: M(z) = -(-z)^{1/2}
    CHECK(bessel_M(0.0, Complex(-4.0, 0.0)).real() == Approx(-2.0).epsilon(1e-13));
    CHECK(std::abs(bessel_M(0.0, Complex(-4.0, 0.0)).imag()) < 1e-13);
    // Herglotz for weak singularities (zero negative squares); finite always
    for (double l : {0.0, 0.25}) {
        CHECK(bessel_M(l, Complex(1.0, 1.0)).imag() > 0.0);
    }
    for (double l : {1.0, 2.5}) {
        CHECK(is_finite(bessel_M(l, Complex(1.0, 1.0))));
    }
    // a.c. density sqrt(lambda)^{2l+1} / pi
    CHECK(bessel_rho_density(0.0, 4.0) == Approx(2.0 / pi).epsilon(1e-13));
    CHECK(bessel_rho_density(1.0, 4.0) == Approx(8.0 / pi).epsilon(1e-13));
}

TEST_CASE("soliton potential solves the defining ODE and carries one bound state") {
    SolitonModel mod;
    mod.v1 = 1.0;
    Potential pot = soliton_potential(mod);
    // -u'' + q u = z u for the explicit solutions, checked by finite differences
    Complex z(2.0, 1.0);
    double h = 1e-4;
    for (double x : {0.7, 2.0}) {
        Complex um = soliton_solutions(mod, z, x - h).phi;
        Complex u0 = soliton_solutions(mod, z, x).phi;
        Complex up = soliton_solutions(mod, z, x + h).phi;
        Complex resid = -(up - 2.0 * u0 + um) / (h * h) + (pot.q(x) - z) * u0;
        CHECK(std::abs(resid) < 1e-5 * std::max(1.0, std::abs(u0)));
    }
    // simple pole at z = -1 with residue -8 (atom of mass 8)
    Complex near = soliton_M(mod, Complex(-1.0, 1e-6));
    CHECK(std::abs(Complex(0.0, 1e-6) * near - Complex(-8.0)) < 1e-3);
}

TEST_CASE("limit-circle system yields a Herglotz m-function") {
    Potential pot = bessel_potential(0.25);
    LimitCircleSystem sys = limit_circle_system(pot, 1.0, 1.0);
    Complex m = lc_singular_M(sys, Complex(0.0, 1.0));
    CHECK(m.imag() > 0.0);
    Complex m2 = lc_singular_M(sys, Complex(-2.0, 0.5));
    CHECK(m2.imag() > 0.0);
}

TEST_CASE("limit-point endpoints are rejected") {
    Potential pot = bessel_potential(1.0);
    CHECK_THROWS_AS(limit_circle_system(pot, 1.0, 1.0), precondition_error);
}

TEST_CASE("model presets parse and build potentials") {
    ModelPreset ps = parse_model_preset("bessel:l=1.5");
    CHECK(ps.family == "bessel");
    CHECK(ps.l == Approx(1.5));
    Potential pot = potential_from_preset(ps);
    CHECK(pot.q(2.0) == Approx(1.5 * 2.5 / 4.0).epsilon(1e-13));

    ModelPreset cs = parse_model_preset("bessel+coulomb:l=1,q1=0.5");
    CHECK(cs.q1 == Approx(0.5));
    Potential cp = potential_from_preset(cs);
    CHECK(cp.q(2.0) == Approx(2.0 / 4.0 + 0.5 / 2.0).epsilon(1e-12));

    CHECK_THROWS(parse_model_preset("unknown:foo=1"));
}

TEST_CASE("expression potentials report their singularity structure") {
    Potential pot = potential_from_expression("2/x^2 + 1/x");
    CHECK(pot.q(2.0) == Approx(1.0).epsilon(1e-12));
    CHECK(pot.l == Approx(1.0).margin(1e-6));
    CHECK(pot.q1 == Approx(1.0).margin(1e-4));
    auto kn = check_kneser(pot, 1.0);
    CHECK(kn.satisfied);
}
