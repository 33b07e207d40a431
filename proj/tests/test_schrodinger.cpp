#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "singweyl/models.hpp"
#include "singweyl/schrodinger.hpp"

using namespace singweyl;
using Catch::Approx;

TEST_CASE("regular solution matches sin(sqrt z x)/sqrt z for the free operator") {
    Potential pot = bessel_potential(0.0);
    for (Complex z : {Complex(4.0, 0.0), Complex(-1.0, 0.0), Complex(2.0, 3.0)}) {
        Complex s = std::sqrt(z);
        for (double x : {0.3, 1.0, 2.5}) {
            SolutionSample u = regular_solution_phi(pot, z, x);
            CHECK(std::abs(u.u - std::sin(s * x) / s) < 1e-9 * std::max(1.0, std::abs(u.u)));
            CHECK(std::abs(u.du - std::cos(s * x)) < 1e-9 * std::max(1.0, std::abs(u.du)));
        }
    }
}

TEST_CASE("regular solution matches the closed Bessel form for l = 1") {
    Potential pot = bessel_potential(1.0);
    for (Complex z : {Complex(4.0, 0.0), Complex(1.0, 2.0)}) {
        for (double x : {0.5, 1.5}) {
            SolutionSample u = regular_solution_phi(pot, z, x);
            Complex ref = bessel_phi(1.0, z, x);
            Complex refd = bessel_phi_dx(1.0, z, x);
            CHECK(std::abs(u.u - ref) < 1e-8 * std::abs(ref));
            CHECK(std::abs(u.du - refd) < 1e-8 * std::abs(refd));
        }
    }
}

TEST_CASE("numeric second solution has unit Lagrange bracket with phi") {
    for (double l : {0.0, 0.25, 1.0}) {
        Potential pot = bessel_potential(l);
        Complex z(2.0, 1.0);
        for (double x : {0.4, 1.0, 2.0}) {
            SolutionSample ph = regular_solution_phi(pot, z, x);
            SolutionSample th = second_solution_theta_numeric(pot, z, 1.0, x);
            Complex w = lagrange_bracket(th, ph);
            CHECK(std::abs(w - 1.0) < 1e-7);
        }
    }
}

TEST_CASE("Pruefer oscillation count matches the free Dirichlet spectrum") {
    Potential pot = bessel_potential(0.0);
    // Dirichlet eigenvalues on (0,1) are (j pi)^2 = 9.87, 39.5, 88.8, 157.9
    CHECK(pruefer_count(pot, 100.0, 1.0, BoundaryCondition::Dirichlet) == 3);
    CHECK(pruefer_count(pot, 160.0, 1.0, BoundaryCondition::Dirichlet) == 4);
    // Neumann-at-c zeros of phi' are ((j+1/2) pi)^2 = 2.47, 22.2, 61.7, 120.9
    CHECK(pruefer_count(pot, 100.0, 1.0, BoundaryCondition::Neumann) == 3);
}

TEST_CASE("Frobenius start exponent follows the singularity strength") {
    for (double l : {0.0, 0.5, 1.0, 2.3}) {
        Potential pot = bessel_potential(l);
        Complex z(1.0, 0.0);
        // phi ~ x^{l+1} near 0: check the local power via a ratio at two points
        double x1 = 1e-3, x2 = 2e-3;
        SolutionSample u1 = regular_solution_phi(pot, z, x1);
        SolutionSample u2 = regular_solution_phi(pot, z, x2);
        double p = std::log(std::abs(u2.u / u1.u)) / std::log(x2 / x1);
        CHECK(p == Approx(l + 1.0).margin(1e-3));
    }
}
