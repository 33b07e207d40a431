#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "singweyl/eigenvalues.hpp"
#include "singweyl/models.hpp"

using namespace singweyl;
using Catch::Approx;

TEST_CASE("free Dirichlet and Neumann eigenvalues on (0,1)") {
    Potential pot = bessel_potential(0.0);
    ZeroSequence mu = dirichlet_eigs(pot, 1.0, 5);
    REQUIRE(mu.count() == 5);
    for (int j = 0; j < 5; ++j) {
        double ref = (j + 1) * pi * (j + 1) * pi;
        CHECK(mu.zeros[j] == Approx(ref).epsilon(1e-8));
    }
    ZeroSequence nu = neumann_eigs(pot, 1.0, 5);
    REQUIRE(nu.count() == 5);
    for (int j = 0; j < 5; ++j) {
        double ref = (j + 0.5) * pi * (j + 0.5) * pi;
        CHECK(nu.zeros[j] == Approx(ref).epsilon(1e-8));
    }
}

TEST_CASE("Dirichlet and Neumann eigenvalues interlace") {
    for (auto pot : {bessel_potential(1.0), coulomb_bessel(1.0, 1.0)}) {
        ZeroSequence mu = dirichlet_eigs(pot, 1.0, 8);
        ZeroSequence nu = neumann_eigs(pot, 1.0, 8);
        for (int j = 0; j < 8; ++j) {
            CHECK(nu.zeros[j] < mu.zeros[j]);
            if (j + 1 < 8) CHECK(mu.zeros[j] < nu.zeros[j + 1]);
        }
    }
}

TEST_CASE("counting function is consistent with the stored zeros") {
    Potential pot = bessel_potential(0.0);
    ZeroSequence mu = dirichlet_eigs(pot, 1.0, 6);
    CHECK(counting_function(mu, 100.0) == 3);
    CHECK(counting_function(mu, 1.0) == 0);
    CHECK(counting_function(mu, mu.zeros[5]) == 6);
    CHECK_THROWS_AS(counting_function(mu, mu.zeros[5] + 1.0), precondition_error);
}

TEST_CASE("two-spectra data reproduces the Weyl-law slope") {
    Potential pot = bessel_potential(1.0);
    EigenData data = compute_eigen_data(pot, 1.0, 30);
    // sqrt(mu_j) ~ (pi / delta) j with delta = c - a = 1
    CHECK(data.delta == Approx(1.0).margin(0.02));
    auto rep = verify_hypothesis_ev(data, 2.0);
    CHECK(rep.interlacing_ok);
    CHECK(rep.first_violation == -1);
    CHECK(rep.gap_index >= 0);
}

TEST_CASE("Krein m-function from two spectra is Herglotz off the real axis") {
    Potential pot = bessel_potential(0.0);
    EigenData data = compute_eigen_data(pot, 1.0, 60);
    for (Complex z : {Complex(0.0, 1.0), Complex(-3.0, 2.0), Complex(5.0, 0.5)}) {
        Complex m = krein_m_minus(data, z);
        CHECK(m.imag() * z.imag() > 0.0);
    }
}

TEST_CASE("eigenvalue products reconstruct the regular solution at the base point") {
    Potential pot = bessel_potential(0.0);
    EigenData data = compute_eigen_data(pot, 1.0, 400);
    // phi(z, 1) = sin(sqrt z)/sqrt z for the free operator
    for (Complex z : {Complex(-4.0, 0.0), Complex(2.0, 2.0)}) {
        ProductSolution ps = phi_from_products(data, pot, z);
        Complex s = std::sqrt(z);
        Complex ref = std::sin(s) / s;
        CHECK(std::abs(ps.phi - ref) < 5e-3 * std::abs(ref));
    }
}
