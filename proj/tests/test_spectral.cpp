#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "singweyl/models.hpp"
#include "singweyl/spectral.hpp"

using namespace singweyl;
using Catch::Approx;

TEST_CASE("Stieltjes inversion recovers the sqrt density of the free operator") {
    auto M = [](Complex z) { return bessel_M(0.0, z); };
    SpectralMeasure m = stieltjes_invert(M, 1.0, 25.0, 13);
    REQUIRE(m.grid.size() == 13);
    CHECK(m.atoms.empty());
    CHECK(m.flagged.empty());
    for (std::size_t i = 0; i < m.grid.size(); ++i) {
        double ref = std::sqrt(m.grid[i]) / pi;
        CHECK(m.density[i] == Approx(ref).epsilon(1e-7));
    }
}

TEST_CASE("Stieltjes inversion isolates the soliton bound state") {
    SolitonModel mod;
    mod.v1 = 1.0;
    auto M = [&](Complex z) { return soliton_M(mod, z); };
    SpectralMeasure m = stieltjes_invert(M, -2.0, -0.2, 19);
    REQUIRE(m.atoms.size() == 1);
    CHECK(m.atoms[0].lambda == Approx(-1.0).margin(1e-4));
    CHECK(m.atoms[0].mass == Approx(8.0).epsilon(0.02));
    // no a.c. mass below zero
    for (double d : m.density) CHECK(std::abs(d) < 1e-3);
}

TEST_CASE("norming constant is the atom mass and rejects a.c. points") {
    SolitonModel mod;
    mod.v1 = 1.0;
    auto Msol = [&](Complex z) { return soliton_M(mod, z); };
    CHECK(norming_constant(Msol, -1.0) == Approx(8.0).epsilon(1e-6));
    auto Mfree = [](Complex z) { return bessel_M(0.0, z); };
    CHECK_THROWS_AS(norming_constant(Mfree, 4.0), precondition_error);
}

TEST_CASE("forward transform of the unit indicator matches (1 - cos sqrt(lambda))/lambda") {
    SolutionSystem sys = bessel_system(0.0);
    auto M = [](Complex z) { return bessel_M(0.0, z); };
    SpectralMeasure m = stieltjes_invert(M, 0.5, 50.0, 12);
    auto ind = [](double) { return 1.0; };
    TransformedFunction fhat = transform_forward(sys, ind, 0.0, 1.0, m);
    for (std::size_t i = 0; i < m.grid.size(); ++i) {
        double lam = m.grid[i];
        double ref = (1.0 - std::cos(std::sqrt(lam))) / lam;
        CHECK(fhat.values[i] == Approx(ref).margin(1e-8));
    }
    CHECK(norm_sq_rho(m, fhat) > 0.0);
}

TEST_CASE("support classification labels a.c. and point spectrum correctly") {
    auto Mfree = [](Complex z) { return bessel_M(0.0, z); };
    SupportClassification sc = classify_supports(Mfree, 1.0, 30.0, 8);
    CHECK(sc.ac.size() == 8);
    CHECK(sc.p.empty());

    SolitonModel mod;
    mod.v1 = 1.0;
    auto Msol = [&](Complex z) { return soliton_M(mod, z); };
    SupportClassification sp = classify_supports(Msol, -1.4, -0.6, 5);
    CHECK_FALSE(sp.p.empty());
    CHECK(sp.ac.empty());
}

TEST_CASE("resolvent applied to phi reproduces phi/(lambda - z)") {
    SolutionSystem sys = bessel_system(0.0);
    Potential pot = bessel_potential(0.0);
    auto rep = resolvent_image_check(sys, pot, 1.0, Complex(-1.0, 0.0), 1.0, {2.0, 10.0});
    CHECK(rep.max_rel_dev < 1e-8);
    CHECK(rep.max_rel_dev_deriv < 1e-6);
}

TEST_CASE("transform of a compact function extends to an entire quadratic form") {
    SolutionSystem sys = bessel_system(0.0);
    auto M = [](Complex z) { return bessel_M(0.0, z); };
    auto f = [](double x) { return x * (1.0 - x); };
    EfEntireReport rep = ef_entire_check(sys, M, f, 0.0, 1.0, 2.0, 8.0);
    CHECK(rep.max_cr_residual < 1e-4);
    CHECK(rep.max_conj_asym < 1e-6 * std::max(1.0, rep.scale));
}
