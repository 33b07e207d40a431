#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "singweyl/bm.hpp"
#include "singweyl/models.hpp"

using namespace singweyl;

namespace {

// system with numeric theta sharing the same construction for both inputs,
// so equal-on-(0,c) potentials cancel identically in the comparison
SolutionSystem numeric_system(const Potential& pot, double c) {
    SolutionSystem sys;
    sys.phi = [pot](Complex z, double x) { return regular_solution_phi(pot, z, x); };
    sys.theta = [pot, c](Complex z, double x) { return second_solution_theta_numeric(pot, z, c, x); };
    return sys;
}

}  // namespace

TEST_CASE("identical potentials are judged consistent with zero remainder") {
    Potential pot = bessel_potential(1.0);
    SolutionSystem sys0 = numeric_system(pot, 1.0);
    SolutionSystem sys1 = numeric_system(pot, 1.0);
    BMReport rep = bm_compare(pot, pot, sys0, sys1, 1.0, 0.05);
    CHECK(rep.verdict == "consistent-equal");
    for (const auto& ray : rep.rays) CHECK(ray.below_floor);
}

TEST_CASE("globally shifted potential is judged inconsistent") {
    Potential p0 = bessel_potential(1.0);
    Potential p1 = bessel_potential(1.0);
    auto q0 = p1.q;
    p1.q = [q0](double x) { return q0(x) + 1.0; };
    p1.q0 = 1.0;
    SolutionSystem sys0 = numeric_system(p0, 1.0);
    SolutionSystem sys1 = numeric_system(p1, 1.0);
    BMReport rep = bm_compare(p0, p1, sys0, sys1, 1.0, 0.05);
    CHECK(rep.verdict == "inconsistent");
}

TEST_CASE("different singularity strengths violate the precondition") {
    Potential p0 = bessel_potential(0.0);
    Potential p1 = bessel_potential(2.0);
    SolutionSystem sys0 = numeric_system(p0, 1.0);
    SolutionSystem sys1 = numeric_system(p1, 1.0);
    CHECK_THROWS_AS(bm_compare(p0, p1, sys0, sys1, 1.0, 0.05), precondition_error);
    CHECK_THROWS_AS(bm_compare(p0, p0, sys0, sys0, 1.0, 2.0), precondition_error);
}

TEST_CASE("verdict is symmetric in the two inputs") {
    Potential p0 = bessel_potential(1.0);
    Potential p1 = bessel_potential(1.0);
    auto q0 = p1.q;
    p1.q = [q0](double x) { return q0(x) + 1.0; };
    p1.q0 = 1.0;
    SolutionSystem sys0 = numeric_system(p0, 1.0);
    SolutionSystem sys1 = numeric_system(p1, 1.0);
    BMReport fwd = bm_compare(p0, p1, sys0, sys1, 1.0, 0.05);
    BMReport bwd = bm_compare(p1, p0, sys1, sys0, 1.0, 0.05);
    CHECK(fwd.verdict == bwd.verdict);
}
