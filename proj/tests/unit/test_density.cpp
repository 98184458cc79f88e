#include <cmath>
#include <complex>

#include "doctest.h"

#include "crsharp/errors.hpp"
#include "crsharp/inequalities.hpp"
#include "density.hpp"
#include "generators.hpp"

using namespace crsharp;
using crsharp::csphere::cplx;
using crsharp::csphere::SpherePoint;
using crsharp::tools::Density;
using crsharp::tools::ParseError;

namespace {

SpherePoint random_point(testgen::Gen& g, int n) {
    SpherePoint p;
    double s = 0.0;
    for (int j = 0; j <= n; ++j) {
        p.zeta.push_back(g.complex_normal());
        s += std::norm(p.zeta.back());
    }
    for (cplx& z : p.zeta) z /= std::sqrt(s);
    return p;
}

double close(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("Density evaluates the grammar like the equivalent C++ expression") {
    testgen::Gen g(21);
    const Density a = Density::parse("abs(1+0.3*z2)^3 - 2*re(z1*zb2)/(4+im(z1))", 1);
    const Density b = Density::parse("-(z1 - conj(z2)) * i + 1.5e-1", 1);
    const Density c = Density::parse("z1^2 + zb3", 2);
    const Density d = Density::parse("2^-1 + -+1", 1);
    for (int trial = 0; trial < 200; ++trial) {
        const SpherePoint p = random_point(g, 1);
        const cplx z1 = p.zeta[0], z2 = p.zeta[1];
        const cplx ea = std::pow(std::abs(1.0 + 0.3 * z2), 3) - 2.0 * (z1 * std::conj(z2)).real() / (4.0 + z1.imag());
        CHECK(close(a(p), ea) < 1e-14);
        CHECK(close(b(p), -(z1 - std::conj(z2)) * cplx(0.0, 1.0) + 0.15) < 1e-14);
        CHECK(close(d(p), cplx(-0.5)) < 1e-15);

        const SpherePoint q = random_point(g, 2);
        CHECK(close(c(q), q.zeta[0] * q.zeta[0] + std::conj(q.zeta[2])) < 1e-14);
    }
    CHECK(a.text() == "abs(1+0.3*z2)^3 - 2*re(z1*zb2)/(4+im(z1))");
    CHECK(c.n() == 2);
}

TEST_CASE("Density precedence: ^ binds tighter than unary minus and * before +") {
    const SpherePoint p{{cplx(1.0), cplx(0.0)}};
    CHECK(Density::parse("1+2*3", 1)(p).real() == 7.0);
    CHECK(Density::parse("(1+2)*3", 1)(p).real() == 9.0);
    CHECK(Density::parse("8/2/2", 1)(p).real() == 2.0);
    CHECK(std::abs(Density::parse("2^3^2", 1)(p).real() - 512.0) < 1e-12);
    CHECK(std::abs(Density::parse("-2^2", 1)(p).real() + 4.0) < 1e-12);
}

TEST_CASE("Density::parse rejects malformed input with a position") {
    for (const char* bad : {"", "1+", "(1+z1", "1+z1)", "z", "zb", "z0", "z3", "w1", "foo(z1)", "abs z1", "1..2", "1 2",
                            "i2", "3*#"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(Density::parse(bad, 1), ParseError);
    }
    try {
        Density::parse("1 + z7", 2);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position() == 4);
    }
    CHECK_THROWS_AS(Density::parse("1", 0), DomainError);
    const Density d = Density::parse("z1", 1);
    CHECK_THROWS_AS(d(SpherePoint{{cplx(1.0), cplx(0.0), cplx(0.0)}}), DimensionError);
}

TEST_CASE("sample_nonnegative rejects negative and complex densities") {
    const csphere::QuadratureGrid g = csphere::build_grid(1, csphere::GridResolution{{8, 8}, {6}});
    const std::vector<double> one = Density::parse("1", 1).sample_nonnegative(g);
    CHECK(one.size() == g.size());
    for (double v : one) CHECK(v == 1.0);
    CHECK_THROWS_AS(Density::parse("re(z1)", 1).sample_nonnegative(g), DomainError);
    CHECK_THROWS_AS(Density::parse("1+z1", 1).sample_nonnegative(g), DomainError);
    CHECK_NOTHROW(Density::parse("abs(z1)^2 + 0*i", 1).sample_nonnegative(g));
}

TEST_CASE("resolve_density prefers builtin names and falls back to parsing") {
    const SpherePoint p{{cplx(0.6), cplx(0.0, 0.8)}};
    for (const tools::BuiltinDensity& b : tools::builtin_densities()) {
        CAPTURE(b.name);
        const Density by_name = tools::resolve_density(b.name, 1);
        CHECK(by_name.text() == b.expression);
        CHECK(by_name(p) == Density::parse(b.expression, 1)(p));
    }
    CHECK(tools::resolve_density("abs(z1)", 1).text() == "abs(z1)");
    CHECK_THROWS_AS(tools::resolve_density("no-such-family", 1), ParseError);
}

TEST_CASE("every builtin density has a balanced frame on S^3 and S^5") {
    const csphere::QuadratureGrid g1 = csphere::build_grid(1, csphere::default_resolution(1));
    const csphere::QuadratureGrid g2 = csphere::build_grid(2, csphere::GridResolution{{10, 10, 10}, {8, 8}});
    for (const tools::BuiltinDensity& b : tools::builtin_densities()) {
        for (const csphere::QuadratureGrid* g : {&g1, &g2}) {
            CAPTURE(b.name);
            CAPTURE(g->n);
            const std::vector<double> f = tools::resolve_density(b.name, g->n).sample_nonnegative(*g);
            const inequalities::CenterOfMassSolution s = inequalities::solve_center_of_mass(f, *g, 1e-8);
            CHECK(s.residual <= 1e-8);
            CHECK(s.delta > 0.0);
            CHECK(s.delta <= 1.0);
        }
    }
}
