#include <cmath>
#include <numbers>

#include <boost/math/special_functions/beta.hpp>

#include "doctest.h"

#include "crsharp/csphere.hpp"
#include "crsharp/errors.hpp"
#include "generators.hpp"

using namespace crsharp;
using namespace crsharp::csphere;

namespace {

constexpr double pi = std::numbers::pi;

const QuadratureGrid& grid1() {
    static const QuadratureGrid g = build_grid(1, default_resolution(1));
    return g;
}

const QuadratureGrid& small_grid1() {
    static const QuadratureGrid g = build_grid(1, GridResolution{{12, 12}, {8}});
    return g;
}

GridFunction sample(const QuadratureGrid& grid, auto f) {
    GridFunction out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) out[i] = f(grid.nodes[i]);
    return out;
}

double max_abs_diff(const GridFunction& a, const GridFunction& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

double l2(const GridFunction& f, const QuadratureGrid& grid) { return lp_norm(f, 2.0, grid); }

bool same(const SpherePolynomial& a, const SpherePolynomial& b) {
    const SpherePolynomial d = a - b;
    for (const auto& [mono, c] : d.terms())
        if (std::abs(c) > 1e-14) return false;
    return true;
}

}  // namespace

TEST_CASE("grid weights sum to the sphere area") {
    CHECK(sphere_area(1) == doctest::Approx(2.0 * pi * pi).epsilon(1e-15));
    CHECK(sphere_area(2) == doctest::Approx(pi * pi * pi).epsilon(1e-15));
    for (int n : {1, 2, 3}) {
        const QuadratureGrid g =
            build_grid(n, n < 3 ? default_resolution(n) : GridResolution{{6, 6, 6, 6}, {5, 5, 5}});
        double sum = 0.0, worst = 0.0;
        bool positive = true;
        for (double w : g.weights) {
            sum += w;
            positive = positive && w > 0.0;
        }
        CHECK(positive);
        CHECK(sum == doctest::Approx(sphere_area(n)).epsilon(1e-10));
        for (const SpherePoint& p : g.nodes) {
            double norm2 = 0.0;
            for (const cplx& z : p.zeta) norm2 += std::norm(z);
            worst = std::max(worst, std::abs(norm2 - 1.0));
        }
        CHECK(worst < 1e-14);
    }
    CHECK_THROWS_AS(build_grid(1, GridResolution{{3, 8}, {8}}), DomainError);
    CHECK_THROWS_AS(build_grid(1, GridResolution{{8, 8}, {2}}), DomainError);
    CHECK_THROWS_AS(build_grid(2, GridResolution{{8, 8}, {8}}), DimensionError);
}

TEST_CASE("monomial_integral: examples and Beta oracle on S^3") {
    CHECK(monomial_integral(1, std::vector<int>{0, 0}, std::vector<int>{0, 0}) == doctest::Approx(2.0 * pi * pi));
    CHECK(monomial_integral(3, std::vector<int>{0, 0, 0, 0}, std::vector<int>{0, 0, 0, 0}) ==
          doctest::Approx(2.0 * std::pow(pi, 4) / 6.0));
    CHECK(monomial_integral(1, std::vector<int>{1, 0}, std::vector<int>{0, 0}) == 0.0);
    CHECK(monomial_integral(1, std::vector<int>{1, 0}, std::vector<int>{0, 1}) == 0.0);
    CHECK(monomial_integral(1, std::vector<int>{1, 0}, std::vector<int>{1, 0}) == doctest::Approx(pi * pi).epsilon(1e-15));

    // Hopf coordinates: int |z1|^{2a}|z2|^{2b} = 4 pi^2 int_0^{pi/2} sin^{2a+1} cos^{2b+1} = 2 pi^2 B(a+1, b+1)
    for (int a = 0; a <= 6; ++a)
        for (int b = 0; b <= 6; ++b) {
            const double oracle = 2.0 * pi * pi * boost::math::beta(a + 1.0, b + 1.0);
            CHECK(monomial_integral(1, std::vector<int>{a, b}, std::vector<int>{a, b}) ==
                  doctest::Approx(oracle).epsilon(1e-13));
        }
}

TEST_CASE("quadrature integrates monomials exactly up to half the resolution") {
    for (int n : {1, 2}) {
        const QuadratureGrid g = build_grid(n, default_resolution(n));
        const int max_deg = n == 1 ? 12 : 6;
        testgen::Gen gen(n);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<int> a(n + 1), b(n + 1);
            int total = gen.integer(0, max_deg);
            for (int s = 0; s < total; ++s) {
                if (gen.integer(0, 1) == 0) ++a[gen.integer(0, n)];
                else ++b[gen.integer(0, n)];
            }
            // bias half the trials towards a == b so the value is nonzero
            if (trial % 2 == 0) b = a;
            const GridFunction f = sample(g, [&](const SpherePoint& p) {
                cplx v = 1.0;
                for (int j = 0; j <= n; ++j) v *= std::pow(p.zeta[j], a[j]) * std::pow(std::conj(p.zeta[j]), b[j]);
                return v;
            });
            const double exact = monomial_integral(n, a, b);
            CHECK(std::abs(integrate(f, g) - exact) <= 1e-10 * sphere_area(n));
        }
    }
}

TEST_CASE("zonal_phi examples and symmetry") {
    testgen::Gen g(12);
    for (int n : {1, 2, 4}) {
        const double area = sphere_area(n);
        CHECK(std::abs(zonal_phi(n, {0, 0}, cplx(0.3, -0.2)) - 1.0 / area) < 1e-15);
        for (int trial = 0; trial < 50; ++trial) {
            const HarmonicIndex idx{g.integer(0, 6), g.integer(0, 6)};
            const cplx w = std::polar(std::sqrt(g.uniform(0.0, 1.0)), g.uniform(-pi, pi));
            CHECK(std::abs(std::conj(zonal_phi(n, idx, w)) - zonal_phi(n, {idx.k, idx.j}, w)) <
                  1e-12 * (1.0 + std::abs(zonal_phi(n, idx, w))));
        }
    }
    CHECK(zonal_phi(1, {1, 0}, 1.0).real() == doctest::Approx(1.0 / (pi * pi)).epsilon(1e-14));
    CHECK_THROWS_AS(zonal_phi(1, {1, 0}, cplx(1.01)), DomainError);
}

TEST_CASE("dim_hjk matches the quadrature trace of the projection kernel") {
    CHECK(dim_hjk({0, 0}, 1) == 1);
    CHECK(dim_hjk({1, 0}, 1) == 2);
    CHECK(dim_hjk({1, 1}, 1) == 3);
    CHECK(dim_hjk({1, 0}, 3) == 4);
    // closed count: dim H_{j,k}(C^{n+1}) = (j+k+n)/n * C(j+n-1, j) C(k+n-1, k)
    for (int n : {1, 2, 3})
        for (int j = 0; j <= 5; ++j)
            for (int k = 0; k <= 5; ++k) {
                const double c = (j + k + n) / static_cast<double>(n) * std::tgamma(j + n) /
                                 (std::tgamma(j + 1) * std::tgamma(n)) * std::tgamma(k + n) /
                                 (std::tgamma(k + 1) * std::tgamma(n));
                CHECK(dim_hjk({j, k}, n) == std::lround(c));
            }

    // trace of P_{j,k}: int Phi_{j,k}(zeta . conj(zeta)) = |S| Phi(1) cross-checked by the
    // Hilbert-Schmidt norm int int |Phi(zeta . conj(eta))|^2 = dim.
    const QuadratureGrid& g = small_grid1();
    const SpherePoint zeta = g.nodes[17];
    for (HarmonicIndex idx : {HarmonicIndex{1, 1}, HarmonicIndex{2, 0}, HarmonicIndex{2, 1}}) {
        double hs = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) hs += g.weights[i] * std::norm(zonal_phi(1, idx, dot(zeta, g.nodes[i])));
        CHECK(hs * sphere_area(1) == doctest::Approx(static_cast<double>(dim_hjk(idx, 1))).epsilon(1e-10));
    }
}

TEST_CASE("project: examples, idempotence and mutual orthogonality") {
    const QuadratureGrid& g = small_grid1();
    const GridFunction one(g.size(), 1.0);
    CHECK(max_abs_diff(project(one, {0, 0}, g), one) < 1e-12);
    const GridFunction z1 = sample(g, [](const SpherePoint& p) { return p.zeta[0]; });
    CHECK(max_abs_diff(project(z1, {1, 0}, g), z1) < 1e-12);
    CHECK(max_abs_diff(project(z1, {0, 1}, g), GridFunction(g.size(), 0.0)) < 1e-12);

    std::mt19937_64 rng(31);
    const SpherePolynomial u = random_real_bidegree_polynomial(1, 2, rng);
    const GridFunction f = u.sample(g);
    GridFunction sum(g.size(), 0.0);
    for (int j = 0; j <= 2; ++j)
        for (int k = 0; k <= 2; ++k) {
            const GridFunction pf = project(f, {j, k}, g);
            CHECK(max_abs_diff(project(pf, {j, k}, g), pf) < 1e-8);
            const HarmonicIndex other{(j + 1) % 3, k};
            CHECK(max_abs_diff(project(pf, other, g), GridFunction(g.size(), 0.0)) < 1e-8);
            for (std::size_t i = 0; i < g.size(); ++i) sum[i] += pf[i];
        }
    CHECK(max_abs_diff(sum, f) < 1e-8);
}

TEST_CASE("lp_norm examples and Minkowski") {
    const QuadratureGrid& g = grid1();
    const GridFunction one(g.size(), 1.0);
    for (double p : {1.0, 1.5, 2.0, 4.0})
        CHECK(lp_norm(one, p, g) == doctest::Approx(std::pow(sphere_area(1), 1.0 / p)).epsilon(1e-12));
    const GridFunction z1 = sample(g, [](const SpherePoint& p) { return p.zeta[0]; });
    CHECK(lp_norm(z1, 2.0, g) == doctest::Approx(pi).epsilon(1e-12));
    CHECK_THROWS_AS(lp_norm(z1, 0.5, g), DomainError);

    testgen::Gen gen(6);
    for (int trial = 0; trial < 20; ++trial) {
        GridFunction a(g.size()), b(g.size()), s(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) {
            a[i] = gen.complex_normal();
            b[i] = gen.complex_normal();
            s[i] = a[i] + b[i];
        }
        const double p = gen.uniform(1.0, 5.0);
        CHECK(lp_norm(s, p, g) <= lp_norm(a, p, g) + lp_norm(b, p, g) + 1e-12);
    }
}

TEST_CASE("HarmonicTransform agrees with direct projection and satisfies Parseval") {
    const QuadratureGrid& g = grid1();
    CHECK(HarmonicTransform::max_band(g) >= 12);
    const HarmonicTransform tr(g, 8);
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 5; ++trial) {
        const SpherePolynomial u = random_real_bidegree_polynomial(1, 4, rng);
        const GridFunction f = u.sample(g);
        const BigradedArray e = tr.energies(f);
        double total = 0.0;
        for (double v : e.values) total += v;
        const double norm2 = std::pow(l2(f, g), 2);
        CHECK(total == doctest::Approx(norm2).epsilon(1e-10));
        for (int j = 0; j <= 8; ++j)
            for (int k = 0; k <= 8; ++k)
                if (j > 4 || k > 4) CHECK(e.at(j, k) < 1e-20 * norm2);
        const std::vector<cplx> coeffs = tr.forward(f);
        CHECK(max_abs_diff(tr.inverse(coeffs), f) < 1e-10);
    }

    // fast and quadratic projections on a grid small enough for the latter
    const QuadratureGrid& s = small_grid1();
    const HarmonicTransform small(s, HarmonicTransform::max_band(s));
    const SpherePolynomial u = random_real_bidegree_polynomial(1, 2, rng);
    const GridFunction f = u.sample(s);
    for (HarmonicIndex idx : {HarmonicIndex{0, 0}, HarmonicIndex{2, 1}, HarmonicIndex{1, 2}, HarmonicIndex{2, 2}})
        CHECK(max_abs_diff(small.project(f, idx), project(f, idx, s)) < 1e-10);
}

TEST_CASE("T operators on coordinates") {
    for (int n : {1, 2, 3})
        for (int j = 0; j <= n; ++j)
            for (int k = 0; k <= n; ++k) {
                const SpherePolynomial zj = SpherePolynomial::zeta(n, j);
                SpherePolynomial expected = -1.0 * (SpherePolynomial::zeta_bar(n, k) * zj);
                if (j == k) expected += SpherePolynomial::constant(n, 1.0);
                CHECK(same(apply_T(k, zj), expected));
                CHECK(apply_Tbar(k, zj).empty());
                CHECK(apply_T(k, SpherePolynomial::constant(n, 2.5)).empty());
            }
    SpherePolynomial p(1);
    p.add_term({{1, 0}, {0, 0}}, 2.0);
    p.add_term({{1, 0}, {0, 0}}, -2.0);
    CHECK(p.empty());
}

TEST_CASE("energy: constants and coordinate eigenfunctions") {
    for (int n : {1, 2, 3}) {
        const double area = sphere_area(n);
        const SpherePolynomial one = SpherePolynomial::constant(n, 1.0);
        CHECK(energy(one) == doctest::Approx(n * n / 4.0 * area).epsilon(1e-14));
        CHECK(energy_zero(one) == 0.0);
        for (int j = 0; j <= n; ++j) {
            const SpherePolynomial u = SpherePolynomial::zeta(n, j) + SpherePolynomial::zeta_bar(n, j);
            const double l2sq = inner(u, u).real();
            CHECK(l2sq == doctest::Approx(2.0 * area / (n + 1)).epsilon(1e-14));
            CHECK(energy(u) == doctest::Approx(0.5 * n * (0.5 * n + 1.0) * l2sq).epsilon(1e-13));
        }
    }
}

TEST_CASE("energy matches the spectral formula on band-limited functions") {
    const QuadratureGrid& g = grid1();
    const HarmonicTransform tr(g, 4);
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 8; ++trial) {
        const SpherePolynomial u = random_real_bidegree_polynomial(1, 4, rng);
        const BigradedArray e = tr.energies(u.sample(g));
        double spectral = 0.0;
        for (int j = 0; j <= 4; ++j)
            for (int k = 0; k <= 4; ++k) spectral += (j * k + 0.5 * (j + k) + 0.25) * e.at(j, k);
        CHECK(energy(u) == doctest::Approx(spectral).epsilon(1e-8));
        CHECK(energy(u) - energy_zero(u) == doctest::Approx(0.25 * inner(u, u).real()).epsilon(1e-12));
    }
}

TEST_CASE("sum_j E[zeta_j u] - E[u] - (n/2) int u^2 vanishes for real polynomials") {
    for (int n : {1, 2, 3}) {
        std::mt19937_64 rng(100 + n);
        for (int trial = 0; trial < 10; ++trial) {
            const SpherePolynomial u = random_real_polynomial(n, 3, rng);
            double lhs = -energy(u) - 0.5 * n * inner(u, u).real();
            for (int j = 0; j <= n; ++j) lhs += energy(SpherePolynomial::zeta(n, j) * u);
            CHECK(std::abs(lhs) <= 1e-10 * energy(u));
        }
    }
}

TEST_CASE("polynomial evaluation and sampling agree with exact integrals") {
    std::mt19937_64 rng(8);
    const QuadratureGrid& g = grid1();
    for (int trial = 0; trial < 5; ++trial) {
        const SpherePolynomial u = random_real_polynomial(1, 4, rng);
        const SpherePolynomial v = random_real_polynomial(1, 3, rng);
        const GridFunction us = u.sample(g), vs = v.sample(g);
        GridFunction prod(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) prod[i] = us[i] * std::conj(vs[i]);
        CHECK(std::abs(integrate(prod, g) - inner(u, v)) < 1e-10 * (1.0 + std::abs(inner(u, v))));
        CHECK(std::abs(integrate(u) - integrate(us, g)) < 1e-10 * (1.0 + std::abs(integrate(u))));
        CHECK(std::abs((u * v)(g.nodes[5]) - u(g.nodes[5]) * v(g.nodes[5])) < 1e-12 * (1.0 + std::abs(u(g.nodes[5]) * v(g.nodes[5]))));
    }
}
