#include "crsharp/heisenberg.hpp"

#include <cmath>
#include <numbers>

#include "crsharp/errors.hpp"
#include "crsharp/quadrature.hpp"
#include "crsharp/summation.hpp"

namespace crsharp::heisenberg {

namespace {

double norm2(const std::vector<cplx>& z) {
    double s = 0.0;
    for (const cplx& v : z) s += std::norm(v);
    return s;
}

void check_lambda(double lambda, int n) {
    const int Q = 2 * n + 2;
    if (!(lambda > 0.0 && lambda < Q)) throw DomainError("lambda must lie in (0, Q)");
}

// (1+|z|^2)^2 + t^2
double rho2(const HPoint& u) {
    const double a = 1.0 + norm2(u.z);
    return a * a + u.t * u.t;
}

}  // namespace

GroupContext::GroupContext(int n_) : n(n_) {
    if (n < 1) throw DomainError("GroupContext: n must be >= 1");
}

HPoint mul(const HPoint& u, const HPoint& v) {
    if (u.n() != v.n()) throw DimensionError("mul: dimension mismatch");
    HPoint w;
    w.z.resize(u.z.size());
    cplx s = 0.0;
    for (std::size_t j = 0; j < u.z.size(); ++j) {
        w.z[j] = u.z[j] + v.z[j];
        s += u.z[j] * std::conj(v.z[j]);
    }
    w.t = u.t + v.t + 2.0 * s.imag();
    return w;
}

HPoint inverse(const HPoint& u) {
    HPoint w = u;
    for (cplx& v : w.z) v = -v;
    w.t = -u.t;
    return w;
}

HPoint dilate(double delta, const HPoint& u) {
    if (!(delta > 0.0)) throw DomainError("dilate: delta must be positive");
    HPoint w = u;
    for (cplx& v : w.z) v *= delta;
    w.t = delta * delta * u.t;
    return w;
}

double homogeneous_norm(const HPoint& u) {
    const double z2 = norm2(u.z);
    return std::pow(z2 * z2 + u.t * u.t, 0.25);
}

double optimizer_h(const HPoint& u, double lambda) {
    check_lambda(lambda, u.n());
    const double Q = 2.0 * u.n() + 2.0;
    return std::pow(rho2(u), -(2.0 * Q - lambda) / 4.0);
}

cplx optimizer_family(const HPoint& u, double lambda, cplx c, const std::vector<cplx>& w, cplx mu) {
    check_lambda(lambda, u.n());
    if (static_cast<int>(w.size()) != u.n()) throw DimensionError("optimizer_family: w has wrong length");
    if (!(mu.imag() > norm2(w))) throw DomainError("optimizer_family: requires Im mu > |w|^2");
    const double Q = 2.0 * u.n() + 2.0;
    cplx zw = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) zw += u.z[j] * std::conj(w[j]);
    const cplx i(0.0, 1.0);
    const cplx d = i * norm2(u.z) + u.t + 2.0 * i * zw + mu;
    return c * std::pow(std::abs(d), -(2.0 * Q - lambda) / 2.0);
}

SpherePoint cayley(const HPoint& u) {
    const double z2 = norm2(u.z);
    const cplx den(1.0 + z2, u.t);
    SpherePoint out;
    out.zeta.resize(u.z.size() + 1);
    for (std::size_t j = 0; j < u.z.size(); ++j) out.zeta[j] = 2.0 * u.z[j] / den;
    out.zeta.back() = cplx(1.0 - z2, -u.t) / den;
    return out;
}

HPoint cayley_inv(const SpherePoint& zeta) {
    if (zeta.zeta.size() < 2) throw DimensionError("cayley_inv: need n >= 1");
    const cplx last = zeta.zeta.back();
    const cplx den = 1.0 + last;
    if (std::abs(den) < 1e-14) throw PoleError("cayley_inv: south pole (0,...,0,-1) has no preimage");
    HPoint u;
    u.z.resize(zeta.zeta.size() - 1);
    for (std::size_t j = 0; j + 1 < zeta.zeta.size(); ++j) u.z[j] = zeta.zeta[j] / den;
    u.t = ((1.0 - last) / den).imag();
    return u;
}

double cayley_jacobian(const HPoint& u) {
    const int n = u.n();
    return std::pow(2.0, 2 * n + 1) / std::pow(rho2(u), n + 1);
}

HFunction lift_function(SphereFunction f, double p) {
    if (!(p >= 1.0)) throw DomainError("lift_function: p must be >= 1");
    return [f = std::move(f), p](const HPoint& u) -> cplx {
        return std::pow(cayley_jacobian(u), 1.0 / p) * f(cayley(u));
    };
}

double kernel_relation_check(const HPoint& u, const HPoint& v) {
    if (u.n() != v.n()) throw DimensionError("kernel_relation_check: dimension mismatch");
    const double lhs = std::abs(csphere::one_minus_dot(cayley(u), cayley(v)));
    const double d = homogeneous_norm(mul(v, inverse(u)));
    const double rhs = 2.0 * d * d / std::sqrt(rho2(u) * rho2(v));
    const double scale = std::max(lhs, rhs);
    if (scale == 0.0) return 0.0;
    return std::abs(lhs - rhs) / scale;
}

cplx integrate_pullback(const HFunction& g, const csphere::QuadratureGrid& grid) {
    std::vector<cplx> t(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const HPoint u = cayley_inv(grid.nodes[i]);
        t[i] = grid.weights[i] * g(u) / cayley_jacobian(u);
    }
    return pairwise_sum<cplx>(t);
}

cplx integrate_h1(const HFunction& g, int n_a, int n_b, int n_arg) {
    const double half_pi = 0.5 * std::numbers::pi;
    const quad::Rule ra = quad::gauss_legendre(n_a, 0.0, half_pi);
    const quad::Rule rb = quad::gauss_legendre(n_b, -half_pi, half_pi);
    const double warg = 2.0 * std::numbers::pi / n_arg;
    std::vector<cplx> terms;
    terms.reserve(static_cast<std::size_t>(n_a) * n_b * n_arg);
    for (int ia = 0; ia < n_a; ++ia) {
        const double a = ra.nodes[ia];
        const double rho = std::tan(a);
        const double sec2a = 1.0 + rho * rho;
        for (int ib = 0; ib < n_b; ++ib) {
            const double b = rb.nodes[ib];
            const double tb = std::tan(b);
            const double t = sec2a * tb;
            // dz dt = rho d rho d arg dt = tan a sec^4 a sec^2 b da db d arg
            const double jac = rho * sec2a * sec2a * (1.0 + tb * tb);
            for (int k = 0; k < n_arg; ++k) {
                const HPoint u{{std::polar(rho, warg * k)}, t};
                terms.push_back(ra.weights[ia] * rb.weights[ib] * warg * jac * g(u));
            }
        }
    }
    return pairwise_sum<cplx>(terms);
}

}  // namespace crsharp::heisenberg
