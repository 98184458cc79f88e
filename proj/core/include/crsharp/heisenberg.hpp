#pragma once

// Heisenberg group H^n = C^n x R with (z,t)(z',t') = (z+z', t+t'+2 Im z.conj(z')),
// its dilations and homogeneous norm, the optimizer profiles, and the Cayley
// transform onto the punctured sphere S^{2n+1}.

#include <complex>
#include <functional>
#include <vector>

#include "crsharp/csphere.hpp"

namespace crsharp::heisenberg {

using cplx = std::complex<double>;
using csphere::SpherePoint;

struct HPoint {
    std::vector<cplx> z;
    double t = 0.0;

    int n() const { return static_cast<int>(z.size()); }
};

struct GroupContext {
    int n = 1;

    explicit GroupContext(int n_);
    int Q() const { return 2 * n + 2; }
    HPoint identity() const { return {std::vector<cplx>(n, 0.0), 0.0}; }
};

HPoint mul(const HPoint& u, const HPoint& v);
HPoint inverse(const HPoint& u);
HPoint dilate(double delta, const HPoint& u);

// (|z|^4 + t^2)^{1/4}
double homogeneous_norm(const HPoint& u);

// H(u) = ((1+|z|^2)^2 + t^2)^{-(2Q-lambda)/4}, 0 < lambda < Q.
double optimizer_h(const HPoint& u, double lambda);

// c / |i|z|^2 + t + 2i z.conj(w) + mu|^{(2Q-lambda)/2}; requires Im mu > |w|^2.
cplx optimizer_family(const HPoint& u, double lambda, cplx c, const std::vector<cplx>& w, cplx mu);

// C(z,t) = (2z/(1+|z|^2+it), (1-|z|^2-it)/(1+|z|^2+it))
SpherePoint cayley(const HPoint& u);

// C^{-1}(zeta) = (zeta_j/(1+zeta_{n+1}), Im (1-zeta_{n+1})/(1+zeta_{n+1})).
// Throws PoleError at (0,...,0,-1).
HPoint cayley_inv(const SpherePoint& zeta);

// J_C(z,t) = 2^{2n+1} / ((1+|z|^2)^2 + t^2)^{n+1}
double cayley_jacobian(const HPoint& u);

using SphereFunction = std::function<cplx(const SpherePoint&)>;
using HFunction = std::function<cplx(const HPoint&)>;

// F(u) = J_C(u)^{1/p} f(C(u)); ||F||_{L^p(H^n)} = ||f||_{L^p(S^{2n+1})}.
HFunction lift_function(SphereFunction f, double p);

// Relative gap between |1 - C(u).conj(C(v))| and
// 2 ((1+|z|^2)^2+t^2)^{-1/2} |v u^{-1}|^2 ((1+|z'|^2)^2+t'^2)^{-1/2}.
// With this group law and C, the chordal distance matches the right quotient
// v u^{-1}; |u^{-1} v| only agrees when t = t' or Im z.conj(z') = 0.
double kernel_relation_check(const HPoint& u, const HPoint& v);

// int_{H^n} g du pulled back to the sphere: sum_i w_i g(C^{-1} zeta_i) / J_C.
// The grid must not contain the south pole (product grids never do).
cplx integrate_pullback(const HFunction& g, const csphere::QuadratureGrid& grid);

// Direct quadrature of int_{H^1} g(z,t) dz dt (n = 1), independent of the
// sphere grid: rho = tan a, t = (1+rho^2) tan b, Gauss-Legendre in a and b,
// trapezoid in arg z.
cplx integrate_h1(const HFunction& g, int n_a, int n_b, int n_arg);

}  // namespace crsharp::heisenberg
