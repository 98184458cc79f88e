#include "crsharp/csphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "crsharp/errors.hpp"
#include "crsharp/quadrature.hpp"
#include "crsharp/specfun.hpp"
#include "crsharp/summation.hpp"

namespace crsharp::csphere {

double sphere_area(int n) {
    if (n < 0) throw DomainError("sphere_area: n must be non-negative");
    return 2.0 * std::pow(std::numbers::pi, n + 1) / std::tgamma(n + 1.0);
}

SpherePoint SpherePoint::checked(std::vector<cplx> zeta) {
    double s = 0.0;
    for (const cplx& z : zeta) s += std::norm(z);
    if (zeta.size() < 2 || std::abs(s - 1.0) > 1e-12)
        throw DomainError("SpherePoint: coordinates are not a unit vector in C^{n+1}");
    return SpherePoint{std::move(zeta)};
}

cplx dot(const SpherePoint& zeta, const SpherePoint& eta) {
    if (zeta.zeta.size() != eta.zeta.size()) throw DimensionError("dot: dimension mismatch");
    cplx s = 0.0;
    for (std::size_t i = 0; i < zeta.zeta.size(); ++i) s += zeta.zeta[i] * std::conj(eta.zeta[i]);
    return s;
}

cplx one_minus_dot(const SpherePoint& zeta, const SpherePoint& eta) {
    if (zeta.zeta.size() != eta.zeta.size())
        throw DimensionError("one_minus_dot: dimension mismatch");
    double d2 = 0.0;
    cplx cross = 0.0;
    for (std::size_t i = 0; i < zeta.zeta.size(); ++i) {
        const cplx d = zeta.zeta[i] - eta.zeta[i];
        d2 += std::norm(d);
        cross += d * std::conj(eta.zeta[i]);
    }
    return {0.5 * d2, -cross.imag()};
}

GridResolution default_resolution(int n) {
    if (n < 1) throw DomainError("default_resolution: n must be >= 1");
    if (n == 1) return {{32, 32}, {24}};
    return {std::vector<int>(n + 1, 12), std::vector<int>(n, 10)};
}

GridResolution scaled_resolution(const GridResolution& r, int factor) {
    GridResolution out = r;
    for (int& c : out.phi) c *= factor;
    for (int& c : out.theta) c *= factor;
    return out;
}

QuadratureGrid build_grid(int n, const GridResolution& res) {
    if (n < 1) throw DomainError("build_grid: n must be >= 1");
    if (static_cast<int>(res.phi.size()) != n + 1 || static_cast<int>(res.theta.size()) != n)
        throw DimensionError("build_grid: resolution needs n+1 phi counts and n theta counts");
    for (int c : res.phi)
        if (c < 4) throw DomainError("build_grid: resolution too small (need >= 4 per angle)");
    for (int c : res.theta)
        if (c < 4) throw DomainError("build_grid: resolution too small (need >= 4 per angle)");

    QuadratureGrid g;
    g.n = n;
    g.resolution = res;
    // theta_j carries sin^{2j-1} cos; with x = 2 sin^2 - 1 this is
    // 2^{-j-1} (1+x)^{j-1} dx.
    for (int j = 1; j <= n; ++j) {
        quad::Rule r = quad::gauss_jacobi(res.theta[j - 1], 0.0, j - 1.0);
        const double scale = std::pow(2.0, -j - 1.0);
        for (double& w : r.weights) w *= scale;
        g.theta_x.push_back(r.nodes);
        g.theta_w.push_back(r.weights);
    }

    std::size_t n_theta = 1, n_phi = 1;
    for (int c : res.theta) n_theta *= c;
    for (int c : res.phi) n_phi *= c;
    g.nodes.reserve(n_theta * n_phi);
    g.weights.reserve(n_theta * n_phi);

    double phi_weight = 1.0;
    for (int c : res.phi) phi_weight *= 2.0 * std::numbers::pi / c;

    std::vector<int> ti(n, 0);
    for (std::size_t a = 0; a < n_theta; ++a) {
        // decode theta multi-index, theta_n slowest
        std::size_t rem = a;
        for (int j = 0; j < n; ++j) {
            ti[j] = static_cast<int>(rem % res.theta[j]);
            rem /= res.theta[j];
        }
        std::vector<double> s(n), c(n);
        double wt = phi_weight;
        for (int j = 0; j < n; ++j) {
            const double x = g.theta_x[j][ti[j]];
            s[j] = std::sqrt(0.5 * (1.0 + x));
            c[j] = std::sqrt(0.5 * (1.0 - x));
            wt *= g.theta_w[j][ti[j]];
        }
        // r_1 = prod sin, r_{j+1} = cos theta_j prod_{i>j} sin theta_i
        std::vector<double> r(n + 1);
        for (int slot = 0; slot <= n; ++slot) {
            double v = slot == 0 ? 1.0 : c[slot - 1];
            for (int i = slot; i < n; ++i) v *= s[i];
            r[slot] = v;
        }
        std::vector<int> pi(n + 1, 0);
        for (std::size_t b = 0; b < n_phi; ++b) {
            std::size_t rb = b;
            for (int l = n; l >= 0; --l) {
                pi[l] = static_cast<int>(rb % res.phi[l]);
                rb /= res.phi[l];
            }
            std::vector<cplx> z(n + 1);
            for (int l = 0; l <= n; ++l) {
                const double phi = 2.0 * std::numbers::pi * pi[l] / res.phi[l];
                z[l] = std::polar(r[l], phi);
            }
            g.nodes.push_back(SpherePoint{std::move(z)});
            g.weights.push_back(wt);
        }
    }
    return g;
}

double monomial_integral(int n, std::span<const int> a, std::span<const int> b) {
    if (static_cast<int>(a.size()) != n + 1 || static_cast<int>(b.size()) != n + 1)
        throw DimensionError("monomial_integral: multi-index length must be n+1");
    if (!std::equal(a.begin(), a.end(), b.begin())) return 0.0;
    int total = 0;
    double lg = 0.0;
    for (int ai : a) {
        total += ai;
        lg += specfun::log_gamma(ai + 1.0);
    }
    return 2.0 * std::pow(std::numbers::pi, n + 1) * std::exp(lg - specfun::log_gamma(n + total + 1.0));
}

cplx zonal_phi(int n, HarmonicIndex idx, cplx w) {
    const double r2 = std::norm(w);
    if (r2 > (1.0 + 1e-12) * (1.0 + 1e-12))
        throw DomainError("zonal_phi: |w| exceeds 1");
    const int p = idx.j - idx.k;
    const int m = idx.m(), M = idx.M();
    const double log_pref = specfun::log_gamma(M + n) + std::log(idx.j + idx.k + n) -
                            std::log(sphere_area(n)) - specfun::log_gamma(n + 1.0) -
                            specfun::log_gamma(M + 1.0);
    const cplx phase = p >= 0 ? std::pow(w, p) : std::pow(std::conj(w), -p);
    const double jac = specfun::jacobi_p({m, n - 1.0, static_cast<double>(std::abs(p))},
                                         std::min(1.0, 2.0 * r2 - 1.0));
    return std::exp(log_pref) * jac * phase;
}

long dim_hjk(HarmonicIndex idx, int n) {
    if (idx.j < 0 || idx.k < 0) throw DomainError("dim_hjk: negative index");
    const double trace = sphere_area(n) * zonal_phi(n, idx, 1.0).real();
    const double rounded = std::round(trace);
    if (std::abs(trace - rounded) > 1e-8 * std::max(1.0, rounded))
        throw std::logic_error("dim_hjk: non-integer trace " + std::to_string(trace));
    return static_cast<long>(rounded);
}

GridFunction project(std::span<const cplx> f, HarmonicIndex idx, const QuadratureGrid& grid) {
    if (f.size() != grid.size()) throw DimensionError("project: grid size mismatch");
    GridFunction out(grid.size());
    std::vector<cplx> terms(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t l = 0; l < grid.size(); ++l) {
            cplx w = dot(grid.nodes[i], grid.nodes[l]);
            if (std::abs(w) > 1.0) w /= std::abs(w);
            terms[l] = grid.weights[l] * zonal_phi(grid.n, idx, w) * f[l];
        }
        out[i] = pairwise_sum<cplx>(terms);
    }
    return out;
}

double lp_norm(std::span<const cplx> f, double p, const QuadratureGrid& grid) {
    if (!(p >= 1.0)) throw DomainError("lp_norm: p must be >= 1");
    if (f.size() != grid.size()) throw DimensionError("lp_norm: grid size mismatch");
    std::vector<double> t(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) t[i] = grid.weights[i] * std::pow(std::abs(f[i]), p);
    return std::pow(pairwise_sum<double>(t), 1.0 / p);
}

double lp_norm(std::span<const double> f, double p, const QuadratureGrid& grid) {
    if (!(p >= 1.0)) throw DomainError("lp_norm: p must be >= 1");
    if (f.size() != grid.size()) throw DimensionError("lp_norm: grid size mismatch");
    std::vector<double> t(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) t[i] = grid.weights[i] * std::pow(std::abs(f[i]), p);
    return std::pow(pairwise_sum<double>(t), 1.0 / p);
}

cplx integrate(std::span<const cplx> f, const QuadratureGrid& grid) {
    if (f.size() != grid.size()) throw DimensionError("integrate: grid size mismatch");
    std::vector<cplx> t(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) t[i] = grid.weights[i] * f[i];
    return pairwise_sum<cplx>(t);
}

double integrate(std::span<const double> f, const QuadratureGrid& grid) {
    if (f.size() != grid.size()) throw DimensionError("integrate: grid size mismatch");
    std::vector<double> t(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) t[i] = grid.weights[i] * f[i];
    return pairwise_sum<double>(t);
}

}  // namespace crsharp::csphere
