#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "crsharp/errors.hpp"
#include "crsharp/heisenberg.hpp"
#include "crsharp/inequalities.hpp"
#include "crsharp/specfun.hpp"

namespace crsharp::inequalities {

namespace {

constexpr double kPi = std::numbers::pi;

std::string cell(int j, int k) { return "(" + std::to_string(j) + "," + std::to_string(k) + ")"; }

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::vector<double> real_part(const csphere::GridFunction& f) {
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i].real();
    return out;
}

csphere::GridFunction as_complex(const std::vector<double>& f) { return {f.begin(), f.end()}; }

// |1 - conj(xi) . zeta|^{-e}
csphere::GridFunction optimizer_profile(const QuadratureGrid& grid, const std::vector<cplx>& xi, double e) {
    csphere::GridFunction out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        cplx s = 0.0;
        for (std::size_t l = 0; l < xi.size(); ++l) s += std::conj(xi[l]) * grid.nodes[i].zeta[l];
        out[i] = std::pow(std::abs(1.0 - s), -e);
    }
    return out;
}

// Random real band-limited function with int u^2 = |S|, sampled on the grid.
std::vector<double> random_unit_sample(int n, int J, const QuadratureGrid& grid, std::mt19937_64& rng) {
    const csphere::SpherePolynomial v = csphere::random_real_bidegree_polynomial(n, J, rng);
    std::vector<double> s = real_part(v.sample(grid));
    std::vector<double> sq(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) sq[i] = s[i] * s[i];
    const double scale = std::sqrt(csphere::sphere_area(n) / csphere::integrate(sq, grid));
    for (double& x : s) x *= scale;
    return s;
}

constexpr double kAmplitudes[] = {1e-3, 1e-2, 0.1, 0.5, 1.0, 3.0, 10.0};

}  // namespace

// ---- key inequality -------------------------------------------------------------

double keyineq_lhs(int n, double a, int j, int k) {
    const double t1 = j == 0 ? 1.0 / (k + n + 1.0 - a) : (a - 1.0) / ((j - 1.0 + a) * (k + n + 1.0 - a));
    const double t2 = k == 0 ? 1.0 / (j + n + 1.0 - a) : (a - 1.0) / ((j + n + 1.0 - a) * (k - 1.0 + a));
    return t1 + t2;
}

VerificationReport verify_keyineq(int n, double alpha, int Jmax) {
    if (n < 1) throw DomainError("verify_keyineq: n must be >= 1");
    if (!(alpha > 0.0 && alpha < 0.5 * (n + 1))) throw DomainError("verify_keyineq: alpha must lie in (0, (n+1)/2)");
    if (Jmax < 0) throw DomainError("verify_keyineq: Jmax must be non-negative");
    VerificationReport rep("keyineq");
    rep.set_parameter("n", n);
    rep.set_parameter("alpha", alpha);
    rep.set_parameter("Jmax", Jmax);
    const double rhs = 2.0 / (n + 1.0 - alpha);
    const double tol = 1e-12;
    for (int j = 0; j <= Jmax; ++j) {
        for (int k = 0; k <= Jmax; ++k) {
            const double gap = (rhs - keyineq_lhs(n, alpha, j, k)) / rhs;
            if (j == 0 && k == 0) {
                rep.record("equality at (0,0), alpha=" + fmt(alpha), std::abs(gap), std::abs(gap) <= tol, true);
            } else {
                rep.record("strict at " + cell(j, k) + ", alpha=" + fmt(alpha), std::max(0.0, -gap), gap > tol);
            }
        }
    }
    return rep;
}

VerificationReport verify_keyineq_grid(int n, int Jmax) {
    VerificationReport rep("keyineq");
    rep.set_parameter("n", n);
    rep.set_parameter("Jmax", Jmax);
    rep.set_parameter("alpha_points", 17);
    for (int i = 1; i <= 17; ++i) rep.merge(verify_keyineq(n, 0.5 * (n + 1) * i / 18.0, Jmax));
    return rep;
}

// ---- subcritical Sobolev -----------------------------------------------------------

VerificationReport verify_sobq(int n, double d, int Jmax) {
    if (n < 1) throw DomainError("verify_sobq: n must be >= 1");
    if (!(d > 0.0 && d < 2.0)) throw DomainError("verify_sobq: d must lie in (0,2)");
    VerificationReport rep("sobq");
    rep.set_parameter("n", n);
    rep.set_parameter("d", d);
    rep.set_parameter("Jmax", Jmax);
    const double Q = 2.0 * n + 2.0;
    const double hi = 0.25 * (Q + d), lo = 0.25 * (Q - d);
    const double c = 8.0 * d / ((Q - d) * (Q - 2.0));
    const double norm = std::exp(2.0 * (specfun::log_gamma(lo) - specfun::log_gamma(hi)));
    const double tol = 1e-12;

    for (int j = 0; j <= Jmax; ++j) {
        for (int k = 0; k <= Jmax; ++k) {
            const double lhs = c * spectral::laplacian_eigenvalue({j, k}, n, false) + 1.0;
            const double rhs = norm * spectral::a_d_eigenvalue({j, k}, d, n);
            const double gap = (lhs - rhs) / rhs;
            const bool equality_case = (j == 0 && k == 0) || (j == 0 && k == 1) || (j == 1 && k == 0);
            if (equality_case)
                rep.record("goal equality at " + cell(j, k), std::abs(gap), std::abs(gap) <= tol, true);
            else
                rep.record("goal strict at " + cell(j, k), std::max(0.0, -gap), gap > tol);
        }
    }
    for (int k = 0; k <= Jmax; ++k) {
        const double lhs = 2.0 * d / (Q - d) * k + 1.0;
        const double rhs = std::exp(specfun::log_gamma(lo) - specfun::log_gamma(hi) + specfun::log_gamma_ratio(hi + k, lo + k));
        const double gap = (lhs - rhs) / rhs;
        if (k <= 1)
            rep.record("j0 equality at k=" + std::to_string(k), std::abs(gap), std::abs(gap) <= tol, true);
        else
            rep.record("j0 strict at k=" + std::to_string(k), std::max(0.0, -gap), gap > tol);
    }
    if (Jmax >= 1) {
        constexpr int kPoints = 1000;
        for (int i = 0; i < kPoints; ++i) {
            const double k = 1.0 + (Jmax - 1.0) * i / (kPoints - 1.0);
            const double lhs = 2.0 * d / (2.0 * d * k + Q - d);
            const double rhs = specfun::digamma(hi + k) - specfun::digamma(lo + k);
            const double gap = (lhs - rhs) / lhs;
            rep.record("digamma at k=" + fmt(k), std::max(0.0, -gap), gap >= -1e-13);
        }
    }
    return rep;
}

// ---- sum rule ----------------------------------------------------------------------

VerificationReport verify_gsr(int n, std::uint64_t seed, int trials) {
    if (n < 1) throw DomainError("verify_gsr: n must be >= 1");
    VerificationReport rep("gsr");
    rep.set_parameter("n", n);
    rep.set_parameter("seed", static_cast<double>(seed));
    rep.set_parameter("trials", trials);
    auto residual = [n](const csphere::SpherePolynomial& u) {
        double lhs = 0.0;
        for (int j = 0; j <= n; ++j) lhs += csphere::energy(csphere::SpherePolynomial::zeta(n, j) * u);
        const double rhs = csphere::energy(u) + 0.5 * n * csphere::inner(u, u).real();
        return std::abs(lhs - rhs) / std::max(std::abs(rhs), 1.0);
    };
    const double tol = 1e-10;
    {
        const double r = residual(csphere::SpherePolynomial::constant(n, 1.0));
        rep.record("u = 1", r, r <= tol, true);
    }
    {
        const csphere::SpherePolynomial re1 =
            0.5 * (csphere::SpherePolynomial::zeta(n, 0) + csphere::SpherePolynomial::zeta_bar(n, 0));
        const double r = residual(re1);
        rep.record("u = Re zeta_1", r, r <= tol, true);
    }
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        const double r = residual(csphere::random_real_bidegree_polynomial(n, 4, rng));
        rep.record("random trial " + std::to_string(t), r, r <= tol);
    }
    return rep;
}

// ---- Jerison-Lee ------------------------------------------------------------------

VerificationReport verify_jl(int n, std::uint64_t seed, int trials) {
    if (n < 1) throw DomainError("verify_jl: n must be >= 1");
    VerificationReport rep("jl");
    rep.set_parameter("n", n);
    rep.set_parameter("seed", static_cast<double>(seed));
    rep.set_parameter("trials", trials);
    const double Q = 2.0 * n + 2.0;
    const double q = 2.0 * Q / (Q - 2.0);
    const double C = jl_constant(n).sphere;
    const double area = csphere::sphere_area(n);
    const QuadratureGrid grid = csphere::build_grid(n, csphere::default_resolution(n));

    {
        const double E = csphere::energy(csphere::SpherePolynomial::constant(n, 1.0));
        const double rhs = C * std::pow(area, (Q - 2.0) / Q);
        const double r = std::abs(E - rhs) / E;
        rep.record("u = 1 deficit", r, r <= 1e-12, true);
    }

    std::mt19937_64 rng(seed);
    if (n == 1) {
        const int J = csphere::HarmonicTransform::max_band(grid);
        const csphere::HarmonicTransform tr(grid, J);
        auto energy_of = [&](const csphere::GridFunction& u) {
            const csphere::BigradedArray e = tr.energies(u);
            double s = 0.0;
            for (int j = 0; j <= J; ++j)
                for (int k = 0; k <= J; ++k) s += spectral::laplacian_eigenvalue({j, k}, n, true) * e.at(j, k);
            return s;
        };
        for (int t = 0; t < trials; ++t) {
            const double amp = kAmplitudes[t % std::size(kAmplitudes)];
            std::vector<double> u = random_unit_sample(n, 3, grid, rng);
            for (double& x : u) x = 1.0 + amp * x;
            const csphere::GridFunction uc = as_complex(u);
            const double deficit = energy_of(uc) - C * std::pow(csphere::lp_norm(u, q, grid), 2.0);
            rep.record("random trial " + std::to_string(t) + " amp=" + fmt(amp), std::max(0.0, -deficit),
                       deficit >= -1e-10);
        }
        const std::vector<std::vector<cplx>> xis = {{0.2, 0.0}, {cplx(0.3, 0.0), cplx(0.0, 0.4)}};
        for (const auto& xi : xis) {
            const csphere::GridFunction u = optimizer_profile(grid, xi, 0.5 * (Q - 2.0));
            const double E = energy_of(u);
            const double deficit = (E - C * std::pow(csphere::lp_norm(u, q, grid), 2.0)) / E;
            const double r = std::abs(deficit);
            rep.record("optimizer |xi|=" + fmt(std::sqrt(std::norm(xi[0]) + std::norm(xi[1]))), r, r <= 1e-6, true);
        }
    } else {
        for (int t = 0; t < trials; ++t) {
            const double amp = kAmplitudes[t % std::size(kAmplitudes)];
            csphere::SpherePolynomial v = csphere::random_real_bidegree_polynomial(n, 2, rng);
            v *= std::sqrt(area / csphere::inner(v, v).real());
            const csphere::SpherePolynomial u = csphere::SpherePolynomial::constant(n, 1.0) + amp * v;
            const double deficit =
                csphere::energy(u) - C * std::pow(csphere::lp_norm(u.sample(grid), q, grid), 2.0);
            rep.record("random trial " + std::to_string(t) + " amp=" + fmt(amp), std::max(0.0, -deficit),
                       deficit >= -1e-10);
        }
    }
    return rep;
}

// ---- HLS on the sphere ---------------------------------------------------------------

VerificationReport verify_hls(int n, double lambda, std::uint64_t seed, int trials) {
    if (n != 1) throw DimensionError("verify_hls: only n = 1 is supported (FFT transform)");
    const double Q = 2.0 * n + 2.0;
    if (!(lambda > 0.0 && lambda < Q)) throw DomainError("verify_hls: lambda must lie in (0, Q)");
    VerificationReport rep("hls");
    rep.set_parameter("n", n);
    rep.set_parameter("lambda", lambda);
    rep.set_parameter("seed", static_cast<double>(seed));
    rep.set_parameter("trials", trials);
    const double p = 2.0 * Q / (2.0 * Q - lambda);
    const double C = hls_constant_sphere(n, lambda);
    const QuadratureGrid grid = csphere::build_grid(n, csphere::default_resolution(n));
    const int J = csphere::HarmonicTransform::max_band(grid);
    const csphere::HarmonicTransform tr(grid, J);
    const auto table = spectral::EigenvalueTable::get(spectral::ZonalKernelSpec::power(n, 0.25 * lambda), J);
    auto quotient = [&](const csphere::GridFunction& f) {
        return bilinear_form(tr.energies(f), *table) / std::pow(csphere::lp_norm(f, p, grid), 2.0);
    };

    {
        const double r = std::abs(quotient(csphere::GridFunction(grid.size(), 1.0)) - C) / C;
        rep.record("f = 1", r, r <= 1e-10, true);
    }
    const std::vector<std::vector<cplx>> xis = {{0.2, 0.0}, {cplx(0.3, 0.0), cplx(0.0, 0.4)}};
    for (const auto& xi : xis) {
        const double r = std::abs(quotient(optimizer_profile(grid, xi, 0.5 * (2.0 * Q - lambda))) - C) / C;
        rep.record("optimizer |xi|=" + fmt(std::sqrt(std::norm(xi[0]) + std::norm(xi[1]))), r, r <= 1e-3, true);
    }
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        const double amp = kAmplitudes[t % std::size(kAmplitudes)];
        std::vector<double> f = random_unit_sample(n, 3, grid, rng);
        for (double& x : f) x = 1.0 + amp * x;
        const double excess = (quotient(as_complex(f)) - C) / C;
        rep.record("random trial " + std::to_string(t) + " amp=" + fmt(amp), std::max(0.0, excess), excess <= 1e-8);
    }
    return rep;
}

// ---- endpoints ----------------------------------------------------------------------

namespace {

// Least-squares fit deficit = c2 eps^2 + c4 eps^4 (+ c6 eps^6 once three or
// more eps are given; without it the eps^6 tail leaks into c2).
void fit_even(EndpointFit& fit) {
    const std::size_t m = fit.eps.size();
    if (m < 2) throw DomainError("endpoint fit: need at least two eps values");
    const int cols = m >= 3 ? 3 : 2;
    Eigen::MatrixXd A(m, cols);
    Eigen::VectorXd b(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double e2 = fit.eps[i] * fit.eps[i];
        for (int c = 0; c < cols; ++c) A(i, c) = std::pow(e2, c + 1);
        b(i) = fit.deficit[i];
    }
    const auto qr = A.colPivHouseholderQr();
    if (qr.rank() < cols) throw DomainError("endpoint fit: eps values must be distinct in |eps|");
    const Eigen::VectorXd c = qr.solve(b);
    fit.c2 = c(0);
    fit.c4 = c(1);
    fit.c6 = cols == 3 ? c(2) : 0.0;
}

// ||P_{1,0} f||^2 = ||P_{0,1} f||^2 for f = a + b Re zeta_1, exact.
double first_band_energy(int n, double b) {
    const csphere::SpherePolynomial piece = csphere::SpherePolynomial::zeta(n, 0) * cplx(0.5 * b);
    return csphere::inner(piece, piece).real();
}

}  // namespace

EndpointFit endpoint_log_fit(int n, std::span<const double> eps_list) {
    if (n < 1) throw DomainError("endpoint_log_fit: n must be >= 1");
    const double Q = 2.0 * n + 2.0;
    const double area = csphere::sphere_area(n);
    const QuadratureGrid grid = csphere::build_grid(n, csphere::default_resolution(n));
    const double L00 = spectral::eigenvalue_log({0, 0}, n);
    const double L10 = spectral::eigenvalue_log({1, 0}, n);
    EndpointFit fit;
    for (double eps : eps_list) {
        std::vector<double> f(grid.size()), flogf(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            f[i] = 1.0 + eps * grid.nodes[i].zeta[0].real();
            if (!(f[i] > 0.0)) throw DomainError("endpoint_log_fit: trial function must stay positive");
            flogf[i] = f[i] * std::log(f[i]);
        }
        const double mass = csphere::integrate(f, grid);
        if (std::abs(mass - area) > 1e-12 * area) throw DomainError("endpoint_log_fit: normalization failure");
        const double lhs = L00 * area + 2.0 * L10 * first_band_energy(n, eps);
        const double rhs = 2.0 * area / Q * csphere::integrate(flogf, grid);
        fit.eps.push_back(eps);
        fit.deficit.push_back(rhs - lhs);
    }
    fit_even(fit);
    return fit;
}

EndpointFit endpoint_entropy_fit(int n, std::span<const double> eps_list) {
    if (n < 1) throw DomainError("endpoint_entropy_fit: n must be >= 1");
    const double area = csphere::sphere_area(n);
    const QuadratureGrid grid = csphere::build_grid(n, csphere::default_resolution(n));
    const double D10 = spectral::eigenvalue_entropy({1, 0}, n);
    const double C = entropy_constant(n);
    EndpointFit fit;
    for (double eps : eps_list) {
        if (!(std::abs(eps) < 1.0)) throw DomainError("endpoint_entropy_fit: |eps| must be < 1");
        // sqrt(1-eps^2) + eps Re zeta_1 has int f^2 = |S| (1 - eps^2 + eps^2/(2(n+1)));
        // rescale so that int f^2 = |S|.
        const double a = std::sqrt(1.0 - eps * eps);
        const double c = 1.0 / std::sqrt(1.0 - eps * eps + eps * eps / (2.0 * (n + 1)));
        std::vector<double> f2(grid.size()), ent(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double f = c * (a + eps * grid.nodes[i].zeta[0].real());
            f2[i] = f * f;
            ent[i] = f2[i] > 0.0 ? f2[i] * std::log(f2[i]) : 0.0;
        }
        const double mass = csphere::integrate(f2, grid);
        if (std::abs(mass - area) > 1e-12 * area) throw DomainError("endpoint_entropy_fit: normalization failure");
        const double lhs = 2.0 * D10 * first_band_energy(n, c * eps);
        const double rhs = C * csphere::integrate(ent, grid);
        fit.eps.push_back(eps);
        fit.deficit.push_back(lhs - rhs);
    }
    fit_even(fit);
    return fit;
}

namespace {

VerificationReport endpoint_report(const std::string& suite, int n, const EndpointFit& fit) {
    VerificationReport rep(suite);
    rep.set_parameter("n", n);
    const double scale = csphere::sphere_area(n);
    for (std::size_t i = 0; i < fit.eps.size(); ++i) {
        rep.set_parameter("eps" + std::to_string(i), fit.eps[i]);
        const double d = fit.deficit[i];
        rep.record("deficit at eps=" + fmt(fit.eps[i]) + " is " + fmt(d), std::max(0.0, -d), d >= -1e-10, true);
    }
    const double r = std::abs(fit.c2) / scale;
    rep.record("second-order coefficient c2=" + fmt(fit.c2) + " (c4=" + fmt(fit.c4) + ", c6=" + fmt(fit.c6) + ")", r, r <= 1e-5, true);
    return rep;
}

}  // namespace

VerificationReport verify_endpoint_log(int n, std::span<const double> eps_list) {
    return endpoint_report("endpoint-log", n, endpoint_log_fit(n, eps_list));
}

VerificationReport verify_endpoint_entropy(int n, std::span<const double> eps_list) {
    return endpoint_report("endpoint-entropy", n, endpoint_entropy_fit(n, eps_list));
}

// ---- Cayley transform ------------------------------------------------------------------

VerificationReport verify_cayley(int n, std::uint64_t seed, int pairs) {
    if (n < 1) throw DomainError("verify_cayley: n must be >= 1");
    namespace hz = crsharp::heisenberg;
    VerificationReport rep("cayley");
    rep.set_parameter("n", n);
    rep.set_parameter("seed", static_cast<double>(seed));
    rep.set_parameter("pairs", pairs);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    auto random_h = [&] {
        hz::HPoint u;
        for (int j = 0; j < n; ++j) u.z.emplace_back(normal(rng), normal(rng));
        u.t = 2.0 * normal(rng);
        return u;
    };

    double worst_rt = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const hz::HPoint u = random_h();
        const hz::HPoint w = hz::cayley_inv(hz::cayley(u));
        double err = std::abs(w.t - u.t) / (1.0 + std::abs(u.t));
        for (int j = 0; j < n; ++j) err = std::max(err, std::abs(w.z[j] - u.z[j]) / (1.0 + std::abs(u.z[j])));
        worst_rt = std::max(worst_rt, err);
    }
    rep.record("round trip H -> S -> H (1000 points)", worst_rt, worst_rt <= 1e-12, true);

    double worst_kernel = 0.0;
    for (int i = 0; i < pairs; ++i) worst_kernel = std::max(worst_kernel, hz::kernel_relation_check(random_h(), random_h()));
    rep.record("kernel relation (" + std::to_string(pairs) + " pairs)", worst_kernel, worst_kernel <= 1e-12, true);

    if (n == 1) {
        const QuadratureGrid grid = csphere::build_grid(1, csphere::default_resolution(1));
        auto f = [](const SpherePoint& z) -> cplx { return std::abs(1.0 + 0.3 * z.zeta[0] + 0.2 * std::conj(z.zeta[1])); };
        for (double p : {4.0 / 3.0, 2.0}) {
            csphere::GridFunction s(grid.size());
            for (std::size_t i = 0; i < grid.size(); ++i) s[i] = f(grid.nodes[i]);
            const double sphere_side = std::pow(csphere::lp_norm(s, p, grid), p);
            const hz::HFunction F = hz::lift_function(f, p);
            const double h_side =
                hz::integrate_h1([&](const hz::HPoint& u) -> cplx { return std::pow(std::abs(F(u)), p); }, 64, 64, 64).real();
            const double r = std::abs(h_side - sphere_side) / sphere_side;
            rep.record("L^p isometry p=" + fmt(p), r, r <= 1e-4, true);
        }
    }

    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double worst_ratio = 0.0;
    for (int i = 0; i < 20; ++i) {
        const int m = 1 + static_cast<int>(unif(rng) * 6);
        const double Q = 2.0 * m + 2.0;
        const double lambda = Q * (0.02 + 0.96 * unif(rng));
        const double ratio = hls_constant_sphere(m, lambda) / hls_constant_hn(m, lambda);
        const double expected = std::pow(2.0, m * lambda / Q);
        worst_ratio = std::max(worst_ratio, std::abs(ratio - expected) / expected);
    }
    rep.record("constant ratio 2^{n lambda/Q} (20 pairs)", worst_ratio, worst_ratio <= 1e-12, true);
    return rep;
}

// ---- multipliers ---------------------------------------------------------------------

VerificationReport verify_multipliers(int n, std::span<const double> s_list) {
    if (n < 1) throw DomainError("verify_multipliers: n must be >= 1");
    const double Q = 2.0 * n + 2.0;
    for (double s : s_list)
        if (!(s > 0.0 && s < 0.5 * Q)) throw DomainError("verify_multipliers: s must lie in (0, Q/2)");
    VerificationReport rep("multipliers");
    rep.set_parameter("n", n);
    constexpr double kEmax = 1e6;
    constexpr int kPoints = 400;
    constexpr double kBound = 10.0;
    const double Emin = 0.5 * n;
    const double h = 1e-3;
    for (std::size_t si = 0; si < s_list.size(); ++si) {
        const double s = s_list[si];
        rep.set_parameter("s" + std::to_string(si), s);
        using Fn = double (*)(double, double);
        const std::pair<const char*, Fn> fns[] = {{"m", spectral::mult_m}, {"m_tilde", spectral::mult_m_tilde}};
        for (const auto& [name, fn] : fns) {
            const std::string tag = std::string(name) + " s=" + fmt(s);
            double sup_decay = 0.0, sup_d1 = 0.0, sup_d2 = 0.0;
            for (int i = 0; i < kPoints; ++i) {
                // log grid, kept h inside [Emin, Emax]
                const double x = std::log(Emin) + h + (std::log(kEmax) - std::log(Emin) - 2.0 * h) * i / (kPoints - 1.0);
                const double E = std::exp(x);
                const double g0 = std::log(fn(E, s));
                const double gp = std::log(fn(std::exp(x + h), s));
                const double gm = std::log(fn(std::exp(x - h), s));
                sup_decay = std::max(sup_decay, E * std::abs(std::expm1(g0)));
                sup_d1 = std::max(sup_d1, std::abs(gp - gm) / (2.0 * h));
                sup_d2 = std::max(sup_d2, std::abs(gp - 2.0 * g0 + gm) / (h * h));
            }
            const double tail = std::abs(fn(kEmax, s) - 1.0);
            rep.record(tag + " sup E|m-1| = " + fmt(sup_decay), std::max(0.0, sup_decay - kBound), sup_decay <= kBound, true);
            rep.record(tag + " |m(1e6)-1| = " + fmt(tail), tail, tail <= 1e-6, true);
            rep.record(tag + " sup |(E d/dE) log m| = " + fmt(sup_d1), std::max(0.0, sup_d1 - kBound), sup_d1 <= kBound, true);
            rep.record(tag + " sup |(E d/dE)^2 log m| = " + fmt(sup_d2), std::max(0.0, sup_d2 - kBound), sup_d2 <= kBound, true);
        }
    }
    {
        const double a1 = spectral::fundsol_constant(1.0, n);
        const double green = std::exp((n - 2.0) * std::log(2.0) + 2.0 * specfun::log_gamma(0.5 * n) - (n + 1) * std::log(kPi));
        const double r = std::abs(a1 - green) / green;
        rep.record("fundsol_constant(1, n) vs Green's function constant", r, r <= 1e-12, true);
    }
    {
        double worst = 0.0;
        for (double E : {0.5 * n, 1.0 * n, 10.0, 1e3, 1e6}) worst = std::max(worst, std::abs(spectral::ls_symbol(1.0, E) - E) / E);
        rep.record("ls_symbol(1, E) = E", worst, worst <= 1e-12, true);
    }
    return rep;
}

}  // namespace crsharp::inequalities
