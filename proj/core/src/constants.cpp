#include <cmath>
#include <numbers>

#include "crsharp/csphere.hpp"
#include "crsharp/errors.hpp"
#include "crsharp/inequalities.hpp"
#include "crsharp/specfun.hpp"
#include "crsharp/spectral.hpp"

namespace crsharp::inequalities {

namespace {

constexpr double kPi = std::numbers::pi;

void check_lambda(int n, double lambda) {
    if (n < 1) throw DomainError("n must be >= 1");
    const double Q = 2.0 * n + 2.0;
    if (!(lambda > 0.0 && lambda < Q)) throw DomainError("lambda must lie in (0, Q)");
}

// ln( n! Gamma((Q-lambda)/2) / Gamma^2((2Q-lambda)/4) )
double log_gamma_factor(int n, double lambda) {
    const double Q = 2.0 * n + 2.0;
    return specfun::log_gamma(n + 1.0) + specfun::log_gamma(0.5 * (Q - lambda)) -
           2.0 * specfun::log_gamma(0.25 * (2.0 * Q - lambda));
}

double relative_gap(double closed, double numeric) { return std::abs(closed - numeric) / std::abs(closed); }

}  // namespace

double hls_constant_sphere(int n, double lambda) {
    check_lambda(n, lambda);
    const double Q = 2.0 * n + 2.0;
    const double log_area = std::log(2.0) + (n + 1) * std::log(kPi) - specfun::log_gamma(n + 1.0);
    return std::exp(lambda / Q * log_area + log_gamma_factor(n, lambda));
}

double hls_constant_hn(int n, double lambda) {
    check_lambda(n, lambda);
    const double Q = 2.0 * n + 2.0;
    const double log_base = (n + 1) * std::log(kPi) - (n - 1) * std::log(2.0) - specfun::log_gamma(n + 1.0);
    return std::exp(lambda / Q * log_base + log_gamma_factor(n, lambda));
}

JlConstants jl_constant(int n) {
    if (n < 1) throw DomainError("jl_constant: n must be >= 1");
    const double Q = 2.0 * n + 2.0;
    const double heis =
        kPi * n * n * std::exp(-(2.0 * n * std::log(2.0) + specfun::log_gamma(n + 1.0)) / (n + 1.0));
    const double sph = 0.25 * n * n * std::pow(csphere::sphere_area(n), 2.0 / Q);
    return {heis, sph};
}

double entropy_constant(int n) {
    if (n < 1) throw DomainError("entropy_constant: n must be >= 1");
    const double Q = 2.0 * n + 2.0;
    return 2.0 * std::exp((n + 1) * std::log(kPi) - specfun::log_gamma(0.25 * Q) - specfun::log_gamma(0.25 * (Q + 4.0)));
}

double bilinear_form(const csphere::BigradedArray& energies, const spectral::EigenvalueTable& table) {
    double sum = 0.0;
    for (int j = 0; j <= energies.J; ++j) {
        for (int k = 0; k <= energies.J; ++k) {
            const double e = energies.at(j, k);
            if (j > table.J() || k > table.J()) {
                if (e != 0.0) throw DomainError("bilinear_form: function is not band-limited below the table's J");
                continue;
            }
            sum += table.at(j, k) * e;
        }
    }
    return sum;
}

std::vector<SharpConstantReport> constant_reports(int n, double lambda, double d) {
    check_lambda(n, lambda);
    if (!(d > 0.0 && d < 2.0)) throw DomainError("d must lie in (0,2)");
    const double Q = 2.0 * n + 2.0;
    const double area = csphere::sphere_area(n);
    std::vector<SharpConstantReport> out;

    {
        // f = g = 1: form E_00(lambda/4) |S|, ||1||_p^2 = |S|^{2/p}
        const double p = 2.0 * Q / (2.0 * Q - lambda);
        const double e00 = spectral::eigenvalue_closed(spectral::ZonalKernelSpec::power(n, 0.25 * lambda), {0, 0});
        const double numeric = e00 * area / std::pow(area, 2.0 / p);
        const double closed = hls_constant_sphere(n, lambda);
        out.push_back({"hls_sphere", {{"n", n}, {"lambda", lambda}}, closed, numeric, relative_gap(closed, numeric)});
        const double hn = hls_constant_hn(n, lambda);
        const double bridged = closed * std::pow(2.0, -n * lambda / Q);
        out.push_back({"hls_heisenberg", {{"n", n}, {"lambda", lambda}}, hn, bridged, relative_gap(hn, bridged)});
    }
    {
        const JlConstants jl = jl_constant(n);
        const csphere::SpherePolynomial one = csphere::SpherePolynomial::constant(n, 1.0);
        const double numeric = csphere::energy(one) / std::pow(area, (Q - 2.0) / Q);
        out.push_back({"jl_sphere", {{"n", n}}, jl.sphere, numeric, relative_gap(jl.sphere, numeric)});
        const double bridged = jl.sphere * std::pow(2.0, 1.0 / (n + 1.0));
        out.push_back({"jl_heisenberg", {{"n", n}}, jl.heisenberg, bridged, relative_gap(jl.heisenberg, bridged)});
    }
    {
        const double q = 2.0 * Q / (Q - d);
        const double closed = std::pow(area, 1.0 - 2.0 / q) *
                              std::exp(2.0 * (specfun::log_gamma(0.25 * (Q + d)) - specfun::log_gamma(0.25 * (Q - d))));
        const double numeric = spectral::a_d_eigenvalue({0, 0}, d, n) * area / std::pow(area, 2.0 / q);
        out.push_back({"sobolev_dual", {{"n", n}, {"d", d}}, closed, numeric, relative_gap(closed, numeric)});
    }
    {
        const double closed = area / Q;
        out.push_back({"log_endpoint", {{"n", n}}, closed, std::nullopt, 0.0});
    }
    {
        const double closed = entropy_constant(n);
        const double numeric = 0.5 * spectral::eigenvalue_entropy({1, 0}, n);
        out.push_back({"entropy_endpoint", {{"n", n}}, closed, numeric, relative_gap(closed, numeric)});
    }
    return out;
}

}  // namespace crsharp::inequalities
