#include <algorithm>
#include <cmath>
#include <random>

#include "crsharp/errors.hpp"
#include "crsharp/inequalities.hpp"

namespace crsharp::inequalities {

namespace {

void normalize_p(csphere::GridFunction& h, double p, const QuadratureGrid& grid) {
    const double norm = csphere::lp_norm(h, p, grid);
    if (!(norm > 0.0)) throw DomainError("maximize_quotient: iterate vanished");
    for (cplx& x : h) x /= norm;
}

}  // namespace

MaximizeResult maximize_quotient(int n, double lambda, const QuadratureGrid& grid, const MaximizeOptions& opt) {
    if (n != 1 || grid.n != 1) throw DimensionError("maximize_quotient: only n = 1 grids are supported");
    const double Q = 2.0 * n + 2.0;
    if (!(lambda > 0.0 && lambda < Q)) throw DomainError("maximize_quotient: lambda must lie in (0, Q)");
    if (opt.Jmax < 1 || opt.Jmax > csphere::HarmonicTransform::max_band(grid))
        throw DomainError("maximize_quotient: Jmax outside the grid's band limit");
    if (!(opt.damping > 0.0 && opt.damping <= 1.0)) throw DomainError("maximize_quotient: damping must lie in (0,1]");

    const double p = 2.0 * Q / (2.0 * Q - lambda);
    const csphere::HarmonicTransform tr(grid, opt.Jmax);
    const auto table = spectral::EigenvalueTable::get(spectral::ZonalKernelSpec::power(n, 0.25 * lambda), opt.Jmax);

    // h is kept normalized, so the quotient is just the form.
    auto quotient = [&](const csphere::GridFunction& h) { return bilinear_form(tr.energies(h), *table); };

    csphere::GridFunction h(grid.size(), 1.0);
    if (!opt.constant_start) {
        std::mt19937_64 rng(opt.seed);
        const csphere::GridFunction v =
            csphere::random_real_bidegree_polynomial(n, std::min(3, opt.Jmax), rng).sample(grid);
        double vmax = 0.0;
        for (const cplx& x : v) vmax = std::max(vmax, std::abs(x.real()));
        if (vmax > 0.0)
            for (std::size_t i = 0; i < h.size(); ++i) h[i] = 1.0 + 0.5 * v[i].real() / vmax;
    }
    normalize_p(h, p, grid);

    MaximizeResult res;
    double q = quotient(h);
    res.trace.push_back(q);
    double d = opt.damping;

    for (int it = 0; it < opt.max_iters; ++it) {
        const csphere::GridFunction Kh = tr.apply(h, table->values());
        csphere::GridFunction g(grid.size());
        for (std::size_t i = 0; i < g.size(); ++i) g[i] = std::pow(std::max(Kh[i].real(), 0.0), 1.0 / (p - 1.0));
        normalize_p(g, p, grid);

        double step = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) step = std::max(step, std::abs(g[i] - h[i]));
        if (step <= 1e-13) {
            res.converged = true;
            break;
        }

        csphere::GridFunction next;
        double q_next = 0.0;
        for (;;) {
            next.assign(grid.size(), 0.0);
            for (std::size_t i = 0; i < next.size(); ++i) next[i] = (1.0 - d) * h[i] + d * g[i];
            normalize_p(next, p, grid);
            q_next = quotient(next);
            if (q_next >= q * (1.0 - 1e-15)) break;
            d *= 0.5;
            if (d < 1e-6) throw ConvergenceError("maximize_quotient: damping underflow", std::abs(q_next - q) / q);
        }

        const double change = std::abs(q_next - q) / std::abs(q);
        h = std::move(next);
        q = q_next;
        res.trace.push_back(q);
        res.iterations = it + 1;
        if (change <= opt.tol) {
            res.converged = true;
            break;
        }
    }

    res.quotient = q;
    std::vector<double> sq(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) sq[i] = std::norm(h[i]);
    const csphere::BigradedArray e = tr.energies(h);
    double in_band = 0.0;
    for (double x : e.values) in_band += x;
    res.out_of_band = std::max(0.0, 1.0 - in_band / csphere::integrate(sq, grid));
    res.extremizer = std::move(h);
    return res;
}

}  // namespace crsharp::inequalities
