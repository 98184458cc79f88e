#include <cmath>

#include <Eigen/Dense>

#include "crsharp/errors.hpp"
#include "crsharp/inequalities.hpp"

namespace crsharp::inequalities {

SpherePoint gamma_map(double delta, const SpherePoint& xi, const SpherePoint& zeta) {
    if (xi.zeta.size() != zeta.zeta.size()) throw DimensionError("gamma_map: dimension mismatch");
    if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("gamma_map: delta must lie in (0,1]");
    const cplx w = csphere::dot(zeta, xi);
    const double d2 = delta * delta;
    const cplx bracket(1.0 - std::norm(w), -2.0 * w.imag());
    const cplx D = std::norm(1.0 + w) + d2 * bracket;
    if (std::abs(D) < 1e-14) throw PoleError("gamma_map: zeta = -xi");
    const cplx c_perp = 2.0 * delta * std::conj(1.0 + w) / D;
    const cplx c_xi = (std::norm(1.0 + w) - d2 * bracket) / D;
    SpherePoint out;
    out.zeta.resize(zeta.zeta.size());
    for (std::size_t l = 0; l < out.zeta.size(); ++l)
        out.zeta[l] = c_perp * (zeta.zeta[l] - w * xi.zeta[l]) + c_xi * xi.zeta[l];
    return out;
}

std::vector<cplx> center_of_mass(double delta, const SpherePoint& xi, std::span<const double> f,
                                 const QuadratureGrid& grid) {
    if (f.size() != grid.size()) throw DimensionError("center_of_mass: sample count does not match grid");
    const std::size_t dim = static_cast<std::size_t>(grid.n) + 1;
    std::vector<cplx> acc(dim, 0.0);
    double mass = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double wf = grid.weights[i] * f[i];
        if (wf == 0.0) continue;
        const SpherePoint g = gamma_map(delta, xi, grid.nodes[i]);
        for (std::size_t l = 0; l < dim; ++l) acc[l] += wf * g.zeta[l];
        mass += wf;
    }
    if (!(mass > 0.0)) throw DomainError("center_of_mass: f must have positive mass");
    for (cplx& a : acc) a /= mass;
    return acc;
}

namespace {

// Ball variable x in R^{2n+2}: delta = 1 - |x|, xi = x/|x| (e_{n+1} at x = 0).
std::pair<double, SpherePoint> unpack(const Eigen::VectorXd& x, int n) {
    const double r = x.norm();
    SpherePoint xi;
    xi.zeta.assign(n + 1, 0.0);
    if (r == 0.0) {
        xi.zeta[n] = 1.0;
        return {1.0, xi};
    }
    for (int l = 0; l <= n; ++l) xi.zeta[l] = cplx(x(2 * l), x(2 * l + 1)) / r;
    return {1.0 - r, xi};
}

Eigen::VectorXd residual(const Eigen::VectorXd& x, std::span<const double> f, const QuadratureGrid& grid) {
    const auto [delta, xi] = unpack(x, grid.n);
    const std::vector<cplx> c = center_of_mass(delta, xi, f, grid);
    Eigen::VectorXd out(2 * c.size());
    for (std::size_t l = 0; l < c.size(); ++l) {
        out(2 * l) = c[l].real();
        out(2 * l + 1) = c[l].imag();
    }
    return out;
}

}  // namespace

CenterOfMassSolution solve_center_of_mass(std::span<const double> f, const QuadratureGrid& grid, double tol,
                                          int max_iters) {
    for (double v : f)
        if (!(v >= 0.0)) throw DomainError("solve_center_of_mass: f must be non-negative");
    const int dim = 2 * (grid.n + 1);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(dim);
    Eigen::VectorXd F = residual(x, f, grid);
    double res = F.norm();

    for (int it = 0; it <= max_iters; ++it) {
        if (res <= tol) {
            const auto [delta, xi] = unpack(x, grid.n);
            return {delta, xi, res, it};
        }
        if (it == max_iters) break;

        constexpr double h = 1e-7;
        Eigen::MatrixXd Jac(dim, dim);
        for (int c = 0; c < dim; ++c) {
            Eigen::VectorXd xp = x, xm = x;
            xp(c) += h;
            xm(c) -= h;
            if (xm.norm() >= 1.0 || xp.norm() >= 1.0) throw ConvergenceError("solve_center_of_mass: left the ball", res);
            Jac.col(c) = (residual(xp, f, grid) - residual(xm, f, grid)) / (2.0 * h);
        }
        const Eigen::VectorXd step = Jac.colPivHouseholderQr().solve(-F);

        double s = 1.0;
        bool accepted = false;
        while (s > 1e-10) {
            const Eigen::VectorXd trial = x + s * step;
            if (trial.norm() < 1.0 - 1e-9) {
                const Eigen::VectorXd Ft = residual(trial, f, grid);
                if (Ft.norm() < res) {
                    x = trial;
                    F = Ft;
                    res = Ft.norm();
                    accepted = true;
                    break;
                }
            }
            s *= 0.5;
        }
        if (!accepted) throw ConvergenceError("solve_center_of_mass: line search failed", res);
    }
    throw ConvergenceError("solve_center_of_mass: iteration limit reached", res);
}

}  // namespace crsharp::inequalities
