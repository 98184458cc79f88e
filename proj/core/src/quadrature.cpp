#include "crsharp/quadrature.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "crsharp/errors.hpp"
#include "crsharp/specfun.hpp"

namespace crsharp::quad {

Rule gauss_jacobi(int n, double alpha, double beta) {
    if (n < 1) throw DomainError("gauss_jacobi: need at least one node");
    if (!(alpha > -1.0) || !(beta > -1.0))
        throw DomainError("gauss_jacobi: alpha and beta must exceed -1");
    const double ab = alpha + beta;

    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        const double c = 2.0 * k + ab;
        if (k == 0)
            J(0, 0) = (beta - alpha) / (ab + 2.0);
        else
            J(k, k) = (beta * beta - alpha * alpha) / (c * (c + 2.0));
    }
    for (int k = 1; k < n; ++k) {
        const double c = 2.0 * k + ab;
        double b2;
        if (k == 1)
            b2 = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
        else
            b2 = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (c * c * (c + 1.0) * (c - 1.0));
        J(k, k - 1) = J(k - 1, k) = std::sqrt(b2);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);

    Rule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const specfun::JacobiParams P{n, alpha, beta};
    // Christoffel constant Gamma(n+a+1)Gamma(n+b+1)/(Gamma(n+a+b+1) n!) 2^{a+b+1}
    const double logC = specfun::log_gamma(n + alpha + 1.0) + specfun::log_gamma(n + beta + 1.0) -
                        specfun::log_gamma(n + ab + 1.0) - specfun::log_gamma(n + 1.0) +
                        (ab + 1.0) * std::log(2.0);
    for (int i = 0; i < n; ++i) {
        double x = es.eigenvalues()(i);
        for (int it = 0; it < 8; ++it) {
            const double f = specfun::jacobi_p(P, x);
            const double d = specfun::jacobi_p_derivative(P, x);
            const double dx = f / d;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double d = specfun::jacobi_p_derivative(P, x);
        r.nodes[i] = x;
        r.weights[i] = std::exp(logC) / ((1.0 - x * x) * d * d);
    }
    return r;
}

Rule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

Rule gauss_legendre(int n, double a, double b) {
    Rule r = gauss_legendre(n);
    const double h = 0.5 * (b - a), m = 0.5 * (b + a);
    for (int i = 0; i < n; ++i) {
        r.nodes[i] = m + h * r.nodes[i];
        r.weights[i] *= h;
    }
    return r;
}

Rule gauss_radial(int n, double beta) {
    Rule r = gauss_jacobi(n, 0.0, beta);
    const double scale = std::pow(2.0, -beta - 1.0);
    for (int i = 0; i < n; ++i) {
        r.nodes[i] = 0.5 * (1.0 + r.nodes[i]);
        r.weights[i] *= scale;
    }
    return r;
}

}  // namespace crsharp::quad
