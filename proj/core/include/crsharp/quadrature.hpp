#pragma once

#include <vector>

namespace crsharp::quad {

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Jacobi rule for int_{-1}^{1} (1-x)^alpha (1+x)^beta g(x) dx.
// Golub-Welsch followed by Newton polishing of the nodes; weights from the
// closed Christoffel formula.
Rule gauss_jacobi(int n, double alpha, double beta);

// Gauss-Legendre on [-1,1].
Rule gauss_legendre(int n);

// Gauss-Legendre mapped to [a,b].
Rule gauss_legendre(int n, double a, double b);

// Rule for int_0^1 rho^beta g(rho) d rho (beta > -1).
Rule gauss_radial(int n, double beta);

}  // namespace crsharp::quad
