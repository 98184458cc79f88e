#pragma once

// Scalar special functions: log-Gamma, digamma, Gamma ratios, Pochhammer
// symbols, Jacobi and Gegenbauer polynomials, and the Gauss summation
// series used by the eigenvalue formulas.

namespace crsharp::specfun {

struct JacobiParams {
    int m = 0;
    double alpha = 0.0;
    double beta = 0.0;
};

// ln Gamma(x) for x > 0.
double log_gamma(double x);

// psi(x) = d/dx ln Gamma(x) for x > 0.
double digamma(double x);

// ln(Gamma(a)/Gamma(b)) for a, b > 0. Uses a Stirling difference when both
// arguments are large so the result keeps full relative accuracy even for
// arguments around 1e6, where ln Gamma itself is ~1e7.
double log_gamma_ratio(double a, double b);

// Gamma(a)/Gamma(b) = exp(log_gamma_ratio(a, b)).
double gamma_ratio(double a, double b);

// Pochhammer symbol (a)_k = a (a+1) ... (a+k-1) for real a and k >= 0,
// returned as sign and log of the absolute value. sign is 0 when the
// product vanishes (then log_abs is -inf).
struct SignedLog {
    double log_abs;
    int sign;
    double value() const;
};
SignedLog log_pochhammer(double a, int k);
double pochhammer(double a, int k);

// P_m^{(alpha,beta)}(t) by forward three-term recurrence.
double jacobi_p(const JacobiParams& p, double t);

// d/dt P_m^{(alpha,beta)}(t).
double jacobi_p_derivative(const JacobiParams& p, double t);

// C_l^{(alpha)}(x) by recurrence.
double gegenbauer_c(int l, double alpha, double x);

// sum_{mu >= 0} Gamma(a+mu) Gamma(b+mu) / (mu! Gamma(c+mu)) for a, b, c > 0
// and c > a + b. Direct summation; when the terms decay slowly the tail
// beyond a few thousand terms is added by Euler-Maclaurin.
double gauss_hypergeom_sum(double a, double b, double c);

}  // namespace crsharp::specfun
