#include "crsharp/specfun.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "crsharp/errors.hpp"
#include "crsharp/quadrature.hpp"
#include "crsharp/summation.hpp"

namespace crsharp::specfun {

namespace {

void require_positive(double x, const char* what) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError(std::string(what) + ": argument must be positive and finite, got " +
                          std::to_string(x));
}

// Stirling correction ln Gamma(x) - [(x-1/2) ln x - x + ln(2 pi)/2], x >= 10.
double stirling_tail(double x) {
    const double r = 1.0 / x;
    const double r2 = r * r;
    return r * (1.0 / 12 +
                r2 * (-1.0 / 360 +
                      r2 * (1.0 / 1260 +
                            r2 * (-1.0 / 1680 +
                                  r2 * (1.0 / 1188 + r2 * (-691.0 / 360360 + r2 * (1.0 / 156)))))));
}

}  // namespace

double log_gamma(double x) {
    require_positive(x, "log_gamma");
    return boost::math::lgamma(x);
}

double digamma(double x) {
    require_positive(x, "digamma");
    return boost::math::digamma(x);
}

double log_gamma_ratio(double a, double b) {
    require_positive(a, "log_gamma_ratio");
    require_positive(b, "log_gamma_ratio");
    if (a == b) return 0.0;
    if (std::min(a, b) >= 10.0) {
        const double h = a - b;
        const double main = (b - 0.5) * std::log1p(h / b) + h * std::log(a) - h;
        return main + (stirling_tail(a) - stirling_tail(b));
    }
    return boost::math::lgamma(a) - boost::math::lgamma(b);
}

double gamma_ratio(double a, double b) { return std::exp(log_gamma_ratio(a, b)); }

double SignedLog::value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

SignedLog log_pochhammer(double a, int k) {
    if (k < 0) throw DomainError("log_pochhammer: k must be non-negative");
    SignedLog out{0.0, 1};
    int i = 0;
    // Factors a+i <= 0 are taken one by one; the positive remainder goes
    // through the Gamma ratio.
    for (; i < k && a + i <= 0.0; ++i) {
        const double f = a + i;
        if (f == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
        out.log_abs += std::log(-f);
        out.sign = -out.sign;
    }
    if (i < k) out.log_abs += log_gamma_ratio(a + k, a + i);
    return out;
}

double pochhammer(double a, int k) { return log_pochhammer(a, k).value(); }

double jacobi_p(const JacobiParams& p, double t) {
    if (p.m < 0) throw DomainError("jacobi_p: degree must be non-negative");
    if (!(p.alpha > -1.0) || !(p.beta > -1.0))
        throw DomainError("jacobi_p: alpha and beta must exceed -1");
    const double a = p.alpha, b = p.beta;
    if (p.m == 0) return 1.0;
    double pm2 = 1.0;
    double pm1 = (a + 1.0) + 0.5 * (a + b + 2.0) * (t - 1.0);
    for (int i = 2; i <= p.m; ++i) {
        const double c = 2.0 * i + a + b;
        const double a1 = 2.0 * i * (i + a + b) * (c - 2.0);
        const double a2 = (c - 1.0) * (a * a - b * b);
        const double a3 = (c - 2.0) * (c - 1.0) * c;
        const double a4 = 2.0 * (i + a - 1.0) * (i + b - 1.0) * c;
        const double pi = ((a2 + a3 * t) * pm1 - a4 * pm2) / a1;
        pm2 = pm1;
        pm1 = pi;
    }
    return pm1;
}

double jacobi_p_derivative(const JacobiParams& p, double t) {
    if (p.m == 0) return 0.0;
    return 0.5 * (p.m + p.alpha + p.beta + 1.0) *
           jacobi_p({p.m - 1, p.alpha + 1.0, p.beta + 1.0}, t);
}

double gegenbauer_c(int l, double alpha, double x) {
    if (l < 0) throw DomainError("gegenbauer_c: degree must be non-negative");
    if (!(alpha > 0.0)) throw DomainError("gegenbauer_c: alpha must be positive");
    if (l == 0) return 1.0;
    double cm2 = 1.0;
    double cm1 = 2.0 * alpha * x;
    for (int i = 2; i <= l; ++i) {
        const double ci = (2.0 * x * (i + alpha - 1.0) * cm1 - (i + 2.0 * alpha - 2.0) * cm2) / i;
        cm2 = cm1;
        cm1 = ci;
    }
    return cm1;
}

namespace {

constexpr long kHypergeomTermCap = 10'000'000;
constexpr long kHypergeomTailStart = 4096;

// ln(Gamma(x+a)/Gamma(x+b)) for x >= 10 without forming x+a, which rounds
// to x+b once x exceeds ~1e16.
double log_gamma_ratio_shifted(double x, double a, double b) {
    const double lx = std::log(x);
    const double ta = (x + a - 0.5) * std::log1p(a / x) - a;
    const double tb = (x + b - 0.5) * std::log1p(b / x) - b;
    return (a - b) * lx + (ta - tb) + (stirling_tail(x + a) - stirling_tail(x + b));
}

// log of the summand Gamma(a+x)Gamma(b+x)/(Gamma(1+x)Gamma(c+x)) for real x >= 10.
double log_summand(double a, double b, double c, double x) {
    return log_gamma_ratio_shifted(x, a, 1.0) + log_gamma_ratio_shifted(x, b, c);
}

// sum_{mu >= N} f(mu) by Euler-Maclaurin: int_N^inf f + f(N)/2 - f'(N)/12.
// The integral uses x = N y^{-1/s}, s = c-a-b, which turns the algebraic
// decay x^{-1-s} into a bounded integrand on (0,1].
double euler_maclaurin_tail(double a, double b, double c, double N) {
    const double s = c - a - b;
    const double fN = std::exp(log_summand(a, b, c, N));
    const double dlog = digamma(a + N) + digamma(b + N) - digamma(1.0 + N) - digamma(c + N);
    CompensatedSum<double> integral;
    for (int panel = 0; panel < 4; ++panel) {
        const double y0 = panel / 4.0, y1 = (panel + 1) / 4.0;
        const quad::Rule r = quad::gauss_legendre(48, y0, y1);
        for (std::size_t i = 0; i < r.nodes.size(); ++i) {
            const double y = r.nodes[i];
            const double lx = std::log(N) - std::log(y) / s;
            if (lx > 700.0) continue;  // contribution below double range
            const double x = std::exp(lx);
            const double g = std::exp(log_summand(a, b, c, x) + lx - std::log(s) - std::log(y));
            integral.add(r.weights[i] * g);
        }
    }
    return integral.value() + 0.5 * fN - fN * dlog / 12.0;
}

}  // namespace

double gauss_hypergeom_sum(double a, double b, double c) {
    require_positive(a, "gauss_hypergeom_sum");
    require_positive(b, "gauss_hypergeom_sum");
    require_positive(c, "gauss_hypergeom_sum");
    if (!(c > a + b))
        throw DivergenceError("gauss_hypergeom_sum: series diverges unless c > a + b");
    CompensatedSum<double> sum;
    double term = std::exp(log_gamma(a) + log_gamma(b) - log_gamma(c));
    for (long mu = 0; mu < kHypergeomTermCap; ++mu) {
        if (mu == kHypergeomTailStart) {
            sum.add(euler_maclaurin_tail(a, b, c, static_cast<double>(mu)));
            return sum.value();
        }
        sum.add(term);
        const double next = term * (a + mu) * (b + mu) / ((mu + 1.0) * (c + mu));
        if (next < 1e-16 * sum.value()) return sum.value() + next;
        term = next;
    }
    return sum.value();
}

}  // namespace crsharp::specfun
