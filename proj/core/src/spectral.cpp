#include "crsharp/spectral.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <tuple>

#include "json.hpp"

#include "crsharp/errors.hpp"
#include "crsharp/parallel.hpp"
#include "crsharp/quadrature.hpp"
#include "crsharp/specfun.hpp"
#include "crsharp/summation.hpp"

namespace crsharp::spectral {

namespace {

constexpr double kPi = std::numbers::pi;

void check_index(HarmonicIndex idx) {
    if (idx.j < 0 || idx.k < 0) throw DomainError("harmonic index must be non-negative");
}

void check_n(int n) {
    if (n < 1) throw DomainError("n must be >= 1");
}

double signed_exp(double log_abs, int sign) { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

// Power-kernel eigenvalue in Pochhammer form, valid for -1 < a < (n+1)/2.
double power_eigenvalue(int n, double a, int j, int k) {
    if (a == 0.0) return (j == 0 && k == 0) ? csphere::sphere_area(n) : 0.0;
    const specfun::SignedLog pj = specfun::log_pochhammer(a, j);
    const specfun::SignedLog pk = specfun::log_pochhammer(a, k);
    if (pj.sign == 0 || pk.sign == 0) return 0.0;
    const double lg = std::log(2.0) + (n + 1) * std::log(kPi) + specfun::log_gamma(n + 1.0 - 2.0 * a) +
                      pj.log_abs + pk.log_abs - specfun::log_gamma(j + n + 1.0 - a) -
                      specfun::log_gamma(k + n + 1.0 - a);
    return signed_exp(lg, pj.sign * pk.sign);
}

// (a-1)(2jk + n(j+k-1+a)) (a)_{j-1} (a)_{k-1}, with the j = 0 or k = 0
// cases reduced by hand: (a)_0/(a-1) (a-1) = 1 and n(k-1+a)(a)_{k-1} = n (a)_k.
double weighted_remainder(int n, double a, int j, int k) {
    if (j == 0 && k == 0) return n;
    if (j == 0 || k == 0) return n * specfun::pochhammer(a, std::max(j, k));
    const specfun::SignedLog pj = specfun::log_pochhammer(a, j - 1);
    const specfun::SignedLog pk = specfun::log_pochhammer(a, k - 1);
    const double x = 2.0 * j * k + n * (j + k - 1.0 + a);
    return (a - 1.0) * x * signed_exp(pj.log_abs + pk.log_abs, pj.sign * pk.sign);
}

// ---- Funk-Hecke quadrature ------------------------------------------------
//
// E = pi^n m! / (2^{n+|p|/2} (m+n-1)!) int_{-1}^{1} dt (1-t)^{n-1} (1+t)^{|p|/2}
//     P_m^{(n-1,|p|)}(t) 2 int_0^pi K(r e^{-i phi}) cos(p phi) d phi,   r^2 = (1+t)/2.
// The integrand is written in u = 1 - t and v = 1 + t = 2 - u so both
// endpoints keep full accuracy.

struct FunkIntegrand {
    int n = 1;
    KernelKind kind = KernelKind::Power;
    double alpha = 0.0;
    int m = 0;
    int p = 0;  // |j - k|
    double c_jk = 0.0;
    double c00 = 0.0;

    // c_jk v^{p/2} P_m(1-u)
    double zonal(double u, double v) const {
        return c_jk * std::pow(v, 0.5 * p) * specfun::jacobi_p({m, n - 1.0, static_cast<double>(p)}, 1.0 - u);
    }

    double kernel(double u, double v, double phi) const {
        const double r = std::sqrt(0.5 * v);
        const double one_minus_r = 0.5 * u / (1.0 + r);
        const double s = std::sin(0.5 * phi);
        const double d2 = one_minus_r * one_minus_r + 4.0 * r * s * s;
        switch (kind) {
            case KernelKind::Power: return std::pow(d2, -alpha);
            case KernelKind::Weighted: return 0.5 * v * std::pow(d2, -alpha);
            case KernelKind::Log: return -0.5 * std::log(d2);
            case KernelKind::EntropyDifference: return std::pow(d2, -0.5 * (n + 1));
        }
        return 0.0;
    }

    // Density in (u, phi) on [0,2] x [0,pi], including the fold factor 2
    // (and the extra 2 of the difference form).
    double density(double u, double v, double phi, double zonal_value) const {
        const double un = n == 1 ? 1.0 : std::pow(u, n - 1);
        const double K = kernel(u, v, phi);
        if (kind == KernelKind::EntropyDifference)
            return 4.0 * un * K * (c00 - zonal_value * std::cos(p * phi));
        return 2.0 * un * K * zonal_value * std::cos(p * phi);
    }
};

struct RadialNode {
    double rho;
    double weight;  // includes rho^{-beta} when the rule carries a weight
};

constexpr double kCornerU = 1.0;
constexpr double kCornerPhi = 0.25;
constexpr int kLogPanels = 48;

std::vector<RadialNode> radial_rule(const FunkIntegrand& f, int level) {
    std::vector<RadialNode> out;
    const int N = 16 + 8 * level;
    switch (f.kind) {
        case KernelKind::Power:
        case KernelKind::Weighted: {
            const double beta = f.n - 2.0 * f.alpha;
            const quad::Rule r = quad::gauss_radial(N, beta);
            for (std::size_t i = 0; i < r.nodes.size(); ++i)
                out.push_back({r.nodes[i], r.weights[i] * std::pow(r.nodes[i], -beta)});
            break;
        }
        case KernelKind::EntropyDifference: {
            const quad::Rule r = quad::gauss_legendre(N, 0.0, 1.0);
            for (std::size_t i = 0; i < r.nodes.size(); ++i) out.push_back({r.nodes[i], r.weights[i]});
            break;
        }
        case KernelKind::Log: {
            // rho^n log rho: dyadic panels toward 0, Gauss-Legendre on each.
            const int np = 6 + 2 * level;
            double hi = 1.0;
            for (int panel = 0; panel < kLogPanels; ++panel) {
                const quad::Rule r = quad::gauss_legendre(np, 0.5 * hi, hi);
                for (std::size_t i = 0; i < r.nodes.size(); ++i) out.push_back({r.nodes[i], r.weights[i]});
                hi *= 0.5;
            }
            break;
        }
    }
    return out;
}

struct Estimate {
    double value;
    double abs_mass;
};

Estimate funk_level(const FunkIntegrand& f, int level) {
    CompensatedSum<double> total, mass;
    auto add = [&](double v) {
        total.add(v);
        mass.add(std::abs(v));
    };
    const int N = 16 + 8 * level;
    const int n_trap = 48 + 16 * level;

    // Corner box [0,U] x [0,Phi]: two Duffy triangles, u = U rho, phi = Phi rho s
    // and phi = Phi rho, u = U rho s; Jacobian U Phi rho.
    const std::vector<RadialNode> radial = radial_rule(f, level);
    const quad::Rule srule = quad::gauss_legendre(N, 0.0, 1.0);
    for (const RadialNode& rn : radial) {
        const double jac = kCornerU * kCornerPhi * rn.rho;
        for (std::size_t is = 0; is < srule.nodes.size(); ++is) {
            const double s = srule.nodes[is];
            const double w = rn.weight * srule.weights[is] * jac;
            {
                const double u = kCornerU * rn.rho, phi = kCornerPhi * rn.rho * s;
                const double v = 2.0 - u;
                add(w * f.density(u, v, phi, f.zonal(u, v)));
            }
            {
                const double u = kCornerU * rn.rho * s, phi = kCornerPhi * rn.rho;
                const double v = 2.0 - u;
                add(w * f.density(u, v, phi, f.zonal(u, v)));
            }
        }
    }

    // u in [0,U], phi in [Phi, pi]: smooth, graded panels in phi.
    const quad::Rule urule = quad::gauss_legendre(N, 0.0, kCornerU);
    const double edges[] = {kCornerPhi, 2.0 * kCornerPhi, 4.0 * kCornerPhi, kPi};
    std::vector<quad::Rule> phi_rules;
    for (int e = 0; e < 3; ++e) phi_rules.push_back(quad::gauss_legendre(N, edges[e], edges[e + 1]));
    for (std::size_t iu = 0; iu < urule.nodes.size(); ++iu) {
        const double u = urule.nodes[iu], v = 2.0 - u;
        const double z = f.zonal(u, v);
        for (const quad::Rule& pr : phi_rules)
            for (std::size_t ip = 0; ip < pr.nodes.size(); ++ip)
                add(urule.weights[iu] * pr.weights[ip] * f.density(u, v, pr.nodes[ip], z));
    }

    // u in [U,2], i.e. r in [0, sqrt(1-U/2)]: dt = 4 r dr, (1+t) = 2 r^2;
    // periodic trapezoid in phi.
    const quad::Rule rrule = quad::gauss_legendre(N, 0.0, std::sqrt(1.0 - 0.5 * kCornerU));
    const double h = kPi / n_trap;
    for (std::size_t ir = 0; ir < rrule.nodes.size(); ++ir) {
        const double r = rrule.nodes[ir];
        const double v = 2.0 * r * r, u = 2.0 * (1.0 - r * r);
        const double z = f.zonal(u, v);
        const double wr = rrule.weights[ir] * 4.0 * r;
        for (int ip = 0; ip <= n_trap; ++ip) {
            const double wp = (ip == 0 || ip == n_trap) ? 0.5 * h : h;
            add(wr * wp * f.density(u, v, ip * h, z));
        }
    }
    return {total.value(), mass.value()};
}

FunkIntegrand make_integrand(const ZonalKernelSpec& spec, HarmonicIndex idx) {
    FunkIntegrand f;
    f.n = spec.n;
    f.kind = spec.kind;
    f.alpha = spec.alpha;
    f.m = idx.m();
    f.p = std::abs(idx.j - idx.k);
    const int n = spec.n;
    f.c_jk = std::exp(n * std::log(kPi) + specfun::log_gamma(f.m + 1.0) -
                      (n + 0.5 * f.p) * std::log(2.0) - specfun::log_gamma(f.m + n + 0.0));
    f.c00 = std::exp(n * std::log(kPi) - n * std::log(2.0) - specfun::log_gamma(n + 0.0));
    return f;
}

}  // namespace

const char* kernel_name(KernelKind kind) {
    switch (kind) {
        case KernelKind::Power: return "power";
        case KernelKind::Weighted: return "weighted";
        case KernelKind::Log: return "log";
        case KernelKind::EntropyDifference: return "entropy";
    }
    return "unknown";
}

void ZonalKernelSpec::validate() const {
    check_n(n);
    if (kind == KernelKind::Power || kind == KernelKind::Weighted) {
        const double top = 0.5 * (n + 1);
        if (alpha == top) throw PoleError("alpha sits at the pole (n+1)/2");
        if (!(alpha > -1.0 && alpha < top)) throw DomainError("alpha must lie in (-1, (n+1)/2)");
    }
}

double eigenvalue_closed(const ZonalKernelSpec& spec, HarmonicIndex idx) {
    if (spec.kind != KernelKind::Power) throw DomainError("eigenvalue_closed: Power kernel expected");
    spec.validate();
    check_index(idx);
    return power_eigenvalue(spec.n, spec.alpha, idx.j, idx.k);
}

double eigenvalue_weighted_closed(const ZonalKernelSpec& spec, HarmonicIndex idx) {
    if (spec.kind != KernelKind::Weighted) throw DomainError("eigenvalue_weighted_closed: Weighted kernel expected");
    spec.validate();
    check_index(idx);
    const int n = spec.n, j = idx.j, k = idx.k;
    const double a = spec.alpha;
    const double E = power_eigenvalue(n, a, j, k);
    // E * correction = 2 pi^{n+1} Gamma(n+2-2a) R / (Gamma(j+n+2-a) Gamma(k+n+2-a))
    const double log_pref = std::log(2.0) + (n + 1) * std::log(kPi) + specfun::log_gamma(n + 2.0 - 2.0 * a) -
                            specfun::log_gamma(j + n + 2.0 - a) - specfun::log_gamma(k + n + 2.0 - a);
    return E - std::exp(log_pref) * weighted_remainder(n, a, j, k);
}

double eigenvalue_numeric(const ZonalKernelSpec& spec, HarmonicIndex idx, const NumericOptions& opt) {
    spec.validate();
    check_index(idx);
    if (opt.max_levels < 2) throw DomainError("eigenvalue_numeric: need at least two levels");
    if (spec.kind == KernelKind::EntropyDifference && idx.j == 0 && idx.k == 0) return 0.0;
    const FunkIntegrand f = make_integrand(spec, idx);
    Estimate prev = funk_level(f, 0);
    double change = std::numeric_limits<double>::infinity();
    for (int level = 1; level < opt.max_levels; ++level) {
        const Estimate cur = funk_level(f, level);
        const double diff = std::abs(cur.value - prev.value);
        if (diff <= opt.rel_tol * std::abs(cur.value) || diff <= 1e-14 * cur.abs_mass) return cur.value;
        change = cur.value != 0.0 ? diff / std::abs(cur.value) : diff;
        prev = cur;
    }
    throw ConvergenceError("eigenvalue_numeric: refinement did not converge", change);
}

double eigenvalue_log(HarmonicIndex idx, int n) {
    check_n(n);
    check_index(idx);
    if (idx.j == 0 && idx.k == 0) return eigenvalue_numeric(ZonalKernelSpec::log(n), idx);
    const double h = 1e-3;
    auto diff = [&](double step) {
        const double up = power_eigenvalue(n, step, idx.j, idx.k);
        const double dn = power_eigenvalue(n, -step, idx.j, idx.k);
        return (up - dn) / (2.0 * step);
    };
    const double d1 = diff(h), d2 = diff(0.5 * h);
    return 0.5 * (4.0 * d2 - d1) / 3.0;
}

namespace {

// 2 (E_00 - E_jk) at alpha = a0 - eps/2, a0 = (n+1)/2. With b = n+1-a,
// E_jk = 2 pi^{n+1} Gamma(eps) (a)_j (a)_k / (Gamma(b)^2 (b)_j (b)_k), and
// 1 - (a)_j (a)_k / ((b)_j (b)_k) is formed through log1p/expm1 since the
// ratio tends to 1.
double entropy_difference_at(int n, int j, int k, double eps) {
    const double b = 0.5 * (n + 1) + 0.5 * eps;
    double s = 0.0;
    for (int i = 0; i < j; ++i) s += std::log1p(-eps / (b + i));
    for (int i = 0; i < k; ++i) s += std::log1p(-eps / (b + i));
    const double lead = std::log(4.0) + (n + 1) * std::log(kPi) + std::lgamma(eps) - 2.0 * specfun::log_gamma(b);
    return -std::exp(lead) * std::expm1(s);
}

}  // namespace

double eigenvalue_entropy(HarmonicIndex idx, int n) {
    check_n(n);
    check_index(idx);
    if (idx.j == 0 && idx.k == 0) return 0.0;
    constexpr int kPoints = 8;
    double x[kPoints], y[kPoints];
    double best = 0.0, previous = 0.0;
    for (int m = 0; m < kPoints; ++m) {
        x[m] = std::ldexp(1.0, -m - 2);  // eps = n+1-2 alpha, alpha = a0 - 2^{-m-3}
        y[m] = entropy_difference_at(n, idx.j, idx.k, x[m]);
        // Neville tableau evaluated at eps = 0, rebuilt from the new point.
        double p[kPoints];
        for (int i = 0; i <= m; ++i) p[i] = y[i];
        for (int level = 1; level <= m; ++level)
            for (int i = m; i >= level; --i)
                p[i] = (x[i - level] * p[i] - x[i] * p[i - 1]) / (x[i - level] - x[i]);
        previous = best;
        best = p[m];
    }
    if (std::abs(best - previous) > 1e-9 * std::abs(best))
        throw ConvergenceError("eigenvalue_entropy: extrapolation did not settle",
                               std::abs(best - previous) / std::abs(best));
    return best;
}

double eigenvalue_entropy_digamma(HarmonicIndex idx, int n) {
    check_n(n);
    check_index(idx);
    const double a0 = 0.5 * (n + 1);
    const double bracket = specfun::digamma(idx.j + a0) + specfun::digamma(idx.k + a0) - 2.0 * specfun::digamma(a0);
    return 4.0 * std::pow(kPi, n + 1) / std::exp(2.0 * specfun::log_gamma(a0)) * bracket;
}

double eigenvalue(const ZonalKernelSpec& spec, HarmonicIndex idx) {
    switch (spec.kind) {
        case KernelKind::Power: return eigenvalue_closed(spec, idx);
        case KernelKind::Weighted: return eigenvalue_weighted_closed(spec, idx);
        case KernelKind::Log: return eigenvalue_log(idx, spec.n);
        case KernelKind::EntropyDifference: return eigenvalue_entropy(idx, spec.n);
    }
    throw DomainError("eigenvalue: unknown kernel kind");
}

double laplacian_eigenvalue(HarmonicIndex idx, int n, bool include_constant) {
    check_index(idx);
    check_n(n);
    const double base = static_cast<double>(idx.j) * idx.k + 0.5 * n * (idx.j + idx.k);
    return include_constant ? base + 0.25 * n * n : base;
}

double a_d_eigenvalue(HarmonicIndex idx, double d, int n) {
    check_index(idx);
    check_n(n);
    if (!(d > 0.0 && d < 2.0)) throw DomainError("a_d_eigenvalue: d must lie in (0,2)");
    const double Q = 2.0 * n + 2.0;
    const double hi = 0.25 * (Q + d), lo = 0.25 * (Q - d);
    return std::exp(specfun::log_gamma_ratio(hi + idx.j, lo + idx.j) + specfun::log_gamma_ratio(hi + idx.k, lo + idx.k));
}

double ls_symbol(double s, double E) {
    if (!(s > 0.0)) throw DomainError("ls_symbol: s must be positive");
    if (!(E + 0.5 * (1.0 - s) > 0.0)) throw DomainError("ls_symbol: E + (1-s)/2 must be positive");
    return specfun::gamma_ratio(E + 0.5 * (1.0 + s), E + 0.5 * (1.0 - s));
}

double fundsol_constant(double s, int n) {
    check_n(n);
    const double Q = 2.0 * n + 2.0;
    if (!(s > 0.0 && s < 0.5 * Q)) throw DomainError("fundsol_constant: s must lie in (0, Q/2)");
    return std::exp((n - s - 1.0) * std::log(2.0) + 2.0 * specfun::log_gamma(0.25 * (Q - 2.0 * s)) -
                    (n + 1) * std::log(kPi) - specfun::log_gamma(s));
}

double mult_m(double E, double s) {
    if (!(s > 0.0)) throw DomainError("mult_m: s must be positive");
    if (!(E + 0.5 * (1.0 - s) > 0.0 && E + 0.25 * (2.0 - s) > 0.0))
        throw DomainError("mult_m: E too small for s");
    return std::exp(0.5 * specfun::log_gamma_ratio(E + 0.5 * (1.0 - s), E + 0.5 * (1.0 + s)) +
                    specfun::log_gamma_ratio(E + 0.25 * (2.0 + s), E + 0.25 * (2.0 - s)));
}

double mult_m_tilde(double E, double s) {
    if (!(s > 0.0)) throw DomainError("mult_m_tilde: s must be positive");
    if (!(E > 0.0 && E + 0.5 * (1.0 - s) > 0.0)) throw DomainError("mult_m_tilde: E too small for s");
    return std::exp(0.5 * (s * std::log(E) + specfun::log_gamma_ratio(E + 0.5 * (1.0 - s), E + 0.5 * (1.0 + s))));
}

// ---- tables ------------------------------------------------------------------

EigenvalueTable::EigenvalueTable(const ZonalKernelSpec& spec, int J, EvalMethod method)
    : spec_(spec), method_(method), values_(J) {
    spec.validate();
    if (J < 0) throw DomainError("EigenvalueTable: J must be non-negative");
    // cells with j <= k; the table is symmetric
    std::vector<HarmonicIndex> cells;
    for (int j = 0; j <= J; ++j)
        for (int k = j; k <= J; ++k) cells.push_back({j, k});
    std::vector<double> out(cells.size());
    parallel_for(cells.size(), [&](std::size_t i) {
        out[i] = method == EvalMethod::Closed ? eigenvalue(spec, cells[i]) : eigenvalue_numeric(spec, cells[i]);
    });
    for (std::size_t i = 0; i < cells.size(); ++i) {
        values_.at(cells[i].j, cells[i].k) = out[i];
        values_.at(cells[i].k, cells[i].j) = out[i];
    }
}

std::shared_ptr<const EigenvalueTable> EigenvalueTable::get(const ZonalKernelSpec& spec, int J, EvalMethod method) {
    using Key = std::tuple<int, double, int, int, int>;
    static std::mutex mutex;
    static std::map<Key, std::shared_ptr<const EigenvalueTable>> cache;
    const Key key{static_cast<int>(spec.kind), spec.alpha, spec.n, J, static_cast<int>(method)};
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto table = std::make_shared<const EigenvalueTable>(spec, J, method);
    std::lock_guard<std::mutex> lock(mutex);
    return cache.emplace(key, std::move(table)).first->second;
}

double EigenvalueTable::at(int j, int k) const {
    if (j < 0 || k < 0 || j > values_.J || k > values_.J) throw DomainError("EigenvalueTable: index outside table");
    return values_.at(j, k);
}

std::string EigenvalueTable::to_csv() const {
    std::ostringstream os;
    os << "j,k,eigenvalue\n";
    char buf[64];
    for (int j = 0; j <= values_.J; ++j)
        for (int k = 0; k <= values_.J; ++k) {
            std::snprintf(buf, sizeof buf, "%.17g", values_.at(j, k));
            os << j << ',' << k << ',' << buf << '\n';
        }
    return os.str();
}

std::string EigenvalueTable::to_json() const {
    nlohmann::json doc;
    doc["schema"] = 1;
    doc["kernel"] = kernel_name(spec_.kind);
    doc["alpha"] = spec_.alpha;
    doc["n"] = spec_.n;
    doc["J"] = values_.J;
    doc["method"] = method_ == EvalMethod::Closed ? "closed" : "numeric";
    nlohmann::json rows = nlohmann::json::array();
    for (int j = 0; j <= values_.J; ++j)
        for (int k = 0; k <= values_.J; ++k) rows.push_back({{"j", j}, {"k", k}, {"eigenvalue", values_.at(j, k)}});
    doc["entries"] = std::move(rows);
    return doc.dump(2);
}

}  // namespace crsharp::spectral
