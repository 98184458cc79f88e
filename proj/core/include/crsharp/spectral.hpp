#pragma once

// Eigenvalues of zonal kernel operators K(zeta.conj(eta)) on the bigraded
// spaces H_{j,k} (Funk-Hecke), in closed form and by direct quadrature of
// the two-dimensional (t, phi) integral, plus the scalar symbols of the
// conformal sub-Laplacian and its fractional relatives.

#include <memory>
#include <string>

#include "crsharp/csphere.hpp"

namespace crsharp::spectral {

using csphere::BigradedArray;
using csphere::HarmonicIndex;

enum class KernelKind {
    Power,              // |1-w|^{-2 alpha}
    Weighted,           // |w|^2 |1-w|^{-2 alpha}
    Log,                // log(1/|1-w|)
    EntropyDifference,  // |f(z)-f(e)|^2 |1-w|^{-(n+1)} as a quadratic form
};

const char* kernel_name(KernelKind kind);

struct ZonalKernelSpec {
    KernelKind kind = KernelKind::Power;
    double alpha = 0.0;  // used by Power and Weighted
    int n = 1;

    static ZonalKernelSpec power(int n, double alpha) { return {KernelKind::Power, alpha, n}; }
    static ZonalKernelSpec weighted(int n, double alpha) { return {KernelKind::Weighted, alpha, n}; }
    static ZonalKernelSpec log(int n) { return {KernelKind::Log, 0.0, n}; }
    static ZonalKernelSpec entropy(int n) { return {KernelKind::EntropyDifference, 0.0, n}; }

    // Throws DomainError (PoleError at alpha = (n+1)/2) when the kernel is
    // not integrable or n < 1.
    void validate() const;
};

// E_{j,k}(alpha) for the Power kernel, written with Pochhammer symbols,
// 2 pi^{n+1} Gamma(n+1-2a) (a)_j (a)_k / (Gamma(j+n+1-a) Gamma(k+n+1-a)),
// which is regular at alpha = 0 and alpha = 1.
double eigenvalue_closed(const ZonalKernelSpec& spec, HarmonicIndex idx);

// Eigenvalue of the Weighted kernel. The correction term is evaluated with
// the factors (j-1+a), (k-1+a) cancelled against (a)_j, (a)_k, so no
// removable pole remains.
double eigenvalue_weighted_closed(const ZonalKernelSpec& spec, HarmonicIndex idx);

struct NumericOptions {
    double rel_tol = 1e-9;
    int max_levels = 14;
};

// Direct quadrature of the Funk-Hecke double integral in (t, phi). The
// corner (t, phi) = (1, 0), where the kernel is singular, is handled by a
// Duffy split with a radial rule matched to the singularity. Refines until
// two successive levels agree to rel_tol; throws ConvergenceError otherwise.
double eigenvalue_numeric(const ZonalKernelSpec& spec, HarmonicIndex idx, const NumericOptions& opt = {});

// Log kernel eigenvalue: (1/2) dE_{j,k}/d alpha at alpha = 0 by central
// differences (step 1e-3) with one Richardson step. (0,0) goes through
// eigenvalue_numeric.
double eigenvalue_log(HarmonicIndex idx, int n);

// lim_{alpha -> (n+1)/2} 2 (E_{0,0} - E_{j,k}) by extrapolation along
// alpha = (n+1)/2 - 2^{-m-3}.
double eigenvalue_entropy(HarmonicIndex idx, int n);

// (4 pi^{n+1} / Gamma^2(a0)) (psi(j+a0) + psi(k+a0) - 2 psi(a0)), a0 = (n+1)/2.
double eigenvalue_entropy_digamma(HarmonicIndex idx, int n);

// Closed-form path for any kernel kind.
double eigenvalue(const ZonalKernelSpec& spec, HarmonicIndex idx);

// jk + (n/2)(j+k), plus n^2/4 when include_constant.
double laplacian_eigenvalue(HarmonicIndex idx, int n, bool include_constant);

// Gamma((Q+d)/4+j) Gamma((Q+d)/4+k) / (Gamma((Q-d)/4+j) Gamma((Q-d)/4+k)), 0 < d < 2.
double a_d_eigenvalue(HarmonicIndex idx, double d, int n);

// Gamma(E+(1+s)/2) / Gamma(E+(1-s)/2). The |2T|^s prefactor of the full
// operator symbol is left to the caller.
double ls_symbol(double s, double E);

// a_s = 2^{n-s-1} Gamma^2((Q-2s)/4) / (pi^{n+1} Gamma(s)), 0 < s < Q/2.
double fundsol_constant(double s, int n);

// sqrt(Gamma(E+(1-s)/2)/Gamma(E+(1+s)/2)) Gamma(E+(2+s)/4)/Gamma(E+(2-s)/4)
double mult_m(double E, double s);

// sqrt(E^s Gamma(E+(1-s)/2)/Gamma(E+(1+s)/2))
double mult_m_tilde(double E, double s);

enum class EvalMethod { Closed, Numeric };

// Eigenvalues for 0 <= j,k <= J. Immutable once built.
class EigenvalueTable {
public:
    EigenvalueTable(const ZonalKernelSpec& spec, int J, EvalMethod method = EvalMethod::Closed);

    // Shared, cached instance keyed by (spec, J, method).
    static std::shared_ptr<const EigenvalueTable> get(const ZonalKernelSpec& spec, int J,
                                                      EvalMethod method = EvalMethod::Closed);

    const ZonalKernelSpec& spec() const { return spec_; }
    int J() const { return values_.J; }
    EvalMethod method() const { return method_; }
    double at(int j, int k) const;
    double at(HarmonicIndex idx) const { return at(idx.j, idx.k); }
    const BigradedArray& values() const { return values_; }

    // Header "j,k,eigenvalue", one row per cell.
    std::string to_csv() const;
    std::string to_json() const;

private:
    ZonalKernelSpec spec_;
    EvalMethod method_;
    BigradedArray values_;
};

}  // namespace crsharp::spectral
