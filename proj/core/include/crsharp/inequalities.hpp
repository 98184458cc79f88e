#pragma once

// Sharp constants, verification suites and the two iterative solvers
// (fixed-point extremizer and center-of-mass normalization).

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "crsharp/csphere.hpp"
#include "crsharp/spectral.hpp"

namespace crsharp::inequalities {

using csphere::cplx;
using csphere::QuadratureGrid;
using csphere::SpherePoint;

// ---- constants ---------------------------------------------------------------

// (2 pi^{n+1}/n!)^{lambda/Q} n! Gamma((Q-lambda)/2) / Gamma^2((2Q-lambda)/4)
double hls_constant_sphere(int n, double lambda);

// (pi^{n+1}/(2^{n-1} n!))^{lambda/Q} n! Gamma((Q-lambda)/2) / Gamma^2((2Q-lambda)/4)
double hls_constant_hn(int n, double lambda);

struct JlConstants {
    double heisenberg;  // pi n^2 / (2^{2n} n!)^{1/(n+1)}
    double sphere;      // (n^2/4) (2 pi^{n+1}/n!)^{2/Q}
};
JlConstants jl_constant(int n);

// 2 pi^{n+1} / (Gamma(Q/4) Gamma((Q+4)/4))
double entropy_constant(int n);

struct SharpConstantReport {
    std::string name;
    std::vector<std::pair<std::string, double>> parameters;
    double closed_value = 0.0;
    std::optional<double> numeric_value;
    double relative_gap = 0.0;  // |closed - numeric| / |closed| when numeric is present
};

// All constants at (n, lambda, d); numeric values are recomputed
// independently (eigenvalue tables, polynomial engine) where possible.
std::vector<SharpConstantReport> constant_reports(int n, double lambda, double d);

// ---- spectral forms ------------------------------------------------------------

// sum_{j,k} E_{j,k} ||P_{j,k} f||^2. Throws DomainError when energies carry
// weight beyond the table's J.
double bilinear_form(const csphere::BigradedArray& energies, const spectral::EigenvalueTable& table);

// ---- verification reports ------------------------------------------------------

struct CaseDetail {
    std::string label;
    double residual = 0.0;
    bool passed = true;
};

class VerificationReport {
public:
    explicit VerificationReport(std::string suite);

    void set_parameter(const std::string& key, double value);
    // Counts one case. Failed cases are always kept as details; passing ones
    // only when keep is set. residual is a violation size (>= 0, larger is worse).
    void record(const std::string& label, double residual, bool passed, bool keep = false);
    void merge(const VerificationReport& other);

    bool passed() const { return cases_failed == 0; }
    std::string to_json() const;

    std::string suite;
    std::vector<std::pair<std::string, double>> parameters;
    long cases_total = 0;
    long cases_failed = 0;
    double worst_residual = 0.0;
    std::vector<CaseDetail> details;
    static constexpr std::size_t kMaxDetails = 256;
};

// Scalar reduction of the key inequality for one alpha:
// (a-1)[1/((j-1+a)(k+n+1-a)) + 1/((j+n+1-a)(k-1+a))] <= 2/(n+1-a), strict
// unless j = k = 0. The j = 0 / k = 0 terms are evaluated with the factor
// (a-1) cancelled, which is also the a -> 1 limit.
VerificationReport verify_keyineq(int n, double alpha, int Jmax);

// The same check over alpha_i = ((n+1)/2) i/18, i = 1..17.
VerificationReport verify_keyineq_grid(int n, int Jmax);

// Left side of the scalar key inequality (exposed for tests).
double keyineq_lhs(int n, double alpha, int j, int k);

// Eigenvalue inequality behind the subcritical Sobolev inequality, its
// j = 0 case and the digamma bound on a real grid k in [1, Jmax].
VerificationReport verify_sobq(int n, double d, int Jmax);

// sum_j E[zeta_j u] = E[u] + (n/2) int u^2 on random real polynomials of
// bidegree <= (4,4), exact polynomial engine.
VerificationReport verify_gsr(int n, std::uint64_t seed, int trials);

// Jerison-Lee deficit E[u] - C ||u||_q^2 on random real band-limited u
// (spectral energies), u = 1, and the optimizer family at |xi| in {0.2, 0.5}.
VerificationReport verify_jl(int n, std::uint64_t seed, int trials);

// HLS quotient on the sphere: f = 1, the optimizer family, random
// band-limited f. n = 1 (uses the FFT transform).
VerificationReport verify_hls(int n, double lambda, std::uint64_t seed, int trials);

// Trial-function expansions of the two endpoint inequalities.
struct EndpointFit {
    double c2 = 0.0;
    double c4 = 0.0;
    double c6 = 0.0;  // only fitted with three or more eps
    std::vector<double> eps;
    std::vector<double> deficit;
};
EndpointFit endpoint_log_fit(int n, std::span<const double> eps_list);
EndpointFit endpoint_entropy_fit(int n, std::span<const double> eps_list);
VerificationReport verify_endpoint_log(int n, std::span<const double> eps_list);
VerificationReport verify_endpoint_entropy(int n, std::span<const double> eps_list);

// Cayley transform: round trips, kernel relation on random pairs, L^p
// isometry against a direct quadrature on H^1, constant ratio 2^{n lambda/Q}.
VerificationReport verify_cayley(int n, std::uint64_t seed, int pairs);

// Multipliers m, m~ on [n/2, 1e6] for each s, and the Green's function constant.
VerificationReport verify_multipliers(int n, std::span<const double> s_list);

// ---- extremizer ---------------------------------------------------------------

struct MaximizeOptions {
    int Jmax = 8;
    double damping = 0.5;
    int max_iters = 200;
    double tol = 1e-12;  // relative quotient change that counts as converged
    std::uint64_t seed = 1;
    bool constant_start = false;
};

struct MaximizeResult {
    double quotient = 0.0;
    csphere::GridFunction extremizer;
    std::vector<double> trace;        // quotient after each iteration (trace[0] = start)
    int iterations = 0;
    bool converged = false;
    double out_of_band = 0.0;         // L^2 mass fraction of the final iterate above Jmax
};

// h <- normalize_p( (1-d) h + d ((K h)_+)^{1/(p-1)} ), K applied spectrally
// through the Power table with alpha = lambda/4. n = 1 grids only.
MaximizeResult maximize_quotient(int n, double lambda, const QuadratureGrid& grid, const MaximizeOptions& opt);

// ---- center of mass -------------------------------------------------------------

// gamma_{delta,xi}(zeta); throws PoleError when the denominator vanishes
// (zeta = -xi).
SpherePoint gamma_map(double delta, const SpherePoint& xi, const SpherePoint& zeta);

struct CenterOfMassSolution {
    double delta = 1.0;
    SpherePoint xi;
    double residual = 0.0;
    int iterations = 0;
};

// int gamma_{delta,xi}(zeta) f(zeta) d zeta / int f.
std::vector<cplx> center_of_mass(double delta, const SpherePoint& xi, std::span<const double> f,
                                 const QuadratureGrid& grid);

// Finds (delta, xi) with |center_of_mass| <= tol by a damped Newton
// iteration in the ball variable x = (1-delta) xi. Throws ConvergenceError
// (carrying the best residual) when max_iters is exhausted.
CenterOfMassSolution solve_center_of_mass(std::span<const double> f, const QuadratureGrid& grid, double tol,
                                          int max_iters = 60);

}  // namespace crsharp::inequalities
