#pragma once

// Analysis on the complex sphere S^{2n+1} in C^{n+1}: points, product
// quadrature, monomial integrals, the bigraded harmonic spaces H_{j,k} and
// their zonal kernels, and an exact polynomial engine for T_j, Tbar_j and the
// quadratic form E[u].

#include <complex>
#include <compare>
#include <map>
#include <memory>
#include <random>
#include <span>
#include <vector>

namespace crsharp::csphere {

using cplx = std::complex<double>;

// |S^{2n+1}| = 2 pi^{n+1} / n!
double sphere_area(int n);

struct SpherePoint {
    std::vector<cplx> zeta;

    int n() const { return static_cast<int>(zeta.size()) - 1; }
    // Checks sum |zeta_j|^2 = 1 within 1e-12 and throws DomainError otherwise.
    static SpherePoint checked(std::vector<cplx> zeta);
};

// zeta . conj(eta) = sum_j zeta_j conj(eta_j)
cplx dot(const SpherePoint& zeta, const SpherePoint& eta);

// 1 - zeta . conj(eta), evaluated as |zeta - eta|^2 / 2 - i Im((zeta - eta) . conj(eta))
// so that nearby points do not lose relative accuracy.
cplx one_minus_dot(const SpherePoint& zeta, const SpherePoint& eta);

struct HarmonicIndex {
    int j = 0;
    int k = 0;
    int m() const { return j < k ? j : k; }
    int M() const { return j < k ? k : j; }
    auto operator<=>(const HarmonicIndex&) const = default;
};

// Values indexed by (j,k), 0 <= j,k <= J.
struct BigradedArray {
    int J = 0;
    std::vector<double> values;

    BigradedArray() = default;
    explicit BigradedArray(int J_) : J(J_), values((J_ + 1) * (J_ + 1), 0.0) {}
    double& at(int j, int k) { return values[j * (J + 1) + k]; }
    double at(int j, int k) const { return values[j * (J + 1) + k]; }
};

// Angle counts: phi has n+1 entries (periodic trapezoid), theta has n
// entries (Gauss rule matched to the factor sin^{2j-1} theta_j cos theta_j).
struct GridResolution {
    std::vector<int> phi;
    std::vector<int> theta;
};

// n=1: 32 x 32 in (phi_1, phi_2) and 24 in theta. Other n: 12 per phi,
// 10 per theta.
GridResolution default_resolution(int n);

// Every count multiplied by `factor`.
GridResolution scaled_resolution(const GridResolution& r, int factor);

struct QuadratureGrid {
    int n = 0;
    GridResolution resolution;
    std::vector<SpherePoint> nodes;
    std::vector<double> weights;
    // Per-theta-angle Gauss nodes in x = 2 sin^2(theta) - 1, kept for the
    // n=1 harmonic transform.
    std::vector<std::vector<double>> theta_x;
    std::vector<std::vector<double>> theta_w;

    std::size_t size() const { return nodes.size(); }
};

// Node order: theta multi-index outermost (theta_n slowest), then phi_1,
// ..., phi_{n+1} with phi_{n+1} fastest.
QuadratureGrid build_grid(int n, const GridResolution& resolution);

using GridFunction = std::vector<cplx>;

// 0 if a != b, else 2 pi^{n+1} a! / (n + |a|)!.
double monomial_integral(int n, std::span<const int> a, std::span<const int> b);

// Phi_{j,k}(w) for |w| <= 1.
cplx zonal_phi(int n, HarmonicIndex idx, cplx w);

// dim H_{j,k} = |S| Phi_{j,k}(1); throws if the trace is not an integer
// within 1e-8.
long dim_hjk(HarmonicIndex idx, int n);

// (P_{j,k} f)(zeta_i) = sum_l w_l Phi_{j,k}(zeta_i . conj(eta_l)) f(eta_l).
// Quadratic in the grid size; intended for small grids and as a reference
// for HarmonicTransform.
GridFunction project(std::span<const cplx> f, HarmonicIndex idx, const QuadratureGrid& grid);

// (sum_i w_i |f_i|^p)^{1/p}
double lp_norm(std::span<const cplx> f, double p, const QuadratureGrid& grid);
double lp_norm(std::span<const double> f, double p, const QuadratureGrid& grid);

// sum_i w_i f_i with pairwise summation.
cplx integrate(std::span<const cplx> f, const QuadratureGrid& grid);
double integrate(std::span<const double> f, const QuadratureGrid& grid);

// Fast projection onto the H_{j,k} (n = 1 only): 2D FFT in (phi_1, phi_2)
// on every theta ring, then a Jacobi transform in x = 2 sin^2(theta) - 1
// per Fourier mode. Inside H_{j,k} the (p_1, p_2) weight space is one
// dimensional and spanned by
//   sin^{|p1|} cos^{|p2|} P_s^{(|p2|,|p1|)}(x) e^{i(p1 phi_1 + p2 phi_2)},
// with j = p1+ + p2+ + s and k = p1- + p2- + s.
class HarmonicTransform {
public:
    struct Mode {
        int p1, p2, s, j, k;
    };

    HarmonicTransform(const QuadratureGrid& grid, int J);
    ~HarmonicTransform();
    HarmonicTransform(const HarmonicTransform&) = delete;
    HarmonicTransform& operator=(const HarmonicTransform&) = delete;

    int J() const { return J_; }
    const std::vector<Mode>& modes() const { return modes_; }

    // Largest J the grid resolves exactly.
    static int max_band(const QuadratureGrid& grid);

    // Orthonormal coefficients <f, Y_mode>.
    std::vector<cplx> forward(std::span<const cplx> f) const;
    GridFunction inverse(std::span<const cplx> coeffs) const;

    // ||P_{j,k} f||^2 for j,k <= J.
    BigradedArray energies(std::span<const cplx> f) const;
    // sum_{j,k <= J} mult(j,k) P_{j,k} f
    GridFunction apply(std::span<const cplx> f, const BigradedArray& mult) const;
    // P_{j,k} f
    GridFunction project(std::span<const cplx> f, HarmonicIndex idx) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    int J_;
    std::vector<Mode> modes_;
};

// Multi-index monomial zeta^a conj(zeta)^b over n+1 slots.
struct Monomial {
    std::vector<int> a;
    std::vector<int> b;
    auto operator<=>(const Monomial&) const = default;
};

class SpherePolynomial {
public:
    explicit SpherePolynomial(int n = 1) : n_(n) {}

    static SpherePolynomial constant(int n, cplx c);
    // zeta_{slot+1} and its conjugate (slot is 0-based).
    static SpherePolynomial zeta(int n, int slot);
    static SpherePolynomial zeta_bar(int n, int slot);

    int n() const { return n_; }
    const std::map<Monomial, cplx>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    void add_term(const Monomial& mono, cplx c);

    SpherePolynomial& operator+=(const SpherePolynomial& o);
    SpherePolynomial& operator-=(const SpherePolynomial& o);
    SpherePolynomial& operator*=(cplx c);
    friend SpherePolynomial operator+(SpherePolynomial a, const SpherePolynomial& b) { return a += b; }
    friend SpherePolynomial operator-(SpherePolynomial a, const SpherePolynomial& b) { return a -= b; }
    friend SpherePolynomial operator*(SpherePolynomial a, cplx c) { return a *= c; }
    friend SpherePolynomial operator*(cplx c, SpherePolynomial a) { return a *= c; }
    friend SpherePolynomial operator*(const SpherePolynomial& a, const SpherePolynomial& b);

    SpherePolynomial conj() const;
    cplx operator()(const SpherePoint& zeta) const;
    GridFunction sample(const QuadratureGrid& grid) const;

private:
    int n_;
    std::map<Monomial, cplx> terms_;
};

SpherePolynomial apply_T(int slot, const SpherePolynomial& f);
SpherePolynomial apply_Tbar(int slot, const SpherePolynomial& f);

// Exact integrals through monomial_integral.
cplx integrate(const SpherePolynomial& f);
// int f conj(g)
cplx inner(const SpherePolynomial& f, const SpherePolynomial& g);

// E[u] = 1/2 int sum_j (|T_j u|^2 + |Tbar_j u|^2) + n^2/2 |u|^2, and E_0
// without the n^2/2 term. For complex u this equals E[Re u] + E[Im u].
double energy(const SpherePolynomial& u);
double energy_zero(const SpherePolynomial& u);

// Random real polynomial of total degree <= max_degree: every monomial
// zeta^a conj(zeta)^b gets a seeded standard-normal complex coefficient and
// the result is symmetrized to u + conj(u).
SpherePolynomial random_real_polynomial(int n, int max_degree, std::mt19937_64& rng);

// Same, restricted to bidegrees with |a| <= J and |b| <= J, so that the
// polynomial lies in the span of H_{j,k}, j,k <= J.
SpherePolynomial random_real_bidegree_polynomial(int n, int J, std::mt19937_64& rng);

}  // namespace crsharp::csphere
