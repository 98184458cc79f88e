#include <algorithm>
#include <cmath>
#include <cstring>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "crsharp/csphere.hpp"
#include "crsharp/errors.hpp"
#include "crsharp/specfun.hpp"

namespace crsharp::csphere {

namespace {

// FFTW planning is not thread-safe; execution with new-array calls is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwBuffer {
    explicit FftwBuffer(std::size_t n)
        : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))), size(n) {
        std::memset(data, 0, sizeof(fftw_complex) * n);
    }
    ~FftwBuffer() { fftw_free(data); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
    cplx* as_cplx() { return reinterpret_cast<cplx*>(data); }
    fftw_complex* data;
    std::size_t size;
};

// log of the squared L^2 norm of P_s^{(a,b)} with weight (1-x)^a (1+x)^b.
double log_jacobi_norm2(int s, double a, double b) {
    return (a + b + 1.0) * std::log(2.0) - std::log(2.0 * s + a + b + 1.0) +
           specfun::log_gamma(s + a + 1.0) + specfun::log_gamma(s + b + 1.0) -
           specfun::log_gamma(s + a + b + 1.0) - specfun::log_gamma(s + 1.0);
}

}  // namespace

struct HarmonicTransform::Impl {
    int n1 = 0, n2 = 0, nt = 0;
    std::vector<double> ring_weight;  // theta weight times (2 pi)^2 / (n1 n2)
    std::vector<double> radial;       // [mode * nt + ring]
    std::vector<int> mode_slot;       // flat FFT index of each mode
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;

    ~Impl() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
    }
};

int HarmonicTransform::max_band(const QuadratureGrid& grid) {
    if (grid.n != 1) throw DimensionError("HarmonicTransform: only n = 1 is supported");
    const int p = std::min(grid.resolution.phi[0], grid.resolution.phi[1]) / 2 - 1;
    return std::min(p, grid.resolution.theta[0] - 1);
}

HarmonicTransform::HarmonicTransform(const QuadratureGrid& grid, int J)
    : impl_(std::make_unique<Impl>()), J_(J) {
    if (grid.n != 1) throw DimensionError("HarmonicTransform: only n = 1 is supported");
    if (J < 0 || J > max_band(grid))
        throw DomainError("HarmonicTransform: band limit exceeds what the grid resolves");
    Impl& im = *impl_;
    im.n1 = grid.resolution.phi[0];
    im.n2 = grid.resolution.phi[1];
    im.nt = grid.resolution.theta[0];
    const double phi_w = 4.0 * std::numbers::pi * std::numbers::pi / (im.n1 * im.n2);
    for (int i = 0; i < im.nt; ++i) im.ring_weight.push_back(phi_w * grid.theta_w[0][i]);

    for (int p1 = -J; p1 <= J; ++p1) {
        for (int p2 = -J; p2 <= J; ++p2) {
            const int j0 = std::max(p1, 0) + std::max(p2, 0);
            const int k0 = std::max(-p1, 0) + std::max(-p2, 0);
            for (int s = 0; j0 + s <= J && k0 + s <= J; ++s) {
                modes_.push_back({p1, p2, s, j0 + s, k0 + s});
                const int q1 = (p1 % im.n1 + im.n1) % im.n1;
                const int q2 = (p2 % im.n2 + im.n2) % im.n2;
                im.mode_slot.push_back(q1 * im.n2 + q2);
                const double a = std::abs(p2), b = std::abs(p1);
                // ||Y||^2 = pi^2 2^{-|p1|-|p2|} h_s kappa^2 = 1
                const double log_kappa =
                    -0.5 * (2.0 * std::log(std::numbers::pi) - (a + b) * std::log(2.0) +
                            log_jacobi_norm2(s, a, b));
                for (int i = 0; i < im.nt; ++i) {
                    const double x = grid.theta_x[0][i];
                    const double sin2 = 0.5 * (1.0 + x), cos2 = 0.5 * (1.0 - x);
                    const double v = std::exp(log_kappa + 0.5 * b * std::log(sin2) +
                                              0.5 * a * std::log(cos2)) *
                                     specfun::jacobi_p({s, a, b}, x);
                    im.radial.push_back(v);
                }
            }
        }
    }

    FftwBuffer buf(static_cast<std::size_t>(im.n1) * im.n2);
    std::lock_guard<std::mutex> lock(planner_mutex());
    im.fwd = fftw_plan_dft_2d(im.n1, im.n2, buf.data, buf.data, FFTW_FORWARD, FFTW_ESTIMATE);
    im.bwd = fftw_plan_dft_2d(im.n1, im.n2, buf.data, buf.data, FFTW_BACKWARD, FFTW_ESTIMATE);
}

HarmonicTransform::~HarmonicTransform() = default;

std::vector<cplx> HarmonicTransform::forward(std::span<const cplx> f) const {
    const Impl& im = *impl_;
    const std::size_t ring = static_cast<std::size_t>(im.n1) * im.n2;
    if (f.size() != ring * im.nt) throw DimensionError("HarmonicTransform::forward: size mismatch");
    std::vector<cplx> coeff(modes_.size(), 0.0);
    FftwBuffer buf(ring);
    for (int i = 0; i < im.nt; ++i) {
        std::copy(f.begin() + i * ring, f.begin() + (i + 1) * ring, buf.as_cplx());
        fftw_execute_dft(im.fwd, buf.data, buf.data);
        const cplx* spec = buf.as_cplx();
        const double w = im.ring_weight[i];
        for (std::size_t m = 0; m < modes_.size(); ++m)
            coeff[m] += w * im.radial[m * im.nt + i] * spec[im.mode_slot[m]];
    }
    return coeff;
}

GridFunction HarmonicTransform::inverse(std::span<const cplx> coeffs) const {
    const Impl& im = *impl_;
    if (coeffs.size() != modes_.size())
        throw DimensionError("HarmonicTransform::inverse: coefficient count mismatch");
    const std::size_t ring = static_cast<std::size_t>(im.n1) * im.n2;
    GridFunction out(ring * im.nt);
    FftwBuffer buf(ring);
    for (int i = 0; i < im.nt; ++i) {
        cplx* spec = buf.as_cplx();
        std::fill(spec, spec + ring, cplx(0.0));
        for (std::size_t m = 0; m < modes_.size(); ++m)
            spec[im.mode_slot[m]] += coeffs[m] * im.radial[m * im.nt + i];
        fftw_execute_dft(im.bwd, buf.data, buf.data);
        std::copy(spec, spec + ring, out.begin() + i * ring);
    }
    return out;
}

BigradedArray HarmonicTransform::energies(std::span<const cplx> f) const {
    const std::vector<cplx> c = forward(f);
    BigradedArray e(J_);
    for (std::size_t m = 0; m < modes_.size(); ++m) e.at(modes_[m].j, modes_[m].k) += std::norm(c[m]);
    return e;
}

GridFunction HarmonicTransform::apply(std::span<const cplx> f, const BigradedArray& mult) const {
    if (mult.J < J_) throw DomainError("HarmonicTransform::apply: multiplier table too small");
    std::vector<cplx> c = forward(f);
    for (std::size_t m = 0; m < modes_.size(); ++m) c[m] *= mult.at(modes_[m].j, modes_[m].k);
    return inverse(c);
}

GridFunction HarmonicTransform::project(std::span<const cplx> f, HarmonicIndex idx) const {
    std::vector<cplx> c = forward(f);
    for (std::size_t m = 0; m < modes_.size(); ++m)
        if (modes_[m].j != idx.j || modes_[m].k != idx.k) c[m] = 0.0;
    return inverse(c);
}

}  // namespace crsharp::csphere
