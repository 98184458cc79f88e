#pragma once

// Seeded generators for property tests. Every test builds its own Gen from a
// fixed seed, so failures reproduce exactly.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "crsharp/csphere.hpp"
#include "crsharp/heisenberg.hpp"

namespace testgen {

using cplx = std::complex<double>;

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    cplx complex_normal() { return {normal(), normal()}; }

    // Point on S^{2n+1}: normalized complex Gaussian vector.
    crsharp::csphere::SpherePoint sphere_point(int n) {
        crsharp::csphere::SpherePoint p;
        double norm2 = 0.0;
        for (int j = 0; j <= n; ++j) {
            p.zeta.push_back(complex_normal());
            norm2 += std::norm(p.zeta.back());
        }
        for (cplx& z : p.zeta) z /= std::sqrt(norm2);
        return p;
    }

    // Point of H^n with Gaussian z of scale sz and t of scale st.
    crsharp::heisenberg::HPoint h_point(int n, double sz = 1.0, double st = 2.0) {
        crsharp::heisenberg::HPoint u;
        for (int j = 0; j < n; ++j) u.z.push_back(sz * complex_normal());
        u.t = st * normal();
        return u;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace testgen
