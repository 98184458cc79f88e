#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <type_traits>

namespace crsharp {

// Neumaier-compensated running sum. Deterministic for a fixed order of add().
template <class T>
class CompensatedSum {
public:
    void add(T x) {
        T t = sum_ + x;
        if constexpr (std::is_floating_point_v<T>) {
            if (std::abs(sum_) >= std::abs(x))
                comp_ += (sum_ - t) + x;
            else
                comp_ += (x - t) + sum_;
        } else {
            comp_ += compensate(sum_, x, t);
        }
        sum_ = t;
    }
    T value() const { return sum_ + comp_; }

private:
    static T compensate(T s, T x, T t) {
        using R = typename T::value_type;
        auto part = [](R a, R b, R c) {
            return std::abs(a) >= std::abs(b) ? (a - c) + b : (b - c) + a;
        };
        return T(part(s.real(), x.real(), t.real()), part(s.imag(), x.imag(), t.imag()));
    }
    T sum_{};
    T comp_{};
};

// Pairwise summation of a contiguous range; block size 64 below which a
// plain loop is used.
template <class T>
T pairwise_sum(std::span<const T> v) {
    if (v.size() <= 64) {
        T s{};
        for (const T& x : v) s += x;
        return s;
    }
    std::size_t h = v.size() / 2;
    return pairwise_sum(v.first(h)) + pairwise_sum(v.subspan(h));
}

}  // namespace crsharp
