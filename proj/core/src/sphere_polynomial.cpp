#include <cmath>
#include <functional>

#include "crsharp/csphere.hpp"
#include "crsharp/errors.hpp"
#include "crsharp/summation.hpp"

namespace crsharp::csphere {

namespace {

int degree(const std::vector<int>& a) {
    int s = 0;
    for (int x : a) s += x;
    return s;
}

void check_same_n(const SpherePolynomial& a, const SpherePolynomial& b) {
    if (a.n() != b.n()) throw DimensionError("SpherePolynomial: dimension mismatch");
}

// All multi-indices of length len with entries summing to at most max_sum.
void enumerate_indices(int len, int max_sum, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> cur(len, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == len) {
            f(cur);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            cur[pos] = v;
            rec(pos + 1, left - v);
        }
        cur[pos] = 0;
    };
    rec(0, max_sum);
}

}  // namespace

SpherePolynomial SpherePolynomial::constant(int n, cplx c) {
    SpherePolynomial p(n);
    p.add_term({std::vector<int>(n + 1, 0), std::vector<int>(n + 1, 0)}, c);
    return p;
}

SpherePolynomial SpherePolynomial::zeta(int n, int slot) {
    if (slot < 0 || slot > n) throw DimensionError("SpherePolynomial::zeta: slot out of range");
    Monomial m{std::vector<int>(n + 1, 0), std::vector<int>(n + 1, 0)};
    m.a[slot] = 1;
    SpherePolynomial p(n);
    p.add_term(m, 1.0);
    return p;
}

SpherePolynomial SpherePolynomial::zeta_bar(int n, int slot) {
    if (slot < 0 || slot > n) throw DimensionError("SpherePolynomial::zeta_bar: slot out of range");
    Monomial m{std::vector<int>(n + 1, 0), std::vector<int>(n + 1, 0)};
    m.b[slot] = 1;
    SpherePolynomial p(n);
    p.add_term(m, 1.0);
    return p;
}

void SpherePolynomial::add_term(const Monomial& mono, cplx c) {
    if (static_cast<int>(mono.a.size()) != n_ + 1 || static_cast<int>(mono.b.size()) != n_ + 1)
        throw DimensionError("SpherePolynomial: monomial has wrong length");
    if (c == cplx(0.0)) return;
    auto [it, inserted] = terms_.emplace(mono, c);
    if (!inserted) {
        it->second += c;
        if (it->second == cplx(0.0)) terms_.erase(it);
    }
}

SpherePolynomial& SpherePolynomial::operator+=(const SpherePolynomial& o) {
    check_same_n(*this, o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

SpherePolynomial& SpherePolynomial::operator-=(const SpherePolynomial& o) {
    check_same_n(*this, o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

SpherePolynomial& SpherePolynomial::operator*=(cplx c) {
    if (c == cplx(0.0)) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

SpherePolynomial operator*(const SpherePolynomial& x, const SpherePolynomial& y) {
    check_same_n(x, y);
    SpherePolynomial out(x.n());
    for (const auto& [mx, cx] : x.terms()) {
        for (const auto& [my, cy] : y.terms()) {
            Monomial m = mx;
            for (int i = 0; i <= x.n(); ++i) {
                m.a[i] += my.a[i];
                m.b[i] += my.b[i];
            }
            out.add_term(m, cx * cy);
        }
    }
    return out;
}

SpherePolynomial SpherePolynomial::conj() const {
    SpherePolynomial out(n_);
    for (const auto& [m, c] : terms_) out.add_term({m.b, m.a}, std::conj(c));
    return out;
}

cplx SpherePolynomial::operator()(const SpherePoint& zeta) const {
    if (zeta.n() != n_) throw DimensionError("SpherePolynomial: point dimension mismatch");
    CompensatedSum<cplx> s;
    for (const auto& [m, c] : terms_) {
        cplx v = c;
        for (int i = 0; i <= n_; ++i) {
            if (m.a[i]) v *= std::pow(zeta.zeta[i], m.a[i]);
            if (m.b[i]) v *= std::pow(std::conj(zeta.zeta[i]), m.b[i]);
        }
        s.add(v);
    }
    return s.value();
}

GridFunction SpherePolynomial::sample(const QuadratureGrid& grid) const {
    if (grid.n != n_) throw DimensionError("SpherePolynomial::sample: grid dimension mismatch");
    GridFunction out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) out[i] = (*this)(grid.nodes[i]);
    return out;
}

SpherePolynomial apply_T(int slot, const SpherePolynomial& f) {
    const int n = f.n();
    if (slot < 0 || slot > n) throw DimensionError("apply_T: slot out of range");
    SpherePolynomial out(n);
    for (const auto& [m, c] : f.terms()) {
        if (m.a[slot] > 0) {
            Monomial d = m;
            d.a[slot] -= 1;
            out.add_term(d, c * static_cast<double>(m.a[slot]));
        }
        const int deg = degree(m.a);
        if (deg > 0) {
            Monomial e = m;
            e.b[slot] += 1;
            out.add_term(e, -c * static_cast<double>(deg));
        }
    }
    return out;
}

SpherePolynomial apply_Tbar(int slot, const SpherePolynomial& f) {
    const int n = f.n();
    if (slot < 0 || slot > n) throw DimensionError("apply_Tbar: slot out of range");
    SpherePolynomial out(n);
    for (const auto& [m, c] : f.terms()) {
        if (m.b[slot] > 0) {
            Monomial d = m;
            d.b[slot] -= 1;
            out.add_term(d, c * static_cast<double>(m.b[slot]));
        }
        const int deg = degree(m.b);
        if (deg > 0) {
            Monomial e = m;
            e.a[slot] += 1;
            out.add_term(e, -c * static_cast<double>(deg));
        }
    }
    return out;
}

cplx integrate(const SpherePolynomial& f) {
    CompensatedSum<cplx> s;
    for (const auto& [m, c] : f.terms()) s.add(c * monomial_integral(f.n(), m.a, m.b));
    return s.value();
}

cplx inner(const SpherePolynomial& f, const SpherePolynomial& g) {
    check_same_n(f, g);
    const int n = f.n();
    // int zeta^a zetabar^b conj(zeta^a' zetabar^b') is non-zero only when
    // a - b = a' - b'; bucket g by that difference.
    std::map<std::vector<int>, std::vector<std::pair<const Monomial*, cplx>>> buckets;
    for (const auto& [m, c] : g.terms()) {
        std::vector<int> d(n + 1);
        for (int i = 0; i <= n; ++i) d[i] = m.a[i] - m.b[i];
        buckets[d].push_back({&m, c});
    }
    CompensatedSum<cplx> s;
    std::vector<int> d(n + 1), e(n + 1);
    for (const auto& [m, c] : f.terms()) {
        for (int i = 0; i <= n; ++i) d[i] = m.a[i] - m.b[i];
        auto it = buckets.find(d);
        if (it == buckets.end()) continue;
        for (const auto& [mg, cg] : it->second) {
            for (int i = 0; i <= n; ++i) e[i] = m.a[i] + mg->b[i];
            s.add(c * std::conj(cg) * monomial_integral(n, e, e));
        }
    }
    return s.value();
}

namespace {

double gradient_part(const SpherePolynomial& u) {
    CompensatedSum<double> s;
    for (int j = 0; j <= u.n(); ++j) {
        const SpherePolynomial tu = apply_T(j, u);
        const SpherePolynomial tbu = apply_Tbar(j, u);
        s.add(inner(tu, tu).real());
        s.add(inner(tbu, tbu).real());
    }
    return 0.5 * s.value();
}

}  // namespace

double energy(const SpherePolynomial& u) {
    const double n = u.n();
    return gradient_part(u) + 0.25 * n * n * inner(u, u).real();
}

double energy_zero(const SpherePolynomial& u) { return gradient_part(u); }

SpherePolynomial random_real_polynomial(int n, int max_degree, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    SpherePolynomial u(n);
    enumerate_indices(2 * (n + 1), max_degree, [&](const std::vector<int>& ab) {
        Monomial m{std::vector<int>(ab.begin(), ab.begin() + n + 1),
                   std::vector<int>(ab.begin() + n + 1, ab.end())};
        const double re = normal(rng);
        const double im = normal(rng);
        u.add_term(m, cplx(re, im));
    });
    return u + u.conj();
}

SpherePolynomial random_real_bidegree_polynomial(int n, int J, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    SpherePolynomial u(n);
    enumerate_indices(n + 1, J, [&](const std::vector<int>& a) {
        enumerate_indices(n + 1, J, [&](const std::vector<int>& b) {
            const double re = normal(rng);
            const double im = normal(rng);
            u.add_term(Monomial{a, b}, cplx(re, im));
        });
    });
    return u + u.conj();
}

}  // namespace crsharp::csphere
