#pragma once

// Test-only oracle: the full Cayley-Dickson algebra over the integers, built
// by literally applying the doubling law to coefficient vectors. Shares no
// code with the twist-table multiplication it is used to check.

#include <cstddef>
#include <vector>

namespace oracle {

using Vec = std::vector<long long>;

inline Vec add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec scale(long long c, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

// sigma(q + r l) = sigma(q) - r l; identity on the 0-fold algebra
inline Vec conj(const Vec& x) {
    if (x.size() == 1) return x;
    const std::size_t h = x.size() / 2;
    Vec q(x.begin(), x.begin() + h), r(x.begin() + h, x.end());
    Vec out = conj(q);
    for (auto v : r) out.push_back(-v);
    return out;
}

// (q + r l)(s + t l) = qs + gamma sigma(t) r + (t q + r sigma(s)) l,
// gammas[level-1] is the parameter of the outermost doubling.
inline Vec mul(const Vec& x, const Vec& y, const std::vector<long long>& gammas, std::size_t level) {
    if (level == 0) return {x[0] * y[0]};
    const std::size_t h = x.size() / 2;
    Vec q(x.begin(), x.begin() + h), r(x.begin() + h, x.end());
    Vec s(y.begin(), y.begin() + h), t(y.begin() + h, y.end());
    Vec lo = add(mul(q, s, gammas, level - 1), scale(gammas[level - 1], mul(conj(t), r, gammas, level - 1)));
    Vec hi = add(mul(t, q, gammas, level - 1), mul(r, conj(s), gammas, level - 1));
    lo.insert(lo.end(), hi.begin(), hi.end());
    return lo;
}

inline Vec basis(std::size_t n, unsigned mask) {
    Vec v(std::size_t{1} << n, 0);
    v[mask] = 1;
    return v;
}

}  // namespace oracle
