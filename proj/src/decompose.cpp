#include "cdl/decompose.hpp"

#include <algorithm>
#include <string>

#include "cdl/analytics.hpp"
#include "cdl/error.hpp"

namespace cdl {

namespace {

void require_n(unsigned n) {
    if (n < 3) {
        throw ValidationError("decomposition requires n >= 3 (got n = " + std::to_string(n) +
                              "): for n <= 2 every nonzero rank has commutant density 1/2, so ranks "
                              "cannot be told apart");
    }
}

bool augment(unsigned j, const std::vector<std::vector<bool>>& adj, std::vector<int>& owner,
             std::vector<char>& seen) {
    for (unsigned k = 0; k < adj[j].size(); ++k) {
        if (!adj[j][k] || seen[k]) continue;
        seen[k] = 1;
        if (owner[k] < 0 || augment(static_cast<unsigned>(owner[k]), adj, owner, seen)) {
            owner[k] = static_cast<int>(j);
            return true;
        }
    }
    return false;
}

}  // namespace

ProductShape infer_parameters(const AbstractLoop& loop, unsigned n) {
    require_n(n);
    if (n > CDLoop::kMaxN) throw ValidationError("n out of range");
    ProductShape shape;
    shape.center = center(loop);
    shape.z_size = shape.center.size();
    const std::size_t size = loop.size();
    const std::string not_product = "not a product of " + std::to_string(n) + "-fold CD loops: ";
    if (size % shape.z_size != 0) {
        throw DecompositionError(not_product + "center size " + std::to_string(shape.z_size) +
                                 " does not divide " + std::to_string(size));
    }
    std::size_t q = size / shape.z_size;
    unsigned bits = 0;
    while (q > 1 && q % 2 == 0) {
        q /= 2;
        ++bits;
    }
    if (q != 1 || bits == 0 || bits % n != 0) {
        throw DecompositionError(not_product + std::to_string(size) + " / " + std::to_string(shape.z_size) +
                                 " is not a positive power of 2^" + std::to_string(n));
    }
    shape.m = bits / n;
    return shape;
}

unsigned rank_of(const AbstractLoop& loop, Index x, unsigned n, unsigned m) {
    require_n(n);
    const Rational density(BigInt(loop.commutant_size(x)), BigInt(loop.size()));
    for (unsigned k = 0; k <= m; ++k)
        if (b_k_closed(n, k) == density) return k;
    throw DecompositionError("not CD-product-like: element " + std::to_string(x) + " has commutant density " +
                                 density.str() + ", matching no rank 0.." + std::to_string(m),
                             x);
}

Decomposition recover_factors(const AbstractLoop& loop, unsigned n, PivotOrder order) {
    Decomposition d;
    d.n = n;
    d.shape = infer_parameters(loop, n);
    const auto size = static_cast<Index>(loop.size());
    d.ranks.resize(size);
    for (Index x = 0; x < size; ++x) d.ranks[x] = rank_of(loop, x, n, d.shape.m);

    const std::size_t factor_size = (std::size_t{1} << n) * d.shape.z_size;
    std::vector<char> central(size, 0), assigned(size, 0);
    for (Index c : d.shape.center) central[c] = 1;

    std::vector<Index> pivots;
    for (Index x = 0; x < size; ++x)
        if (d.ranks[x] == 1) pivots.push_back(x);
    if (order == PivotOrder::Descending) std::reverse(pivots.begin(), pivots.end());

    for (Index x : pivots) {
        if (assigned[x]) continue;
        std::vector<Index> seed(d.shape.center.begin(), d.shape.center.end());
        seed.push_back(x);
        for (Index y = 0; y < size; ++y)
            if (d.ranks[y] == 1 && loop.commutator(x, y) != loop.identity()) seed.push_back(y);
        auto candidate = closure(loop, seed);
        if (candidate.size() != factor_size) {
            throw DecompositionError("decomposition failed: factor generated by element " + std::to_string(x) +
                                         " has " + std::to_string(candidate.size()) + " elements, expected " +
                                         std::to_string(factor_size),
                                     x);
        }
        for (Index y : candidate) {
            if (central[y]) continue;
            if (assigned[y] || d.ranks[y] != 1) {
                throw DecompositionError("decomposition failed: element " + std::to_string(y) +
                                             " lies in two factor candidates",
                                         y);
            }
            assigned[y] = 1;
        }
        d.factors.push_back({candidate, loop.restricted(candidate)});
    }
    for (Index x : pivots) {
        if (!assigned[x]) {
            throw DecompositionError("decomposition failed: element " + std::to_string(x) + " left unassigned", x);
        }
    }
    if (d.factors.size() != d.shape.m) {
        throw DecompositionError("decomposition failed: recovered " + std::to_string(d.factors.size()) +
                                 " factors, expected " + std::to_string(d.shape.m));
    }
    std::sort(d.factors.begin(), d.factors.end(),
              [](const RecoveredFactor& a, const RecoveredFactor& b) { return a.elements < b.elements; });
    return d;
}

FactorMatch match_factors(std::span<const AbstractLoop> d, std::span<const AbstractLoop> e) {
    FactorMatch out;
    if (d.size() != e.size()) throw ValidationError("match_factors needs equal factor counts");
    out.isomorphic.assign(d.size(), std::vector<bool>(e.size(), false));
    for (std::size_t j = 0; j < d.size(); ++j)
        for (std::size_t k = 0; k < e.size(); ++k) out.isomorphic[j][k] = find_isomorphism(d[j], e[k]).has_value();

    std::vector<int> owner(e.size(), -1);
    for (unsigned j = 0; j < d.size(); ++j) {
        std::vector<char> seen(e.size(), 0);
        if (!augment(j, out.isomorphic, owner, seen)) return out;
    }
    std::vector<unsigned> sigma(d.size());
    for (unsigned k = 0; k < e.size(); ++k) sigma[static_cast<unsigned>(owner[k])] = k;
    out.sigma = std::move(sigma);
    return out;
}

FactorMatch match_factors(const Decomposition& d, const Decomposition& e) {
    std::vector<AbstractLoop> a, b;
    for (const auto& f : d.factors) a.push_back(f.table);
    for (const auto& f : e.factors) b.push_back(f.table);
    return match_factors(a, b);
}

bool partition_is_pivot_independent(const AbstractLoop& loop, unsigned n) {
    const auto up = recover_factors(loop, n, PivotOrder::Ascending);
    const auto down = recover_factors(loop, n, PivotOrder::Descending);
    if (up.factors.size() != down.factors.size()) return false;
    for (std::size_t i = 0; i < up.factors.size(); ++i)
        if (up.factors[i].elements != down.factors[i].elements) return false;
    return true;
}

}  // namespace cdl
