#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "cdl/cdloop.hpp"

namespace cdl {

/// Canonical representative of an element of D_1 * ... * D_m: every factor
/// scalar is folded into one global scalar, so equality is field-wise.
struct ProductElement {
    Scalar scalar;
    std::vector<std::uint32_t> masks;

    friend bool operator==(const ProductElement&, const ProductElement&) = default;
};

/// Central product of m n-fold Cayley-Dickson loops over a shared Z.
///
/// Besides the ProductElement API, cosets in A/Z are addressed by a packed
/// key: factor i (0-based) occupies bits [i*n, (i+1)*n). Enumeration order is
/// scalar-major, then packed key.
class CentralProduct {
public:
    explicit CentralProduct(std::vector<CDLoop> factors);

    /// Parses "g11,...,g1n; g21,...,g2n; ..." over the group z.
    static CentralProduct parse(ScalarGroup z, std::string_view factor_list);

    const ScalarGroup& z() const noexcept { return z_; }
    std::span<const CDLoop> factors() const noexcept { return factors_; }
    unsigned m() const noexcept { return static_cast<unsigned>(factors_.size()); }
    unsigned n() const noexcept { return n_; }

    /// 2^{mn}; saturates at 2^64-1 when mn >= 64.
    std::uint64_t coset_count() const noexcept;
    /// |Z| * 2^{mn}; saturates on overflow.
    std::uint64_t order() const noexcept;

    ProductElement identity() const;
    ProductElement scalar_element(const Scalar& s) const;
    /// Places x in factor `factor_index` (1-based), all other masks zero.
    ProductElement embed(unsigned factor_index, const LoopElement& x) const;

    bool contains(const ProductElement& x) const noexcept;

    ProductElement mul(const ProductElement& x, const ProductElement& y) const;
    ProductElement inv(const ProductElement& x) const;
    ProductElement commutator(const ProductElement& x, const ProductElement& y) const;
    ProductElement associator(const ProductElement& x, const ProductElement& y,
                              const ProductElement& z) const;

    /// Number of factors with a nonzero mask.
    static unsigned rank(const ProductElement& x) noexcept;

    std::vector<ProductElement> enumerate(const Budget& budget = default_budget()) const;
    std::uint64_t index_of(const ProductElement& x) const;
    ProductElement at(std::uint64_t index) const;

    // Packed-coset fast path. Requires m*n <= 63.
    std::uint64_t pack(std::span<const std::uint32_t> masks) const;
    std::vector<std::uint32_t> unpack(std::uint64_t key) const;
    /// Exponent of the scalar t with b(u) b(v) = t b(u ^ v).
    std::uint32_t twist_exponent(std::uint64_t u, std::uint64_t v) const noexcept;
    unsigned packed_rank(std::uint64_t key) const noexcept;

    bool operator==(const CentralProduct& other) const noexcept { return factors_ == other.factors_; }

private:
    void check(const ProductElement& x) const;

    ScalarGroup z_;
    std::vector<CDLoop> factors_;
    unsigned n_;
};

}  // namespace cdl
