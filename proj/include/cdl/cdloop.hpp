#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "cdl/error.hpp"
#include "cdl/scalars.hpp"

namespace cdl {

/// One monomial z * b(e) of a Cayley-Dickson loop. Bit i of `mask` selects
/// the generator l_{i+1}; the bracketing of b(e) is the one induced by the
/// recursive doubling.
struct LoopElement {
    Scalar scalar;
    std::uint32_t mask = 0;

    friend bool operator==(const LoopElement&, const LoopElement&) = default;
};

/// The n-fold Cayley-Dickson loop (g_1, ..., g_n)_Z.
///
/// Multiplication of monomials reduces to a scalar "twist":
///   b(e) * b(f) = twist(e, f) * b(e ^ f)
/// obtained by unrolling the doubling law on the top generator. For n up to
/// kMemoMaxN the full twist table is filled at construction, so the object
/// is immutable and freely shareable across threads afterwards.
class CDLoop {
public:
    static constexpr unsigned kMaxN = 16;
    static constexpr unsigned kMemoMaxN = 8;

    CDLoop(ScalarGroup z, std::vector<Scalar> gammas);

    /// Convenience: gammas given as "+1"/"-1"/exponent strings.
    static CDLoop parse(ScalarGroup z, std::string_view gamma_list);

    const ScalarGroup& z() const noexcept { return z_; }
    unsigned n() const noexcept { return static_cast<unsigned>(gammas_.size()); }
    std::span<const Scalar> gammas() const noexcept { return gammas_; }

    /// 2^n * |Z|.
    std::uint64_t order() const noexcept { return (std::uint64_t{1} << n()) * z_.order(); }
    std::uint32_t mask_count() const noexcept { return std::uint32_t{1} << n(); }

    Scalar twist(std::uint32_t e, std::uint32_t f) const;
    /// twist() as a bare exponent; no validation, for inner loops.
    std::uint32_t twist_exponent(std::uint32_t e, std::uint32_t f) const noexcept;

    LoopElement identity() const noexcept { return {z_.one(), 0}; }
    /// The generator l_i, 1-based.
    LoopElement generator(unsigned i) const;
    LoopElement scalar_element(const Scalar& s) const;
    LoopElement element(const Scalar& s, std::uint32_t mask) const;

    bool contains(const LoopElement& x) const noexcept {
        return z_.contains(x.scalar) && x.mask < mask_count();
    }

    LoopElement mul(const LoopElement& x, const LoopElement& y) const;
    /// The involution; scalar elements are fixed, every other monomial changes sign.
    LoopElement conj(const LoopElement& x) const;
    LoopElement inv(const LoopElement& x) const;
    /// (xy) * inv(yx); always a scalar element equal to 1 or -1.
    LoopElement commutator(const LoopElement& x, const LoopElement& y) const;
    /// ((xy)z) * inv(x(yz)); always 1 or -1.
    LoopElement associator(const LoopElement& x, const LoopElement& y, const LoopElement& z) const;

    /// Scalar-major, then mask. Element with scalar exponent s and mask e sits
    /// at index s * 2^n + e.
    std::vector<LoopElement> enumerate(const Budget& budget = default_budget()) const;
    std::uint64_t index_of(const LoopElement& x) const noexcept {
        return std::uint64_t{x.scalar.exponent} * mask_count() + x.mask;
    }
    LoopElement at(std::uint64_t index) const;

    bool operator==(const CDLoop& other) const noexcept {
        return z_ == other.z_ && gammas_ == other.gammas_;
    }

private:
    std::uint32_t twist_recursive(std::uint32_t e, std::uint32_t f, unsigned level) const noexcept;
    void check(const LoopElement& x) const;

    ScalarGroup z_;
    std::vector<Scalar> gammas_;
    std::vector<std::uint32_t> memo_;  // row-major 2^n x 2^n, empty when n > kMemoMaxN
};

}  // namespace cdl
