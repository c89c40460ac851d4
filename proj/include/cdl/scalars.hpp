#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace cdl {

/// Element of a finite cyclic group, stored as an exponent of a fixed
/// generator. The group order travels with the value so mixing groups is
/// detectable.
struct Scalar {
    std::uint32_t order = 2;
    std::uint32_t exponent = 0;

    friend bool operator==(const Scalar&, const Scalar&) = default;
};

/// The scalar group Z: cyclic of even order, with -1 at exponent order/2.
class ScalarGroup {
public:
    /// Rejects odd or nonpositive orders with ValidationError.
    explicit ScalarGroup(std::int64_t order);

    std::uint32_t order() const noexcept { return order_; }

    Scalar one() const noexcept { return {order_, 0}; }
    Scalar minus_one() const noexcept { return {order_, order_ / 2}; }

    /// Scalar with the given exponent, reduced mod order.
    Scalar make(std::int64_t exponent) const noexcept;

    bool contains(const Scalar& s) const noexcept {
        return s.order == order_ && s.exponent < order_;
    }

    /// All elements in exponent order.
    std::vector<Scalar> elements() const;

    /// Reads "+1", "-1" or a bare exponent. Throws ValidationError otherwise.
    Scalar parse(std::string_view text) const;

    friend bool operator==(const ScalarGroup&, const ScalarGroup&) = default;

private:
    std::uint32_t order_;
};

/// Throws ValidationError if a and b come from different groups.
Scalar scalar_mul(const Scalar& a, const Scalar& b);
Scalar scalar_inv(const Scalar& a) noexcept;

inline Scalar operator*(const Scalar& a, const Scalar& b) { return scalar_mul(a, b); }

inline bool is_one(const Scalar& s) noexcept { return s.exponent == 0; }
inline bool is_minus_one(const Scalar& s) noexcept { return s.exponent * 2 == s.order; }

}  // namespace cdl
