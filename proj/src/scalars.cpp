#include "cdl/scalars.hpp"

#include <charconv>
#include <cstdlib>
#include <string>

#include "cdl/error.hpp"

namespace cdl {

void Budget::require(std::uint64_t count, const std::string& what) const {
    if (count > max_elements) {
        throw BudgetExceeded(what + " needs " + std::to_string(count) +
                             " elements, budget is " + std::to_string(max_elements));
    }
}

Budget default_budget() {
    Budget b;
    if (const char* env = std::getenv("CDL_MAX_ELEMENTS"); env != nullptr && *env != '\0') {
        std::uint64_t v = 0;
        std::string_view s(env);
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size() || v == 0) {
            throw ValidationError("CDL_MAX_ELEMENTS must be a positive integer, got '" +
                                  std::string(s) + "'");
        }
        b.max_elements = v;
    }
    return b;
}

ScalarGroup::ScalarGroup(std::int64_t order) {
    if (order < 2 || order % 2 != 0 || order > (std::int64_t{1} << 30)) {
        throw ValidationError("scalar group order must be even and >= 2, got " +
                              std::to_string(order));
    }
    order_ = static_cast<std::uint32_t>(order);
}

Scalar ScalarGroup::make(std::int64_t exponent) const noexcept {
    auto r = exponent % static_cast<std::int64_t>(order_);
    if (r < 0) r += order_;
    return {order_, static_cast<std::uint32_t>(r)};
}

std::vector<Scalar> ScalarGroup::elements() const {
    std::vector<Scalar> out;
    out.reserve(order_);
    for (std::uint32_t e = 0; e < order_; ++e) out.push_back({order_, e});
    return out;
}

Scalar ScalarGroup::parse(std::string_view text) const {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (text == "+1") return one();
    if (text == "-1") return minus_one();
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ValidationError("cannot read scalar '" + std::string(text) +
                              "' (expected +1, -1 or an exponent)");
    }
    if (v < 0 || v >= static_cast<std::int64_t>(order_)) {
        throw ValidationError("scalar exponent " + std::to_string(v) + " out of range for order " +
                              std::to_string(order_));
    }
    return make(v);
}

Scalar scalar_mul(const Scalar& a, const Scalar& b) {
    if (a.order != b.order) {
        throw ValidationError("scalars from groups of order " + std::to_string(a.order) +
                              " and " + std::to_string(b.order));
    }
    std::uint64_t e = std::uint64_t{a.exponent} + b.exponent;
    return {a.order, static_cast<std::uint32_t>(e % a.order)};
}

Scalar scalar_inv(const Scalar& a) noexcept {
    return {a.order, a.exponent == 0 ? 0u : a.order - a.exponent};
}

}  // namespace cdl
