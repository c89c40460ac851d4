#include "cdl/cdloop.hpp"

#include <string>
#include <utility>

namespace cdl {

CDLoop::CDLoop(ScalarGroup z, std::vector<Scalar> gammas) : z_(z), gammas_(std::move(gammas)) {
    if (gammas_.size() > kMaxN) {
        throw ValidationError("at most " + std::to_string(kMaxN) + " doublings are supported, got " +
                              std::to_string(gammas_.size()));
    }
    for (std::size_t i = 0; i < gammas_.size(); ++i) {
        if (!z_.contains(gammas_[i])) {
            throw ValidationError("gamma_" + std::to_string(i + 1) + " is not in Z of order " +
                                  std::to_string(z_.order()));
        }
    }
    if (n() <= kMemoMaxN) {
        const std::uint32_t k = mask_count();
        memo_.resize(std::size_t{k} * k);
        for (std::uint32_t e = 0; e < k; ++e)
            for (std::uint32_t f = 0; f < k; ++f) memo_[std::size_t{e} * k + f] = twist_recursive(e, f, n());
    }
}

CDLoop CDLoop::parse(ScalarGroup z, std::string_view gamma_list) {
    std::vector<Scalar> gammas;
    while (!gamma_list.empty()) {
        auto comma = gamma_list.find(',');
        auto item = gamma_list.substr(0, comma);
        gammas.push_back(z.parse(item));
        if (comma == std::string_view::npos) break;
        gamma_list.remove_prefix(comma + 1);
        if (gamma_list.empty()) throw ValidationError("trailing comma in gamma list");
    }
    return CDLoop(z, std::move(gammas));
}

// Doubling law on monomials, top generator l_level:
//   e = (e', a), f = (f', b)
//   a=0 b=0: t'(e', f')            a=0 b=1: t'(f', e')
//   a=1 b=0: s(f') t'(e', f')      a=1 b=1: g_level s(f') t'(f', e')
// with s(x) = -1 for x != 0, the involution sign on a monomial.
std::uint32_t CDLoop::twist_recursive(std::uint32_t e, std::uint32_t f, unsigned level) const noexcept {
    const std::uint32_t order = z_.order();
    const std::uint32_t half = order / 2;
    std::uint32_t acc = 0;
    while (level > 0) {
        const std::uint32_t top = std::uint32_t{1} << (level - 1);
        const bool a = (e & top) != 0;
        const bool b = (f & top) != 0;
        e &= ~top;
        f &= ~top;
        if (a) {
            if (f != 0) acc += half;
            if (b) acc += gammas_[level - 1].exponent;
        }
        if (b) std::swap(e, f);
        acc %= order;
        --level;
    }
    return acc;
}

std::uint32_t CDLoop::twist_exponent(std::uint32_t e, std::uint32_t f) const noexcept {
    if (!memo_.empty()) return memo_[std::size_t{e} * mask_count() + f];
    return twist_recursive(e, f, n());
}

Scalar CDLoop::twist(std::uint32_t e, std::uint32_t f) const {
    if (e >= mask_count() || f >= mask_count()) {
        throw ValidationError("mask does not fit in " + std::to_string(n()) + " bits");
    }
    return {z_.order(), twist_exponent(e, f)};
}

LoopElement CDLoop::generator(unsigned i) const {
    if (i < 1 || i > n()) {
        throw ValidationError("generator index " + std::to_string(i) + " out of range 1.." +
                              std::to_string(n()));
    }
    return {z_.one(), std::uint32_t{1} << (i - 1)};
}

LoopElement CDLoop::scalar_element(const Scalar& s) const { return element(s, 0); }

LoopElement CDLoop::element(const Scalar& s, std::uint32_t mask) const {
    LoopElement x{s, mask};
    check(x);
    return x;
}

void CDLoop::check(const LoopElement& x) const {
    if (!contains(x)) {
        throw ValidationError("element (exp " + std::to_string(x.scalar.exponent) + ", mask " +
                              std::to_string(x.mask) + ") does not belong to this loop");
    }
}

LoopElement CDLoop::mul(const LoopElement& x, const LoopElement& y) const {
    check(x);
    check(y);
    const std::uint64_t e =
        std::uint64_t{x.scalar.exponent} + y.scalar.exponent + twist_exponent(x.mask, y.mask);
    return {{z_.order(), static_cast<std::uint32_t>(e % z_.order())}, x.mask ^ y.mask};
}

LoopElement CDLoop::conj(const LoopElement& x) const {
    check(x);
    if (x.mask == 0) return x;
    return {x.scalar * z_.minus_one(), x.mask};
}

LoopElement CDLoop::inv(const LoopElement& x) const {
    check(x);
    const Scalar sq{z_.order(), twist_exponent(x.mask, x.mask)};
    return {scalar_inv(x.scalar) * scalar_inv(sq), x.mask};
}

LoopElement CDLoop::commutator(const LoopElement& x, const LoopElement& y) const {
    return mul(mul(x, y), inv(mul(y, x)));
}

LoopElement CDLoop::associator(const LoopElement& x, const LoopElement& y, const LoopElement& z) const {
    return mul(mul(mul(x, y), z), inv(mul(x, mul(y, z))));
}

std::vector<LoopElement> CDLoop::enumerate(const Budget& budget) const {
    budget.require(order(), "enumerating a Cayley-Dickson loop");
    std::vector<LoopElement> out;
    out.reserve(order());
    for (std::uint32_t s = 0; s < z_.order(); ++s)
        for (std::uint32_t e = 0; e < mask_count(); ++e) out.push_back({{z_.order(), s}, e});
    return out;
}

LoopElement CDLoop::at(std::uint64_t index) const {
    if (index >= order()) throw ValidationError("element index out of range");
    return {{z_.order(), static_cast<std::uint32_t>(index / mask_count())},
            static_cast<std::uint32_t>(index % mask_count())};
}

}  // namespace cdl
