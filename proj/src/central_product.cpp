#include "cdl/central_product.hpp"

#include <limits>
#include <string>
#include <utility>

namespace cdl {

namespace {

ScalarGroup first_z(const std::vector<CDLoop>& factors) {
    if (factors.empty()) throw ValidationError("a central product needs at least one factor");
    return factors.front().z();
}

}  // namespace

CentralProduct::CentralProduct(std::vector<CDLoop> factors)
    : z_(first_z(factors)), factors_(std::move(factors)), n_(factors_.front().n()) {
    for (std::size_t i = 1; i < factors_.size(); ++i) {
        if (!(factors_[i].z() == z_)) {
            throw ValidationError("factor " + std::to_string(i + 1) + " has |Z| = " +
                                  std::to_string(factors_[i].z().order()) + ", expected " +
                                  std::to_string(z_.order()));
        }
        if (factors_[i].n() != n_) {
            throw ValidationError("factor " + std::to_string(i + 1) + " is " +
                                  std::to_string(factors_[i].n()) + "-fold, expected " +
                                  std::to_string(n_) + "-fold");
        }
    }
}

CentralProduct CentralProduct::parse(ScalarGroup z, std::string_view factor_list) {
    std::vector<CDLoop> factors;
    while (true) {
        auto semi = factor_list.find(';');
        auto item = factor_list.substr(0, semi);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        factors.push_back(CDLoop::parse(z, item));
        if (semi == std::string_view::npos) break;
        factor_list.remove_prefix(semi + 1);
    }
    return CentralProduct(std::move(factors));
}

std::uint64_t CentralProduct::coset_count() const noexcept {
    const unsigned bits = m() * n_;
    if (bits >= 64) return std::numeric_limits<std::uint64_t>::max();
    return std::uint64_t{1} << bits;
}

std::uint64_t CentralProduct::order() const noexcept {
    const auto c = coset_count();
    if (c > std::numeric_limits<std::uint64_t>::max() / z_.order())
        return std::numeric_limits<std::uint64_t>::max();
    return c * z_.order();
}

ProductElement CentralProduct::identity() const { return {z_.one(), std::vector<std::uint32_t>(m(), 0)}; }

ProductElement CentralProduct::scalar_element(const Scalar& s) const {
    if (!z_.contains(s)) throw ValidationError("scalar not in Z");
    return {s, std::vector<std::uint32_t>(m(), 0)};
}

ProductElement CentralProduct::embed(unsigned factor_index, const LoopElement& x) const {
    if (factor_index < 1 || factor_index > m()) {
        throw ValidationError("factor index " + std::to_string(factor_index) + " out of range 1.." +
                              std::to_string(m()));
    }
    if (!factors_[factor_index - 1].contains(x)) throw ValidationError("element not in factor");
    ProductElement out = identity();
    out.scalar = x.scalar;
    out.masks[factor_index - 1] = x.mask;
    return out;
}

bool CentralProduct::contains(const ProductElement& x) const noexcept {
    if (!z_.contains(x.scalar) || x.masks.size() != m()) return false;
    for (auto mask : x.masks)
        if (mask >= (std::uint32_t{1} << n_)) return false;
    return true;
}

void CentralProduct::check(const ProductElement& x) const {
    if (!contains(x)) throw ValidationError("element does not belong to this central product");
}

ProductElement CentralProduct::mul(const ProductElement& x, const ProductElement& y) const {
    check(x);
    check(y);
    ProductElement out{x.scalar * y.scalar, std::vector<std::uint32_t>(m())};
    std::uint64_t e = out.scalar.exponent;
    for (unsigned i = 0; i < m(); ++i) {
        e += factors_[i].twist_exponent(x.masks[i], y.masks[i]);
        out.masks[i] = x.masks[i] ^ y.masks[i];
    }
    out.scalar = z_.make(static_cast<std::int64_t>(e % z_.order()));
    return out;
}

ProductElement CentralProduct::inv(const ProductElement& x) const {
    check(x);
    std::uint64_t e = scalar_inv(x.scalar).exponent;
    for (unsigned i = 0; i < m(); ++i)
        e += z_.order() - factors_[i].twist_exponent(x.masks[i], x.masks[i]);
    return {z_.make(static_cast<std::int64_t>(e % z_.order())), x.masks};
}

ProductElement CentralProduct::commutator(const ProductElement& x, const ProductElement& y) const {
    return mul(mul(x, y), inv(mul(y, x)));
}

ProductElement CentralProduct::associator(const ProductElement& x, const ProductElement& y,
                                          const ProductElement& z) const {
    return mul(mul(mul(x, y), z), inv(mul(x, mul(y, z))));
}

unsigned CentralProduct::rank(const ProductElement& x) noexcept {
    unsigned r = 0;
    for (auto mask : x.masks) r += mask != 0;
    return r;
}

std::vector<ProductElement> CentralProduct::enumerate(const Budget& budget) const {
    if (m() * n_ > 63) throw BudgetExceeded("central product too large to enumerate");
    budget.require(order(), "enumerating a central product");
    std::vector<ProductElement> out;
    out.reserve(order());
    for (std::uint64_t i = 0; i < order(); ++i) out.push_back(at(i));
    return out;
}

std::uint64_t CentralProduct::pack(std::span<const std::uint32_t> masks) const {
    if (m() * n_ > 63) throw ValidationError("packed keys need m*n <= 63");
    std::uint64_t key = 0;
    for (unsigned i = 0; i < masks.size(); ++i) key |= std::uint64_t{masks[i]} << (i * n_);
    return key;
}

std::vector<std::uint32_t> CentralProduct::unpack(std::uint64_t key) const {
    std::vector<std::uint32_t> masks(m());
    const std::uint64_t low = (std::uint64_t{1} << n_) - 1;
    for (unsigned i = 0; i < m(); ++i) masks[i] = static_cast<std::uint32_t>((key >> (i * n_)) & low);
    return masks;
}

std::uint32_t CentralProduct::twist_exponent(std::uint64_t u, std::uint64_t v) const noexcept {
    const std::uint64_t low = (std::uint64_t{1} << n_) - 1;
    std::uint64_t e = 0;
    for (unsigned i = 0; i < m(); ++i) {
        const auto a = static_cast<std::uint32_t>((u >> (i * n_)) & low);
        const auto b = static_cast<std::uint32_t>((v >> (i * n_)) & low);
        e += factors_[i].twist_exponent(a, b);
    }
    return static_cast<std::uint32_t>(e % z_.order());
}

unsigned CentralProduct::packed_rank(std::uint64_t key) const noexcept {
    const std::uint64_t low = (std::uint64_t{1} << n_) - 1;
    unsigned r = 0;
    for (unsigned i = 0; i < m(); ++i) r += ((key >> (i * n_)) & low) != 0;
    return r;
}

std::uint64_t CentralProduct::index_of(const ProductElement& x) const {
    check(x);
    return std::uint64_t{x.scalar.exponent} * coset_count() + pack(x.masks);
}

ProductElement CentralProduct::at(std::uint64_t index) const {
    if (index >= order()) throw ValidationError("element index out of range");
    return {z_.make(static_cast<std::int64_t>(index / coset_count())), unpack(index % coset_count())};
}

}  // namespace cdl
