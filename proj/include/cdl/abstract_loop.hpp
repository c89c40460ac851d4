#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "cdl/central_product.hpp"
#include "cdl/cdloop.hpp"

namespace cdl {

using Index = std::uint32_t;

/// A finite loop given only by its multiplication table.
///
/// The table is validated on construction: every row and column must be a
/// permutation of 0..N-1 and a two-sided identity must exist. Labels are kept
/// as given; the identity is recorded, not moved to index 0.
class AbstractLoop {
public:
    /// Row-major table, entry i*N + j is the index of e_i * e_j.
    AbstractLoop(std::size_t size, std::vector<Index> table);

    std::size_t size() const noexcept { return size_; }
    Index identity() const noexcept { return identity_; }
    Index mul(Index a, Index b) const noexcept { return table_[std::size_t{a} * size_ + b]; }
    std::span<const Index> table() const noexcept { return table_; }

    /// The unique c with a = c * b.
    Index right_div(Index a, Index b) const;
    /// The unique c with c * (yx) = xy.
    Index commutator(Index x, Index y) const { return right_div(mul(x, y), mul(y, x)); }

    /// Smallest k >= 1 with x^k = identity, powers taken as x * x^{k-1}.
    std::size_t element_order(Index x) const noexcept;
    /// |{y : xy = yx}|.
    std::size_t commutant_size(Index x) const noexcept;
    std::vector<Index> commutant(Index x) const;

    /// Table of the loop relabeled by `perm`: element i becomes perm[i].
    AbstractLoop relabeled(std::span<const Index> perm) const;
    /// Induced table on a closed subset; element k of the result is subset[k].
    AbstractLoop restricted(std::span<const Index> subset) const;

    bool operator==(const AbstractLoop& other) const noexcept {
        return size_ == other.size_ && table_ == other.table_;
    }

private:
    std::size_t size_;
    std::vector<Index> table_;
    Index identity_ = 0;
    mutable std::vector<Index> rdiv_;  // lazily built; entry b*N + a
};

/// Table over the deterministic enumeration order of the loop or product.
AbstractLoop to_table(const CDLoop& loop, const Budget& budget = default_budget());
AbstractLoop to_table(const CentralProduct& product, const Budget& budget = default_budget());

/// Elements that commute with everything and associate in every position.
std::vector<Index> center(const AbstractLoop& loop);

/// Smallest subloop containing the seed and the identity, as a sorted list.
std::vector<Index> closure(const AbstractLoop& loop, std::span<const Index> seed);

/// True when (xy)z = x(yz) for all x, y, z in the given (closed) subset.
bool is_associative(const AbstractLoop& loop, std::span<const Index> subset);

/// Memoized closures: each distinct subloop gets an id, and extending a
/// subloop by one element is cached. Not thread-safe.
class SubloopCache {
public:
    explicit SubloopCache(const AbstractLoop& loop);

    using Id = std::uint32_t;
    Id trivial() const noexcept { return 0; }
    Id extend(Id subloop, Index x);
    bool associative(Id subloop);
    const std::vector<Index>& elements(Id subloop) const { return subloops_[subloop].elements; }
    std::size_t distinct() const noexcept { return subloops_.size(); }

private:
    struct Entry {
        std::vector<Index> elements;
        std::vector<std::uint64_t> bits;
        std::vector<std::int32_t> ext;  // per element, -1 = not computed
        int associative = -1;
    };
    struct BitsHash {
        std::size_t operator()(const std::vector<std::uint64_t>& v) const noexcept;
    };
    Id intern(std::vector<Index> elements);

    const AbstractLoop& loop_;
    std::vector<Entry> subloops_;
    std::unordered_map<std::vector<std::uint64_t>, Id, BitsHash> ids_;
};

/// An isomorphism L1 -> L2 as an index map.
struct IsoWitness {
    std::vector<Index> mapping;
    /// Maps center(L1) onto center(L2); true for any genuine isomorphism.
    bool preserves_center = false;
    /// mapping(c) == c for every c in center(L1). Meaningful only when both
    /// tables label Z the same way, e.g. both exported over the same Z.
    bool fixes_center_pointwise = false;
};

/// Largest N accepted by find_isomorphism.
inline constexpr std::size_t kIsoMaxSize = 256;

/// Invariant prefilter, then backtracking over images of a generating set.
/// Throws BudgetExceeded above `max_size` elements.
std::optional<IsoWitness> find_isomorphism(const AbstractLoop& a, const AbstractLoop& b,
                                           std::size_t max_size = kIsoMaxSize);

/// Full N^2 check that `mapping` is a bijective homomorphism a -> b.
bool is_isomorphism(const AbstractLoop& a, const AbstractLoop& b, std::span<const Index> mapping);

// "loop-table v1" text format.
void write_loop_table(std::ostream& os, const AbstractLoop& loop);
/// Throws ValidationError naming the offending line, row or column.
AbstractLoop read_loop_table(std::istream& is);
AbstractLoop read_loop_table_file(const std::string& path);
void write_loop_table_file(const std::string& path, const AbstractLoop& loop);

}  // namespace cdl
