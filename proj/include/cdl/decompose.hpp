#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cdl/abstract_loop.hpp"

namespace cdl {

/// Parameters of a table recognised as a central product of n-fold CD loops.
struct ProductShape {
    unsigned m = 0;
    std::size_t z_size = 0;
    std::vector<Index> center;
};

/// One recovered factor: its element set inside the input (sorted) and the
/// induced table, where element k of `table` is `elements[k]`.
struct RecoveredFactor {
    std::vector<Index> elements;
    AbstractLoop table;
};

struct Decomposition {
    ProductShape shape;
    unsigned n = 0;
    std::vector<RecoveredFactor> factors;
    /// rank of every element of the input table
    std::vector<unsigned> ranks;
};

enum class PivotOrder { Ascending, Descending };

/// Needs n >= 3. m is log_{2^n}(N / |center|); non-integral m is rejected.
ProductShape infer_parameters(const AbstractLoop& loop, unsigned n);

/// The unique k <= m whose commutant density b_k(n) matches |C(x)| / N.
unsigned rank_of(const AbstractLoop& loop, Index x, unsigned n, unsigned m);

/// Recovers the m factor subloops. Each rank-1 pivot x yields the closure of
/// the center, x, and the rank-1 elements that do not commute with x; the
/// candidate must have 2^n |Z| elements. Throws DecompositionError otherwise.
Decomposition recover_factors(const AbstractLoop& loop, unsigned n,
                              PivotOrder order = PivotOrder::Ascending);

struct FactorMatch {
    /// sigma[j] = index of the factor of E matched with factor j of D
    std::optional<std::vector<unsigned>> sigma;
    /// isomorphic[j][k]: D_j is isomorphic to E_k
    std::vector<std::vector<bool>> isomorphic;
};

/// Perfect bipartite matching over pairwise isomorphism tests.
FactorMatch match_factors(std::span<const AbstractLoop> d, std::span<const AbstractLoop> e);
FactorMatch match_factors(const Decomposition& d, const Decomposition& e);

/// True when both pivot orders recover the same element-set partition.
bool partition_is_pivot_independent(const AbstractLoop& loop, unsigned n);

}  // namespace cdl
