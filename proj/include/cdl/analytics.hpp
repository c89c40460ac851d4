#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cdl/abstract_loop.hpp"
#include "cdl/central_product.hpp"
#include "cdl/cdloop.hpp"
#include "cdl/rational.hpp"

namespace cdl {

enum class Method { Brute, Closed };
std::string to_string(Method m);

struct DegreeReport {
    Rational degree;
    /// Counts are zero for closed-form reports.
    std::uint64_t favorable = 0;
    std::uint64_t total = 0;
    Method method = Method::Closed;
    unsigned m = 1;
    unsigned n = 0;
    std::uint32_t z_order = 2;
};

/// counts[k] = number of elements of rank k, k = 0..m.
struct RankCensus {
    std::vector<std::uint64_t> counts;

    std::uint64_t total() const noexcept;
    friend bool operator==(const RankCensus&, const RankCensus&) = default;
};

// ---- commutants and ranks ---------------------------------------------------

/// {y : [x, y] = 1}, in enumeration order.
std::vector<ProductElement> commutant(const CentralProduct& a, const ProductElement& x,
                                      const Budget& budget = default_budget());

/// Commutant density of a rank-k element: 1/2 + 1/2 (2p - 1)^k, p = 2^{1-n}.
Rational b_k_closed(unsigned n, unsigned k);

RankCensus rank_census_brute(const CentralProduct& a, const Budget& budget = default_budget());
/// counts[k] = |Z| C(m, k) (2^n - 1)^k.
RankCensus rank_census_closed(unsigned m, unsigned n, std::uint32_t z_order);

// ---- commutativity degree ---------------------------------------------------

/// Exact fraction of commuting ordered pairs, counted over coset
/// representatives of A/Z and scaled by |Z|^2. `workers` > 1 splits the
/// first coordinate into contiguous blocks; the count does not depend on it.
DegreeReport commutativity_degree_brute(const CentralProduct& a, unsigned workers = 1,
                                        const Budget& budget = default_budget());

/// Sum over k of P(rank = k) * b_k.
Rational commutativity_degree_closed(unsigned m, unsigned n);

/// The two-factor formula 1 - 6/2^n + 22/4^n - 24/8^n + 8/16^n.
Rational commutativity_degree_two_factor_formula(unsigned n);

enum class LimitMode { GrowN, GrowM };

/// Closed-form commutativity degree with one parameter held at `fixed` and
/// the other running over [from, to].
std::vector<std::pair<unsigned, Rational>> pc_limit_table(LimitMode mode, unsigned fixed, unsigned from,
                                                          unsigned to);

// ---- associativity degree ---------------------------------------------------

/// True iff the subloop generated by x, y, z is associative.
bool generates_group(const CDLoop& loop, const LoopElement& x, const LoopElement& y, const LoopElement& z);

/// Fraction of ordered triples generating a group, over all |L|^3 triples.
/// Works for any gamma vector; closures are memoized per distinct subloop.
DegreeReport associativity_degree_brute(const CDLoop& loop, const Budget& budget = default_budget());

/// Same count on an arbitrary loop table (used to check relabeling invariance).
DegreeReport associativity_degree_brute(const AbstractLoop& loop, const Budget& budget = default_budget());

/// (7 * 4^n - 14 * 2^n + 8) / 8^n, stated for the all-(-1) loops.
Rational associativity_degree_closed(unsigned n);

/// Binomial coefficient as an exact integer.
BigInt binomial(unsigned m, unsigned k);

}  // namespace cdl
