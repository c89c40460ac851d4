#include "cdl/abstract_loop.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>

#include "cdl/error.hpp"

namespace cdl {

namespace {

// N^2 table entries; 4096 elements is already 64 MiB of uint32.
constexpr std::size_t kMaxTableSize = 4096;

void require_table_size(std::uint64_t n, const Budget& budget) {
    budget.require(n, "building a multiplication table");
    if (n > kMaxTableSize) {
        throw BudgetExceeded("multiplication tables are limited to " + std::to_string(kMaxTableSize) +
                             " elements, requested " + std::to_string(n));
    }
}

// Grows `members`/`in` (already closed) by the elements in `fresh` and
// everything they generate.
void close_over(const AbstractLoop& loop, std::vector<Index>& members, std::vector<char>& in,
                std::vector<Index> fresh) {
    std::vector<Index> work;
    for (Index x : fresh) {
        if (!in[x]) {
            in[x] = 1;
            members.push_back(x);
            work.push_back(x);
        }
    }
    std::size_t next = 0;
    while (next < work.size()) {
        const Index u = work[next++];
        // members grows while we iterate; products with later members are
        // handled when those are popped
        for (std::size_t k = 0; k < members.size(); ++k) {
            const Index v = members[k];
            for (Index w : {loop.mul(u, v), loop.mul(v, u)}) {
                if (!in[w]) {
                    in[w] = 1;
                    members.push_back(w);
                    work.push_back(w);
                }
            }
        }
    }
}

}  // namespace

AbstractLoop::AbstractLoop(std::size_t size, std::vector<Index> table)
    : size_(size), table_(std::move(table)) {
    if (size_ == 0) throw ValidationError("loop table must have at least one element");
    if (table_.size() != size_ * size_) {
        throw ValidationError("table has " + std::to_string(table_.size()) + " entries, expected " +
                              std::to_string(size_ * size_));
    }
    std::vector<std::size_t> seen(size_, 0);
    std::size_t stamp = 0;
    for (std::size_t i = 0; i < size_; ++i) {
        ++stamp;
        for (std::size_t j = 0; j < size_; ++j) {
            const Index v = table_[i * size_ + j];
            if (v >= size_) {
                throw ValidationError("row " + std::to_string(i) + ", column " + std::to_string(j) +
                                      ": entry " + std::to_string(v) + " out of range");
            }
            if (seen[v] == stamp) {
                throw ValidationError("row " + std::to_string(i) + " is not a permutation (entry " +
                                      std::to_string(v) + " repeats at column " + std::to_string(j) + ")");
            }
            seen[v] = stamp;
        }
    }
    std::fill(seen.begin(), seen.end(), 0);
    stamp = 0;
    for (std::size_t j = 0; j < size_; ++j) {
        ++stamp;
        for (std::size_t i = 0; i < size_; ++i) {
            const Index v = table_[i * size_ + j];
            if (seen[v] == stamp) {
                throw ValidationError("column " + std::to_string(j) + " is not a permutation (entry " +
                                      std::to_string(v) + " repeats at row " + std::to_string(i) + ")");
            }
            seen[v] = stamp;
        }
    }
    bool found = false;
    for (std::size_t e = 0; e < size_ && !found; ++e) {
        bool ok = true;
        for (std::size_t k = 0; k < size_ && ok; ++k)
            ok = table_[e * size_ + k] == k && table_[k * size_ + e] == k;
        if (ok) {
            identity_ = static_cast<Index>(e);
            found = true;
        }
    }
    if (!found) throw ValidationError("table has no two-sided identity element");
}

Index AbstractLoop::right_div(Index a, Index b) const {
    if (rdiv_.empty()) {
        std::vector<Index> r(size_ * size_);
        for (std::size_t i = 0; i < size_; ++i)
            for (std::size_t j = 0; j < size_; ++j) r[j * size_ + table_[i * size_ + j]] = static_cast<Index>(i);
        rdiv_ = std::move(r);
    }
    return rdiv_[std::size_t{b} * size_ + a];
}

std::size_t AbstractLoop::element_order(Index x) const noexcept {
    Index p = x;
    std::size_t k = 1;
    while (p != identity_ && k <= size_) {
        p = mul(x, p);
        ++k;
    }
    return k;
}

std::size_t AbstractLoop::commutant_size(Index x) const noexcept {
    std::size_t c = 0;
    for (Index y = 0; y < size_; ++y) c += mul(x, y) == mul(y, x);
    return c;
}

std::vector<Index> AbstractLoop::commutant(Index x) const {
    std::vector<Index> out;
    for (Index y = 0; y < size_; ++y)
        if (mul(x, y) == mul(y, x)) out.push_back(y);
    return out;
}

AbstractLoop AbstractLoop::relabeled(std::span<const Index> perm) const {
    if (perm.size() != size_) throw ValidationError("relabeling has wrong length");
    std::vector<Index> t(size_ * size_);
    for (std::size_t i = 0; i < size_; ++i)
        for (std::size_t j = 0; j < size_; ++j) t[std::size_t{perm[i]} * size_ + perm[j]] = perm[mul(i, j)];
    return AbstractLoop(size_, std::move(t));
}

AbstractLoop AbstractLoop::restricted(std::span<const Index> subset) const {
    std::vector<std::int64_t> pos(size_, -1);
    for (std::size_t k = 0; k < subset.size(); ++k) pos[subset[k]] = static_cast<std::int64_t>(k);
    const std::size_t s = subset.size();
    std::vector<Index> t(s * s);
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j < s; ++j) {
            const auto p = pos[mul(subset[i], subset[j])];
            if (p < 0) throw ValidationError("subset is not closed under multiplication");
            t[i * s + j] = static_cast<Index>(p);
        }
    }
    return AbstractLoop(s, std::move(t));
}

AbstractLoop to_table(const CDLoop& loop, const Budget& budget) {
    require_table_size(loop.order(), budget);
    const std::size_t n = loop.order();
    const std::uint32_t masks = loop.mask_count();
    const std::uint32_t zo = loop.z().order();
    std::vector<Index> t(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto si = static_cast<std::uint32_t>(i / masks), ei = static_cast<std::uint32_t>(i % masks);
        for (std::size_t j = 0; j < n; ++j) {
            const auto sj = static_cast<std::uint32_t>(j / masks), ej = static_cast<std::uint32_t>(j % masks);
            const std::uint32_t s = (si + sj + loop.twist_exponent(ei, ej)) % zo;
            t[i * n + j] = s * masks + (ei ^ ej);
        }
    }
    return AbstractLoop(n, std::move(t));
}

AbstractLoop to_table(const CentralProduct& product, const Budget& budget) {
    require_table_size(product.order(), budget);
    const std::size_t n = product.order();
    const std::uint64_t cosets = product.coset_count();
    const std::uint32_t zo = product.z().order();
    std::vector<Index> t(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto si = i / cosets, ui = i % cosets;
        for (std::size_t j = 0; j < n; ++j) {
            const auto sj = j / cosets, uj = j % cosets;
            const auto s = (si + sj + product.twist_exponent(ui, uj)) % zo;
            t[i * n + j] = static_cast<Index>(s * cosets + (ui ^ uj));
        }
    }
    return AbstractLoop(n, std::move(t));
}

std::vector<Index> center(const AbstractLoop& loop) {
    const auto n = static_cast<Index>(loop.size());
    std::vector<Index> out;
    for (Index x = 0; x < n; ++x) {
        if (loop.commutant_size(x) != n) continue;
        bool ok = true;
        for (Index y = 0; y < n && ok; ++y) {
            for (Index z = 0; z < n && ok; ++z) {
                ok = loop.mul(loop.mul(x, y), z) == loop.mul(x, loop.mul(y, z)) &&
                     loop.mul(loop.mul(y, x), z) == loop.mul(y, loop.mul(x, z)) &&
                     loop.mul(loop.mul(y, z), x) == loop.mul(y, loop.mul(z, x));
            }
        }
        if (ok) out.push_back(x);
    }
    return out;
}

std::vector<Index> closure(const AbstractLoop& loop, std::span<const Index> seed) {
    for (Index x : seed)
        if (x >= loop.size()) throw ValidationError("seed index out of range");
    std::vector<Index> members;
    std::vector<char> in(loop.size(), 0);
    std::vector<Index> fresh(seed.begin(), seed.end());
    fresh.push_back(loop.identity());
    close_over(loop, members, in, std::move(fresh));
    std::sort(members.begin(), members.end());
    return members;
}

bool is_associative(const AbstractLoop& loop, std::span<const Index> subset) {
    for (Index x : subset)
        for (Index y : subset) {
            const Index xy = loop.mul(x, y);
            for (Index z : subset)
                if (loop.mul(xy, z) != loop.mul(x, loop.mul(y, z))) return false;
        }
    return true;
}

// ---- SubloopCache ----------------------------------------------------------

std::size_t SubloopCache::BitsHash::operator()(const std::vector<std::uint64_t>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto w : v) h = (h ^ std::hash<std::uint64_t>{}(w)) * 1099511628211ull;
    return h;
}

SubloopCache::SubloopCache(const AbstractLoop& loop) : loop_(loop) {
    intern({loop.identity()});
}

SubloopCache::Id SubloopCache::intern(std::vector<Index> elements) {
    std::sort(elements.begin(), elements.end());
    std::vector<std::uint64_t> bits((loop_.size() + 63) / 64, 0);
    for (Index x : elements) bits[x / 64] |= std::uint64_t{1} << (x % 64);
    if (auto it = ids_.find(bits); it != ids_.end()) return it->second;
    const auto id = static_cast<Id>(subloops_.size());
    ids_.emplace(bits, id);
    subloops_.push_back({std::move(elements), std::move(bits), std::vector<std::int32_t>(loop_.size(), -1), -1});
    return id;
}

SubloopCache::Id SubloopCache::extend(Id subloop, Index x) {
    {
        const Entry& e = subloops_[subloop];
        if (e.bits[x / 64] >> (x % 64) & 1) return subloop;
        if (e.ext[x] >= 0) return static_cast<Id>(e.ext[x]);
    }
    std::vector<Index> members = subloops_[subloop].elements;
    std::vector<char> in(loop_.size(), 0);
    for (Index m : members) in[m] = 1;
    close_over(loop_, members, in, {x});
    const Id id = intern(std::move(members));
    subloops_[subloop].ext[x] = static_cast<std::int32_t>(id);
    return id;
}

bool SubloopCache::associative(Id subloop) {
    Entry& e = subloops_[subloop];
    if (e.associative < 0) e.associative = is_associative(loop_, e.elements) ? 1 : 0;
    return e.associative == 1;
}

// ---- isomorphism -----------------------------------------------------------

namespace {

using Signature = std::tuple<std::size_t, std::size_t, std::size_t>;

std::vector<Signature> signatures(const AbstractLoop& loop) {
    const auto n = static_cast<Index>(loop.size());
    std::vector<Signature> sig(n);
    for (Index x = 0; x < n; ++x) {
        std::size_t nonassoc = 0;
        for (Index y = 0; y < n; ++y) {
            const Index xy = loop.mul(x, y);
            for (Index z = 0; z < n; ++z) nonassoc += loop.mul(xy, z) != loop.mul(x, loop.mul(y, z));
        }
        sig[x] = {loop.element_order(x), loop.commutant_size(x), nonassoc};
    }
    return sig;
}

struct PartialMap {
    std::vector<std::int64_t> fwd, bwd;
    std::vector<Index> done;  // mapped elements whose products have been propagated
};

class IsoSearch {
public:
    IsoSearch(const AbstractLoop& a, const AbstractLoop& b, std::vector<Signature> sa,
              std::vector<Signature> sb)
        : a_(a), b_(b), sa_(std::move(sa)), sb_(std::move(sb)) {}

    std::optional<std::vector<Index>> run() {
        choose_generators();
        PartialMap start{std::vector<std::int64_t>(a_.size(), -1), std::vector<std::int64_t>(a_.size(), -1), {}};
        if (!assign(start, a_.identity(), b_.identity())) return std::nullopt;
        return search(0, start);
    }

private:
    // Greedy: the generator added next is the element outside the current
    // subloop whose signature is rarest in `a`, ties broken by index.
    void choose_generators() {
        std::map<Signature, std::size_t> freq;
        for (const auto& s : sa_) ++freq[s];
        std::vector<Index> members;
        std::vector<char> in(a_.size(), 0);
        close_over(a_, members, in, {a_.identity()});
        while (members.size() < a_.size()) {
            Index best = 0;
            std::size_t best_freq = SIZE_MAX;
            for (Index x = 0; x < a_.size(); ++x) {
                if (in[x]) continue;
                const auto f = freq[sa_[x]];
                if (f < best_freq) {
                    best = x;
                    best_freq = f;
                }
            }
            gens_.push_back(best);
            close_over(a_, members, in, {best});
        }
    }

    bool assign(PartialMap& pm, Index x, Index y) {
        std::vector<std::pair<Index, Index>> queue{{x, y}};
        std::size_t head = 0;
        while (head < queue.size()) {
            auto [u, v] = queue[head++];
            if (pm.fwd[u] >= 0) {
                if (pm.fwd[u] != v) return false;
                continue;
            }
            if (pm.bwd[v] >= 0 || sa_[u] != sb_[v]) return false;
            pm.fwd[u] = v;
            pm.bwd[v] = u;
            pm.done.push_back(u);
            for (Index w : pm.done) {
                const auto fw = static_cast<Index>(pm.fwd[w]);
                queue.emplace_back(a_.mul(u, w), b_.mul(v, fw));
                queue.emplace_back(a_.mul(w, u), b_.mul(fw, v));
            }
        }
        return true;
    }

    std::optional<std::vector<Index>> search(std::size_t level, const PartialMap& pm) {
        if (level == gens_.size()) {
            std::vector<Index> mapping(a_.size());
            for (std::size_t i = 0; i < a_.size(); ++i) {
                if (pm.fwd[i] < 0) return std::nullopt;
                mapping[i] = static_cast<Index>(pm.fwd[i]);
            }
            return mapping;
        }
        const Index g = gens_[level];
        if (pm.fwd[g] >= 0) return search(level + 1, pm);
        for (Index c = 0; c < b_.size(); ++c) {
            if (pm.bwd[c] >= 0 || sb_[c] != sa_[g]) continue;
            PartialMap next = pm;
            if (!assign(next, g, c)) continue;
            if (auto r = search(level + 1, next)) return r;
        }
        return std::nullopt;
    }

    const AbstractLoop& a_;
    const AbstractLoop& b_;
    std::vector<Signature> sa_, sb_;
    std::vector<Index> gens_;
};

}  // namespace

bool is_isomorphism(const AbstractLoop& a, const AbstractLoop& b, std::span<const Index> mapping) {
    if (a.size() != b.size() || mapping.size() != a.size()) return false;
    std::vector<char> hit(b.size(), 0);
    for (Index v : mapping) {
        if (v >= b.size() || hit[v]) return false;
        hit[v] = 1;
    }
    for (Index x = 0; x < a.size(); ++x)
        for (Index y = 0; y < a.size(); ++y)
            if (mapping[a.mul(x, y)] != b.mul(mapping[x], mapping[y])) return false;
    return true;
}

std::optional<IsoWitness> find_isomorphism(const AbstractLoop& a, const AbstractLoop& b, std::size_t max_size) {
    if (a.size() > max_size || b.size() > max_size) {
        throw BudgetExceeded("isomorphism search is limited to " + std::to_string(max_size) + " elements");
    }
    if (a.size() != b.size()) return std::nullopt;
    auto sa = signatures(a);
    auto sb = signatures(b);
    {
        auto ca = sa, cb = sb;
        std::sort(ca.begin(), ca.end());
        std::sort(cb.begin(), cb.end());
        if (ca != cb) return std::nullopt;
    }
    IsoSearch search(a, b, std::move(sa), std::move(sb));
    auto mapping = search.run();
    if (!mapping || !is_isomorphism(a, b, *mapping)) return std::nullopt;

    IsoWitness w;
    w.mapping = std::move(*mapping);
    const auto za = center(a);
    auto zb = center(b);
    std::vector<Index> image;
    w.fixes_center_pointwise = true;
    for (Index c : za) {
        image.push_back(w.mapping[c]);
        w.fixes_center_pointwise = w.fixes_center_pointwise && w.mapping[c] == c;
    }
    std::sort(image.begin(), image.end());
    w.preserves_center = image == zb;
    return w;
}

// ---- loop-table v1 ---------------------------------------------------------

void write_loop_table(std::ostream& os, const AbstractLoop& loop) {
    const std::size_t n = loop.size();
    os << "loop-table v1 " << n << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j) os << ' ';
            os << loop.mul(static_cast<Index>(i), static_cast<Index>(j));
        }
        os << '\n';
    }
}

AbstractLoop read_loop_table(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ValidationError("loop-table: empty input");
    std::istringstream header(line);
    std::string magic, version;
    long long n = -1;
    header >> magic >> version >> n;
    std::string extra;
    if (magic != "loop-table" || version != "v1" || header.fail() || (header >> extra)) {
        throw ValidationError("loop-table: line 1 must be 'loop-table v1 N', got '" + line + "'");
    }
    if (n <= 0 || n > static_cast<long long>(kMaxTableSize)) {
        throw ValidationError("loop-table: size " + std::to_string(n) + " out of range 1.." +
                              std::to_string(kMaxTableSize));
    }
    const auto size = static_cast<std::size_t>(n);
    std::vector<Index> table;
    table.reserve(size * size);
    for (std::size_t row = 0; row < size; ++row) {
        if (!std::getline(is, line)) {
            throw ValidationError("loop-table: expected " + std::to_string(size) + " rows, found " +
                                  std::to_string(row));
        }
        std::istringstream ls(line);
        std::size_t count = 0;
        std::string tok;
        while (ls >> tok) {
            std::size_t pos = 0;
            unsigned long long v = 0;
            try {
                v = std::stoull(tok, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != tok.size() || tok.front() == '-') {
                throw ValidationError("loop-table: row " + std::to_string(row) + ", column " +
                                      std::to_string(count) + ": '" + tok + "' is not an index");
            }
            if (v >= size) {
                throw ValidationError("loop-table: row " + std::to_string(row) + ", column " +
                                      std::to_string(count) + ": index " + tok + " out of range");
            }
            table.push_back(static_cast<Index>(v));
            ++count;
        }
        if (count != size) {
            throw ValidationError("loop-table: row " + std::to_string(row) + " has " + std::to_string(count) +
                                  " entries, expected " + std::to_string(size));
        }
    }
    while (std::getline(is, line)) {
        if (line.find_first_not_of(" \t\r") != std::string::npos)
            throw ValidationError("loop-table: trailing data after row " + std::to_string(size - 1));
    }
    try {
        return AbstractLoop(size, std::move(table));
    } catch (const ValidationError& e) {
        throw ValidationError(std::string("loop-table: ") + e.what());
    }
}

AbstractLoop read_loop_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    return read_loop_table(in);
}

void write_loop_table_file(const std::string& path, const AbstractLoop& loop) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write '" + path + "'");
    write_loop_table(out, loop);
}

}  // namespace cdl
