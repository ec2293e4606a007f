/**
 * @file combinat.hpp
 * @brief Finite algebras, subalgebra lattices, set-mappings and free sets,
 * and the proper-subalgebra / union-cover pipelines on finite chains.
 */
#pragma once

#include "jt/errors.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace jt {

/// Subset of [0, 64) as a bit mask.
using Subset = std::uint64_t;

[[nodiscard]] inline Subset bit(std::size_t i) { return Subset{1} << i; }
[[nodiscard]] inline Subset full_set(std::size_t n) { return n >= 64 ? ~Subset{0} : bit(n) - 1; }
[[nodiscard]] inline bool has(Subset s, std::size_t i) { return (s >> i) & 1U; }
[[nodiscard]] inline std::size_t count(Subset s) { return static_cast<std::size_t>(std::popcount(s)); }
[[nodiscard]] inline bool subset_of(Subset a, Subset b) { return (a & ~b) == 0; }

[[nodiscard]] inline std::vector<std::size_t> members(Subset s)
{
    std::vector<std::size_t> out;
    while (s != 0) {
        out.push_back(static_cast<std::size_t>(std::countr_zero(s)));
        s &= s - 1;
    }
    return out;
}

[[nodiscard]] inline Subset make_subset(const std::vector<std::size_t>& xs)
{
    Subset s = 0;
    for (auto x : xs) {
        s |= bit(x);
    }
    return s;
}

[[nodiscard]] inline std::string show_subset(Subset s)
{
    std::string out = "{";
    bool first = true;
    for (auto x : members(s)) {
        out += (first ? "" : ",") + std::to_string(x);
        first = false;
    }
    return out + "}";
}

// ---------------------------------------------------------------------------
// Finite algebras
// ---------------------------------------------------------------------------

struct Operation
{
    std::size_t arity = 0;
    /// Row-major: the result for (a_1, ..., a_k) is at index sum a_i * size^(k-i).
    std::vector<std::uint32_t> table;
};

struct FinAlgebra
{
    inline static constexpr std::size_t kMaxSize = 64;

    std::size_t size = 0;
    std::vector<Operation> operations;

    /// Throws InvalidInput unless every table is total and in range.
    void validate() const
    {
        if (size > kMaxSize) {
            throw InvalidInput("finite algebras are limited to " + std::to_string(kMaxSize) + " elements");
        }
        for (std::size_t k = 0; k < operations.size(); ++k) {
            const auto& op = operations[k];
            std::size_t expect = 1;
            for (std::size_t a = 0; a < op.arity; ++a) {
                expect *= size;
            }
            if (op.table.size() != expect) {
                throw InvalidInput("operation " + std::to_string(k) + " has " + std::to_string(op.table.size()) +
                                   " entries, expected " + std::to_string(expect));
            }
            for (auto v : op.table) {
                if (v >= size) {
                    throw InvalidInput("operation " + std::to_string(k) + " value " + std::to_string(v) + " out of range");
                }
            }
        }
    }

    [[nodiscard]] Subset universe() const { return full_set(size); }
};

/// Unary algebra with the single operation i -> table[i].
[[nodiscard]] inline FinAlgebra unary_algebra(std::vector<std::uint32_t> table)
{
    FinAlgebra f{table.size(), {Operation{1, std::move(table)}}};
    f.validate();
    return f;
}

/// i -> max(i - 1, 0) on [0, n).
[[nodiscard]] inline FinAlgebra chain_unary_algebra(std::size_t n)
{
    std::vector<std::uint32_t> t(n);
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = static_cast<std::uint32_t>(i == 0 ? 0 : i - 1);
    }
    return unary_algebra(std::move(t));
}

/// Least subset containing S and closed under every operation.
[[nodiscard]] inline Subset fin_closure(const FinAlgebra& f, Subset S)
{
    Subset cur = S & f.universe();
    for (bool changed = true; changed;) {
        changed = false;
        const auto elems = members(cur);
        for (const auto& op : f.operations) {
            // enumerate all arity-tuples over cur
            std::vector<std::size_t> idx(op.arity, 0);
            if (op.arity > 0 && elems.empty()) {
                continue;
            }
            for (;;) {
                std::size_t pos = 0;
                for (std::size_t a = 0; a < op.arity; ++a) {
                    pos = pos * f.size + elems[idx[a]];
                }
                const Subset b = bit(op.table[pos]);
                if ((cur & b) == 0) {
                    cur |= b;
                    changed = true;
                }
                std::size_t a = op.arity;
                while (a > 0 && ++idx[a - 1] == elems.size()) {
                    idx[--a] = 0;
                }
                if (a == 0) {
                    break;
                }
            }
        }
    }
    return cur;
}

inline constexpr std::size_t kMaxLatticeSize = 16;

/// Every closed subset, in lectic order (Ganter's NextClosure).
[[nodiscard]] inline std::vector<Subset> fin_subalgebras(const FinAlgebra& f)
{
    if (f.size > kMaxLatticeSize) {
        throw InvalidInput("subalgebra lattices are enumerated only up to " + std::to_string(kMaxLatticeSize) +
                           " elements");
    }
    const Subset J = f.universe();
    Subset a = fin_closure(f, 0);
    std::vector<Subset> out{a};
    while (a != J) {
        for (std::size_t i = f.size; i-- > 0;) {
            if (has(a, i)) {
                continue;
            }
            const Subset below = bit(i) - 1;
            const Subset b = fin_closure(f, (a & below) | bit(i));
            if ((b & below) == (a & below)) {
                a = b;
                out.push_back(a);
                break;
            }
        }
    }
    return out;
}

struct DistributivityResult
{
    bool distributive = true;
    std::optional<std::array<Subset, 3>> witness; ///< H, K, M with H^(KvM) != (H^K)v(H^M)
};

inline constexpr std::size_t kMaxDistributiveLattice = 512;

/// Checks H ^ (K v M) = (H ^ K) v (H ^ M) over all triples of closed sets,
/// where meet is intersection and join is the closure of the union.
[[nodiscard]] inline DistributivityResult distributive_check(const FinAlgebra& f, const std::vector<Subset>& lattice)
{
    const std::size_t n = lattice.size();
    if (n > kMaxDistributiveLattice) {
        throw InvalidInput("lattice has " + std::to_string(n) + " members; the triple sweep is limited to " +
                           std::to_string(kMaxDistributiveLattice));
    }
    std::map<Subset, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) {
        index.emplace(lattice[i], i);
    }
    std::vector<std::size_t> join(n * n);
    std::vector<std::size_t> meet(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            join[i * n + j] = index.at(fin_closure(f, lattice[i] | lattice[j]));
            meet[i * n + j] = index.at(lattice[i] & lattice[j]);
        }
    }
    for (std::size_t h = 0; h < n; ++h) {
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t m = 0; m < n; ++m) {
                const std::size_t lhs = meet[h * n + join[k * n + m]];
                const std::size_t rhs = join[meet[h * n + k] * n + meet[h * n + m]];
                if (lhs != rhs) {
                    return {false, std::array<Subset, 3>{lattice[h], lattice[k], lattice[m]}};
                }
            }
        }
    }
    return {true, std::nullopt};
}

[[nodiscard]] inline DistributivityResult distributive_check(const FinAlgebra& f)
{
    return distributive_check(f, fin_subalgebras(f));
}

/// <S> avoids B \ A, given closed A <= B and <s> avoiding B \ A for each s in S.
/// Throws PreconditionViolation naming the failed hypothesis.
[[nodiscard]] inline bool lemma_BminusA_check(const FinAlgebra& f, Subset A, Subset B, Subset S)
{
    if (fin_closure(f, A) != A) {
        throw PreconditionViolation("A = " + show_subset(A) + " is not closed");
    }
    if (fin_closure(f, B) != B) {
        throw PreconditionViolation("B = " + show_subset(B) + " is not closed");
    }
    if (!subset_of(A, B)) {
        throw PreconditionViolation("A is not contained in B");
    }
    const Subset gap = B & ~A;
    for (auto s : members(S)) {
        if ((fin_closure(f, bit(s)) & gap) != 0) {
            throw PreconditionViolation("<" + std::to_string(s) + "> meets B \\ A");
        }
    }
    return (fin_closure(f, S) & gap) == 0;
}

// ---------------------------------------------------------------------------
// Set-mappings and free sets
// ---------------------------------------------------------------------------

struct SetMapping
{
    std::size_t size = 0;
    std::vector<std::vector<std::size_t>> images;

    void validate() const
    {
        if (images.size() != size) {
            throw InvalidInput("set-mapping has " + std::to_string(images.size()) + " images for size " +
                               std::to_string(size));
        }
        for (std::size_t x = 0; x < size; ++x) {
            for (auto y : images[x]) {
                if (y >= size) {
                    throw InvalidInput("image of " + std::to_string(x) + " contains out-of-range " + std::to_string(y));
                }
                if (y == x) {
                    throw InvalidInput(std::to_string(x) + " lies in its own image");
                }
            }
        }
    }

    /// Symmetric conflict graph: a -- b iff a in f(b) or b in f(a).
    [[nodiscard]] std::vector<std::vector<bool>> conflicts() const
    {
        std::vector<std::vector<bool>> adj(size, std::vector<bool>(size, false));
        for (std::size_t x = 0; x < size; ++x) {
            for (auto y : images[x]) {
                adj[x][y] = adj[y][x] = true;
            }
        }
        return adj;
    }
};

[[nodiscard]] inline bool is_free(const SetMapping& f, const std::vector<std::size_t>& X)
{
    const std::set<std::size_t> in(X.begin(), X.end());
    for (auto b : X) {
        for (auto a : f.images.at(b)) {
            if (in.contains(a)) {
                return false;
            }
        }
    }
    return true;
}

inline constexpr std::size_t kMaxExactFree = 40;

namespace detail {

struct FreeSearch
{
    std::vector<Subset> nbr;
    Subset best = 0;
    std::size_t best_size = 0;

    void run(Subset chosen, Subset candidates)
    {
        // vertices with no remaining neighbours are always taken
        for (bool again = true; again;) {
            again = false;
            for (auto v : members(candidates)) {
                if ((nbr[v] & candidates) == 0) {
                    chosen |= bit(v);
                    candidates &= ~bit(v);
                    again = true;
                }
            }
        }
        if (candidates == 0) {
            if (count(chosen) > best_size) {
                best = chosen;
                best_size = count(chosen);
            }
            return;
        }
        if (count(chosen) + count(candidates) <= best_size) {
            return;
        }
        std::size_t pick = 0;
        std::size_t deg = 0;
        for (auto v : members(candidates)) {
            const std::size_t d = count(nbr[v] & candidates);
            if (d > deg) {
                deg = d;
                pick = v;
            }
        }
        run(chosen | bit(pick), candidates & ~bit(pick) & ~nbr[pick]);
        run(chosen, candidates & ~bit(pick));
    }
};

} // namespace detail

/// A maximum free set, by branch and bound on the conflict graph.
[[nodiscard]] inline std::vector<std::size_t> max_free(const SetMapping& f)
{
    f.validate();
    if (f.size > kMaxExactFree) {
        throw InvalidInput("exact free-set search is limited to " + std::to_string(kMaxExactFree) + " elements");
    }
    detail::FreeSearch search;
    search.nbr.assign(f.size, 0);
    const auto adj = f.conflicts();
    for (std::size_t a = 0; a < f.size; ++a) {
        for (std::size_t b = 0; b < f.size; ++b) {
            if (adj[a][b]) {
                search.nbr[a] |= bit(b);
            }
        }
    }
    search.run(0, full_set(f.size));
    return members(search.best);
}

/// A maximal free set: scan in ascending conflict degree (ties by index).
[[nodiscard]] inline std::vector<std::size_t> greedy_free(const SetMapping& f)
{
    f.validate();
    const auto adj = f.conflicts();
    std::vector<std::size_t> order(f.size);
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::size_t> deg(f.size, 0);
    for (std::size_t a = 0; a < f.size; ++a) {
        deg[a] = static_cast<std::size_t>(std::count(adj[a].begin(), adj[a].end(), true));
    }
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return deg[a] < deg[b]; });
    std::vector<std::size_t> out;
    for (auto v : order) {
        if (std::none_of(out.begin(), out.end(), [&](auto u) { return adj[u][v]; })) {
            out.push_back(v);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Greedy colouring of the conflict graph in index order; each colour class is free.
[[nodiscard]] inline std::vector<std::vector<std::size_t>> partition_free(const SetMapping& f)
{
    f.validate();
    const auto adj = f.conflicts();
    std::vector<std::size_t> colour(f.size, 0);
    std::vector<std::vector<std::size_t>> classes;
    for (std::size_t v = 0; v < f.size; ++v) {
        std::vector<bool> used(classes.size(), false);
        for (std::size_t u = 0; u < v; ++u) {
            if (adj[u][v]) {
                used[colour[u]] = true;
            }
        }
        std::size_t c = 0;
        while (c < used.size() && used[c]) {
            ++c;
        }
        if (c == classes.size()) {
            classes.emplace_back();
        }
        colour[v] = c;
        classes[c].push_back(v);
    }
    return classes;
}

// ---------------------------------------------------------------------------
// Chains of subalgebras and the two pipelines
// ---------------------------------------------------------------------------

/// J_0 < J_1 < ... < J_k = J, strictly increasing closed sets, with one
/// chosen element j_a in each gap J_{a+1} \ J_a.
struct SubChain
{
    FinAlgebra algebra;
    std::vector<Subset> chain;
    std::vector<std::size_t> enumeration;

    [[nodiscard]] std::size_t steps() const { return enumeration.size(); }
    [[nodiscard]] Subset gap(std::size_t a) const { return chain.at(a + 1) & ~chain.at(a); }

    void validate() const
    {
        algebra.validate();
        if (chain.empty() || chain.back() != algebra.universe()) {
            throw InvalidInput("chain must end at the whole algebra");
        }
        if (enumeration.size() + 1 != chain.size()) {
            throw InvalidInput("need exactly one chosen element per chain step");
        }
        for (std::size_t a = 0; a < chain.size(); ++a) {
            if (fin_closure(algebra, chain[a]) != chain[a]) {
                throw InvalidInput("chain member " + std::to_string(a) + " is not closed");
            }
            if (a > 0 && (!subset_of(chain[a - 1], chain[a]) || chain[a - 1] == chain[a])) {
                throw InvalidInput("chain is not strictly increasing at " + std::to_string(a));
            }
        }
        for (std::size_t a = 0; a < enumeration.size(); ++a) {
            if (!has(gap(a), enumeration[a])) {
                throw InvalidInput("chosen element " + std::to_string(enumeration[a]) + " is not in gap " +
                                   std::to_string(a));
            }
        }
    }
};

/// H_a = <j_0, ..., j_a> along the given order, keeping only the strict steps.
/// The element that caused each step is the chosen element of its gap.
[[nodiscard]] inline SubChain make_chain(const FinAlgebra& f, const std::vector<std::size_t>& order)
{
    SubChain sc{f, {fin_closure(f, 0)}, {}};
    Subset generators = 0;
    for (auto j : order) {
        if (j >= f.size) {
            throw InvalidInput("order mentions " + std::to_string(j) + " outside the algebra");
        }
        generators |= bit(j);
        const Subset h = fin_closure(f, generators);
        if (h != sc.chain.back()) {
            sc.chain.push_back(h);
            sc.enumeration.push_back(j);
        }
    }
    if (sc.chain.back() != f.universe()) {
        throw InvalidInput("order does not generate the whole algebra");
    }
    return sc;
}

/// f(a) = { b != a : <j_a> meets J_{b+1} \ J_b }.
[[nodiscard]] inline SetMapping build_setmap_from_chain(const SubChain& sc)
{
    sc.validate();
    SetMapping f{sc.steps(), std::vector<std::vector<std::size_t>>(sc.steps())};
    for (std::size_t a = 0; a < sc.steps(); ++a) {
        const Subset gen = fin_closure(sc.algebra, bit(sc.enumeration[a]));
        for (std::size_t b = 0; b < sc.steps(); ++b) {
            if (b != a && (gen & sc.gap(b)) != 0) {
                f.images[a].push_back(b);
            }
        }
    }
    return f;
}

struct ProperSubalgebraWitness
{
    SetMapping setmap;
    std::vector<std::size_t> free_set; ///< I
    std::size_t xi = 0;                ///< the dropped index, max of I
    Subset S = 0;                      ///< { j_a : a in I \ {xi} }
    Subset generated = 0;              ///< <S>
    bool proper = false;
    bool avoids_gap = false;           ///< <S> misses J_{xi+1} \ J_xi
};

inline void require_distributive(const FinAlgebra& f)
{
    if (f.size <= kMaxLatticeSize && !distributive_check(f).distributive) {
        throw PreconditionViolation("subalgebra lattice is not distributive");
    }
    if (f.size > kMaxLatticeSize) {
        throw InvalidInput("distributivity can only be established up to " + std::to_string(kMaxLatticeSize) +
                           " elements");
    }
}

/// Free set I of the chain's set-mapping, drop xi = max I, and generate from
/// the remaining chosen elements; the result misses the xi-th gap.
[[nodiscard]] inline ProperSubalgebraWitness proper_subalgebra_pipeline(const SubChain& sc)
{
    require_distributive(sc.algebra);
    ProperSubalgebraWitness w;
    w.setmap = build_setmap_from_chain(sc);
    if (sc.steps() == 0) {
        throw EmptyFreeSet("chain has no steps, so there are no indices to choose from");
    }
    w.free_set = w.setmap.size <= kMaxExactFree ? max_free(w.setmap) : greedy_free(w.setmap);
    if (w.free_set.empty()) {
        throw EmptyFreeSet("no free set found");
    }
    w.xi = w.free_set.back();
    for (auto a : w.free_set) {
        if (a != w.xi) {
            w.S |= bit(sc.enumeration[a]);
        }
    }
    w.generated = fin_closure(sc.algebra, w.S);
    w.proper = w.generated != sc.algebra.universe();
    w.avoids_gap = (w.generated & sc.gap(w.xi)) == 0;
    return w;
}

struct CoverMember
{
    std::size_t class_index = 0;
    std::vector<std::size_t> indices; ///< chain indices whose chosen elements generate it
    Subset generated = 0;
    bool proper = false;
    bool from_drop_tail = true;       ///< false for the singleton-class fallback <j_i>
};

struct UnionCover
{
    SetMapping setmap;
    std::vector<std::vector<std::size_t>> classes;
    std::vector<CoverMember> family;
    Subset covered = 0;
    bool covers = false;
    bool all_proper = false;
    /// Some class was finite in a way the infinite argument never meets:
    /// singleton classes, or elements outside every generated subalgebra.
    bool degenerate = false;
    Subset uncovered = 0;
};

/// Each free class {i_0 < ... < i_p} with p >= 1 contributes the drop-tail
/// sets { j_b : b in I \ {i_m : m > n} } for n < p, plus I \ {i_0} for the
/// last index. A singleton class {i} falls back to <j_i> when that is proper.
[[nodiscard]] inline UnionCover union_cover_pipeline(const SubChain& sc)
{
    if (sc.algebra.size <= 1) {
        throw PreconditionViolation("an algebra with at most one element has no cover by proper subalgebras");
    }
    require_distributive(sc.algebra);
    UnionCover u;
    u.setmap = build_setmap_from_chain(sc);
    u.classes = partition_free(u.setmap);
    const Subset J = sc.algebra.universe();
    auto emit = [&](std::size_t cls, std::vector<std::size_t> idx, bool drop_tail) {
        Subset s = 0;
        for (auto b : idx) {
            s |= bit(sc.enumeration[b]);
        }
        CoverMember m{cls, std::move(idx), fin_closure(sc.algebra, s), false, drop_tail};
        m.proper = m.generated != J;
        // a singleton fallback that generates J is no cover member at all
        if (m.proper || drop_tail) {
            u.family.push_back(std::move(m));
        }
    };
    for (std::size_t k = 0; k < u.classes.size(); ++k) {
        const auto& I = u.classes[k];
        if (I.size() == 1) {
            u.degenerate = true;
            emit(k, I, false);
            continue;
        }
        for (std::size_t n = 0; n + 1 < I.size(); ++n) {
            emit(k, std::vector<std::size_t>(I.begin(), I.begin() + static_cast<std::ptrdiff_t>(n) + 1), true);
        }
        emit(k, std::vector<std::size_t>(I.begin() + 1, I.end()), true);
    }
    u.all_proper = true;
    for (const auto& m : u.family) {
        if (m.proper) {
            u.covered |= m.generated;
        } else {
            u.all_proper = false;
        }
    }
    u.uncovered = J & ~u.covered;
    u.covers = u.uncovered == 0;
    if (!u.covers) {
        u.degenerate = true;
    }
    return u;
}

} // namespace jt
