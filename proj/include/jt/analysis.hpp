/**
 * @file analysis.hpp
 * @brief Generation, Jonsson-window and non-isomorphism analyses of layered
 * algebras.
 *
 * Everything here works on a finite window of the algebra: the elements
 * w*b + n with b <= max_block and n < width. Closures are infinite in
 * general, so every search carries a budget and reports when it ran out.
 */
#pragma once

#include "jt/algebra.hpp"
#include "jt/errors.hpp"
#include "jt/layers.hpp"
#include "jt/ordinal.hpp"
#include "jt/term.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace jt {

/// Elements w*b + n with b <= max_block and n < width.
struct Window
{
    Natural max_block = 0;
    Natural width = 0;

    /// "w*k+n" selects blocks 0..k with offsets below n.
    [[nodiscard]] static Window from_bound(const Ordinal& bound) { return {bound.block, bound.offset}; }

    [[nodiscard]] bool contains(const Ordinal& z) const { return z.block <= max_block && z.offset < width; }

    [[nodiscard]] std::vector<Ordinal> elements(Natural up_to_block) const
    {
        std::vector<Ordinal> out;
        for (Natural b = 0; b <= std::min(up_to_block, max_block); ++b) {
            for (Natural n = 0; n < width; ++n) {
                out.push_back({b, n});
            }
        }
        return out;
    }
    [[nodiscard]] std::vector<Ordinal> elements() const { return elements(max_block); }
};

inline constexpr std::size_t kDefaultClosureBudget = 1'000'000;
inline constexpr std::size_t kDefaultWordDepth = 10'000;

// ---------------------------------------------------------------------------
// Bounded closure
// ---------------------------------------------------------------------------

struct ClosureReport
{
    std::vector<Ordinal> requested;
    std::vector<Ordinal> found;    ///< sorted, inside the window
    std::size_t frontier_size = 0; ///< generated elements outside the window
    std::vector<Ordinal> frontier_sample;
    std::size_t generated = 0;
    bool saturated = false;
    bool budget_exhausted = false;
    /// Smallest limit w*k above every requested element, when one is >= w.
    std::optional<Ordinal> predicted;

    [[nodiscard]] std::string predicted_text() const
    {
        return predicted ? format_ordinal(*predicted) : std::string("within base");
    }
    [[nodiscard]] bool contains(const Ordinal& z) const { return std::binary_search(found.begin(), found.end(), z); }
};

[[nodiscard]] inline Natural default_explore_limit(const Window& w)
{
    return 8 * (w.width + 1) * std::max<Natural>(w.max_block, 1) + 16;
}

/// Breadth-first closure of S under mul, left and right.
///
/// left/right are applied to every generated element with offset up to
/// `explore_limit`; mul is applied to every pair of generated window
/// elements. Elements outside the window are counted in the frontier.
/// Saturated means no further window element can appear: the search drained,
/// or every window element below the predicted limit has been found.
[[nodiscard]] inline ClosureReport closure_bounded(const JtAlgebra& alg, const std::vector<Ordinal>& S,
                                                   const Window& window,
                                                   std::size_t budget = kDefaultClosureBudget,
                                                   std::optional<Natural> explore_limit = std::nullopt)
{
    ClosureReport rep;
    rep.requested = S;
    const Natural explore = explore_limit.value_or(default_explore_limit(window));
    for (const auto& s : S) {
        if (!alg.within_horizon(s)) {
            throw BeyondHorizon("closure: " + format_ordinal(s) + " is beyond the horizon");
        }
    }
    if (!S.empty()) {
        const Ordinal top = *std::max_element(S.begin(), S.end());
        if (top.block >= 1) {
            rep.predicted = limit_of(top.block + 1);
        }
    }
    std::size_t target = 0;
    if (rep.predicted) {
        target = window.elements(rep.predicted->block - 1).size();
    }

    std::unordered_set<Ordinal, OrdinalHash> seen;
    std::set<Ordinal> frontier_sample;
    std::deque<Ordinal> queue;
    std::vector<Ordinal> found;
    std::vector<Ordinal> processed;

    auto add = [&](const Ordinal& z) {
        if (!seen.insert(z).second) {
            return;
        }
        ++rep.generated;
        if (window.contains(z)) {
            found.push_back(z);
        } else {
            ++rep.frontier_size;
            frontier_sample.insert(z);
            if (frontier_sample.size() > 16) {
                frontier_sample.erase(std::prev(frontier_sample.end()));
            }
        }
        if (z.offset <= explore) {
            queue.push_back(z);
        }
    };
    auto done = [&] {
        if (rep.predicted && found.size() >= target) {
            rep.saturated = true;
            return true;
        }
        if (rep.generated >= budget) {
            rep.budget_exhausted = true;
            return true;
        }
        return false;
    };

    for (const auto& s : S) {
        add(s);
    }
    while (!queue.empty() && !done()) {
        const Ordinal z = queue.front();
        queue.pop_front();
        add(alg.left(z));
        add(alg.right(z));
        if (window.contains(z)) {
            processed.push_back(z);
            for (const auto& x : processed) {
                try {
                    add(alg.mul(z, x));
                    add(alg.mul(x, z));
                } catch (const BeyondHorizon&) {
                    // product past the representable range: not a window element
                }
                if (done()) {
                    break;
                }
            }
        }
    }
    if (queue.empty() && !rep.budget_exhausted) {
        rep.saturated = true;
    }
    std::sort(found.begin(), found.end());
    rep.found = std::move(found);
    rep.frontier_sample.assign(frontier_sample.begin(), frontier_sample.end());
    return rep;
}

// ---------------------------------------------------------------------------
// Unary generator words
// ---------------------------------------------------------------------------

struct GeneratorWord
{
    UnaryWord word;             ///< outermost symbol first
    Ordinal from;
    Ordinal to;
    std::vector<Ordinal> trace; ///< from, then the value after each applied symbol
    bool from_pattern = false;  ///< produced by the layer pattern, not by search
};

namespace detail {

inline GeneratorWord word_from_steps(const Ordinal& from, const Ordinal& to, const std::string& steps,
                                     const JtAlgebra& alg)
{
    GeneratorWord g{{}, from, to, {from}, false};
    Ordinal cur = from;
    for (char s : steps) {
        cur = (s == 'l') ? alg.left(cur) : alg.right(cur);
        g.trace.push_back(cur);
    }
    g.word.assign(steps.rbegin(), steps.rend());
    return g;
}

} // namespace detail

/// Steps (in application order) that take w*c + n down to w*c in a type A
/// layer: odd elements move to the top of their L-region, lambda+2k with k
/// even >= 2 takes one left, odd k takes right then left. Type B swaps the
/// two symbols.
[[nodiscard]] inline std::string layer_descent_steps(Natural c, Letter letter, Natural n)
{
    std::string steps;
    const char l = letter == Letter::A ? 'l' : 'r';
    const char r = letter == Letter::A ? 'r' : 'l';
    while (n != 0) {
        if (n % 2 == 1) {
            const Cell cell = detail::cell_a(c, n);
            // exactly one coordinate is the region top lambda+m
            if (cell.x.block == c && cell.x >= cell.y) {
                steps.push_back(l);
                n = cell.x.offset;
            } else {
                steps.push_back(r);
                n = cell.y.offset;
            }
            continue;
        }
        const Natural k = n / 2;
        if (k % 2 == 1) {
            steps.push_back(r);
            n += 2;
        }
        steps.push_back(l);
        n = 0;
    }
    return steps;
}

/// Shortest word over {l, r} taking `from` to `to`, by breadth-first search
/// with the given depth and node budget. If the search fails and `to` is the
/// limit below `from` in a layered algebra, the layer pattern is returned.
[[nodiscard]] inline GeneratorWord generator_word(const JtAlgebra& alg, const Ordinal& from, const Ordinal& to,
                                                  std::size_t max_depth = kDefaultWordDepth,
                                                  std::size_t node_budget = kDefaultClosureBudget)
{
    if (!alg.within_horizon(from) || !alg.within_horizon(to)) {
        throw BeyondHorizon("generator_word: endpoint beyond the horizon");
    }
    std::unordered_map<Ordinal, std::pair<Ordinal, char>, OrdinalHash> parent;
    std::vector<Ordinal> layer{from};
    parent.emplace(from, std::make_pair(from, '\0'));
    bool hit = (from == to);
    for (std::size_t depth = 0; !hit && depth < max_depth && !layer.empty() && parent.size() < node_budget; ++depth) {
        std::vector<Ordinal> next;
        for (const auto& z : layer) {
            for (char s : {'l', 'r'}) {
                const Ordinal w = (s == 'l') ? alg.left(z) : alg.right(z);
                if (parent.emplace(w, std::make_pair(z, s)).second) {
                    if (w == to) {
                        hit = true;
                        break;
                    }
                    next.push_back(w);
                }
            }
            if (hit) {
                break;
            }
        }
        layer = std::move(next);
    }
    if (hit) {
        std::string steps;
        for (Ordinal cur = to; cur != from;) {
            const auto& [prev, s] = parent.at(cur);
            steps.push_back(s);
            cur = prev;
        }
        std::reverse(steps.begin(), steps.end());
        return detail::word_from_steps(from, to, steps, alg);
    }
    if (const auto* layered = dynamic_cast<const LayeredAlgebra*>(&alg);
        layered && from.block >= 1 && to == limit_of(from.block)) {
        auto g = detail::word_from_steps(from, to, layer_descent_steps(from.block, layered->sigma().layer(from.block), from.offset), alg);
        g.from_pattern = true;
        return g;
    }
    throw NotFound("no unary word from " + format_ordinal(from) + " to " + format_ordinal(to) + " within budget");
}

// ---------------------------------------------------------------------------
// Coverage by l(r^n(g)) / r(l^n(g))
// ---------------------------------------------------------------------------

enum class CoverageMode { A, B };

struct CoverageReport
{
    Ordinal g;
    CoverageMode mode = CoverageMode::A;
    Natural nmax = 0;
    std::map<Ordinal, Natural> first_hit; ///< window element -> least n producing it
    std::vector<Ordinal> missing;         ///< window elements below the next limit never produced
    Ordinal largest;                      ///< largest value produced at any n <= nmax

    [[nodiscard]] bool complete() const { return missing.empty(); }
};

/// {l(r^n(g)) : n <= nmax} (mode A) or {r(l^n(g)) : n <= nmax} (mode B),
/// restricted to the window.
[[nodiscard]] inline CoverageReport coverage_check(const JtAlgebra& alg, const Ordinal& g, CoverageMode mode,
                                                   const Window& window, Natural nmax)
{
    if (!alg.within_horizon(g)) {
        throw BeyondHorizon("coverage: " + format_ordinal(g) + " is beyond the horizon");
    }
    CoverageReport rep{g, mode, nmax, {}, {}, {}};
    Ordinal walk = g;
    for (Natural n = 0; n <= nmax; ++n) {
        const Ordinal x = (mode == CoverageMode::A) ? alg.left(walk) : alg.right(walk);
        rep.largest = (n == 0) ? x : std::max(rep.largest, x);
        if (window.contains(x)) {
            rep.first_hit.emplace(x, n);
        }
        walk = (mode == CoverageMode::A) ? alg.right(walk) : alg.left(walk);
    }
    for (const auto& z : window.elements(g.block)) {
        if (!rep.first_hit.contains(z)) {
            rep.missing.push_back(z);
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Type B generators
// ---------------------------------------------------------------------------

/// One refuted candidate g = lambda+m of a type A top layer.
struct DescentTrace
{
    Ordinal g;
    std::vector<Ordinal> descent; ///< g, l(g), l(l(g)), ... while above lambda
    Ordinal largest_right;        ///< max of r(l^n(g)) over n <= nmax
    Ordinal unreachable;          ///< g + 4, never of the form r(l^n(g))
    bool descent_decreasing = true;
    bool bound_holds = true;      ///< every r(l^n(g)) <= g + 2
};

struct TypeBCertificate
{
    enum class Kind { generator, refutation };
    Kind kind = Kind::generator;
    SigmaWord sigma;
    Natural top_layer = 0;
    std::optional<CoverageReport> coverage; ///< generator evidence
    std::vector<DescentTrace> candidates;   ///< refutation evidence

    /// Whether the evidence checks out: full coverage, or every bound holds.
    [[nodiscard]] bool verified() const
    {
        if (kind == Kind::generator) {
            return coverage && coverage->complete();
        }
        return std::all_of(candidates.begin(), candidates.end(),
                           [](const DescentTrace& d) { return d.descent_decreasing && d.bound_holds; });
    }
};

inline constexpr Natural kCoverageNmax = 600;

/// Top letter B: w*c is a type B generator; the window coverage of
/// r(l^n(w*c)) is attached. Top letter A: each candidate w*c + m with
/// m < window.width is refuted by its left-descent, which never climbs above
/// the candidate, so every r(l^n(g)) stays <= g + 2. Candidates below w*c lie
/// in the proper subalgebra w*c and need no trace.
[[nodiscard]] inline TypeBCertificate typeB_certificate(const LayeredAlgebra& alg, Natural width,
                                                        Natural nmax = kCoverageNmax)
{
    const Natural c = alg.sigma().size();
    if (c == 0) {
        throw NoLayers("type B certificates need at least one layer");
    }
    TypeBCertificate cert;
    cert.sigma = alg.sigma();
    cert.top_layer = c;
    const Ordinal lambda = limit_of(c);
    if (alg.sigma().layer(c) == Letter::B) {
        cert.kind = TypeBCertificate::Kind::generator;
        cert.coverage = coverage_check(alg, lambda, CoverageMode::B, Window{c, width}, nmax);
        return cert;
    }
    cert.kind = TypeBCertificate::Kind::refutation;
    for (Natural m = 0; m < width; ++m) {
        DescentTrace d;
        d.g = {c, m};
        d.unreachable = plus(d.g, 4);
        const Ordinal bound = plus(d.g, 2);
        Ordinal walk = d.g;
        for (Natural n = 0; n <= nmax; ++n) {
            if (walk.block == c) {
                if (!d.descent.empty() && !(walk < d.descent.back())) {
                    d.descent_decreasing = false;
                }
                d.descent.push_back(walk);
            }
            const Ordinal r = alg.right(walk);
            d.largest_right = (n == 0) ? r : std::max(d.largest_right, r);
            if (bound < r) {
                d.bound_holds = false;
            }
            walk = alg.left(walk);
        }
        cert.candidates.push_back(std::move(d));
    }
    return cert;
}

// ---------------------------------------------------------------------------
// Jonsson window check
// ---------------------------------------------------------------------------

struct JonssonEntry
{
    Ordinal alpha;
    bool ok = false;
    bool budget_exhausted = false;
    std::size_t generated = 0;
    std::vector<Ordinal> missing; ///< at most 16 shown
    std::size_t missing_count = 0;
};

struct JonssonReport
{
    Window window;
    std::vector<JonssonEntry> entries;

    [[nodiscard]] bool passed() const
    {
        return std::all_of(entries.begin(), entries.end(), [](const JonssonEntry& e) { return e.ok; });
    }
    [[nodiscard]] bool any_budget_exhausted() const
    {
        return std::any_of(entries.begin(), entries.end(), [](const JonssonEntry& e) { return e.budget_exhausted; });
    }
};

/// For every window element alpha >= w, the closure of {alpha} must contain
/// every window element below the next limit above alpha.
[[nodiscard]] inline JonssonReport jonsson_check(const JtAlgebra& alg, const Window& window,
                                                 std::size_t budget = kDefaultClosureBudget)
{
    JonssonReport rep{window, {}};
    for (Natural b = 1; b <= std::min(window.max_block, alg.max_block()); ++b) {
        for (Natural n = 0; n < window.width; ++n) {
            const Ordinal alpha{b, n};
            const ClosureReport cl = closure_bounded(alg, {alpha}, window, budget);
            JonssonEntry e{alpha, true, cl.budget_exhausted, cl.generated, {}, 0};
            for (const auto& beta : window.elements(b)) {
                if (!cl.contains(beta)) {
                    e.ok = false;
                    ++e.missing_count;
                    if (e.missing.size() < 16) {
                        e.missing.push_back(beta);
                    }
                }
            }
            rep.entries.push_back(std::move(e));
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Non-isomorphism certificates and the 0 -> AB, 1 -> B encoding
// ---------------------------------------------------------------------------

struct WordConstraints
{
    bool prefix_ok = false;                ///< begins A A B
    std::optional<std::size_t> aa_at;      ///< first AA in the tail (index into the word)
};

[[nodiscard]] inline WordConstraints check_word_constraints(const SigmaWord& w)
{
    WordConstraints out;
    out.prefix_ok = w.size() >= 3 && w[0] == Letter::A && w[1] == Letter::A && w[2] == Letter::B;
    for (std::size_t i = 3; i + 1 < w.size(); ++i) {
        if (w[i] == Letter::A && w[i + 1] == Letter::A) {
            out.aa_at = i;
            break;
        }
    }
    return out;
}

struct NonIsoCertificate
{
    SigmaWord sigma1;
    SigmaWord sigma2;
    std::size_t first_difference = 0;
    Letter letter1 = Letter::A;
    Letter letter2 = Letter::A;
    WordConstraints constraints1;
    WordConstraints constraints2;
};

/// Both words must begin AAB, have no AA after the first three letters, and
/// differ at some index both of them define.
[[nodiscard]] inline NonIsoCertificate noniso_certificate(const SigmaWord& s1, const SigmaWord& s2)
{
    NonIsoCertificate cert{s1, s2, 0, Letter::A, Letter::A, check_word_constraints(s1), check_word_constraints(s2)};
    for (const auto* c : {&cert.constraints1, &cert.constraints2}) {
        const SigmaWord& w = (c == &cert.constraints1) ? s1 : s2;
        if (!c->prefix_ok) {
            std::size_t at = 0;
            const char want[] = {'A', 'A', 'B'};
            while (at < 3 && at < w.size() && to_char(w[at]) == want[at]) {
                ++at;
            }
            throw ConstraintViolation("prefix", at, "word '" + w.str() + "' must begin AAB");
        }
        if (c->aa_at) {
            throw ConstraintViolation("tail", *c->aa_at, "word '" + w.str() + "' has AA after its first three letters");
        }
    }
    const std::size_t common = std::min(s1.size(), s2.size());
    for (std::size_t i = 0; i < common; ++i) {
        if (s1[i] != s2[i]) {
            cert.first_difference = i;
            cert.letter1 = s1[i];
            cert.letter2 = s2[i];
            return cert;
        }
    }
    if (s1.size() == s2.size()) {
        throw ConstraintViolation("distinct", common, "words are equal");
    }
    throw ConstraintViolation("distinct", common, "one word is a prefix of the other; the letter at this index is not materialized");
}

/// "AAB" followed by 0 -> AB, 1 -> B.
[[nodiscard]] inline SigmaWord encode_delta(const std::vector<bool>& delta)
{
    std::vector<Letter> out{Letter::A, Letter::A, Letter::B};
    for (bool bit : delta) {
        if (!bit) {
            out.push_back(Letter::A);
        }
        out.push_back(Letter::B);
    }
    return SigmaWord(std::move(out));
}

[[nodiscard]] inline std::vector<bool> parse_bits(std::string_view text)
{
    std::vector<bool> out;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '0' && text[i] != '1') {
            throw ParseError("bits must be 0 or 1", i);
        }
        out.push_back(text[i] == '1');
    }
    return out;
}

} // namespace jt
