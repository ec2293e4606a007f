/**
 * @file term.hpp
 * @brief Terms over one binary symbol (*) and two unary symbols (l, r).
 *
 * Normalization applies the three rewrite rules
 *
 *     l(X*Y) -> X        r(X*Y) -> Y        l(Z)*r(Z) -> Z
 *
 * innermost-first. Every rule shrinks the term, so normalization terminates,
 * and the only overlaps (l(l(Z)*r(Z)), r(l(Z)*r(Z)), l(X*Y)*r(X*Y)) are
 * joinable, so normal forms are unique.
 */
#pragma once

#include "jt/errors.hpp"

#include <algorithm>
#include <cctype>
#include <concepts>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace jt {

class Term
{
public:
    enum class Kind { var, mul, left, right };

    [[nodiscard]] static Term var(std::string name)
    {
        auto n = std::make_shared<Node>();
        n->kind = Kind::var;
        n->hash = std::hash<std::string>{}(name);
        n->name = std::move(name);
        return Term(std::move(n));
    }

    [[nodiscard]] static Term mul(Term a, Term b)
    {
        auto n = std::make_shared<Node>();
        n->kind = Kind::mul;
        n->size = 1 + a.size() + b.size();
        n->depth = 1 + std::max(a.depth(), b.depth());
        n->hash = mix(mix(0x6d756c, a.hash()), b.hash());
        n->a = std::move(a.node_);
        n->b = std::move(b.node_);
        return Term(std::move(n));
    }

    [[nodiscard]] static Term left(Term a) { return unary(Kind::left, std::move(a)); }
    [[nodiscard]] static Term right(Term a) { return unary(Kind::right, std::move(a)); }

    [[nodiscard]] Kind kind() const { return node_->kind; }
    [[nodiscard]] bool is_var() const { return kind() == Kind::var; }
    [[nodiscard]] bool is_mul() const { return kind() == Kind::mul; }
    [[nodiscard]] bool is_unary() const { return kind() == Kind::left || kind() == Kind::right; }

    [[nodiscard]] const std::string& name() const { return node_->name; }
    /// Left factor of a product, or the argument of a unary node.
    [[nodiscard]] Term lhs() const { return Term(node_->a); }
    [[nodiscard]] Term rhs() const { return Term(node_->b); }
    [[nodiscard]] Term arg() const { return Term(node_->a); }

    /// Node count.
    [[nodiscard]] std::size_t size() const { return node_->size; }
    [[nodiscard]] std::size_t depth() const { return node_->depth; }
    [[nodiscard]] std::size_t hash() const { return node_->hash; }

    friend bool operator==(const Term& x, const Term& y) { return equal(x.node_.get(), y.node_.get()); }

    /// Structural total order (size first); used for canonical containers.
    friend bool operator<(const Term& x, const Term& y) { return compare(x.node_.get(), y.node_.get()) < 0; }

private:
    struct Node
    {
        Kind kind = Kind::var;
        std::string name;
        std::shared_ptr<const Node> a;
        std::shared_ptr<const Node> b;
        std::size_t size = 1;
        std::size_t depth = 0;
        std::size_t hash = 0;
    };

    explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    static std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

    static Term unary(Kind k, Term a)
    {
        auto n = std::make_shared<Node>();
        n->kind = k;
        n->size = 1 + a.size();
        n->depth = 1 + a.depth();
        n->hash = mix(k == Kind::left ? 0x6c : 0x72, a.hash());
        n->a = std::move(a.node_);
        return Term(std::move(n));
    }

    static bool equal(const Node* x, const Node* y)
    {
        if (x == y) {
            return true;
        }
        if (x->hash != y->hash || x->kind != y->kind || x->size != y->size) {
            return false;
        }
        switch (x->kind) {
        case Kind::var: return x->name == y->name;
        case Kind::mul: return equal(x->a.get(), y->a.get()) && equal(x->b.get(), y->b.get());
        default: return equal(x->a.get(), y->a.get());
        }
    }

    static int compare(const Node* x, const Node* y)
    {
        if (x == y) {
            return 0;
        }
        if (x->size != y->size) {
            return x->size < y->size ? -1 : 1;
        }
        if (x->kind != y->kind) {
            return x->kind < y->kind ? -1 : 1;
        }
        switch (x->kind) {
        case Kind::var: return x->name.compare(y->name);
        case Kind::mul: {
            const int c = compare(x->a.get(), y->a.get());
            return c != 0 ? c : compare(x->b.get(), y->b.get());
        }
        default: return compare(x->a.get(), y->a.get());
        }
    }

    std::shared_ptr<const Node> node_;
};

struct TermHash
{
    std::size_t operator()(const Term& t) const noexcept { return t.hash(); }
};

// ---------------------------------------------------------------------------
// Printing and parsing
// ---------------------------------------------------------------------------

/// Fully parenthesized form; reparses to an equal term.
[[nodiscard]] inline std::string print_term(const Term& t)
{
    switch (t.kind()) {
    case Term::Kind::var: return t.name();
    case Term::Kind::left: return "l(" + print_term(t.arg()) + ")";
    case Term::Kind::right: return "r(" + print_term(t.arg()) + ")";
    case Term::Kind::mul: return "(" + print_term(t.lhs()) + "*" + print_term(t.rhs()) + ")";
    }
    return {};
}

namespace detail {

class TermParser
{
public:
    explicit TermParser(std::string_view text) : text_(text) {}

    Term parse()
    {
        Term t = product();
        skip_ws();
        if (pos_ != text_.size()) {
            throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
        }
        return t;
    }

private:
    Term product()
    {
        Term t = factor();
        for (;;) {
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == '*') {
                ++pos_;
                t = Term::mul(std::move(t), factor());
            } else {
                return t;
            }
        }
    }

    Term factor()
    {
        skip_ws();
        if (pos_ >= text_.size()) {
            throw ParseError("unexpected end of term", pos_);
        }
        const char ch = text_[pos_];
        if (ch == '(') {
            ++pos_;
            Term t = product();
            expect(')');
            return t;
        }
        if (is_ident_start(ch)) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && is_ident_char(text_[pos_])) {
                ++pos_;
            }
            std::string name(text_.substr(start, pos_ - start));
            const std::size_t after = pos_;
            skip_ws();
            if ((name == "l" || name == "r") && pos_ < text_.size() && text_[pos_] == '(') {
                ++pos_;
                Term inner = product();
                expect(')');
                return name == "l" ? Term::left(std::move(inner)) : Term::right(std::move(inner));
            }
            pos_ = after;
            return Term::var(std::move(name));
        }
        throw ParseError(std::string("unexpected '") + ch + "'", pos_);
    }

    void expect(char ch)
    {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != ch) {
            throw ParseError(std::string("expected '") + ch + "'", pos_);
        }
        ++pos_;
    }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    static bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    static bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Grammar: term := var | "l(" term ")" | "r(" term ")" | "(" term ")" | term "*" term,
/// with "*" left-associative.
[[nodiscard]] inline Term parse_term(std::string_view text)
{
    return detail::TermParser(text).parse();
}

// ---------------------------------------------------------------------------
// Normal forms
// ---------------------------------------------------------------------------

[[nodiscard]] inline Term normalize(const Term& t)
{
    switch (t.kind()) {
    case Term::Kind::var: return t;
    case Term::Kind::left:
    case Term::Kind::right: {
        Term a = normalize(t.arg());
        if (a.is_mul()) {
            return t.kind() == Term::Kind::left ? a.lhs() : a.rhs();
        }
        return t.kind() == Term::Kind::left ? Term::left(std::move(a)) : Term::right(std::move(a));
    }
    case Term::Kind::mul: {
        Term a = normalize(t.lhs());
        Term b = normalize(t.rhs());
        if (a.kind() == Term::Kind::left && b.kind() == Term::Kind::right && a.arg() == b.arg()) {
            return a.arg();
        }
        return Term::mul(std::move(a), std::move(b));
    }
    }
    return t;
}

[[nodiscard]] inline bool sigma_equiv(const Term& a, const Term& b)
{
    return normalize(a) == normalize(b);
}

/// Words over {l, r}, written outermost symbol first: "rl" denotes x |-> r(l(x)).
/// The empty word is the identity.
using UnaryWord = std::string;

[[nodiscard]] inline Term apply_word(const UnaryWord& w, Term t)
{
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        t = (*it == 'l') ? Term::left(std::move(t)) : Term::right(std::move(t));
    }
    return t;
}

/// Word as printed in reports; the identity word prints as "ε".
[[nodiscard]] inline std::string show_word(const UnaryWord& w)
{
    return w.empty() ? std::string("ε") : w;
}

[[nodiscard]] inline std::set<std::string> variables(const Term& t)
{
    std::set<std::string> out;
    std::vector<Term> stack{t};
    while (!stack.empty()) {
        Term cur = stack.back();
        stack.pop_back();
        if (cur.is_var()) {
            out.insert(cur.name());
        } else if (cur.is_mul()) {
            stack.push_back(cur.lhs());
            stack.push_back(cur.rhs());
        } else {
            stack.push_back(cur.arg());
        }
    }
    return out;
}

/// Replaces variables by terms; unmapped variables stay.
[[nodiscard]] inline Term substitute(const Term& t, const std::map<std::string, Term>& sigma)
{
    switch (t.kind()) {
    case Term::Kind::var: {
        auto it = sigma.find(t.name());
        return it == sigma.end() ? t : it->second;
    }
    case Term::Kind::left: return Term::left(substitute(t.arg(), sigma));
    case Term::Kind::right: return Term::right(substitute(t.arg(), sigma));
    case Term::Kind::mul: return Term::mul(substitute(t.lhs(), sigma), substitute(t.rhs(), sigma));
    }
    return t;
}

// ---------------------------------------------------------------------------
// m,u-terms
// ---------------------------------------------------------------------------

struct UnaryAtom
{
    UnaryWord word;
    std::string variable;

    [[nodiscard]] Term term() const { return apply_word(word, Term::var(variable)); }
    friend bool operator==(const UnaryAtom&, const UnaryAtom&) = default;
};

/// m(u_1(x_1), ..., u_k(x_k)): a purely multiplicative skeleton whose leaves
/// are the slot variables "#0", "#1", ... in left-to-right order.
struct MuDecomposition
{
    Term skeleton;
    std::vector<UnaryAtom> unaries;
};

[[nodiscard]] inline std::string slot_name(std::size_t i) { return "#" + std::to_string(i); }

namespace detail {

inline Term decompose(const Term& t, std::vector<UnaryAtom>& out)
{
    if (t.is_mul()) {
        Term a = decompose(t.lhs(), out);
        Term b = decompose(t.rhs(), out);
        return Term::mul(std::move(a), std::move(b));
    }
    UnaryWord word;
    Term cur = t;
    Term last_unary = t;
    while (cur.is_unary()) {
        word.push_back(cur.kind() == Term::Kind::left ? 'l' : 'r');
        last_unary = cur;
        cur = cur.arg();
    }
    if (cur.is_mul()) {
        throw NotMuForm(print_term(last_unary));
    }
    out.push_back({std::move(word), cur.name()});
    return Term::var(slot_name(out.size() - 1));
}

} // namespace detail

/// Decomposes an m,u-term; throws NotMuForm naming the unary node that sits
/// directly above a product.
[[nodiscard]] inline MuDecomposition is_mu(const Term& t)
{
    MuDecomposition d{Term::var("#"), {}};
    d.skeleton = detail::decompose(t, d.unaries);
    return d;
}

/// Puts terms into the skeleton's slots.
[[nodiscard]] inline Term fill_skeleton(const Term& skeleton, const std::vector<Term>& slots)
{
    std::map<std::string, Term> sigma;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        sigma.emplace(slot_name(i), slots[i]);
    }
    return substitute(skeleton, sigma);
}

[[nodiscard]] inline Term reassemble(const MuDecomposition& d)
{
    std::vector<Term> slots;
    slots.reserve(d.unaries.size());
    for (const auto& u : d.unaries) {
        slots.push_back(u.term());
    }
    return fill_skeleton(d.skeleton, slots);
}

/// For each slot i, the word t_i with t_i(m(w_1..w_n)) = w_i: the path from
/// the skeleton root to the slot, read innermost-last.
[[nodiscard]] inline std::vector<UnaryWord> extract_unaries(const MuDecomposition& d)
{
    std::vector<UnaryWord> out(d.unaries.size());
    std::vector<std::pair<Term, UnaryWord>> stack{{d.skeleton, {}}};
    while (!stack.empty()) {
        auto [node, path] = stack.back();
        stack.pop_back();
        if (node.is_var()) {
            const std::size_t slot = std::stoul(node.name().substr(1));
            if (slot >= out.size()) {
                throw InvalidInput("skeleton slot " + node.name() + " has no unary");
            }
            out[slot] = path;
            continue;
        }
        if (!node.is_mul()) {
            throw InvalidInput("skeleton is not purely multiplicative");
        }
        // deeper steps are applied later, so they go outermost (front of the word)
        stack.emplace_back(node.rhs(), "r" + path);
        stack.emplace_back(node.lhs(), "l" + path);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Subalgebra-distributivity witnesses
// ---------------------------------------------------------------------------

enum class Side { x, y };

[[nodiscard]] inline const char* to_string(Side s) { return s == Side::x ? "x" : "y"; }

struct ExtractedUnary
{
    UnaryWord word;
    Side side;
    Term slot_term;
};

/// p = s(t_1(p), ..., t_n(p)), each t_i depending on one side of the split.
struct DistributivityWitness
{
    Term p;
    Term normal;
    Term s;
    std::vector<ExtractedUnary> extracted;

    /// s(t_1(p), ..., t_n(p)).
    [[nodiscard]] Term rebuilt() const
    {
        std::vector<Term> slots;
        slots.reserve(extracted.size());
        for (const auto& e : extracted) {
            slots.push_back(apply_word(e.word, p));
        }
        return fill_skeleton(s, slots);
    }
};

struct VariableSplit
{
    std::set<std::string> x;
    std::set<std::string> y;
};

[[nodiscard]] inline DistributivityWitness distributivity_witness(const Term& p, const VariableSplit& split)
{
    for (const auto& v : split.x) {
        if (split.y.contains(v)) {
            throw InvalidInput("variable '" + v + "' declared on both sides");
        }
    }
    for (const auto& v : variables(p)) {
        if (!split.x.contains(v) && !split.y.contains(v)) {
            throw InvalidInput("variable '" + v + "' is on neither side");
        }
    }
    DistributivityWitness w{p, normalize(p), Term::var("#"), {}};
    const MuDecomposition d = is_mu(w.normal);
    w.s = d.skeleton;
    const auto words = extract_unaries(d);
    for (std::size_t i = 0; i < words.size(); ++i) {
        const Side side = split.x.contains(d.unaries[i].variable) ? Side::x : Side::y;
        w.extracted.push_back({words[i], side, d.unaries[i].term()});
    }
    return w;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

template <class A>
concept JtOperations = requires(const A& a, const typename A::element_type& e) {
    { a.mul(e, e) } -> std::convertible_to<typename A::element_type>;
    { a.left(e) } -> std::convertible_to<typename A::element_type>;
    { a.right(e) } -> std::convertible_to<typename A::element_type>;
};

template <class E>
using Env = std::map<std::string, E>;

template <JtOperations A>
[[nodiscard]] typename A::element_type evaluate(const Term& t, const Env<typename A::element_type>& env, const A& alg)
{
    switch (t.kind()) {
    case Term::Kind::var: {
        auto it = env.find(t.name());
        if (it == env.end()) {
            throw UnboundVariable(t.name());
        }
        return it->second;
    }
    case Term::Kind::left: return alg.left(evaluate(t.arg(), env, alg));
    case Term::Kind::right: return alg.right(evaluate(t.arg(), env, alg));
    case Term::Kind::mul: {
        auto a = evaluate(t.lhs(), env, alg);
        auto b = evaluate(t.rhs(), env, alg);
        return alg.mul(a, b);
    }
    }
    throw Error("unreachable");
}

template <JtOperations A>
[[nodiscard]] typename A::element_type apply_word(const UnaryWord& w, typename A::element_type e, const A& alg)
{
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        e = (*it == 'l') ? alg.left(e) : alg.right(e);
    }
    return e;
}

/// Evaluates the witness identities at one sample. `env` binds every variable;
/// `other` supplies replacement values for either side. Checks
/// p = s(t_1(p), ..., t_n(p)) at env, and that each t_i(p) keeps its value
/// when the variables of the opposite side are replaced from `other`.
/// Returns a description of the first failure.
template <JtOperations A>
[[nodiscard]] std::optional<std::string> check_witness(const DistributivityWitness& w, const VariableSplit& split,
                                                       const Env<typename A::element_type>& env,
                                                       const Env<typename A::element_type>& other, const A& alg)
{
    using E = typename A::element_type;
    const E pv = evaluate(w.p, env, alg);
    if (evaluate(w.rebuilt(), env, alg) != pv) {
        return std::string("p differs from s(t_1(p), ..., t_n(p))");
    }
    Env<E> keep_x = env;
    Env<E> keep_y = env;
    for (const auto& v : split.y) {
        if (auto it = other.find(v); it != other.end() && keep_x.contains(v)) {
            keep_x[v] = it->second;
        }
    }
    for (const auto& v : split.x) {
        if (auto it = other.find(v); it != other.end() && keep_y.contains(v)) {
            keep_y[v] = it->second;
        }
    }
    const E pv_x = evaluate(w.p, keep_x, alg);
    const E pv_y = evaluate(w.p, keep_y, alg);
    for (std::size_t i = 0; i < w.extracted.size(); ++i) {
        const auto& e = w.extracted[i];
        const E base = apply_word(e.word, pv, alg);
        const E moved = apply_word(e.word, e.side == Side::x ? pv_x : pv_y, alg);
        if (base != moved) {
            return "t_" + std::to_string(i + 1) + " = " + show_word(e.word) + " depends on the " +
                   (e.side == Side::x ? "y" : "x") + " side";
        }
    }
    return std::nullopt;
}

} // namespace jt
