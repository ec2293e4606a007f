// Test-side helpers: term enumeration and sampling, a brute-force oracle for
// equality under the three identities, and exact evaluation in the Cantor
// pairing algebra. None of this calls the library's normalizer.
#pragma once

#include "jt/algebra.hpp"
#include "jt/term.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <numeric>
#include <random>
#include <unordered_map>
#include <vector>

namespace jt_test {

using jt::Term;
using BigNat = boost::multiprecision::cpp_int;

/// Every term with exactly `n` nodes over the given variables, for n = 1..max.
inline std::vector<std::vector<Term>> terms_by_size(std::size_t max_nodes, const std::vector<std::string>& vars)
{
    std::vector<std::vector<Term>> by(max_nodes + 1);
    for (const auto& v : vars) {
        by[1].push_back(Term::var(v));
    }
    for (std::size_t n = 2; n <= max_nodes; ++n) {
        for (const auto& t : by[n - 1]) {
            by[n].push_back(Term::left(t));
            by[n].push_back(Term::right(t));
        }
        for (std::size_t a = 1; a + 1 < n; ++a) {
            const std::size_t b = n - 1 - a;
            for (const auto& x : by[a]) {
                for (const auto& y : by[b]) {
                    by[n].push_back(Term::mul(x, y));
                }
            }
        }
    }
    return by;
}

/// All terms obtained from t by one application of
/// l(X*Y) -> X, r(X*Y) -> Y, l(Z)*r(Z) -> Z at any position.
inline std::vector<Term> one_step_reducts(const Term& t)
{
    std::vector<Term> out;
    if (t.kind() == Term::Kind::left && t.arg().is_mul()) {
        out.push_back(t.arg().lhs());
    }
    if (t.kind() == Term::Kind::right && t.arg().is_mul()) {
        out.push_back(t.arg().rhs());
    }
    if (t.is_mul() && t.lhs().kind() == Term::Kind::left && t.rhs().kind() == Term::Kind::right &&
        t.lhs().arg() == t.rhs().arg()) {
        out.push_back(t.lhs().arg());
    }
    if (t.is_unary()) {
        for (auto& s : one_step_reducts(t.arg())) {
            out.push_back(t.kind() == Term::Kind::left ? Term::left(s) : Term::right(s));
        }
    } else if (t.is_mul()) {
        for (auto& s : one_step_reducts(t.lhs())) {
            out.push_back(Term::mul(s, t.rhs()));
        }
        for (auto& s : one_step_reducts(t.rhs())) {
            out.push_back(Term::mul(t.lhs(), s));
        }
    }
    return out;
}

/// Equivalence classes of the identities (used in both directions) restricted
/// to terms with at most `max_nodes` nodes.
class RewriteClosure
{
public:
    RewriteClosure(std::size_t max_nodes, const std::vector<std::string>& vars)
    {
        for (const auto& level : terms_by_size(max_nodes, vars)) {
            for (const auto& t : level) {
                index_.emplace(t, parent_.size());
                parent_.push_back(parent_.size());
            }
        }
        for (const auto& [t, i] : index_) {
            for (const auto& s : one_step_reducts(t)) {
                unite(i, index_.at(s));
            }
        }
    }

    [[nodiscard]] bool equivalent(const Term& a, const Term& b) { return find(index_.at(a)) == find(index_.at(b)); }
    [[nodiscard]] std::size_t universe() const { return parent_.size(); }

private:
    std::size_t find(std::size_t i)
    {
        while (parent_[i] != i) {
            parent_[i] = parent_[parent_[i]];
            i = parent_[i];
        }
        return i;
    }
    void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

    std::unordered_map<Term, std::size_t, jt::TermHash> index_;
    std::vector<std::size_t> parent_;
};

inline constexpr std::size_t kNoCap = static_cast<std::size_t>(-1);

/// Random term of depth at most `depth`; `muls` caps the number of nested
/// products along any path.
inline Term random_term(std::mt19937_64& rng, std::size_t depth, const std::vector<std::string>& vars,
                        std::size_t muls = kNoCap)
{
    std::uniform_int_distribution<std::size_t> pick_var(0, vars.size() - 1);
    std::uniform_int_distribution<int> kind(0, 5);
    if (depth == 0) {
        return Term::var(vars[pick_var(rng)]);
    }
    int k = kind(rng);
    if (k >= 3 && (muls == 0 || (k == 3 && depth < 2))) {
        k = k % 3;
    }
    const std::size_t inner = muls == kNoCap ? kNoCap : muls - (k >= 3 ? 1 : 0);
    switch (k) {
    case 0: return Term::var(vars[pick_var(rng)]);
    case 1: return Term::left(random_term(rng, depth - 1, vars, muls));
    case 2: return Term::right(random_term(rng, depth - 1, vars, muls));
    case 3: {
        // l(Z)*r(Z) keeps the third identity well represented
        Term z = random_term(rng, depth - 2, vars, inner);
        return Term::mul(Term::left(z), Term::right(z));
    }
    default: return Term::mul(random_term(rng, depth - 1, vars, inner), random_term(rng, depth - 1, vars, inner));
    }
}

/// Random m,u-term: a product skeleton of unary words over variables.
inline Term random_mu_term(std::mt19937_64& rng, std::size_t depth, const std::vector<std::string>& vars)
{
    std::uniform_int_distribution<int> coin(0, 2);
    if (depth == 0 || coin(rng) == 0) {
        std::uniform_int_distribution<std::size_t> len(0, 4);
        std::uniform_int_distribution<std::size_t> pick_var(0, vars.size() - 1);
        std::string w;
        for (std::size_t i = len(rng); i > 0; --i) {
            w.push_back(coin(rng) == 0 ? 'l' : 'r');
        }
        return jt::apply_word(w, Term::var(vars[pick_var(rng)]));
    }
    return Term::mul(random_mu_term(rng, depth - 1, vars), random_mu_term(rng, depth - 1, vars));
}

/// Exact Cantor evaluation: 64-bit first, arbitrary precision on overflow.
inline BigNat eval_cantor(const Term& t, const std::map<std::string, std::uint64_t>& env)
{
    try {
        jt::Env<jt::Ordinal> e;
        for (const auto& [k, v] : env) {
            e[k] = jt::finite(v);
        }
        return BigNat(jt::evaluate(t, e, static_cast<const jt::JtAlgebra&>(jt::CantorBase{})).offset);
    } catch (const jt::BeyondHorizon&) {
        jt::Env<BigNat> e;
        for (const auto& [k, v] : env) {
            e[k] = BigNat(v);
        }
        return jt::evaluate(t, e, jt::CantorPairing<BigNat>{});
    }
}

/// Independent Cantor pairing by the closed formula, for cross-checks.
inline std::uint64_t cantor_formula(std::uint64_t x, std::uint64_t y)
{
    return (x + y) * (x + y + 1) / 2 + y;
}

} // namespace jt_test
