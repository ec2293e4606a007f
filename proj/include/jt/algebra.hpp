/**
 * @file algebra.hpp
 * @brief Jonsson-Tarski algebras on ordinals, and the base algebras on w.
 *
 * An algebra is a bijection mul : U x U -> U together with its inverse
 * components left and right, so that
 *
 *     left(x*y) = x      right(x*y) = y      left(z)*right(z) = z.
 */
#pragma once

#include "jt/errors.hpp"
#include "jt/layer_scheme.hpp"
#include "jt/ordinal.hpp"
#include "jt/pairing.hpp"

#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace jt {

class JtAlgebra
{
public:
    using element_type = Ordinal;

    virtual ~JtAlgebra() = default;

    [[nodiscard]] virtual Ordinal mul(const Ordinal& x, const Ordinal& y) const = 0;
    [[nodiscard]] virtual Ordinal left(const Ordinal& z) const = 0;
    [[nodiscard]] virtual Ordinal right(const Ordinal& z) const = 0;

    /// Largest block with defined operations (0 for algebras on w).
    [[nodiscard]] virtual Natural max_block() const = 0;
    [[nodiscard]] virtual std::string describe() const = 0;

    [[nodiscard]] bool within_horizon(const Ordinal& z) const { return z.block <= max_block(); }
};

using AlgebraHandle = std::shared_ptr<const JtAlgebra>;

namespace detail {

inline void require_finite(const Ordinal& z, const std::string& who)
{
    if (z.block != 0) {
        throw BeyondHorizon(who + ": element " + format_ordinal(z) + " lies beyond w");
    }
}

} // namespace detail

/// mul(x, y) = (x+y)(x+y+1)/2 + y.
class CantorBase final : public JtAlgebra
{
public:
    [[nodiscard]] Ordinal mul(const Ordinal& x, const Ordinal& y) const override
    {
        detail::require_finite(x, "cantor");
        detail::require_finite(y, "cantor");
        return finite(pair(x.offset, y.offset));
    }
    [[nodiscard]] Ordinal left(const Ordinal& z) const override
    {
        detail::require_finite(z, "cantor");
        return finite(unpair(z.offset).first);
    }
    [[nodiscard]] Ordinal right(const Ordinal& z) const override
    {
        detail::require_finite(z, "cantor");
        return finite(unpair(z.offset).second);
    }
    [[nodiscard]] Natural max_block() const override { return 0; }
    [[nodiscard]] std::string describe() const override { return "cantor"; }
};

/// Cantor pairing over any unsigned natural type, for exact evaluation of
/// deep terms (e.g. with boost::multiprecision::cpp_int).
template <class Nat>
struct CantorPairing
{
    using element_type = Nat;

    [[nodiscard]] Nat mul(const Nat& x, const Nat& y) const { return pair_generic(x, y); }
    [[nodiscard]] Nat left(const Nat& z) const { return unpair_generic(z).first; }
    [[nodiscard]] Nat right(const Nat& z) const { return unpair_generic(z).second; }
};

/// The layer scheme at lambda = 0: every element descends to 0 under left,
/// and left(r^n(0)) runs through all of w.
class Layer0Base final : public JtAlgebra
{
public:
    [[nodiscard]] Ordinal mul(const Ordinal& x, const Ordinal& y) const override
    {
        detail::require_finite(x, "layer0");
        detail::require_finite(y, "layer0");
        return finite(detail::inverse_a(0, {x, y}));
    }
    [[nodiscard]] Ordinal left(const Ordinal& z) const override
    {
        detail::require_finite(z, "layer0");
        return detail::cell_a(0, z.offset).x;
    }
    [[nodiscard]] Ordinal right(const Ordinal& z) const override
    {
        detail::require_finite(z, "layer0");
        return detail::cell_a(0, z.offset).y;
    }
    [[nodiscard]] Natural max_block() const override { return 0; }
    [[nodiscard]] std::string describe() const override { return "layer0"; }
};

/// Finite-support bijection of w.
class Permutation
{
public:
    Permutation() = default;

    /// Cycles must be disjoint; fixed points may be omitted.
    explicit Permutation(const std::vector<std::vector<Natural>>& cycles)
    {
        std::set<Natural> seen;
        for (const auto& cyc : cycles) {
            for (std::size_t i = 0; i < cyc.size(); ++i) {
                if (!seen.insert(cyc[i]).second) {
                    throw InvalidInput("permutation: " + std::to_string(cyc[i]) + " appears twice");
                }
                const Natural to = cyc[(i + 1) % cyc.size()];
                if (to != cyc[i]) {
                    forward_[cyc[i]] = to;
                    backward_[to] = cyc[i];
                }
            }
        }
        cycles_ = cycles;
    }

    [[nodiscard]] Natural apply(Natural x) const
    {
        auto it = forward_.find(x);
        return it == forward_.end() ? x : it->second;
    }
    [[nodiscard]] Natural invert(Natural x) const
    {
        auto it = backward_.find(x);
        return it == backward_.end() ? x : it->second;
    }
    [[nodiscard]] const std::vector<std::vector<Natural>>& cycles() const { return cycles_; }

    [[nodiscard]] std::string to_string() const
    {
        std::string out;
        for (const auto& cyc : cycles_) {
            out += "(";
            for (std::size_t i = 0; i < cyc.size(); ++i) {
                out += (i ? " " : "") + std::to_string(cyc[i]);
            }
            out += ")";
        }
        return out;
    }

private:
    std::map<Natural, Natural> forward_;
    std::map<Natural, Natural> backward_;
    std::vector<std::vector<Natural>> cycles_;
};

/// inner relabeled through perm: mul(x, y) = perm(inner.mul(perm^-1 x, perm^-1 y)).
class PermutedBase final : public JtAlgebra
{
public:
    PermutedBase(AlgebraHandle inner, Permutation perm) : inner_(std::move(inner)), perm_(std::move(perm))
    {
        if (!inner_ || inner_->max_block() != 0) {
            throw InvalidInput("permuted base needs an algebra on w");
        }
    }

    [[nodiscard]] Ordinal mul(const Ordinal& x, const Ordinal& y) const override
    {
        return to_outer(inner_->mul(to_inner(x), to_inner(y)));
    }
    [[nodiscard]] Ordinal left(const Ordinal& z) const override { return to_outer(inner_->left(to_inner(z))); }
    [[nodiscard]] Ordinal right(const Ordinal& z) const override { return to_outer(inner_->right(to_inner(z))); }
    [[nodiscard]] Natural max_block() const override { return 0; }
    [[nodiscard]] std::string describe() const override
    {
        return "perm(" + inner_->describe() + ";" + perm_.to_string() + ")";
    }

    [[nodiscard]] const AlgebraHandle& inner() const { return inner_; }
    [[nodiscard]] const Permutation& permutation() const { return perm_; }

private:
    [[nodiscard]] Ordinal to_inner(const Ordinal& z) const
    {
        detail::require_finite(z, "perm");
        return finite(perm_.invert(z.offset));
    }
    [[nodiscard]] Ordinal to_outer(const Ordinal& z) const { return finite(perm_.apply(z.offset)); }

    AlgebraHandle inner_;
    Permutation perm_;
};

[[nodiscard]] inline AlgebraHandle base_cantor() { return std::make_shared<CantorBase>(); }
[[nodiscard]] inline AlgebraHandle base_layer0() { return std::make_shared<Layer0Base>(); }
[[nodiscard]] inline AlgebraHandle base_permuted(AlgebraHandle inner, Permutation perm)
{
    return std::make_shared<PermutedBase>(std::move(inner), std::move(perm));
}

// ---------------------------------------------------------------------------
// Axiom checking
// ---------------------------------------------------------------------------

struct AxiomReport
{
    bool passed = true;
    std::size_t checks = 0;
    std::string identity; ///< which identity failed ("1", "2", "3", "injective", "error")
    std::vector<Ordinal> witness;
    std::string detail;
};

/// Exhaustive check of the three identities and of injectivity of
/// z -> (left z, right z) on every block up to the horizon with offsets
/// below `bound`; then `samples` random spot checks with offsets in
/// [bound, 2^20).
[[nodiscard]] inline AxiomReport axiom_check(const JtAlgebra& alg, Natural bound, std::size_t samples = 0,
                                             std::uint64_t seed = 0)
{
    AxiomReport rep;
    std::vector<Ordinal> window;
    for (Natural b = 0; b <= alg.max_block(); ++b) {
        for (Natural n = 0; n < bound; ++n) {
            window.push_back({b, n});
        }
    }
    auto fail = [&](std::string which, std::vector<Ordinal> w, std::string detail) {
        rep.passed = false;
        rep.identity = std::move(which);
        rep.witness = std::move(w);
        rep.detail = std::move(detail);
    };
    auto check_pair = [&](const Ordinal& x, const Ordinal& y) {
        const Ordinal z = alg.mul(x, y);
        ++rep.checks;
        if (alg.left(z) != x) {
            fail("1", {x, y}, "left(x*y) = " + format_ordinal(alg.left(z)));
            return false;
        }
        if (alg.right(z) != y) {
            fail("2", {x, y}, "right(x*y) = " + format_ordinal(alg.right(z)));
            return false;
        }
        return true;
    };
    auto check_point = [&](const Ordinal& z) {
        const Ordinal l = alg.left(z);
        const Ordinal r = alg.right(z);
        ++rep.checks;
        if (alg.mul(l, r) != z) {
            fail("3", {z}, "left(z)*right(z) = " + format_ordinal(alg.mul(l, r)));
            return false;
        }
        return true;
    };
    try {
        for (const auto& x : window) {
            for (const auto& y : window) {
                if (!check_pair(x, y)) {
                    return rep;
                }
            }
        }
        std::map<std::pair<Ordinal, Ordinal>, Ordinal> seen;
        for (const auto& z : window) {
            if (!check_point(z)) {
                return rep;
            }
            auto [it, fresh] = seen.emplace(std::make_pair(alg.left(z), alg.right(z)), z);
            if (!fresh) {
                fail("injective", {it->second, z}, "same (left, right) image");
                return rep;
            }
        }
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<Natural> off(bound, (Natural{1} << 20) - 1);
        std::uniform_int_distribution<Natural> blk(0, alg.max_block());
        for (std::size_t s = 0; s < samples && bound < (Natural{1} << 20); ++s) {
            const Ordinal x{blk(rng), off(rng)};
            const Ordinal y{blk(rng), off(rng)};
            if (!check_pair(x, y) || !check_point(x)) {
                return rep;
            }
        }
    } catch (const Error& e) {
        fail("error", {}, e.what());
    }
    return rep;
}

} // namespace jt
