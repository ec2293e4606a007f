#include "jt/algebra.hpp"
#include "jt/io.hpp"
#include "jt/layers.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

using jt::Ordinal;

namespace {

/// Wraps an algebra and corrupts left at one point.
class Corrupted final : public jt::JtAlgebra
{
public:
    Corrupted(jt::AlgebraHandle inner, Ordinal bad) : inner_(std::move(inner)), bad_(bad) {}
    Ordinal mul(const Ordinal& x, const Ordinal& y) const override { return inner_->mul(x, y); }
    Ordinal left(const Ordinal& z) const override { return z == bad_ ? jt::plus(inner_->left(z), 1) : inner_->left(z); }
    Ordinal right(const Ordinal& z) const override { return inner_->right(z); }
    jt::Natural max_block() const override { return inner_->max_block(); }
    std::string describe() const override { return "corrupted " + inner_->describe(); }

private:
    jt::AlgebraHandle inner_;
    Ordinal bad_;
};

} // namespace

TEST(Cantor, Examples)
{
    const auto c = jt::base_cantor();
    EXPECT_EQ(c->mul(jt::finite(0), jt::finite(0)), jt::finite(0));
    EXPECT_EQ(c->left(jt::finite(4)), jt::finite(1));
    EXPECT_EQ(c->right(jt::finite(4)), jt::finite(1));
    EXPECT_EQ(c->mul(jt::finite(1), jt::finite(0)), jt::finite(1));
    EXPECT_EQ(c->mul(jt::finite(0), jt::finite(1)), jt::finite(2));
    EXPECT_EQ(c->left(jt::finite(2)), jt::finite(0));
}

TEST(Cantor, MatchesClosedFormula)
{
    const auto c = jt::base_cantor();
    for (std::uint64_t x = 0; x < 200; ++x) {
        for (std::uint64_t y = 0; y < 200; ++y) {
            ASSERT_EQ(c->mul(jt::finite(x), jt::finite(y)), jt::finite(jt_test::cantor_formula(x, y)));
        }
    }
}

TEST(Cantor, RejectsLayeredElements)
{
    const auto c = jt::base_cantor();
    EXPECT_THROW((void)c->left({1, 0}), jt::BeyondHorizon);
    EXPECT_THROW((void)c->mul(jt::finite(0), {2, 1}), jt::BeyondHorizon);
}

TEST(Layer0, Examples)
{
    const auto a = jt::base_layer0();
    EXPECT_EQ(a->left(jt::finite(0)), jt::finite(0));
    EXPECT_EQ(a->right(jt::finite(0)), jt::finite(2));
    EXPECT_EQ(a->mul(jt::finite(0), jt::finite(0)), jt::finite(1));
    EXPECT_EQ(a->left(jt::finite(1)), jt::finite(0));
    EXPECT_EQ(a->right(jt::finite(1)), jt::finite(0));
}

TEST(Layer0, LeftDescendsStrictlyToZero)
{
    const auto a = jt::base_layer0();
    for (jt::Natural n = 1; n < 5000; ++n) {
        ASSERT_LT(a->left(jt::finite(n)), jt::finite(n)) << n;
    }
}

TEST(Layer0, LeftOfRightPowersEnumeratesOmega)
{
    const auto a = jt::base_layer0();
    std::set<jt::Natural> hit;
    Ordinal walk = jt::finite(0);
    for (int n = 0; n < 400; ++n) {
        hit.insert(a->left(walk).offset);
        walk = a->right(walk);
    }
    for (jt::Natural k = 0; k < 100; ++k) {
        EXPECT_TRUE(hit.contains(k)) << k;
    }
}

TEST(Permuted, IdentityAndSwap)
{
    const auto id = jt::base_permuted(jt::base_cantor(), jt::Permutation{});
    const auto c = jt::base_cantor();
    for (jt::Natural x = 0; x < 30; ++x) {
        EXPECT_EQ(id->left(jt::finite(x)), c->left(jt::finite(x)));
        EXPECT_EQ(id->mul(jt::finite(x), jt::finite(x + 1)), c->mul(jt::finite(x), jt::finite(x + 1)));
    }
    const auto sw = jt::base_permuted(jt::base_cantor(), jt::Permutation({{0, 1}}));
    EXPECT_EQ(sw->mul(jt::finite(1), jt::finite(1)), jt::finite(1));
    EXPECT_TRUE(jt::axiom_check(*sw, 200).passed);
}

TEST(Permuted, ParsedSpecifiers)
{
    const auto p = jt::parse_base("perm(cantor;(0 1)(2 5))");
    EXPECT_EQ(p->describe(), "perm(cantor;(0 1)(2 5))");
    EXPECT_TRUE(jt::axiom_check(*p, 128).passed);
    const auto nested = jt::parse_base("perm(perm(layer0;(3 4 7));(0 9))");
    EXPECT_TRUE(jt::axiom_check(*nested, 128).passed);
    EXPECT_THROW((void)jt::parse_base("perm(cantor;(0 1)(1 2))"), jt::InvalidInput);
    EXPECT_THROW((void)jt::parse_base("perm(cantor;(0 x))"), jt::ParseError);
    EXPECT_THROW((void)jt::parse_base("perm(cantor)"), jt::ParseError);
    EXPECT_THROW((void)jt::parse_base("fibonacci"), jt::ParseError);
}

TEST(AxiomCheck, ShippedBasesAt200)
{
    EXPECT_TRUE(jt::axiom_check(*jt::base_cantor(), 200).passed);
    EXPECT_TRUE(jt::axiom_check(*jt::base_layer0(), 200).passed);
}

TEST(AxiomCheck, ShippedBasesAt512WithSpotChecks)
{
    for (const auto& b : {jt::base_cantor(), jt::base_layer0(), jt::parse_base("perm(cantor;(0 3)(1 2 8))")}) {
        const auto rep = jt::axiom_check(*b, 512, 2000, 17);
        EXPECT_TRUE(rep.passed) << b->describe() << ": " << rep.identity << " " << rep.detail;
        EXPECT_EQ(rep.checks, 512U * 512U + 512U + 2U * 2000U);
    }
}

TEST(AxiomCheck, InjectiveOnFirst512)
{
    for (const auto& b : {jt::base_cantor(), jt::base_layer0()}) {
        std::set<std::pair<Ordinal, Ordinal>> images;
        for (jt::Natural z = 0; z < 512; ++z) {
            const auto l = b->left(jt::finite(z));
            const auto r = b->right(jt::finite(z));
            EXPECT_TRUE(images.insert({l, r}).second);
            EXPECT_EQ(b->mul(l, r), jt::finite(z));
        }
    }
}

TEST(AxiomCheck, CorruptedHandleFailsWithWitness)
{
    const Corrupted bad(jt::base_cantor(), jt::finite(37));
    const auto rep = jt::axiom_check(bad, 64);
    EXPECT_FALSE(rep.passed);
    EXPECT_FALSE(rep.witness.empty());
    EXPECT_FALSE(rep.identity.empty());
    // the earliest failure is l(x*y) = x, for the pair that multiplies to 37
    const auto c = jt::base_cantor();
    EXPECT_EQ(rep.identity, "1");
    EXPECT_EQ(c->mul(rep.witness[0], rep.witness[1]), jt::finite(37));
}

TEST(AxiomCheck, LayeredWordsUpToLengthFour)
{
    std::vector<std::string> words{""};
    for (int len = 1; len <= 4; ++len) {
        for (int m = 0; m < (1 << len); ++m) {
            std::string w;
            for (int i = 0; i < len; ++i) {
                w.push_back((m >> i) & 1 ? 'B' : 'A');
            }
            words.push_back(w);
        }
    }
    for (const auto& base : {jt::base_cantor(), jt::base_layer0()}) {
        for (const auto& w : words) {
            const auto alg = jt::build_sigma(base, jt::SigmaWord::parse(w));
            const auto rep = jt::axiom_check(*alg, 48, 500, 5);
            ASSERT_TRUE(rep.passed) << base->describe() << " " << w << ": " << rep.identity << " " << rep.detail;
        }
    }
}

TEST(AxiomCheck, LengthFourWordsAt512)
{
    for (const auto& base : {jt::base_cantor(), jt::base_layer0()}) {
        for (int m = 0; m < 16; ++m) {
            std::string w;
            for (int i = 0; i < 4; ++i) {
                w.push_back((m >> i) & 1 ? 'B' : 'A');
            }
            const auto alg = jt::build_sigma(base, jt::SigmaWord::parse(w));
            const auto rep = jt::axiom_check(*alg, 512);
            ASSERT_TRUE(rep.passed) << base->describe() << " " << w << ": " << rep.identity << " " << rep.detail;
        }
    }
}
