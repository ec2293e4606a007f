#include "jt/layers.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using jt::Cell;
using jt::Letter;
using jt::Ordinal;

namespace {

Ordinal W(jt::Natural c, jt::Natural n) { return {c, n}; }

std::vector<std::string> all_words(int max_len)
{
    std::vector<std::string> out;
    for (int len = 1; len <= max_len; ++len) {
        for (int m = 0; m < (1 << len); ++m) {
            std::string w;
            for (int i = 0; i < len; ++i) {
                w.push_back((m >> i) & 1 ? 'B' : 'A');
            }
            out.push_back(w);
        }
    }
    return out;
}

} // namespace

TEST(SigmaWord, ParseAndPrint)
{
    const auto w = jt::SigmaWord::parse("AAB");
    EXPECT_EQ(w.size(), 3U);
    EXPECT_EQ(w.layer(1), Letter::A);
    EXPECT_EQ(w.layer(3), Letter::B);
    EXPECT_EQ(w.str(), "AAB");
    EXPECT_TRUE(jt::SigmaWord::parse("").empty());
    EXPECT_THROW((void)jt::SigmaWord::parse("ABC"), jt::ParseError);
    EXPECT_THROW((void)jt::SigmaWord::parse("ab"), jt::ParseError);
}

TEST(BuildSigma, Examples)
{
    const auto empty = jt::build_sigma(jt::base_cantor(), jt::SigmaWord{});
    const auto base = jt::base_cantor();
    for (jt::Natural x = 0; x < 50; ++x) {
        EXPECT_EQ(empty->left(W(0, x)), base->left(W(0, x)));
        EXPECT_EQ(empty->mul(W(0, x), W(0, 3)), base->mul(W(0, x), W(0, 3)));
    }
    EXPECT_THROW((void)empty->left(W(1, 0)), jt::BeyondHorizon);

    const auto a = jt::build_sigma(jt::base_cantor(), jt::SigmaWord::parse("A"));
    EXPECT_EQ(a->right(W(1, 0)), W(1, 2));
    const auto b = jt::build_sigma(jt::base_cantor(), jt::SigmaWord::parse("B"));
    EXPECT_EQ(b->left(W(1, 0)), W(1, 2));
}

TEST(BuildSigma, HorizonErrors)
{
    const auto ab = jt::build_sigma(jt::base_layer0(), jt::SigmaWord::parse("AB"));
    EXPECT_NO_THROW((void)ab->left(W(2, 7)));
    EXPECT_THROW((void)ab->left(W(3, 0)), jt::BeyondHorizon);
    EXPECT_THROW((void)ab->mul(W(0, 1), W(3, 0)), jt::BeyondHorizon);
    EXPECT_EQ(ab->max_block(), 2U);
}

TEST(LayerCell, Examples)
{
    EXPECT_EQ(jt::layer_cell(1, Letter::A, W(1, 0)), (Cell{W(0, 0), W(1, 2)}));
    EXPECT_EQ(jt::layer_cell(1, Letter::A, W(1, 4)), (Cell{W(1, 0), W(1, 6)}));
    EXPECT_EQ(jt::layer_cell(1, Letter::B, W(1, 0)), (Cell{W(1, 2), W(0, 0)}));
    EXPECT_THROW((void)jt::layer_cell(1, Letter::A, W(2, 0)), jt::InvalidInput);
    EXPECT_THROW((void)jt::layer_cell(0, Letter::A, W(0, 0)), jt::InvalidInput);
}

TEST(LayerCell, InverseExamples)
{
    EXPECT_EQ(jt::layer_cell_inverse(1, Letter::A, {W(0, 0), W(1, 2)}), W(1, 0));
    EXPECT_THROW((void)jt::layer_cell_inverse(1, Letter::A, {W(0, 0), W(0, 0)}), jt::NotOwned);
    EXPECT_THROW((void)jt::layer_cell_inverse(1, Letter::A, {W(2, 0), W(0, 0)}), jt::NotOwned);
    // even cells with the wrong second coordinate are not layer cells
    EXPECT_EQ(jt::layer_cell(1, Letter::A, jt::layer_cell_inverse(1, Letter::A, {W(0, 0), W(1, 4)})),
              (Cell{W(0, 0), W(1, 4)}));
}

TEST(LayerCell, RoundTripOnSampledOwnedCells)
{
    std::mt19937_64 rng(8);
    for (jt::Natural c = 1; c <= 3; ++c) {
        std::uniform_int_distribution<jt::Natural> blk(0, c);
        std::uniform_int_distribution<jt::Natural> off(0, 3000);
        std::uniform_int_distribution<int> coin(0, 1);
        for (int s = 0; s < 10'000; ++s) {
            Ordinal top = W(c, off(rng));
            Ordinal other = W(blk(rng), off(rng));
            if (other.block == c && other.offset > top.offset) {
                std::swap(other.offset, top.offset);
            }
            const Cell cell = coin(rng) ? Cell{top, other} : Cell{other, top};
            for (Letter l : {Letter::A, Letter::B}) {
                const Ordinal z = jt::layer_cell_inverse(c, l, cell);
                ASSERT_EQ(z.block, c);
                ASSERT_EQ(jt::layer_cell(c, l, z), cell);
            }
        }
    }
}

TEST(LayerCell, ImagesAreInjectiveAndCoverSmallCells)
{
    // Independent of the inverse: collect forward images and look for every
    // owned cell in a small box.
    for (jt::Natural c = 1; c <= 2; ++c) {
        for (Letter l : {Letter::A, Letter::B}) {
            std::set<std::pair<Ordinal, Ordinal>> images;
            for (jt::Natural n = 0; n < 20'000; ++n) {
                const Cell cell = jt::layer_cell(c, l, W(c, n));
                ASSERT_TRUE(images.insert({cell.x, cell.y}).second) << n;
                ASSERT_GE(std::max(cell.x, cell.y), W(c, 0));
                ASSERT_LT(std::max(cell.x, cell.y), W(c + 1, 0));
            }
            std::vector<Ordinal> coords;
            for (jt::Natural b = 0; b <= c; ++b) {
                for (jt::Natural o = 0; o < 8; ++o) {
                    coords.push_back(W(b, o));
                }
            }
            for (const auto& x : coords) {
                for (const auto& y : coords) {
                    if (std::max(x, y).block == c) {
                        EXPECT_TRUE(images.contains({x, y})) << jt::format_ordinal(x) << "," << jt::format_ordinal(y);
                    }
                }
            }
        }
    }
}

TEST(DescribeLayer, Examples)
{
    const auto ab = jt::build_sigma(jt::base_cantor(), jt::SigmaWord::parse("AB"));
    const auto rows = jt::describe_layer(*ab, 1, 3);
    ASSERT_EQ(rows.size(), 3U);
    EXPECT_EQ(rows[0].z, W(1, 0));
    EXPECT_EQ(rows[1].z, W(1, 1));
    EXPECT_EQ(rows[2].z, W(1, 2));
    // w+1 sits in the L-region of lambda itself
    EXPECT_EQ(std::max(rows[1].l, rows[1].r), W(1, 0));
    EXPECT_LE(rows[1].l, W(1, 0));
    EXPECT_LE(rows[1].r, W(1, 0));
    EXPECT_THROW((void)jt::describe_layer(*ab, 5, 1), jt::BeyondHorizon);
    EXPECT_THROW((void)jt::describe_layer(*ab, 0, 1), jt::BeyondHorizon);
}

TEST(TypeA, Inequalities)
{
    for (const auto& w : all_words(4)) {
        const auto alg = jt::build_sigma(jt::base_cantor(), jt::SigmaWord::parse(w));
        for (jt::Natural c = 1; c <= w.size(); ++c) {
            const bool a = w[c - 1] == 'A';
            for (jt::Natural n = 0; n < 256; ++n) {
                const Ordinal z = W(c, n);
                const Ordinal down = a ? alg->left(z) : alg->right(z);
                const Ordinal up = a ? alg->right(z) : alg->left(z);
                ASSERT_LT(down, z);
                ASSERT_LE(up, W(c, n + 2));
                if (n % 2 == 0) {
                    ASSERT_EQ(up, W(c, n + 2));
                } else {
                    ASSERT_LT(up, z);
                }
            }
        }
    }
}

TEST(TypeA, DescentLeavesTheLayerWithoutClimbing)
{
    const auto alg = jt::build_sigma(jt::base_layer0(), jt::SigmaWord::parse("AB"));
    for (jt::Natural c = 1; c <= 2; ++c) {
        for (jt::Natural n = 0; n < 1000; ++n) {
            Ordinal z = W(c, n);
            int steps = 0;
            while (z >= W(c, 0)) {
                ASSERT_LE(z, W(c, n));
                z = c == 1 ? alg->left(z) : alg->right(z);
                ASSERT_LT(++steps, 10'000);
            }
        }
    }
}

TEST(Layer0, MatchesSchemeWithFiniteRegions)
{
    // c = 0: L_m has 2m+1 cells, even cells removed; odd elements fill
    // L_0, L_1, ... in order. Recompute that listing independently.
    const auto a = jt::base_layer0();
    // e_0 = 0, e_{2i} = 0, e_{2i+1} = i
    auto e = [](jt::Natural k) { return k % 2 == 0 ? jt::Natural{0} : k / 2; };
    std::vector<std::pair<jt::Natural, jt::Natural>> odd_cells;
    for (jt::Natural m = 0; odd_cells.size() < 500; ++m) {
        std::vector<std::pair<jt::Natural, jt::Natural>> region;
        for (jt::Natural j = 0; j <= m; ++j) {
            region.push_back({m, j});
            if (j < m) {
                region.push_back({j, m});
            }
        }
        for (auto cell : region) {
            // the even cell (e_k, 2k+2) with 2k+2 = m
            const bool even = m >= 2 && m % 2 == 0 && cell == std::pair<jt::Natural, jt::Natural>{e(m / 2 - 1), m};
            if (!even) {
                odd_cells.push_back(cell);
            }
        }
    }
    for (jt::Natural j = 0; j < 500; ++j) {
        const Ordinal z = W(0, 2 * j + 1);
        ASSERT_EQ(a->left(z).offset, odd_cells[j].first) << j;
        ASSERT_EQ(a->right(z).offset, odd_cells[j].second) << j;
    }
    for (jt::Natural k = 0; k < 500; ++k) {
        EXPECT_EQ(a->left(W(0, 2 * k)), W(0, e(k)));
        EXPECT_EQ(a->right(W(0, 2 * k)), W(0, 2 * k + 2));
    }
}
