/**
 * @file layers.hpp
 * @brief Layered algebras: a base on w extended by one layer per letter.
 *
 * Letter i of the word governs the layer over lambda = w*(i+1). Elements of
 * block 0 are handled by the base; a cell whose larger coordinate lies in
 * block c belongs to layer c.
 */
#pragma once

#include "jt/algebra.hpp"
#include "jt/errors.hpp"
#include "jt/layer_scheme.hpp"
#include "jt/ordinal.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace jt {

class SigmaWord
{
public:
    SigmaWord() = default;
    explicit SigmaWord(std::vector<Letter> letters) : letters_(std::move(letters)) {}

    [[nodiscard]] static SigmaWord parse(std::string_view text)
    {
        std::vector<Letter> out;
        for (std::size_t i = 0; i < text.size(); ++i) {
            switch (text[i]) {
            case 'A': out.push_back(Letter::A); break;
            case 'B': out.push_back(Letter::B); break;
            default: throw ParseError(std::string("sigma letter must be A or B, got '") + text[i] + "'", i);
            }
        }
        return SigmaWord(std::move(out));
    }

    [[nodiscard]] std::size_t size() const { return letters_.size(); }
    [[nodiscard]] bool empty() const { return letters_.empty(); }
    [[nodiscard]] Letter operator[](std::size_t i) const { return letters_.at(i); }
    /// Letter of the layer over w*c, c >= 1.
    [[nodiscard]] Letter layer(Natural c) const { return letters_.at(c - 1); }
    [[nodiscard]] const std::vector<Letter>& letters() const { return letters_; }

    [[nodiscard]] std::string str() const
    {
        std::string s;
        for (Letter l : letters_) {
            s.push_back(to_char(l));
        }
        return s;
    }

    friend bool operator==(const SigmaWord&, const SigmaWord&) = default;

private:
    std::vector<Letter> letters_;
};

/// (left z, right z) for z = w*c + n in a layer with the given letter.
[[nodiscard]] inline Cell layer_cell(Natural c, Letter letter, const Ordinal& z)
{
    if (c == 0) {
        throw InvalidInput("layer_cell: layers start at c = 1");
    }
    if (z.block != c) {
        throw InvalidInput("layer_cell: " + format_ordinal(z) + " is not in block " + std::to_string(c));
    }
    return detail::cell_of(c, letter, z.offset);
}

/// The element z with layer_cell(c, letter, z) == cell; throws NotOwned.
[[nodiscard]] inline Ordinal layer_cell_inverse(Natural c, Letter letter, const Cell& cell)
{
    if (c == 0) {
        throw NotOwned("layer 0 is the base algebra");
    }
    return {c, detail::inverse_of(c, letter, cell)};
}

class LayeredAlgebra final : public JtAlgebra
{
public:
    LayeredAlgebra(AlgebraHandle base, SigmaWord sigma) : base_(std::move(base)), sigma_(std::move(sigma))
    {
        if (!base_ || base_->max_block() != 0) {
            throw InvalidInput("layered algebra needs a base on w");
        }
    }

    [[nodiscard]] Ordinal mul(const Ordinal& x, const Ordinal& y) const override
    {
        const Natural c = std::max(x.block, y.block);
        if (c == 0) {
            return base_->mul(x, y);
        }
        require(c, x, y);
        return {c, detail::inverse_of(c, sigma_.layer(c), {x, y})};
    }

    [[nodiscard]] Ordinal left(const Ordinal& z) const override
    {
        if (z.block == 0) {
            return base_->left(z);
        }
        require(z.block, z, z);
        return detail::cell_of(z.block, sigma_.layer(z.block), z.offset).x;
    }

    [[nodiscard]] Ordinal right(const Ordinal& z) const override
    {
        if (z.block == 0) {
            return base_->right(z);
        }
        require(z.block, z, z);
        return detail::cell_of(z.block, sigma_.layer(z.block), z.offset).y;
    }

    [[nodiscard]] Natural max_block() const override { return sigma_.size(); }
    [[nodiscard]] std::string describe() const override { return base_->describe() + " sigma=" + sigma_.str(); }

    [[nodiscard]] const AlgebraHandle& base() const { return base_; }
    [[nodiscard]] const SigmaWord& sigma() const { return sigma_; }

private:
    void require(Natural c, const Ordinal& x, const Ordinal& y) const
    {
        if (c > sigma_.size()) {
            const Ordinal& far = x.block >= y.block ? x : y;
            throw BeyondHorizon(format_ordinal(far) + " needs layer " + std::to_string(c) + " but sigma has " +
                                std::to_string(sigma_.size()) + " letters");
        }
    }

    AlgebraHandle base_;
    SigmaWord sigma_;
};

[[nodiscard]] inline std::shared_ptr<const LayeredAlgebra> build_sigma(AlgebraHandle base, SigmaWord sigma)
{
    return std::make_shared<LayeredAlgebra>(std::move(base), std::move(sigma));
}

struct LayerRow
{
    Ordinal z;
    Ordinal l;
    Ordinal r;
};

/// Rows (z, left z, right z) for z = w*c + n, n < count.
[[nodiscard]] inline std::vector<LayerRow> describe_layer(const LayeredAlgebra& alg, Natural c, Natural count)
{
    if (c == 0 || c > alg.max_block()) {
        throw BeyondHorizon("layer " + std::to_string(c) + " is not materialized (sigma has " +
                            std::to_string(alg.max_block()) + " letters)");
    }
    std::vector<LayerRow> rows;
    rows.reserve(count);
    for (Natural n = 0; n < count; ++n) {
        const Cell cell = layer_cell(c, alg.sigma().layer(c), {c, n});
        rows.push_back({{c, n}, cell.x, cell.y});
    }
    return rows;
}

} // namespace jt
