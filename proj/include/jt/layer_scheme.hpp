/**
 * @file layer_scheme.hpp
 * @brief Cell assignment of a type A layer over lambda = w*c.
 *
 * New elements are lambda+n; old elements are the x < lambda, listed by
 * old_enum(c, .). A layer owns every cell (x, y) whose larger coordinate is
 * some lambda+m.
 *
 *  - even:  lambda+2k   sits at (e_k, lambda+2k+2), where e_0 = 0,
 *           e_{2i} = lambda (i >= 1), e_{2i+1} = u_i, and u alternates
 *           old_enum(c, t) (u_{2t}) with lambda+t (u_{2t+1}).
 *  - L_m:   cells with larger coordinate exactly lambda+m, listed
 *           row (lambda+m, v_0), column (v'_0, lambda+m), row (lambda+m, v_1), ...
 *           where v = lambda, ..., lambda+m, old_enum(c, 0), old_enum(c, 1), ...
 *           and v' is v without lambda+m. The one even cell of L_m (m even,
 *           m >= 2) is skipped.
 *  - odd:   lambda+2j+1 takes the i-th cell of L_m with (m, i) = unpair(j).
 *
 * c = 0 is the base layer on w: no old elements, every L_m is finite
 * (2m+1 cells) and the odd elements fill L_0, L_1, ... in order.
 * A type B layer swaps the coordinates of every cell.
 */
#pragma once

#include "jt/errors.hpp"
#include "jt/ordinal.hpp"
#include "jt/pairing.hpp"

#include <algorithm>
#include <optional>
#include <string>

namespace jt {

enum class Letter { A, B };

[[nodiscard]] inline char to_char(Letter l) { return l == Letter::A ? 'A' : 'B'; }

struct Cell
{
    Ordinal x;
    Ordinal y;

    [[nodiscard]] Cell transposed() const { return {y, x}; }
    friend constexpr bool operator==(const Cell&, const Cell&) = default;
};

namespace detail {

[[nodiscard]] inline Ordinal new_element(Natural c, Natural n) { return {c, n}; }

[[nodiscard]] inline Ordinal u_seq(Natural c, Natural i)
{
    if (c == 0) {
        return {0, i};
    }
    return (i % 2 == 0) ? old_enum(c, i / 2) : new_element(c, i / 2);
}

[[nodiscard]] inline Ordinal e_seq(Natural c, Natural k)
{
    if (k == 0) {
        return {0, 0};
    }
    if (k % 2 == 0) {
        return limit_of(c);
    }
    return u_seq(c, k / 2);
}

/// Position of x in v' for region L_m (x must be < lambda+m).
[[nodiscard]] inline Natural vprime_index(Natural c, Natural m, const Ordinal& x)
{
    if (x.block == c) {
        return x.offset;
    }
    return checked_add(m, old_index(c, x));
}

/// Position of y in v for region L_m (y must be <= lambda+m).
[[nodiscard]] inline Natural v_index(Natural c, Natural m, const Ordinal& y)
{
    if (y.block == c) {
        return y.offset;
    }
    return checked_add(checked_add(m, 1), old_index(c, y));
}

/// Raw position of the skipped even cell of L_m, if L_m has one.
[[nodiscard]] inline std::optional<Natural> skip_position(Natural c, Natural m)
{
    if (m < 2 || m % 2 != 0) {
        return std::nullopt;
    }
    const Ordinal e = e_seq(c, (m - 2) / 2);
    return checked_add(checked_mul(2, vprime_index(c, m, e)), 1);
}

[[nodiscard]] inline Cell raw_cell(Natural c, Natural m, Natural p)
{
    const Ordinal top = new_element(c, m);
    const Natural j = p / 2;
    if (p % 2 == 0) {
        const Ordinal v = (j <= m) ? new_element(c, j) : old_enum(c, j - m - 1);
        return {top, v};
    }
    const Ordinal v = (j < m) ? new_element(c, j) : old_enum(c, j - m);
    return {v, top};
}

[[nodiscard]] inline Cell region_cell(Natural c, Natural m, Natural i)
{
    const auto skip = skip_position(c, m);
    const Natural p = (skip && i >= *skip) ? checked_add(i, 1) : i;
    return raw_cell(c, m, p);
}

/// Number of odd-element cells in L_0, ..., L_{m-1} of the base layer.
[[nodiscard]] inline Natural base_region_start(Natural m)
{
    if (m == 0) {
        return 0;
    }
    return checked_mul(m, m) - (m - 1) / 2;
}

/// (m, i) for the j-th odd element of the base layer.
[[nodiscard]] inline std::pair<Natural, Natural> base_region_of(Natural j)
{
    Natural m = isqrt(j);
    while (m > 0 && base_region_start(m) > j) {
        --m;
    }
    while (base_region_start(m + 1) <= j) {
        ++m;
    }
    return {m, j - base_region_start(m)};
}

/// Type A cell of lambda+n, lambda = w*c.
[[nodiscard]] inline Cell cell_a(Natural c, Natural n)
{
    if (n % 2 == 0) {
        const Natural k = n / 2;
        return {e_seq(c, k), new_element(c, checked_add(n, 2))};
    }
    const Natural j = n / 2;
    const auto [m, i] = (c == 0) ? base_region_of(j) : unpair(j);
    return region_cell(c, m, i);
}

/// Offset n of the element of a type A layer at `cell`; throws NotOwned.
[[nodiscard]] inline Natural inverse_a(Natural c, const Cell& cell)
{
    const Ordinal& top = std::max(cell.x, cell.y);
    if (top.block != c) {
        throw NotOwned("cell (" + format_ordinal(cell.x) + ", " + format_ordinal(cell.y) + ") is not owned by layer " +
                       std::to_string(c));
    }
    const Natural m = top.offset;
    if (const auto skip = skip_position(c, m); skip && cell.y == top && cell.x == e_seq(c, (m - 2) / 2)) {
        return m - 2;
    }
    Natural p = 0;
    if (cell.x == top) {
        p = checked_mul(2, v_index(c, m, cell.y));
    } else {
        p = checked_add(checked_mul(2, vprime_index(c, m, cell.x)), 1);
    }
    const auto skip = skip_position(c, m);
    const Natural i = (skip && p > *skip) ? p - 1 : p;
    const Natural j = (c == 0) ? checked_add(base_region_start(m), i) : pair(m, i);
    return checked_add(checked_mul(2, j), 1);
}

[[nodiscard]] inline Cell cell_of(Natural c, Letter letter, Natural n)
{
    const Cell a = cell_a(c, n);
    return letter == Letter::A ? a : a.transposed();
}

[[nodiscard]] inline Natural inverse_of(Natural c, Letter letter, const Cell& cell)
{
    return inverse_a(c, letter == Letter::A ? cell : cell.transposed());
}

} // namespace detail

} // namespace jt
