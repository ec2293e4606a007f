/**
 * @file pairing.hpp
 * @brief Cantor pairing N x N -> N and its inverse.
 *
 * pair(m, i) = (m + i)(m + i + 1) / 2 + i. The 64-bit overloads are
 * overflow-checked and throw BeyondHorizon; the generic templates are for
 * arbitrary-precision naturals and never overflow.
 */
#pragma once

#include "jt/errors.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

namespace jt {

using Natural = std::uint64_t;

namespace detail {

[[nodiscard]] inline Natural checked_add(Natural a, Natural b)
{
    Natural out = 0;
    if (__builtin_add_overflow(a, b, &out)) {
        throw BeyondHorizon("natural overflow in " + std::to_string(a) + " + " + std::to_string(b));
    }
    return out;
}

[[nodiscard]] inline Natural checked_mul(Natural a, Natural b)
{
    Natural out = 0;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw BeyondHorizon("natural overflow in " + std::to_string(a) + " * " + std::to_string(b));
    }
    return out;
}

/// floor(sqrt(n)) exactly.
[[nodiscard]] inline Natural isqrt(Natural n)
{
    auto r = static_cast<Natural>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && (r > UINT32_MAX || r * r > n)) {
        --r;
    }
    while (r + 1 <= UINT32_MAX && (r + 1) * (r + 1) <= n) {
        ++r;
    }
    return r;
}

/// Newton iteration; works for any unsigned integer-like type.
template <class Nat>
[[nodiscard]] Nat isqrt_generic(const Nat& n)
{
    if (n < 2) {
        return n;
    }
    // start from a power of two at or above the root
    std::size_t bits = 0;
    if constexpr (requires { msb(n); }) {
        bits = static_cast<std::size_t>(msb(n)) + 1;
    } else {
        for (Nat m = n; m != 0; m >>= 1) {
            ++bits;
        }
    }
    Nat x = Nat(1) << (bits / 2 + 1);
    Nat y = (x + n / x) / 2;
    while (y < x) {
        x = y;
        y = (x + n / x) / 2;
    }
    return x;
}

} // namespace detail

/// Triangular number t(t+1)/2, checked.
[[nodiscard]] inline Natural triangle(Natural t)
{
    // one of t, t+1 is even; halve it before multiplying
    const Natural t1 = detail::checked_add(t, 1);
    return (t % 2 == 0) ? detail::checked_mul(t / 2, t1) : detail::checked_mul(t, t1 / 2);
}

[[nodiscard]] inline Natural pair(Natural m, Natural i)
{
    return detail::checked_add(triangle(detail::checked_add(m, i)), i);
}

/// Exact inverse of pair: returns (m, i). The first component never exceeds j.
[[nodiscard]] inline std::pair<Natural, Natural> unpair(Natural j)
{
    // largest s with s(s+1)/2 <= j, compared in 128 bits so the search
    // never overflows near the top of the range
    using Wide = unsigned __int128;
    auto tri = [](Natural t) { return Wide{t} * (Wide{t} + 1) / 2; };
    Natural s = (detail::isqrt(j / 2) + 1) * 2;
    while (s > 0 && tri(s) > j) {
        --s;
    }
    while (tri(s + 1) <= j) {
        ++s;
    }
    const Natural i = j - static_cast<Natural>(tri(s));
    return {s - i, i};
}

/// Arbitrary-precision variants.
template <class Nat>
[[nodiscard]] Nat pair_generic(const Nat& m, const Nat& i)
{
    const Nat s = m + i;
    return s * (s + 1) / 2 + i;
}

template <class Nat>
[[nodiscard]] std::pair<Nat, Nat> unpair_generic(const Nat& j)
{
    Nat s = (detail::isqrt_generic(Nat(8 * j + 1)) - 1) / 2;
    const Nat i = j - s * (s + 1) / 2;
    return {Nat(s - i), i};
}

} // namespace jt
