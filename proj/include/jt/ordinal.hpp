/**
 * @file ordinal.hpp
 * @brief Ordinals below omega*K written as w*block + offset.
 */
#pragma once

#include "jt/errors.hpp"
#include "jt/pairing.hpp"

#include <charconv>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace jt {

struct Ordinal
{
    Natural block = 0;
    Natural offset = 0;

    friend constexpr auto operator<=>(const Ordinal&, const Ordinal&) = default;
    friend constexpr bool operator==(const Ordinal&, const Ordinal&) = default;
};

enum class OrdinalKind { zero, successor, limit };

[[nodiscard]] constexpr Ordinal finite(Natural n) { return {0, n}; }
[[nodiscard]] constexpr Ordinal limit_of(Natural block) { return {block, 0}; }

[[nodiscard]] constexpr std::strong_ordering ord_compare(const Ordinal& a, const Ordinal& b)
{
    return a <=> b;
}

[[nodiscard]] constexpr OrdinalKind ord_classify(const Ordinal& a)
{
    if (a.offset != 0) {
        return OrdinalKind::successor;
    }
    return a.block == 0 ? OrdinalKind::zero : OrdinalKind::limit;
}

[[nodiscard]] inline const char* to_string(OrdinalKind k)
{
    switch (k) {
    case OrdinalKind::zero: return "zero";
    case OrdinalKind::successor: return "successor";
    case OrdinalKind::limit: return "limit";
    }
    return "?";
}

/// Enumerates {x : x < w*c} as t -> w*(t mod c) + (t div c).
[[nodiscard]] inline Ordinal old_enum(Natural c, Natural t)
{
    if (c == 0) {
        throw InvalidInput("old_enum: c must be positive");
    }
    return {t % c, t / c};
}

/// Inverse of old_enum; x must lie below w*c.
[[nodiscard]] inline Natural old_index(Natural c, const Ordinal& x)
{
    if (c == 0 || x.block >= c) {
        throw InvalidInput("old_index: element not below w*" + std::to_string(c));
    }
    return detail::checked_add(detail::checked_mul(x.offset, c), x.block);
}

/// Plus a finite amount, checked.
[[nodiscard]] inline Ordinal plus(const Ordinal& a, Natural n)
{
    return {a.block, detail::checked_add(a.offset, n)};
}

[[nodiscard]] inline std::string format_ordinal(const Ordinal& a)
{
    if (a.block == 0) {
        return std::to_string(a.offset);
    }
    std::string s = "w*" + std::to_string(a.block);
    return a.offset == 0 ? s : s + "+" + std::to_string(a.offset);
}

namespace detail {

[[nodiscard]] inline Natural parse_natural(std::string_view s, std::string_view whole, std::size_t at)
{
    Natural v = 0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (s.empty() || ec != std::errc{} || ptr != last) {
        throw ParseError("bad natural '" + std::string(s) + "' in ordinal '" + std::string(whole) + "'", at);
    }
    return v;
}

} // namespace detail

/// Accepts "w*k+n", "w*k", "w", "w+n" and plain naturals.
[[nodiscard]] inline Ordinal parse_ordinal(std::string_view text)
{
    std::string s;
    for (char ch : text) {
        if (ch != ' ' && ch != '\t') {
            s.push_back(ch);
        }
    }
    if (s.empty()) {
        throw ParseError("empty ordinal", 0);
    }
    if (s[0] != 'w') {
        return finite(detail::parse_natural(s, text, 0));
    }
    Ordinal out{1, 0};
    std::size_t pos = 1;
    if (pos < s.size() && s[pos] == '*') {
        const auto plus_at = s.find('+', pos);
        const auto end = plus_at == std::string::npos ? s.size() : plus_at;
        out.block = detail::parse_natural(std::string_view(s).substr(pos + 1, end - pos - 1), text, pos + 1);
        pos = end;
    }
    if (pos < s.size()) {
        if (s[pos] != '+') {
            throw ParseError("expected '+' in ordinal '" + std::string(text) + "'", pos);
        }
        out.offset = detail::parse_natural(std::string_view(s).substr(pos + 1), text, pos + 1);
    }
    return out;
}

struct OrdinalHash
{
    std::size_t operator()(const Ordinal& a) const noexcept
    {
        return std::hash<Natural>{}(a.offset * 0x9E3779B97F4A7C15ULL ^ (a.block + 0x7F4A7C15ULL));
    }
};

} // namespace jt
