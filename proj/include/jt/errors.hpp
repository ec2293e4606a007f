/**
 * @file errors.hpp
 * @brief Exception types shared by every jt module.
 */
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jt {

struct Error : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

/// Malformed caller input (bad permutation, oversized table, unknown letter...).
struct InvalidInput : Error
{
    using Error::Error;
};

struct ParseError : Error
{
    ParseError(const std::string& what, std::size_t pos)
        : Error(what + " at position " + std::to_string(pos)), position(pos)
    {}
    std::size_t position;
};

/// An element lies past the materialized layers, or past the range of
/// representable offsets.
struct BeyondHorizon : Error
{
    using Error::Error;
};

struct UnboundVariable : Error
{
    explicit UnboundVariable(const std::string& name)
        : Error("no binding for variable '" + name + "'"), variable(name)
    {}
    std::string variable;
};

struct NotMuForm : Error
{
    explicit NotMuForm(const std::string& sub)
        : Error("unary symbol above a product in " + sub), subterm(sub)
    {}
    std::string subterm;
};

struct NotOwned : Error
{
    using Error::Error;
};

struct NotFound : Error
{
    using Error::Error;
};

struct NoLayers : Error
{
    using Error::Error;
};

struct ConstraintViolation : Error
{
    ConstraintViolation(std::string which, std::size_t pos, const std::string& detail)
        : Error(which + " violated at index " + std::to_string(pos) + ": " + detail),
          rule(std::move(which)), position(pos)
    {}
    std::string rule;
    std::size_t position;
};

struct PreconditionViolation : Error
{
    using Error::Error;
};

struct EmptyFreeSet : Error
{
    using Error::Error;
};

} // namespace jt
