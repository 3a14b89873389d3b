#pragma once

#include <cstdint>
#include <optional>

namespace ekr {

/// Checked combinatorial arithmetic. Each returns nullopt on 64-bit overflow.
std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b);
std::optional<std::uint64_t> binomial(std::uint64_t n, std::uint64_t k);
std::optional<std::uint64_t> factorial(std::uint64_t n);
/// n! / (n - r)!, zero when r > n.
std::optional<std::uint64_t> falling_factorial(std::uint64_t n, std::uint64_t r);

/// Throwing variants used where an overflow means the instance is out of reach.
std::uint64_t binomial_or_throw(std::uint64_t n, std::uint64_t k);
std::uint64_t factorial_or_throw(std::uint64_t n);
std::uint64_t falling_factorial_or_throw(std::uint64_t n, std::uint64_t r);
std::uint64_t mul_or_throw(std::uint64_t a, std::uint64_t b);

}  // namespace ekr
