#include "ekr/arith.hpp"

#include <string>

#include "ekr/error.hpp"

namespace ekr {

std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) return std::nullopt;
  return out;
}

std::optional<std::uint64_t> binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  // result * (n - i) / (i + 1) stays integral at every step.
  unsigned __int128 result = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    result = result * (n - i) / (i + 1);
    if (result > UINT64_MAX) return std::nullopt;
  }
  return static_cast<std::uint64_t>(result);
}

std::optional<std::uint64_t> falling_factorial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < r; ++i) {
    auto next = checked_mul(result, n - i);
    if (!next) return std::nullopt;
    result = *next;
  }
  return result;
}

std::optional<std::uint64_t> factorial(std::uint64_t n) { return falling_factorial(n, n); }

namespace {
std::uint64_t unwrap(std::optional<std::uint64_t> v, const char* what) {
  if (!v) throw InstanceTooLarge(std::string(what) + " overflows 64 bits");
  return *v;
}
}  // namespace

std::uint64_t binomial_or_throw(std::uint64_t n, std::uint64_t k) {
  return unwrap(binomial(n, k), "binomial coefficient");
}
std::uint64_t factorial_or_throw(std::uint64_t n) { return unwrap(factorial(n), "factorial"); }
std::uint64_t falling_factorial_or_throw(std::uint64_t n, std::uint64_t r) {
  return unwrap(falling_factorial(n, r), "falling factorial");
}
std::uint64_t mul_or_throw(std::uint64_t a, std::uint64_t b) {
  return unwrap(checked_mul(a, b), "product");
}

}  // namespace ekr
