#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mgonal {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

/// Raised when a computation would exceed a configured memory, size or
/// p-power budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a persisted cache file is malformed.
class CacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace arith {

inline i128 mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::range_error("128-bit multiplication overflow");
  return r;
}

inline i128 add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw std::range_error("128-bit addition overflow");
  return r;
}

inline i128 sub(i128 a, i128 b) {
  i128 r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::range_error("128-bit subtraction overflow");
  return r;
}

inline i64 narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::range_error("value does not fit in 64 bits");
  return static_cast<i64>(v);
}

/// floor(sqrt(n)) for n >= 0.
u128 isqrt(u128 n);

/// Exact square root if n is a perfect square, else -1.
i128 exact_sqrt(i128 n);

inline i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

/// Non-negative residue of a modulo m (m > 0).
inline i128 mod(i128 a, i128 m) {
  i128 r = a % m;
  return r < 0 ? r + m : r;
}

i64 gcd(i64 a, i64 b);

/// p-adic valuation of a nonzero integer; a == 0 returns `cap`.
int ord(i128 a, i64 p, int cap = 1 << 20);

/// p^e, throwing ResourceError if it does not fit in 62 bits.
i64 ipow(i64 p, int e);

bool is_prime(i64 n);

/// Distinct prime factors in ascending order.
std::vector<i64> prime_factors(i64 n);

/// Legendre symbol (a | p) for odd prime p: -1, 0 or 1.
int legendre(i128 a, i64 p);

std::string to_string(i128 v);

}  // namespace arith
}  // namespace mgonal
