#include "mgonal/arith.hpp"

#include <algorithm>
#include <cmath>

namespace mgonal::arith {

u128 isqrt(u128 n) {
  if (n < 2) return n;
  // Seed from long double, then fix up with exact comparisons.
  u128 r = static_cast<u128>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

i128 exact_sqrt(i128 n) {
  if (n < 0) return -1;
  auto r = static_cast<i128>(isqrt(static_cast<u128>(n)));
  return r * r == n ? r : -1;
}

i64 gcd(i64 a, i64 b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

int ord(i128 a, i64 p, int cap) {
  if (a == 0) return cap;
  int e = 0;
  while (a % p == 0) {
    a /= p;
    ++e;
  }
  return e;
}

i64 ipow(i64 p, int e) {
  i64 r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > (INT64_C(1) << 62) / p) throw ResourceError("p-power budget exceeded");
    r *= p;
  }
  return r;
}

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<i64> prime_factors(i64 n) {
  std::vector<i64> out;
  n = n < 0 ? -n : n;
  for (i64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

int legendre(i128 a, i64 p) {
  i128 r = mod(a, p);
  if (r == 0) return 0;
  // Euler's criterion.
  i128 result = 1, base = r;
  i64 e = (p - 1) / 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result == 1 ? 1 : -1;
}

std::string to_string(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  u128 u = neg ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
  std::string s;
  while (u > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

}  // namespace mgonal::arith
