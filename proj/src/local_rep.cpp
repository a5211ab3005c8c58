#include "mgonal/local_rep.hpp"

#include <algorithm>

namespace mgonal {

const char* to_string(LocalReason r) {
  switch (r) {
    case LocalReason::UniversalCase1: return "UNIVERSAL_CASE_1";
    case LocalReason::UniversalCase2: return "UNIVERSAL_CASE_2";
    case LocalReason::QuadReductionOdd: return "QUAD_REDUCTION_ODD";
    case LocalReason::QuadReduction2: return "QUAD_REDUCTION_2";
  }
  return "?";
}

int local_precision(std::span<const i64> coeffs, i128 t, i64 p) {
  int e = arith::ord(4, p) + 3;
  for (i64 a : coeffs) e += arith::ord(a, p);
  if (t != 0) e += arith::ord(t, p);
  return e;
}

namespace {

struct GoodSolution {
  std::vector<i128> y;
  std::size_t lift_index;
};

// Odd primes above this use closed forms instead of a residue search.
constexpr i64 kDirectSearchPrime = 64;

i128 inverse_mod_prime(i128 a, i64 p) {
  // p prime, a a unit.
  i128 result = 1, base = arith::mod(a, p);
  i64 e = p - 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

i128 pow_mod(i128 b, i128 e, i64 p) {
  i128 r = 1;
  b = arith::mod(b, p);
  for (; e > 0; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return r;
}

bool is_qr(i128 v, i64 p) { return pow_mod(v, (p - 1) / 2, p) == 1; }

// Tonelli-Shanks; v a nonzero square mod the odd prime p.
i128 sqrt_mod(i128 v, i64 p) {
  v = arith::mod(v, p);
  i64 q = p - 1;
  int s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  i128 z = 2;
  while (is_qr(z, p)) ++z;
  i128 c = pow_mod(z, q, p), x = pow_mod(v, (q + 1) / 2, p), t = pow_mod(v, q, p);
  int m = s;
  while (t != 1) {
    int i = 0;
    for (i128 u = t; u != 1; u = u * u % p) ++i;
    i128 b = c;
    for (int j = 0; j < m - i - 1; ++j) b = b * b % p;
    x = x * b % p;
    c = b * b % p;
    t = t * c % p;
    m = i;
  }
  return x;
}

// a x^2 + b y^2 = t mod p with a, b units and (x, y) != 0.
std::optional<std::pair<i128, i128>> solve_binary(i128 a, i128 b, i128 t, i64 p) {
  a = arith::mod(a, p);
  b = arith::mod(b, p);
  t = arith::mod(t, p);
  const i128 bi = inverse_mod_prime(b, p);
  if (t == 0) {
    const i128 r = arith::mod(-a * bi % p, p);
    if (!is_qr(r, p)) return std::nullopt;
    return std::pair<i128, i128>{1, sqrt_mod(r, p)};
  }
  for (i128 x = 0; x < p; ++x) {
    const i128 r = arith::mod((t - a * (x * x % p)) % p * bi % p, p);
    if (r == 0) {
      if (x != 0) return std::pair<i128, i128>{x, 0};
      continue;
    }
    if (is_qr(r, p)) return std::pair<i128, i128>{x, sqrt_mod(r, p)};
  }
  return std::nullopt;
}

// Odd p: closed-form version of the residue search below, linear in the rank.
std::optional<GoodSolution> find_good_solution_odd(const std::vector<i128>& a, i128 t, i64 p) {
  std::vector<std::size_t> units;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] % p != 0) units.push_back(i);
  GoodSolution sol{std::vector<i128>(a.size(), 0), a.size()};
  t = arith::mod(t, p);
  if (units.empty()) return std::nullopt;
  if (units.size() == 1) {
    const std::size_t i = units[0];
    const i128 r = arith::mod(t * inverse_mod_prime(a[i], p), p);
    if (r == 0 || !is_qr(r, p)) return std::nullopt;
    sol.y[i] = sqrt_mod(r, p);
  } else {
    const std::size_t i = units[0], j = units[1];
    i128 rest = t;
    if (units.size() >= 3 && t == 0) {
      sol.y[units[2]] = 1;
      rest = arith::mod(-a[units[2]], p);
    }
    const auto xy = solve_binary(a[i], a[j], rest, p);
    if (!xy) return std::nullopt;
    sol.y[i] = xy->first;
    sol.y[j] = xy->second;
  }
  for (std::size_t i : units)
    if (sol.y[i] % p != 0) {
      sol.lift_index = i;
      break;
    }
  return sol;
}

// A solution mod q (q = p, or 8 when p = 2) of sum a_i y_i^2 = t in which some
// coordinate with a unit coefficient is itself a unit.
std::optional<GoodSolution> find_good_solution(const std::vector<i128>& a, i128 t, i64 p) {
  if (p > kDirectSearchPrime) return find_good_solution_odd(a, t, p);
  const i64 q = p == 2 ? 8 : p;
  const std::size_t n = a.size();
  const std::size_t states = static_cast<std::size_t>(2 * q);
  // pred[i][s]: state before coordinate i-1 and the residue chosen, or -1.
  std::vector<std::vector<i64>> pred(n + 1, std::vector<i64>(states, -1));
  pred[0][0] = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const i64 ai = static_cast<i64>(arith::mod(a[i], q));
    const bool unit = a[i] % p != 0;
    for (std::size_t s = 0; s < states; ++s) {
      if (pred[i][s] < 0) continue;
      const i64 r = static_cast<i64>(s / 2), f = static_cast<i64>(s % 2);
      for (i64 x = 0; x < q; ++x) {
        const i64 r2 = (r + ai * x * x) % q;
        const i64 f2 = f | static_cast<i64>(unit && x % p != 0);
        const auto s2 = static_cast<std::size_t>(r2 * 2 + f2);
        if (pred[i + 1][s2] < 0) pred[i + 1][s2] = static_cast<i64>(s) * q + x;
      }
    }
  }
  auto s = static_cast<std::size_t>(arith::mod(t, q) * 2 + 1);
  if (pred[n][s] < 0) return std::nullopt;
  GoodSolution sol{std::vector<i128>(n, 0), n};
  for (std::size_t i = n; i-- > 0;) {
    const i64 code = pred[i + 1][s];
    sol.y[i] = code % q;
    s = static_cast<std::size_t>(code / q);
  }
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] % p != 0 && sol.y[i] % p != 0) {
      sol.lift_index = i;
      break;
    }
  return sol;
}

i128 form_value_mod(const std::vector<i128>& a, const std::vector<i128>& y, i128 M) {
  i128 v = 0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const i128 yj = arith::mod(y[j], M);
    v = (v + arith::mod(a[j], M) * (yj * yj % M)) % M;
  }
  return v;
}

// Lifts coordinate i of a good solution from level p^start to p^K.
void hensel_lift(const std::vector<i128>& a, std::vector<i128>& y, std::size_t i, i128 t, i64 p, int start, int K) {
  for (int j = start; j < K; ++j) {
    const i128 pj = arith::ipow(p, j), pj1 = arith::ipow(p, j + 1);
    const i128 diff = arith::mod(form_value_mod(a, y, pj1) - t, pj1);
    if (diff == 0) continue;
    if (p == 2) {
      y[i] += pj / 2;
    } else {
      const i128 c = diff / pj;
      const i128 d = arith::mod(-c * inverse_mod_prime(2 * a[i] * y[i], p), p);
      y[i] += d * pj;
    }
  }
}

}  // namespace

QuadLocalResult quad_diag_represents_zp(std::span<const i64> coeffs, i128 t, i64 p) {
  if (coeffs.empty()) throw std::invalid_argument("diagonal form needs at least one coefficient");
  if (!arith::is_prime(p)) throw std::invalid_argument("p must be prime");
  if (t < 0) throw std::invalid_argument("target must be nonnegative");
  if (t == 0) return {true, std::nullopt};
  for (i64 a : coeffs)
    if (a < 1) throw std::invalid_argument("coefficients must be positive");

  std::vector<i128> a(coeffs.begin(), coeffs.end());
  std::vector<int> scale(a.size(), 0);
  i128 rest = t;
  int depth = 0;
  while (true) {
    if (auto sol = find_good_solution(a, rest, p)) {
      // Build the certificate for the original coefficients.
      const std::size_t i = sol->lift_index;
      const int s = arith::ord(2, p) + arith::ord(coeffs[i], p) + scale[i];
      const int level = p == 2 ? 3 : 1;
      const int K = std::max(level, 2 * s + 1 - depth);
      const i64 modulus = arith::ipow(p, depth + K);
      hensel_lift(a, sol->y, i, rest, p, level, K);
      LocalCertificate cert{std::vector<i64>(a.size()), modulus, depth + K};
      for (std::size_t j = 0; j < a.size(); ++j)
        cert.x[j] = static_cast<i64>(arith::mod(arith::mul(sol->y[j], arith::ipow(p, scale[j])), modulus));
      return {true, std::move(cert)};
    }
    if (rest % p != 0) return {false, std::nullopt};
    // No good solution: every unit-coefficient coordinate is divisible by p.
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (a[j] % p != 0) {
        a[j] *= p;
        ++scale[j];
      } else {
        a[j] /= p;
      }
    }
    rest /= p;
    ++depth;
  }
}

LocalReason local_case(i64 m, i64 p) {
  if (p == 2) return m % 4 == 0 ? LocalReason::QuadReduction2 : LocalReason::UniversalCase2;
  return (m - 2) % p == 0 ? LocalReason::UniversalCase1 : LocalReason::QuadReductionOdd;
}

LocalVerdict mgonal_represents_zp(const MgonalForm& form, i64 N, i64 p) {
  if (!arith::is_prime(p)) throw std::invalid_argument("p must be prime");
  if (N < 0) throw std::invalid_argument("N must be nonnegative");
  if (form.rank() == 0) throw std::invalid_argument("local representation needs a nonempty form");
  const i64 m = form.m();
  const LocalReason reason = local_case(m, p);

  // Over Z_p only the p-part of the content matters: F = p^c F' with F' having a unit coefficient.
  const int c = arith::ord(form.content(), p);
  const i64 pc = arith::ipow(p, c);
  if (N % pc != 0) return {p, false, reason, std::nullopt};
  const i64 n = N / pc;
  std::vector<i64> coeffs(form.coeffs().begin(), form.coeffs().end());
  i128 S = 0;
  for (auto& a : coeffs) {
    a /= pc;
    S += a;
  }

  switch (reason) {
    case LocalReason::UniversalCase1:
    case LocalReason::UniversalCase2:
      return {p, true, reason, std::nullopt};
    case LocalReason::QuadReductionOdd: {
      const i128 t = arith::add(arith::mul(8 * i128{m - 2}, n), arith::mul(S, i128{m - 4} * (m - 4)));
      auto r = quad_diag_represents_zp(coeffs, t, p);
      return {p, r.represented, reason, std::move(r.certificate)};
    }
    case LocalReason::QuadReduction2: {
      const i128 h = (m - 2) / 2, c4 = (m - 4) / 4;
      const i128 t = arith::add(arith::mul(h, n), arith::mul(S, c4 * c4));
      auto r = quad_diag_represents_zp(coeffs, t, 2);
      return {p, r.represented, reason, std::move(r.certificate)};
    }
  }
  throw std::logic_error("unreachable");
}

std::vector<i64> relevant_primes(const MgonalForm& form) {
  std::vector<i64> ps{2};
  auto absorb = [&](i64 v) {
    for (i64 q : arith::prime_factors(v)) ps.push_back(q);
  };
  absorb(form.m() - 2);
  for (i64 a : form.coeffs()) absorb(a);
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  return ps;
}

LocalProfile locally_represented(const MgonalForm& form, i64 N) {
  if (N < 0) throw std::invalid_argument("N must be nonnegative");
  if (form.rank() == 0) return {form, N, {}, N == 0};
  std::vector<i64> primes = relevant_primes(form);
  const i64 m = form.m();

  // Away from 2(m-2) prod a_i the associated diagonal form is unimodular: of
  // rank >= 3 it represents everything, of rank 2 every unit, of rank 1 only
  // the square class of a. Small ranks therefore need the primes of the target.
  if (form.rank() <= 2) {
    const i128 S = form.coeff_sum();
    const i128 t = arith::add(arith::mul(8 * i128{m - 2}, N), arith::mul(S, i128{m - 4} * (m - 4)));
    if (t != 0) {
      for (i64 q : arith::prime_factors(arith::narrow(t))) primes.push_back(q);
      if (form.rank() == 1) {
        const i128 at = arith::mul(form.coeffs()[0], t);
        if (arith::exact_sqrt(at) < 0) {
          // Some prime sees a t outside the square class; the smallest such is the witness.
          for (i64 q = 3;; q += 2) {
            if (!arith::is_prime(q) || at % q == 0 || (m - 2) % q == 0) continue;
            if (arith::legendre(at, q) == -1) {
              primes.push_back(q);
              break;
            }
          }
        }
      }
      std::sort(primes.begin(), primes.end());
      primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    }
  }

  LocalProfile profile{form, N, {}, true};
  for (i64 p : primes) {
    profile.verdicts.push_back(mgonal_represents_zp(form, N, p));
    profile.overall = profile.overall && profile.verdicts.back().represented;
  }
  return profile;
}

std::vector<i64> local_exceptions(const MgonalForm& form, i64 bound) {
  if (bound < 1) throw std::invalid_argument("bound must be >= 1");
  std::vector<i64> out;
  for (i64 N = 0; N <= bound; ++N)
    if (!locally_represented(form, N).overall) out.push_back(N);
  return out;
}

}  // namespace mgonal
