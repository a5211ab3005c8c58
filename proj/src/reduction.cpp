#include "mgonal/reduction.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>

#include "mgonal/represent.hpp"

namespace mgonal {

using boost::multiprecision::cpp_int;

namespace {

i128 gcd128(i128 a, i128 b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

cpp_int big(i128 v) {
  const bool neg = v < 0;
  u128 u = neg ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
  cpp_int r = static_cast<u64>(u >> 64);
  r <<= 64;
  r += static_cast<u64>(u);
  return neg ? cpp_int(-r) : r;
}

int sgn(const cpp_int& v) { return v.sign(); }

// sign(a + b sqrt(u)), u >= 0
int sign_surd(const cpp_int& a, const cpp_int& b, const cpp_int& u) {
  const int sa = sgn(a), sb = u == 0 ? 0 : sgn(b);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  const cpp_int lhs = a * a, rhs = b * b * u;
  if (lhs == rhs) return 0;
  return lhs > rhs ? sa : sb;
}

// sign(a + b sqrt(u) + c sqrt(v)), u, v >= 0
int sign_two_surds(const cpp_int& a, const cpp_int& b, const cpp_int& u, const cpp_int& c, const cpp_int& v) {
  const int sx = sign_surd(a, b, u);
  const int sy = v == 0 ? 0 : sgn(c);
  if (sy == 0) return sx;
  if (sx == 0 || sx == sy) return sy;
  // |X| vs |Y| through X^2 - Y^2 = (a^2 + b^2 u - c^2 v) + 2ab sqrt(u)
  const int d = sign_surd(a * a + b * b * u - c * c * v, 2 * a * b, u);
  if (d == 0) return 0;
  return d > 0 ? sx : sy;
}

}  // namespace

Rational Rational::make(i128 n, i128 d) {
  if (d == 0) throw std::domain_error("zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const i128 g = gcd128(n, d);
  return g > 1 ? Rational{n / g, d / g} : Rational{n, d};
}

Rational Rational::operator+(const Rational& o) const {
  return make(arith::add(arith::mul(num, o.den), arith::mul(o.num, den)), arith::mul(den, o.den));
}
Rational Rational::operator-(const Rational& o) const {
  return make(arith::sub(arith::mul(num, o.den), arith::mul(o.num, den)), arith::mul(den, o.den));
}
Rational Rational::operator*(const Rational& o) const {
  return make(arith::mul(num, o.num), arith::mul(den, o.den));
}
std::string Rational::str() const {
  return den == 1 ? arith::to_string(num) : arith::to_string(num) + "/" + arith::to_string(den);
}

bool is_positive_definite(const std::vector<std::vector<i64>>& gram) {
  // Fraction-free Gaussian elimination; the k-th pivot is the k-th leading minor.
  const std::size_t n = gram.size();
  std::vector<std::vector<cpp_int>> M(n, std::vector<cpp_int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) M[i][j] = gram[i][j];
  cpp_int prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (M[k][k] <= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) M[i][j] = (M[k][k] * M[i][j] - M[i][k] * M[k][j]) / prev;
    prev = M[k][k];
  }
  return true;
}

i128 ReducedForm::value(std::span<const i128> y) const {
  i128 v = 0;
  for (std::size_t i = 0; i < gram.size(); ++i)
    for (std::size_t j = 0; j < gram.size(); ++j)
      v = arith::add(v, arith::mul(arith::mul(gram[i][j], y[i]), y[j]));
  return v;
}

i128 ReducedForm::centred_value_scaled(std::span<const i64> x, i64 beta) const {
  // S^2 Q(x - beta r) = Q(S x - beta 1) since every r_i = 1/S.
  const i128 S = base.coeff_sum();
  std::vector<i128> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = arith::sub(arith::mul(S, x[i]), beta);
  return value(y);
}

ReducedForm build_reduced_form(const MgonalForm& form) {
  if (form.rank() < 2) throw std::invalid_argument("reduced form needs rank >= 2");
  const auto a = form.coeffs();
  const std::size_t n = a.size() - 1;
  const i64 S = form.coeff_sum();
  ReducedForm rf{form, std::vector<std::vector<i64>>(n, std::vector<i64>(n)), {}, {}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      rf.gram[i][j] = i == j ? arith::narrow(arith::mul(a[i + 1], a[0] + a[i + 1]))
                             : arith::narrow(arith::mul(a[i + 1], a[j + 1]));
  rf.r.assign(n, Rational::make(1, S));

  // The centring vector solves gram r = (a_2..a_n).
  for (std::size_t i = 0; i < n; ++i) {
    Rational row;
    for (std::size_t j = 0; j < n; ++j) row = row + Rational::make(rf.gram[i][j], 1) * rf.r[j];
    if (!(row == Rational::make(a[i + 1], 1))) throw std::logic_error("centring vector does not solve its system");
  }
  Rational ar;
  for (std::size_t i = 0; i < n; ++i) ar = ar + Rational::make(a[i + 1], 1) * rf.r[i];
  rf.one_minus_ar = Rational::make(1, 1) - ar;
  if (!(rf.one_minus_ar == Rational::make(a[0], S))) throw std::logic_error("1 - sum a_i r_i != a_1 / S");
  if (!is_positive_definite(rf.gram)) throw std::logic_error("reduced form is not positive definite");
  return rf;
}

Rational reduced_rhs(const MgonalForm& form, i64 A, i64 B, i64 k) {
  if (form.rank() == 0) throw std::invalid_argument("empty form");
  const i128 m = form.m(), a1 = form.min_coeff(), S = form.coeff_sum();
  const i128 alpha = arith::add(2 * i128{A} + B, arith::mul(k, m - 4));
  const i128 beta = arith::add(B, arith::mul(k, m - 2));
  return Rational::make(arith::mul(alpha, a1), 1) - Rational::make(arith::mul(arith::mul(beta, beta), a1), S);
}

bool nonneg_certificate(const MgonalForm& form, i64 alpha, i64 beta) {
  if (alpha < 0 || beta < 0) return false;
  return arith::mul(form.max_coeff(), alpha) <= arith::mul(beta, beta);
}

bool sharp_nonneg_certificate(const MgonalForm& form, i64 alpha, i64 beta) {
  if (alpha < 0 || beta < 0 || form.rank() == 0) return false;
  // Minimising x_j over the solution sphere gives (S - a_j) alpha <= beta^2.
  const i64 rest = form.coeff_sum() - form.coeffs().front();
  return arith::mul(rest, alpha) <= arith::mul(beta, beta);
}

long double SurdBound::approx() const {
  const long double r = radicand > 0 ? std::sqrt(static_cast<long double>(radicand)) : 0.0L;
  return (static_cast<long double>(q) + sign * r) / static_cast<long double>(den);
}

int compare(i128 k, const SurdBound& b) {
  // sign(k den - q - sign sqrt(d))
  return sign_surd(big(k) * big(b.den) - big(b.q), cpp_int(-b.sign), big(b.radicand));
}

int compare(const SurdBound& x, const SurdBound& y, i128 shift) {
  // (x.q + shift x.den + sx sqrt(dx)) y.den - (y.q + sy sqrt(dy)) x.den
  const cpp_int a = (big(x.q) + big(shift) * big(x.den)) * big(y.den) - big(y.q) * big(x.den);
  return sign_two_surds(a, cpp_int(x.sign) * big(y.den), big(x.radicand), cpp_int(-y.sign) * big(x.den),
                        big(y.radicand));
}

const char* to_string(WindowStatus s) {
  switch (s) {
    case WindowStatus::Open: return "open";
    case WindowStatus::EmptyRadicand: return "empty_radicand";
    case WindowStatus::EmptyOrdering: return "empty_ordering";
  }
  return "?";
}

bool KWindow::contains(i64 k) const {
  if (status != WindowStatus::Open) return false;
  if (compare(k, alpha_minus) <= 0 || compare(k, alpha_plus) >= 0) return false;
  return !beta_plus.real() || compare(k, beta_plus) > 0;
}

KWindow k_window(const MgonalForm& form, i64 A, i64 B, i64 C) {
  const i64 m = form.m();
  if (form.rank() == 0) throw std::invalid_argument("empty form");
  if (A < 0 || B < 0 || B > m - 3) throw std::invalid_argument("(A, B) is not a decomposition for this m");
  if (C < 0) throw std::invalid_argument("C must be nonnegative");
  const i128 S = form.coeff_sum(), a1 = form.min_coeff(), an = form.max_coeff();
  const i128 mm2 = m - 2, mm4 = m - 4;
  const i128 four_m2sq = 4 * mm2 * mm2;

  // Alpha roots scaled by a_1 so that C S / a_1 stays integral.
  const i128 pa = arith::sub(arith::mul(S, mm4), 2 * B * mm2);
  const i128 inner_a = arith::sub(arith::mul(a1 * a1, arith::sub(arith::mul(S, 2 * i128{A} + B), i128{B} * B)),
                                  arith::mul(arith::mul(a1, C), S));
  const i128 da = arith::add(arith::mul(a1 * a1, arith::mul(pa, pa)), arith::mul(four_m2sq, inner_a));
  const i128 dena = 2 * a1 * mm2 * mm2;

  const i128 pb = arith::sub(arith::mul(an, mm4), 2 * B * mm2);
  const i128 db =
      arith::add(arith::mul(pb, pb), arith::mul(four_m2sq, arith::sub(arith::mul(an, 2 * i128{A} + B), i128{B} * B)));
  const i128 denb = 2 * mm2 * mm2;

  KWindow w{{a1 * pa, da, dena, -1}, {a1 * pa, da, dena, 1}, {pb, db, denb, -1}, {pb, db, denb, 1}, C,
            WindowStatus::Open};
  if (da < 0)
    w.status = WindowStatus::EmptyRadicand;
  else if (db >= 0 && compare(w.beta_plus, w.alpha_plus) >= 0)
    w.status = WindowStatus::EmptyOrdering;
  return w;
}

std::vector<FeasibleK> feasible_k(const MgonalForm& form, i64 N, i64 C, i64 k_max) {
  if (N < 0) throw std::invalid_argument("N must be nonnegative");
  const auto d = decompose(form.m(), N);
  const KWindow w = k_window(form, d.A, d.B, C);
  std::vector<FeasibleK> out;
  if (w.status != WindowStatus::Open) return out;
  // Approximate scan range; membership is decided exactly.
  long double lo = w.alpha_minus.approx();
  if (w.beta_plus.real()) lo = std::max(lo, w.beta_plus.approx());
  const i64 k_lo = std::max<i64>(0, static_cast<i64>(std::floor(lo)) - 2);
  const i64 k_hi = std::min<i64>(k_max, static_cast<i64>(std::ceil(w.alpha_plus.approx())) + 2);
  for (i64 k = k_lo; k <= k_hi; ++k) {
    if (!w.contains(k)) continue;
    const auto inst = system_for(form, d, k);
    if (auto x = solve_system(inst, Domain::NonNeg)) out.push_back({k, std::move(*x)});
  }
  return out;
}

i64 window_threshold(const MgonalForm& form, i64 B, i64 C, i64 gap, i64 limit) {
  for (i64 A = 0; A <= limit; ++A) {
    const KWindow w = k_window(form, A, B, C);
    if (w.status == WindowStatus::EmptyRadicand) continue;
    if (!w.beta_plus.real() || compare(w.beta_plus, w.alpha_plus, gap) < 0) return A;
  }
  throw ResourceError("window threshold not reached below the search limit");
}

}  // namespace mgonal
