#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mgonal/core_forms.hpp"

namespace mgonal {

/// Exact rational with positive denominator in lowest terms.
struct Rational {
  i128 num = 0;
  i128 den = 1;

  static Rational make(i128 n, i128 d);
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  bool operator==(const Rational&) const = default;
  std::string str() const;
  long double approx() const { return static_cast<long double>(num) / static_cast<long double>(den); }
};

/// Rank n-1 quadratic form Q obtained by eliminating x_1 from the system,
///   Q(x_2..x_n) = sum (a_1 a_i + a_i^2) x_i^2 + sum_{i<j} 2 a_i a_j x_i x_j,
/// with the centring vector r (every r_i = 1/(a_1+...+a_n)).
struct ReducedForm {
  MgonalForm base;
  std::vector<std::vector<i64>> gram;  ///< gram[i][j] for variables x_{i+2}, x_{j+2}
  std::vector<Rational> r;
  Rational one_minus_ar;  ///< 1 - sum_{i>=2} a_i r_i, equal to a_1 / sum a_i

  /// Q evaluated at an integer vector.
  i128 value(std::span<const i128> y) const;
  /// S^2 Q(x - beta r) with S = sum a_i; exact integer.
  i128 centred_value_scaled(std::span<const i64> x, i64 beta) const;
};

/// Throws std::invalid_argument for rank < 2 (the reduction needs x_1 plus one
/// more variable) and std::logic_error if the constructed data is inconsistent.
ReducedForm build_reduced_form(const MgonalForm& form);

/// Leading principal minors of an integer symmetric matrix, each > 0.
bool is_positive_definite(const std::vector<std::vector<i64>>& gram);

/// (2A+B+k(m-4)) a_1 - (B+k(m-2))^2 a_1 / sum a_i, the value Q must take.
Rational reduced_rhs(const MgonalForm& form, i64 A, i64 B, i64 k);

/// a_n alpha <= beta^2 with alpha, beta >= 0. Sound for rank <= 2 only:
/// <1,1,1> with x = (-3,5,8) gives alpha = 98, beta = 10.
bool nonneg_certificate(const MgonalForm& form, i64 alpha, i64 beta);

/// (S - a_1) alpha <= beta^2 with alpha, beta >= 0. Holds iff every real
/// solution of the system is nonnegative (when one exists).
bool sharp_nonneg_certificate(const MgonalForm& form, i64 alpha, i64 beta);

/// (q + sign * sqrt(radicand)) / den with den > 0.
struct SurdBound {
  i128 q;
  i128 radicand;
  i128 den;
  int sign;

  bool real() const { return radicand >= 0; }
  long double approx() const;
};

/// -1, 0, 1 for k compared with the bound; requires real().
int compare(i128 k, const SurdBound& b);
/// Sign of (x + shift) - y; both must be real.
int compare(const SurdBound& x, const SurdBound& y, i128 shift = 0);

enum class WindowStatus {
  Open,           ///< beta_+ < alpha_+
  EmptyRadicand,  ///< the alpha quadratic has no real roots
  EmptyOrdering,  ///< beta_+ >= alpha_+
};

const char* to_string(WindowStatus s);

/// The admissible k for N = A(m-2)+B: k in (alpha_-, alpha_+) keeps the
/// reduced right-hand side above C, k > beta_+ gives nonnegative solutions.
struct KWindow {
  SurdBound alpha_minus, alpha_plus, beta_minus, beta_plus;
  i64 C;
  WindowStatus status;

  bool contains(i64 k) const;
};

KWindow k_window(const MgonalForm& form, i64 A, i64 B, i64 C);

struct FeasibleK {
  i64 k;
  std::vector<i64> x;
};

/// Every k in [0, k_max] inside the window whose system has a nonnegative
/// solution, ascending, with one witness each.
std::vector<FeasibleK> feasible_k(const MgonalForm& form, i64 N, i64 C, i64 k_max);

/// Smallest A >= 0 with beta_+ + gap < alpha_+ (and a real alpha window) for
/// the given residue B. Throws ResourceError past `limit`.
i64 window_threshold(const MgonalForm& form, i64 B, i64 C, i64 gap, i64 limit = 100000000);

}  // namespace mgonal
