#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mgonal/core_forms.hpp"

namespace mgonal {

/// Which branch of the local case split decided a prime.
enum class LocalReason {
  UniversalCase1,    ///< p odd, p | m-2
  UniversalCase2,    ///< p = 2, m not 0 mod 4
  QuadReductionOdd,  ///< p odd, p does not divide m-2
  QuadReduction2,    ///< p = 2, m = 0 mod 4
};

const char* to_string(LocalReason r);

/// A vector x modulo p^exponent with sum a_i x_i^2 = t (mod p^exponent) and a
/// coordinate i with 2*ord_p(2 a_i x_i) + 1 <= exponent, so Hensel's lemma
/// lifts it to a p-adic solution.
struct LocalCertificate {
  std::vector<i64> x;
  i64 modulus;
  int exponent;
};

struct QuadLocalResult {
  bool represented;
  std::optional<LocalCertificate> certificate;
};

/// Precision at which solvability of sum a_i x_i^2 = t (mod p^e) is
/// equivalent to solvability over Z_p: ord_p(t) + ord_p(4 prod a_i) + 3.
int local_precision(std::span<const i64> coeffs, i128 t, i64 p);

/// Decides whether the diagonal form <a_1..a_n> represents t over Z_p.
QuadLocalResult quad_diag_represents_zp(std::span<const i64> coeffs, i128 t, i64 p);

struct LocalVerdict {
  i64 p;
  bool represented;
  LocalReason reason;
  std::optional<LocalCertificate> certificate;  ///< for the associated diagonal form
};

LocalReason local_case(i64 m, i64 p);

/// Whether the m-gonal form represents N over Z_p.
LocalVerdict mgonal_represents_zp(const MgonalForm& form, i64 N, i64 p);

/// Primes dividing 2 (m-2) prod a_i.
std::vector<i64> relevant_primes(const MgonalForm& form);

struct LocalProfile {
  MgonalForm form;
  i64 N;
  std::vector<LocalVerdict> verdicts;
  bool overall;
};

/// Representability over Z_p for every prime p.
LocalProfile locally_represented(const MgonalForm& form, i64 N);

/// Ascending N <= bound that are not locally represented.
std::vector<i64> local_exceptions(const MgonalForm& form, i64 bound);

}  // namespace mgonal
