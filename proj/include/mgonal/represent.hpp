#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mgonal/bitvector.hpp"
#include "mgonal/core_forms.hpp"

namespace mgonal {

/// Hard caps for sieve construction.
struct SieveLimits {
  i64 max_bound = i64{1} << 27;
};

/// Values N <= bound represented by a form over a domain; bit N is set iff
/// sum a_i P_m(x_i) = N has a solution.
struct RepresentedSet {
  MgonalForm form;
  Domain domain;
  i64 bound;
  BitVector bits;

  bool contains(i64 N) const { return N >= 0 && N <= bound && bits.test(static_cast<std::size_t>(N)); }
};

/// Iterated sumset sieve, starting from {0}.
RepresentedSet represented_set(const MgonalForm& form, i64 bound, Domain domain,
                               const SieveLimits& limits = {});

/// Represented set of form.escalate(a), derived from the set of `form`.
RepresentedSet extend_set(const RepresentedSet& base, i64 a);

/// A witness x (aligned with form.coeffs()) with sum a_i P_m(x_i) = N.
std::optional<std::vector<i64>> represents(const MgonalForm& form, i64 N, Domain domain);

struct TruantResult {
  std::optional<i64> truant;  ///< smallest positive non-represented value
  i64 bound;                  ///< search bound used

  bool found() const { return truant.has_value(); }
  bool operator==(const TruantResult&) const = default;
};

TruantResult truant_up_to(const MgonalForm& form, i64 bound, Domain domain,
                          const SieveLimits& limits = {});
TruantResult truant_of(const RepresentedSet& set);

/// sum a_i x_i^2 = alpha, sum a_i x_i = beta.
struct SystemInstance {
  MgonalForm form;
  i64 alpha;
  i64 beta;
};

/// The system attached to N = A(m-2)+B and a choice of k:
/// alpha = 2A + B + k(m-4), beta = B + k(m-2).
SystemInstance system_for(const MgonalForm& form, const Decomposition& d, i64 k);

/// Calls `visit` for every solution of the system over the domain, in a
/// deterministic order, until it returns false.
void for_each_system_solution(const SystemInstance& inst, Domain domain,
                              const std::function<bool(std::span<const i64>)>& visit);

std::optional<std::vector<i64>> solve_system(const SystemInstance& inst, Domain domain);

/// Inclusive range of k for which the system of N can have a solution over
/// the domain: [0, A] for nonnegative variables, the Cauchy-Schwarz interval
/// (beta^2 <= (sum a_i) alpha, alpha >= 0) for integers. Empty when first > second.
std::pair<i64, i64> system_k_range(const MgonalForm& form, i64 N, Domain domain);

struct SystemWitness {
  i64 k;
  std::vector<i64> x;
};

/// Decides representability of N through the quadratic/linear system, trying
/// every k in system_k_range.
std::optional<SystemWitness> represents_via_system(const MgonalForm& form, i64 N, Domain domain);

}  // namespace mgonal
