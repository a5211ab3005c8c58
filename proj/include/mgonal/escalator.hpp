#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mgonal/core_forms.hpp"
#include "mgonal/represent.hpp"

namespace mgonal {

class SetCache;

/// Node of the escalator tree over N_0. The root is the empty form with
/// truant 1; children escalate by a_{n+1} in [a_n, truant].
struct EscalatorNode {
  MgonalForm form;
  std::optional<i64> truant;
  std::optional<i64> universal_up_to;  ///< set on leaves: no truant up to this bound
  /// Truant differs from coeff_sum + 1, so the child range [a_n, truant]
  /// is not the range [a_n, a_1 + ... + a_n + 1].
  bool rule_divergence = false;
  std::vector<EscalatorNode> children;

  std::size_t depth() const { return form.rank(); }
};

/// Truant over N_0. When coeff_sum < m-1 the truant is coeff_sum + 1 (the
/// smallest nonzero value other than 1 is m); that shortcut is cross-checked
/// against the sieve and a mismatch throws std::logic_error. Without a truant
/// the bound doubles up to escalate_cap (no doubling when escalate_cap <= bound).
TruantResult node_truant(const MgonalForm& form, i64 bound, i64 escalate_cap = 0,
                         const SieveLimits& limits = {});

struct TreeOptions {
  std::size_t node_cap = 1'000'000;
  SieveLimits limits;
};

/// Escalator tree with nodes of rank <= max_depth; every node gets its truant
/// computed up to `bound`.
EscalatorNode build_tree(i64 m, int max_depth, i64 bound, const TreeOptions& opts = {});

/// Pre-order traversal.
void for_each_node(const EscalatorNode& root, const std::function<void(const EscalatorNode&)>& f);

/// (1, a_2, .., a_5) with a_i <= a_{i+1} <= a_1 + ... + a_i + 1, lexicographic.
std::vector<std::array<i64, 5>> t_d5();

/// Whether the diagonal quadratic form <a_1..a_n> represents every p-adic
/// integer for every prime p.
bool local_universal_quad(std::span<const i64> coeffs);

struct GammaEstimate {
  i64 gamma_lower;
  std::optional<MgonalForm> largest_truant_node;
};

/// Largest truant in build_tree(m, max_depth, bound): a lower bound for the
/// smallest gamma whose representation certifies universality.
GammaEstimate gamma_estimate(i64 m, i64 bound, int max_depth, const TreeOptions& opts = {});

/// N <= bound that are locally represented but have no N_0 representation.
struct ExceptionReport {
  MgonalForm form;
  i64 bound;
  std::vector<i64> exceptions;
  std::optional<i64> largest;
};

ExceptionReport exceptions(const MgonalForm& form, i64 bound, SetCache* cache = nullptr,
                           const SieveLimits& limits = {});

struct GrowthRow {
  i64 m;
  std::optional<i64> largest_exception;
  double ratio;  ///< largest / (m-2)^3, 0 for rows without exceptions
};

struct GrowthProbe {
  std::vector<i64> coeffs;
  i64 bound;
  std::vector<GrowthRow> rows;
  /// Least-squares slope of log(largest) on log(m-2) over nonempty rows.
  std::optional<double> fit_exponent;
  /// max ratio: the smallest C with largest <= C (m-2)^3 on every row.
  double fitted_constant;
};

GrowthProbe growth_probe(std::span<const i64> coeffs, i64 m_lo, i64 m_hi, i64 bound, int jobs = 1,
                         SetCache* cache = nullptr, const SieveLimits& limits = {});

}  // namespace mgonal
