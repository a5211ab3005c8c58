#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mgonal/arith.hpp"

namespace mgonal {

/// Variable domain for representations: nonnegative integers or all integers.
enum class Domain { NonNeg, Int };

const char* to_string(Domain d);
Domain parse_domain(const std::string& s);

/// The m-gonal form <a_1,...,a_n>_m = a_1 P_m(x_1) + ... + a_n P_m(x_n).
///
/// Coefficients are kept sorted ascending. The empty form (rank 0) is allowed
/// and only represents 0; it is the root of an escalator tree.
class MgonalForm {
 public:
  MgonalForm(i64 m, std::vector<i64> coeffs);

  static MgonalForm empty(i64 m) { return MgonalForm(m); }

  i64 m() const { return m_; }
  std::span<const i64> coeffs() const { return coeffs_; }
  std::size_t rank() const { return coeffs_.size(); }
  i64 coeff_sum() const { return sum_; }
  /// Largest coefficient a_n; 0 for the empty form.
  i64 max_coeff() const { return coeffs_.empty() ? 0 : coeffs_.back(); }
  i64 min_coeff() const { return coeffs_.empty() ? 0 : coeffs_.front(); }
  i64 content() const;

  /// Same form with one more coefficient appended (re-sorted).
  MgonalForm escalate(i64 a) const;
  MgonalForm with_m(i64 m) const { return MgonalForm(m, coeffs_); }

  /// Evaluates sum a_i P_m(x_i); x must have length rank().
  i64 evaluate(std::span<const i64> x) const;

  /// "<1,1,2>_8"
  std::string to_string() const;

  bool operator==(const MgonalForm&) const = default;

 private:
  explicit MgonalForm(i64 m);

  i64 m_;
  std::vector<i64> coeffs_;
  i64 sum_ = 0;
};

/// N = A(m-2) + B with 0 <= B <= m-3.
struct Decomposition {
  i64 A;
  i64 B;
  i64 m;

  i64 reconstruct() const { return A * (m - 2) + B; }
};

/// P_m(x) = (m-2)(x^2-x)/2 + x, exact; throws std::range_error on overflow.
i64 polygonal_number(i64 m, i64 x);

/// The x with P_m(x) = N, if any. For Domain::Int the nonnegative solution is
/// preferred when two exist (e.g. m = 3, where P_3(x) = P_3(-1-x)).
std::optional<i64> is_polygonal(i64 m, i64 N, Domain domain);

Decomposition decompose(i64 m, i64 N);

/// One value of a P_m(x) together with an x attaining it.
struct PolygonalValue {
  i64 value;
  i64 x;
};

/// All distinct values P_m(x) <= limit for x in the domain, ascending.
std::vector<PolygonalValue> polygonal_values(i64 m, i64 limit, Domain domain);

}  // namespace mgonal
