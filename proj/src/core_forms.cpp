#include "mgonal/core_forms.hpp"

#include <algorithm>
#include <sstream>

namespace mgonal {

const char* to_string(Domain d) { return d == Domain::NonNeg ? "nonneg" : "int"; }

Domain parse_domain(const std::string& s) {
  if (s == "nonneg" || s == "N0" || s == "n0") return Domain::NonNeg;
  if (s == "int" || s == "Z" || s == "z") return Domain::Int;
  throw std::invalid_argument("unknown domain '" + s + "' (expected nonneg or int)");
}

MgonalForm::MgonalForm(i64 m) : m_(m) {
  if (m < 3) throw std::invalid_argument("polygon order m must be >= 3");
}

MgonalForm::MgonalForm(i64 m, std::vector<i64> coeffs) : m_(m), coeffs_(std::move(coeffs)) {
  if (m < 3) throw std::invalid_argument("polygon order m must be >= 3");
  for (i64 a : coeffs_) {
    if (a < 1) throw std::invalid_argument("form coefficients must be positive");
    if (__builtin_add_overflow(sum_, a, &sum_)) throw std::range_error("coefficient sum overflow");
  }
  std::sort(coeffs_.begin(), coeffs_.end());
}

i64 MgonalForm::content() const {
  i64 g = 0;
  for (i64 a : coeffs_) g = arith::gcd(g, a);
  return g;
}

MgonalForm MgonalForm::escalate(i64 a) const {
  std::vector<i64> c = coeffs_;
  c.push_back(a);
  return MgonalForm(m_, std::move(c));
}

i64 MgonalForm::evaluate(std::span<const i64> x) const {
  if (x.size() != coeffs_.size()) throw std::invalid_argument("witness length does not match rank");
  i128 total = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    total = arith::add(total, arith::mul(coeffs_[i], polygonal_number(m_, x[i])));
  return arith::narrow(total);
}

std::string MgonalForm::to_string() const {
  std::ostringstream os;
  os << '<';
  for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? "," : "") << coeffs_[i];
  os << ">_" << m_;
  return os.str();
}

i64 polygonal_number(i64 m, i64 x) {
  if (m < 3) throw std::invalid_argument("polygon order m must be >= 3");
  i128 xx = x;
  // x^2 - x = x(x-1) is always even.
  i128 t = arith::mul(xx, arith::sub(xx, 1)) / 2;
  return arith::narrow(arith::add(arith::mul(m - 2, t), xx));
}

std::optional<i64> is_polygonal(i64 m, i64 N, Domain domain) {
  if (m < 3) throw std::invalid_argument("polygon order m must be >= 3");
  if (N < 0) return std::nullopt;
  // (m-2)x^2 - (m-4)x - 2N = 0
  const i128 a = m - 2, b = m - 4;
  const i128 disc = arith::add(b * b, arith::mul(8 * a, N));
  const i128 r = arith::exact_sqrt(disc);
  if (r < 0) return std::nullopt;
  const i128 den = 2 * a;
  // The product of the roots is -2N/(m-2) <= 0, so at most one is positive;
  // for N = 0 the roots are 0 and (m-4)/(m-2).
  std::optional<i64> neg;
  for (const i128 num : {b + r, b - r}) {
    if (num % den != 0) continue;
    const i128 x = num / den;
    if (x >= 0) return static_cast<i64>(x);
    neg = static_cast<i64>(x);
  }
  if (domain == Domain::Int && neg) return neg;
  return std::nullopt;
}

Decomposition decompose(i64 m, i64 N) {
  if (m < 3) throw std::invalid_argument("polygon order m must be >= 3");
  if (N < 0) throw std::invalid_argument("decompose expects N >= 0");
  return {N / (m - 2), N % (m - 2), m};
}

std::vector<PolygonalValue> polygonal_values(i64 m, i64 limit, Domain domain) {
  std::vector<PolygonalValue> out;
  if (limit < 0) return out;
  for (i64 x = 0;; ++x) {
    i64 v = polygonal_number(m, x);
    if (v > limit) break;
    out.push_back({v, x});
  }
  if (domain == Domain::Int) {
    std::vector<PolygonalValue> neg;
    for (i64 x = -1;; --x) {
      i64 v = polygonal_number(m, x);
      if (v > limit) break;
      neg.push_back({v, x});
    }
    std::vector<PolygonalValue> merged;
    merged.reserve(out.size() + neg.size());
    // Stable merge keeps the nonnegative x first on equal values.
    std::merge(out.begin(), out.end(), neg.begin(), neg.end(), std::back_inserter(merged),
               [](const PolygonalValue& l, const PolygonalValue& r) { return l.value < r.value; });
    merged.erase(std::unique(merged.begin(), merged.end(),
                             [](const PolygonalValue& l, const PolygonalValue& r) { return l.value == r.value; }),
                 merged.end());
    out = std::move(merged);
  }
  return out;
}

}  // namespace mgonal
