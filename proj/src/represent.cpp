#include "mgonal/represent.hpp"

#include <algorithm>

namespace mgonal {

namespace {

// Above this target, witness search skips the prefix sieves and runs a
// plain pruned depth-first search.
constexpr i64 kPrefixSieveLimit = i64{1} << 24;

void check_bound(i64 bound, const SieveLimits& limits) {
  if (bound < 1) throw std::invalid_argument("bound must be >= 1");
  if (bound > limits.max_bound)
    throw ResourceError("sieve bound " + std::to_string(bound) + " exceeds cap " +
                        std::to_string(limits.max_bound));
}

BitVector sieve_step(const BitVector& cur, i64 m, i64 a, Domain domain, i64 bound) {
  BitVector next = cur;  // x = 0 contributes the current set itself
  for (const auto& pv : polygonal_values(m, bound / a, domain))
    if (pv.value > 0) next.or_shifted(cur, static_cast<std::size_t>(pv.value * a));
  return next;
}

}  // namespace

RepresentedSet represented_set(const MgonalForm& form, i64 bound, Domain domain,
                               const SieveLimits& limits) {
  check_bound(bound, limits);
  BitVector bits(static_cast<std::size_t>(bound) + 1);
  bits.set(0);
  for (i64 a : form.coeffs()) bits = sieve_step(bits, form.m(), a, domain, bound);
  return {form, domain, bound, std::move(bits)};
}

RepresentedSet extend_set(const RepresentedSet& base, i64 a) {
  return {base.form.escalate(a), base.domain, base.bound,
          sieve_step(base.bits, base.form.m(), a, base.domain, base.bound)};
}

namespace {

struct WitnessSearch {
  const MgonalForm& form;
  Domain domain;
  std::vector<std::vector<PolygonalValue>> values;  // per coefficient, descending
  std::vector<BitVector> prefix;                    // prefix[i]: first i coefficients
  std::vector<i64> x;

  bool run(std::size_t i, i64 residual) {
    const i64 a = form.coeffs()[i];
    if (i == 0) {
      if (residual % a != 0) return false;
      auto r = is_polygonal(form.m(), residual / a, domain);
      if (!r) return false;
      x[0] = *r;
      return true;
    }
    for (const auto& pv : values[i]) {
      const i64 term = pv.value * a;
      if (term > residual) continue;
      const i64 rest = residual - term;
      if (!prefix.empty() && !prefix[i].test(static_cast<std::size_t>(rest))) continue;
      x[i] = pv.x;
      if (run(i - 1, rest)) return true;
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<i64>> represents(const MgonalForm& form, i64 N, Domain domain) {
  if (N < 0) return std::nullopt;
  const std::size_t n = form.rank();
  if (n == 0) return N == 0 ? std::optional<std::vector<i64>>(std::vector<i64>{}) : std::nullopt;

  WitnessSearch search{form, domain, {}, {}, std::vector<i64>(n, 0)};
  search.values.resize(n);
  for (std::size_t i = 1; i < n; ++i) {
    search.values[i] = polygonal_values(form.m(), N / form.coeffs()[i], domain);
    std::reverse(search.values[i].begin(), search.values[i].end());
  }
  if (N <= kPrefixSieveLimit) {
    search.prefix.reserve(n);
    BitVector cur(static_cast<std::size_t>(N) + 1);
    cur.set(0);
    search.prefix.push_back(cur);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      cur = sieve_step(cur, form.m(), form.coeffs()[i], domain, N);
      search.prefix.push_back(cur);
    }
  }
  if (search.run(n - 1, N)) return search.x;
  return std::nullopt;
}

TruantResult truant_of(const RepresentedSet& set) {
  auto z = set.bits.find_first_zero(1);
  if (z) return {static_cast<i64>(*z), set.bound};
  return {std::nullopt, set.bound};
}

TruantResult truant_up_to(const MgonalForm& form, i64 bound, Domain domain, const SieveLimits& limits) {
  if (bound < 1) throw std::invalid_argument("truant bound must be >= 1");
  return truant_of(represented_set(form, bound, domain, limits));
}

SystemInstance system_for(const MgonalForm& form, const Decomposition& d, i64 k) {
  const i64 m = form.m();
  return {form, arith::narrow(arith::add(2 * i128{d.A} + d.B, arith::mul(k, m - 4))),
          arith::narrow(arith::add(d.B, arith::mul(k, m - 2)))};
}

namespace {

// Enumerates the system by fixing x_2..x_{n-1} (0-based 1..n-2) and closing
// the pair (x_1, x_n) through the quadratic they satisfy.
class SystemEnumerator {
 public:
  SystemEnumerator(const SystemInstance& inst, Domain domain,
                   const std::function<bool(std::span<const i64>)>& visit)
      : a_(inst.form.coeffs().begin(), inst.form.coeffs().end()),
        domain_(domain),
        visit_(visit),
        x_(a_.size(), 0),
        suffix_(a_.size() + 1, 0),
        suffix_min_(a_.size() + 1, INT64_MAX) {
    // suffix_[i] = sum_{j>=i} a_j; together with a_0 this is the weight still free at depth i.
    for (std::size_t i = a_.size(); i-- > 1;) {
      suffix_[i] = suffix_[i + 1] + a_[i];
      suffix_min_[i] = std::min(suffix_min_[i + 1], a_[i]);
    }
    alpha0_ = inst.alpha;
    beta0_ = inst.beta;
  }

  void run() {
    if (a_.empty()) {
      if (alpha0_ == 0 && beta0_ == 0) visit_(x_);
      return;
    }
    if (a_.size() == 1) {
      if (beta0_ % a_[0] != 0) return;
      const i64 x = beta0_ / a_[0];
      if (domain_ == Domain::NonNeg && x < 0) return;
      if (arith::mul(a_[0], arith::mul(x, x)) != alpha0_) return;
      x_[0] = x;
      visit_(x_);
      return;
    }
    recurse(1, alpha0_, beta0_);
  }

 private:
  // Real feasibility of the variables {0} u {i..n-1} for the remaining targets.
  bool feasible(std::size_t i, i128 alpha, i128 beta) const {
    if (alpha < 0) return false;
    const i128 w = a_[0] + suffix_[i];  // total weight of free variables
    if (arith::mul(beta, beta) > arith::mul(w, alpha)) return false;
    if (domain_ == Domain::NonNeg) {
      if (beta < 0 || alpha < beta) return false;
      const i128 amin = std::min(a_[0], suffix_min_[i]);
      if (arith::mul(amin, alpha) > arith::mul(beta, beta)) return false;
    }
    return true;
  }

  bool recurse(std::size_t i, i128 alpha, i128 beta) {
    if (!feasible(i, alpha, beta)) return true;
    const std::size_t last = a_.size() - 1;
    if (i == last) return close(alpha, beta);
    const i128 a = a_[i];
    const i128 rest = a_[0] + suffix_[i + 1];  // weight left after fixing x_i
    // (beta - a t)^2 <= rest (alpha - a t^2)  <=>  a(a+rest) t^2 - 2 a beta t + beta^2 - rest alpha <= 0
    const i128 disc = arith::mul(arith::mul(a, rest), arith::sub(arith::mul(a + rest, alpha), arith::mul(beta, beta)));
    if (disc < 0) return true;
    const i128 s = static_cast<i128>(arith::isqrt(static_cast<u128>(disc)));
    const i128 den = a * (a + rest);
    i128 lo = arith::floor_div(arith::sub(arith::mul(a, beta), s + 1), den);
    i128 hi = arith::ceil_div(arith::add(arith::mul(a, beta), s + 1), den);
    if (domain_ == Domain::NonNeg) lo = std::max<i128>(lo, 0);
    for (i128 t = lo; t <= hi; ++t) {
      x_[i] = static_cast<i64>(t);
      if (!recurse(i + 1, alpha - a * t * t, beta - a * t)) return false;
    }
    return true;
  }

  // Solve a0 x0 + an xn = beta, a0 x0^2 + an xn^2 = alpha.
  bool close(i128 alpha, i128 beta) {
    const std::size_t n1 = a_.size() - 1;
    const i128 a0 = a_[0], an = a_[n1];
    // an(a0+an) y^2 - 2 beta an y + beta^2 - a0 alpha = 0
    const i128 inner = arith::mul(arith::mul(an, a0), arith::sub(arith::mul(a0 + an, alpha), arith::mul(beta, beta)));
    const i128 r = arith::exact_sqrt(inner);
    if (r < 0) return true;
    const i128 den = an * (a0 + an);
    const i128 base = arith::mul(beta, an);
    for (int sign : {-1, 1}) {
      if (sign == 1 && r == 0) break;
      const i128 num = base + sign * r;
      if (num % den != 0) continue;
      const i128 y = num / den;
      const i128 rem = beta - an * y;
      if (rem % a0 != 0) continue;
      const i128 x0 = rem / a0;
      if (domain_ == Domain::NonNeg && (x0 < 0 || y < 0)) continue;
      if (a0 * x0 * x0 + an * y * y != alpha) continue;
      x_[0] = static_cast<i64>(x0);
      x_[n1] = static_cast<i64>(y);
      if (!visit_(x_)) return false;
    }
    return true;
  }

  std::vector<i64> a_;
  Domain domain_;
  const std::function<bool(std::span<const i64>)>& visit_;
  std::vector<i64> x_;
  std::vector<i64> suffix_;
  std::vector<i64> suffix_min_;
  i64 alpha0_ = 0, beta0_ = 0;
};

}  // namespace

void for_each_system_solution(const SystemInstance& inst, Domain domain,
                              const std::function<bool(std::span<const i64>)>& visit) {
  SystemEnumerator(inst, domain, visit).run();
}

std::optional<std::vector<i64>> solve_system(const SystemInstance& inst, Domain domain) {
  std::optional<std::vector<i64>> out;
  for_each_system_solution(inst, domain, [&](std::span<const i64> x) {
    out.emplace(x.begin(), x.end());
    return false;
  });
  return out;
}

std::pair<i64, i64> system_k_range(const MgonalForm& form, i64 N, Domain domain) {
  const auto d = decompose(form.m(), N);
  if (domain == Domain::NonNeg) return {0, d.A};
  const i128 m = form.m(), S = form.coeff_sum(), A = d.A, B = d.B;
  if (S == 0) return {0, -1};
  // (B + k(m-2))^2 <= S (2A + B + k(m-4))
  const i128 qa = (m - 2) * (m - 2);
  const i128 qb = arith::sub(2 * B * (m - 2), S * (m - 4));
  const i128 qc = arith::sub(B * B, arith::mul(S, 2 * A + B));
  auto f = [&](i128 k) { return arith::add(arith::add(arith::mul(qa, arith::mul(k, k)), arith::mul(qb, k)), qc); };
  const i128 disc = arith::sub(arith::mul(qb, qb), arith::mul(4 * qa, qc));
  if (disc < 0) return {0, -1};
  const i128 s = static_cast<i128>(arith::isqrt(static_cast<u128>(disc)));
  i128 lo = arith::floor_div(-qb - s - 1, 2 * qa), hi = arith::ceil_div(-qb + s + 1, 2 * qa);
  while (lo <= hi && f(lo) > 0) ++lo;
  while (hi >= lo && f(hi) > 0) --hi;
  // Integer variables also satisfy sum a x^2 >= |sum a x|.
  hi = std::min<i128>(hi, A);
  if (m > 3) lo = std::max<i128>(lo, arith::ceil_div(-(A + B), m - 3));
  return {arith::narrow(lo), arith::narrow(hi)};
}

std::optional<SystemWitness> represents_via_system(const MgonalForm& form, i64 N, Domain domain) {
  if (N < 0) return std::nullopt;
  const auto d = decompose(form.m(), N);
  const auto [lo, hi] = system_k_range(form, N, domain);
  for (i64 k = lo; k <= hi; ++k) {
    if (auto x = solve_system(system_for(form, d, k), domain)) return SystemWitness{k, std::move(*x)};
  }
  return std::nullopt;
}

}  // namespace mgonal
