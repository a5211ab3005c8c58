#include "mgonal/escalator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "mgonal/cache.hpp"
#include "mgonal/local_rep.hpp"

namespace mgonal {

TruantResult node_truant(const MgonalForm& form, i64 bound, i64 escalate_cap, const SieveLimits& limits) {
  const i64 S = form.coeff_sum();
  if (S < form.m() - 1) {
    if (bound < S + 1) throw std::invalid_argument("bound must reach coeff_sum + 1 for the shortcut");
    const auto brute = truant_up_to(form, S + 1, Domain::NonNeg, limits);
    if (brute.truant != S + 1) throw std::logic_error("truant shortcut disagrees with sieve for " + form.to_string());
    return {S + 1, bound};
  }
  TruantResult r = truant_up_to(form, bound, Domain::NonNeg, limits);
  while (!r.found() && r.bound < escalate_cap) {
    r = truant_up_to(form, std::min(escalate_cap, 2 * r.bound), Domain::NonNeg, limits);
  }
  return r;
}

namespace {

struct TreeBuilder {
  int max_depth;
  std::size_t node_cap;
  std::size_t nodes = 0;

  void grow(EscalatorNode& node, const RepresentedSet& set) {
    if (++nodes > node_cap) throw ResourceError("escalator tree exceeds node cap");
    const auto tr = truant_of(set);
    if (!tr.found()) {
      node.universal_up_to = tr.bound;
      return;
    }
    node.truant = tr.truant;
    node.rule_divergence = *tr.truant != node.form.coeff_sum() + 1;
    if (static_cast<int>(node.depth()) >= max_depth) return;
    const i64 lo = node.form.rank() == 0 ? 1 : node.form.max_coeff();
    for (i64 a = lo; a <= *tr.truant; ++a) {
      auto child_set = extend_set(set, a);
      node.children.push_back(EscalatorNode{child_set.form, std::nullopt, std::nullopt, false, {}});
      grow(node.children.back(), child_set);
    }
  }
};

}  // namespace

EscalatorNode build_tree(i64 m, int max_depth, i64 bound, const TreeOptions& opts) {
  if (max_depth < 0) throw std::invalid_argument("max_depth must be nonnegative");
  if (bound < 1) throw std::invalid_argument("bound must be >= 1");
  const auto root_set = represented_set(MgonalForm::empty(m), bound, Domain::NonNeg, opts.limits);
  EscalatorNode root{root_set.form, std::nullopt, std::nullopt, false, {}};
  TreeBuilder{max_depth, opts.node_cap}.grow(root, root_set);
  return root;
}

void for_each_node(const EscalatorNode& root, const std::function<void(const EscalatorNode&)>& f) {
  f(root);
  for (const auto& c : root.children) for_each_node(c, f);
}

std::vector<std::array<i64, 5>> t_d5() {
  std::vector<std::array<i64, 5>> out;
  std::array<i64, 5> t{1, 0, 0, 0, 0};
  std::function<void(int, i64)> rec = [&](int i, i64 sum) {
    if (i == 5) {
      out.push_back(t);
      return;
    }
    for (i64 a = t[i - 1]; a <= sum + 1; ++a) {
      t[i] = a;
      rec(i + 1, sum + a);
    }
  };
  rec(1, 1);
  return out;
}

bool local_universal_quad(std::span<const i64> coeffs) {
  // A unimodular diagonal form of rank <= 2 misses some p-adic integer for
  // infinitely many p; rank >= 3 is universal at every p not dividing 2 prod a_i.
  if (coeffs.size() < 3) return false;
  std::vector<i64> primes{2};
  for (i64 a : coeffs)
    for (i64 q : arith::prime_factors(a)) primes.push_back(q);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

  for (i64 p : primes) {
    int max_ord = 0;
    for (i64 a : coeffs) max_ord = std::max(max_ord, arith::ord(a, p));
    // Representability of p^v u depends on v only through v mod 2 once v
    // passes the point where every coefficient has p-order <= 1.
    const int top = max_ord + (p == 2 ? 5 : 3);
    std::vector<i64> units;
    if (p == 2) {
      units = {1, 3, 5, 7};
    } else {
      units = {1};
      for (i64 u = 2; u < p; ++u)
        if (arith::legendre(u, p) == -1) {
          units.push_back(u);
          break;
        }
    }
    for (int v = 0; v <= top; ++v)
      for (i64 u : units)
        if (!quad_diag_represents_zp(coeffs, arith::mul(arith::ipow(p, v), u), p).represented) return false;
  }
  return true;
}

GammaEstimate gamma_estimate(i64 m, i64 bound, int max_depth, const TreeOptions& opts) {
  const auto tree = build_tree(m, max_depth, bound, opts);
  GammaEstimate g{0, std::nullopt};
  for_each_node(tree, [&](const EscalatorNode& n) {
    if (n.truant && *n.truant > g.gamma_lower) {
      g.gamma_lower = *n.truant;
      g.largest_truant_node = n.form;
    }
  });
  return g;
}

ExceptionReport exceptions(const MgonalForm& form, i64 bound, SetCache* cache, const SieveLimits& limits) {
  if (form.rank() < 1) throw std::invalid_argument("exceptions need a nonempty form");
  const auto set = cache ? cache->get(form, bound, Domain::NonNeg) : represented_set(form, bound, Domain::NonNeg, limits);
  ExceptionReport rep{form, bound, {}, std::nullopt};
  for (i64 N = 1; N <= bound; ++N) {
    if (set.contains(N)) continue;
    if (locally_represented(form, N).overall) rep.exceptions.push_back(N);
  }
  if (!rep.exceptions.empty()) rep.largest = rep.exceptions.back();
  return rep;
}

GrowthProbe growth_probe(std::span<const i64> coeffs, i64 m_lo, i64 m_hi, i64 bound, int jobs, SetCache* cache,
                         const SieveLimits& limits) {
  if (m_lo < 3 || m_hi < m_lo) throw std::invalid_argument("invalid m range");
  GrowthProbe probe{{coeffs.begin(), coeffs.end()}, bound, {}, std::nullopt, 0.0};
  const auto count = static_cast<std::size_t>(m_hi - m_lo + 1);
  probe.rows.resize(count);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      const i64 m = m_lo + static_cast<i64>(i);
      const auto rep = exceptions(MgonalForm(m, probe.coeffs), bound, cache, limits);
      const double cube = std::pow(static_cast<double>(m - 2), 3.0);
      probe.rows[i] = {m, rep.largest, rep.largest ? static_cast<double>(*rep.largest) / cube : 0.0};
    }
  };
  // The shared cache writes files; keep it single-threaded.
  const int workers = cache ? 1 : std::max(1, std::min<int>(jobs, static_cast<int>(count)));
  std::vector<std::thread> pool;
  for (int t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::vector<double> xs, ys;
  for (const auto& r : probe.rows) {
    probe.fitted_constant = std::max(probe.fitted_constant, r.ratio);
    if (r.largest_exception) {
      xs.push_back(std::log(static_cast<double>(r.m - 2)));
      ys.push_back(std::log(static_cast<double>(*r.largest_exception)));
    }
  }
  if (xs.size() >= 2) {
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom != 0) probe.fit_exponent = (n * sxy - sx * sy) / denom;
  }
  return probe;
}

}  // namespace mgonal
