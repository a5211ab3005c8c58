#include <doctest.h>

#include <set>

#include "gen.hpp"
#include "mgonal/escalator.hpp"
#include "mgonal/local_rep.hpp"
#include "oracles.hpp"

using namespace mgonal;

namespace {

using Tuple = std::vector<i64>;

std::set<Tuple> nodes_at(const EscalatorNode& root, std::size_t depth) {
  std::set<Tuple> out;
  for_each_node(root, [&](const EscalatorNode& n) {
    if (n.depth() == depth) out.emplace(n.form.coeffs().begin(), n.form.coeffs().end());
  });
  return out;
}

bool same_shape(const EscalatorNode& x, const EscalatorNode& y) {
  if (!std::equal(x.form.coeffs().begin(), x.form.coeffs().end(), y.form.coeffs().begin(), y.form.coeffs().end()))
    return false;
  if (x.truant != y.truant || x.universal_up_to != y.universal_up_to || x.children.size() != y.children.size())
    return false;
  for (std::size_t i = 0; i < x.children.size(); ++i)
    if (!same_shape(x.children[i], y.children[i])) return false;
  return true;
}

}  // namespace

TEST_SUITE("escalator") {
  TEST_CASE("node_truant examples") {
    for (i64 m = 8; m <= 20; ++m) {
      CHECK(node_truant(MgonalForm(m, {1}), 1000).truant == 2);
      CHECK(node_truant(MgonalForm(m, {1, 2}), 1000).truant == 4);
      CHECK(node_truant(MgonalForm(m, {1, 1}), 1000).truant == 3);
    }
    CHECK(node_truant(MgonalForm(8, {1, 2, 4}), 1000).truant == 9);
    const auto lagrange = node_truant(MgonalForm(4, {1, 1, 1, 1}), 1000, 4000);
    CHECK_FALSE(lagrange.found());
    CHECK(lagrange.bound == 4000);
    CHECK_THROWS_AS(node_truant(MgonalForm(30, {1, 2}), 2), std::invalid_argument);
  }

  TEST_CASE("depth-3 tree for m >= 8") {
    const std::set<Tuple> d2{{1, 1}, {1, 2}};
    const std::set<Tuple> d3{{1, 1, 1}, {1, 1, 2}, {1, 1, 3}, {1, 2, 2}, {1, 2, 3}, {1, 2, 4}};
    for (i64 m = 8; m <= 40; ++m) {
      const auto root = build_tree(m, 3, 100'000);
      CHECK(root.truant == 1);
      CHECK(root.depth() == 0);
      REQUIRE(root.children.size() == 1);
      CHECK(nodes_at(root, 2) == d2);
      CHECK(nodes_at(root, 3) == d3);
      for_each_node(root, [](const EscalatorNode& n) { CHECK(n.depth() == n.form.rank()); });
    }
  }

  TEST_CASE("children obey the escalation rule") {
    for (i64 m : {3, 4, 5, 6, 9, 13}) {
      const auto root = build_tree(m, 4, 20'000);
      for_each_node(root, [&](const EscalatorNode& n) {
        if (n.universal_up_to) CHECK(n.children.empty());
        for (const auto& c : n.children) {
          const i64 a = c.form.coeffs().back();
          CHECK(a >= std::max<i64>(1, n.form.max_coeff()));
          CHECK(a <= *n.truant);
        }
        if (n.truant && n.form.coeff_sum() < m - 1) CHECK(*n.truant == n.form.coeff_sum() + 1);
        if (n.truant) CHECK(n.rule_divergence == (*n.truant != n.form.coeff_sum() + 1));
      });
    }
  }

  TEST_CASE("tree determinism") {
    const auto a = build_tree(11, 4, 50'000);
    const auto b = build_tree(11, 4, 50'000);
    CHECK(same_shape(a, b));
    CHECK_THROWS_AS(build_tree(11, 4, 50'000, TreeOptions{10, {}}), ResourceError);
  }

  TEST_CASE("shortcut consistency against brute force") {
    for (i64 m = 8; m <= 30; m += 2) {
      const auto root = build_tree(m, 4, 100'000);
      for_each_node(root, [&](const EscalatorNode& n) {
        if (n.form.rank() == 0 || n.form.coeff_sum() >= m - 1) return;
        const std::vector<i64> a(n.form.coeffs().begin(), n.form.coeffs().end());
        REQUIRE(oracle::truant(m, a, n.form.coeff_sum() + 1) == n.form.coeff_sum() + 1);
        REQUIRE(node_truant(n.form, 100'000).truant == n.form.coeff_sum() + 1);
      });
    }
  }

  TEST_CASE("node sets stabilise in m") {
    // Depth-d nodes depend on m only through the shortcut, which covers every
    // depth-(d-1) node once m - 1 exceeds their largest coefficient sum.
    for (std::size_t d = 1; d <= 3; ++d) {
      const auto probe = build_tree(40, static_cast<int>(d) - 1, 1000);
      i64 max_sum = 0;
      for_each_node(probe, [&](const EscalatorNode& n) {
        if (n.depth() == d - 1) max_sum = std::max(max_sum, n.form.coeff_sum());
      });
      const i64 from = std::max<i64>(8, 2 * max_sum + 3);
      const auto reference = nodes_at(build_tree(from, static_cast<int>(d), 100'000), d);
      for (i64 m = from; m <= 40; ++m) CHECK(nodes_at(build_tree(m, static_cast<int>(d), 100'000), d) == reference);
    }
  }

  TEST_CASE("T_d5") {
    const auto t = t_d5();
    CHECK(static_cast<i64>(t.size()) == oracle::td5_count());
    CHECK(std::is_sorted(t.begin(), t.end()));
    CHECK(std::find(t.begin(), t.end(), std::array<i64, 5>{1, 1, 1, 1, 1}) != t.end());
    CHECK(std::find(t.begin(), t.end(), std::array<i64, 5>{1, 2, 4, 8, 16}) != t.end());
    for (const auto& x : t) {
      CHECK(x[0] == 1);
      i64 s = 1;
      for (int i = 1; i < 5; ++i) {
        CHECK(x[i - 1] <= x[i]);
        CHECK(x[i] <= s + 1);
        s += x[i];
      }
    }
  }

  TEST_CASE("depth-5 trees for m >= 31 coincide with T_d5") {
    std::set<Tuple> td5;
    for (const auto& x : t_d5()) td5.emplace(x.begin(), x.end());
    const auto reference = nodes_at(build_tree(31, 5, 2000), 5);
    CHECK(reference == td5);
    for (i64 m : {32, 37, 45}) CHECK(nodes_at(build_tree(m, 5, 2000), 5) == reference);
  }

  TEST_CASE("local_universal_quad examples") {
    CHECK(local_universal_quad(std::vector<i64>{1, 1, 1, 1, 1}));
    CHECK(local_universal_quad(std::vector<i64>{1, 1, 2, 4, 8}));
    CHECK_FALSE(local_universal_quad(std::vector<i64>{2, 2, 2, 2, 2}));
    CHECK_FALSE(local_universal_quad(std::vector<i64>{1, 1, 1}));
    CHECK(local_universal_quad(std::vector<i64>{1, 1, 1, 1}));
    CHECK_FALSE(local_universal_quad(std::vector<i64>{1, 1}));
    CHECK_FALSE(local_universal_quad(std::vector<i64>{1, 3, 9, 27}));
  }

  TEST_CASE("local_universal_quad matches congruence reachability") {
    gen::Rng rng(51);
    for (int it = 0; it < 60; ++it) {
      const auto a = rng.coeffs(static_cast<std::size_t>(rng.uniform(3, 5)), 9);
      bool universal = true;
      for (i64 p : {2, 3, 5, 7}) {
        const int e = (p == 2 ? 9 : 5);
        if (oracle::ipow(p, e) > 1 << 20) continue;
        const oracle::QuadReach reach(a, p, e);
        // Every residue class with small valuation must be reachable.
        for (i64 t = 1; t < oracle::ipow(p, e - 3); ++t) universal = universal && reach.reachable(t);
      }
      if (!universal) CHECK_FALSE(local_universal_quad(a));
    }
  }

  TEST_CASE("gamma_estimate") {
    for (i64 m = 8; m <= 14; ++m) {
      const auto g3 = gamma_estimate(m, 20'000, 3);
      const auto g4 = gamma_estimate(m, 20'000, 4);
      CHECK(g4.gamma_lower >= g3.gamma_lower);
      CHECK(g4.gamma_lower >= m - 1);
      REQUIRE(g4.largest_truant_node.has_value());
      CHECK(node_truant(*g4.largest_truant_node, 20'000).truant == g4.gamma_lower);
    }
  }

  TEST_CASE("exceptions") {
    CHECK(exceptions(MgonalForm(3, {1, 1, 1}), 1'000'000).exceptions.empty());
    const auto two = exceptions(MgonalForm(4, {1, 1}), 1000);
    for (i64 N : {3, 6, 7}) CHECK(std::find(two.exceptions.begin(), two.exceptions.end(), N) == two.exceptions.end());
    CHECK(two.exceptions.empty());

    gen::Rng rng(52);
    for (int it = 0; it < 20; ++it) {
      const i64 m = rng.uniform(5, 14);
      const MgonalForm f(m, rng.coeffs(static_cast<std::size_t>(rng.uniform(2, 5)), 6));
      const auto rep = exceptions(f, 3000);
      CHECK(std::is_sorted(rep.exceptions.begin(), rep.exceptions.end()));
      CHECK(rep.largest == (rep.exceptions.empty() ? std::nullopt : std::optional<i64>(rep.exceptions.back())));
      for (i64 N : rep.exceptions) {
        REQUIRE(locally_represented(f, N).overall);
        REQUIRE_FALSE(represents(f, N, Domain::NonNeg).has_value());
      }
    }
  }

  TEST_CASE("escalations of universal-up-to-bound forms stay universal") {
    const auto root = build_tree(5, 5, 5000);
    for_each_node(root, [&](const EscalatorNode& n) {
      if (!n.universal_up_to) return;
      for (i64 a = n.form.max_coeff(); a <= n.form.max_coeff() + 3; ++a)
        CHECK_FALSE(truant_up_to(n.form.escalate(a), 5000, Domain::NonNeg).found());
    });
  }

  TEST_CASE("growth_probe bookkeeping") {
    const std::vector<i64> ones{1, 1, 1, 1, 1};
    const auto g = growth_probe(ones, 5, 12, 50'000, 2);
    REQUIRE(g.rows.size() == 8);
    for (std::size_t i = 1; i < g.rows.size(); ++i) CHECK(g.rows[i - 1].m < g.rows[i].m);
    for (const auto& r : g.rows) {
      if (!r.largest_exception) CHECK(r.ratio == 0.0);
      CHECK(r.ratio <= g.fitted_constant);
    }
    const auto single = growth_probe(ones, 5, 12, 50'000, 1);
    for (std::size_t i = 0; i < g.rows.size(); ++i) CHECK(single.rows[i].largest_exception == g.rows[i].largest_exception);
    const auto universal = growth_probe(std::vector<i64>{1, 1, 1}, 3, 3, 1000, 1);
    CHECK(universal.rows[0].ratio == 0.0);
    CHECK_FALSE(universal.fit_exponent.has_value());
  }
}
