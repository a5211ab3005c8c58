#include <doctest.h>

#include <cmath>

#include "gen.hpp"
#include "mgonal/escalator.hpp"
#include "mgonal/local_rep.hpp"
#include "oracles.hpp"

using namespace mgonal;

namespace {

int e_max(const std::vector<i64>& a, i64 t, i64 p) {
  int e = oracle::ord(t, p) + 2 * (p == 2 ? 1 : 0) + 3;
  for (i64 c : a) e += oracle::ord(c, p);
  return e;
}

bool certificate_ok(const std::vector<i64>& a, i64 t, i64 p, const LocalCertificate& c) {
  if (c.modulus != oracle::ipow(p, c.exponent) || c.x.size() != a.size()) return false;
  i64 sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) sum = (sum + a[i] % c.modulus * (c.x[i] * c.x[i] % c.modulus)) % c.modulus;
  if (oracle::modp(sum - t, c.modulus) != 0) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (c.x[i] % c.modulus == 0) continue;
    const int s = oracle::ord(2 * a[i], p) + oracle::ord(c.x[i], p);
    if (2 * s + 1 <= c.exponent) return true;
  }
  return false;
}

}  // namespace

TEST_SUITE("local_rep") {
  TEST_CASE("kernel examples") {
    const std::vector<i64> two{1, 1}, three{1, 1, 1}, one{1};
    CHECK_FALSE(quad_diag_represents_zp(two, 3, 2).represented);
    for (i64 p : {3, 5, 7, 11, 13})
      for (i64 t = 0; t <= 500; ++t) REQUIRE(quad_diag_represents_zp(three, t, p).represented);
    CHECK(quad_diag_represents_zp(one, 4, 2).represented);
    CHECK_FALSE(quad_diag_represents_zp(one, 2, 2).represented);
    CHECK_FALSE(quad_diag_represents_zp(one, 5, 2).represented);
    CHECK(quad_diag_represents_zp(one, 17, 2).represented);
    CHECK(quad_diag_represents_zp(three, 0, 2).represented);
    // Sums of three squares miss 4^a (8b + 7).
    CHECK_FALSE(quad_diag_represents_zp(three, 7, 2).represented);
    CHECK_FALSE(quad_diag_represents_zp(three, 28, 2).represented);
    CHECK(quad_diag_represents_zp(three, 14, 2).represented);
  }

  TEST_CASE("kernel matches congruence reachability, is stable past the precision and certificates lift") {
    gen::Rng rng(31);
    for (int it = 0; it < 400; ++it) {
      const i64 p = rng.pick(std::vector<i64>{2, 3, 5, 7});
      const auto a = rng.coeffs(static_cast<std::size_t>(rng.uniform(1, 4)), 8);
      const i64 t = rng.uniform(1, 300);
      const int e = e_max(a, t, p);
      if (oracle::ipow(p, e + 2) > (1 << 22)) continue;
      const auto r = quad_diag_represents_zp(a, t, p);
      CHECK(local_precision(a, t, p) == e);
      const bool at_e = oracle::QuadReach(a, p, e).reachable(t);
      const bool past = oracle::QuadReach(a, p, e + 2).reachable(t);
      INFO("a=", a.size(), " t=", t, " p=", p);
      REQUIRE(r.represented == at_e);
      REQUIRE(at_e == past);
      if (r.represented) {
        REQUIRE(r.certificate.has_value());
        CHECK(certificate_ok(a, t, p, *r.certificate));
        for (int f = 1; f <= e; ++f) CHECK(oracle::QuadReach(a, p, f).reachable(t));
      }
    }
  }

  TEST_CASE("kernel for larger primes matches congruence reachability") {
    gen::Rng rng(34);
    int checked = 0;
    for (int it = 0; it < 400 && checked < 30; ++it) {
      const i64 p = rng.pick(std::vector<i64>{67, 71, 73});
      auto a = rng.coeffs(static_cast<std::size_t>(rng.uniform(1, 4)), 8);
      if (rng.coin(0.3)) a.back() *= p;
      i64 t = rng.uniform(1, 5000);
      if (rng.coin(0.3)) t *= p;
      const int e = e_max(a, t, p);
      if (std::pow(static_cast<double>(p), e) > 4e6) continue;
      ++checked;
      const auto r = quad_diag_represents_zp(a, t, p);
      REQUIRE(r.represented == oracle::QuadReach(a, p, e).reachable(t));
      if (r.represented) CHECK(certificate_ok(a, t, p, *r.certificate));
    }
    CHECK(checked >= 20);
    // -1 is a square mod 73 but not mod 71.
    CHECK(quad_diag_represents_zp(std::vector<i64>{1, 1}, 73, 73).represented);
    CHECK_FALSE(quad_diag_represents_zp(std::vector<i64>{1, 1}, 71, 71).represented);
  }

  TEST_CASE("mgonal_represents_zp case split") {
    const MgonalForm f(5, {1, 2, 3});
    for (i64 N = 0; N <= 100; ++N) {
      const auto v3 = mgonal_represents_zp(f, N, 3);
      CHECK(v3.represented);
      CHECK(v3.reason == LocalReason::UniversalCase1);
      const auto v2 = mgonal_represents_zp(f, N, 2);
      CHECK(v2.represented);
      CHECK(v2.reason == LocalReason::UniversalCase2);
    }
    const auto v = mgonal_represents_zp(MgonalForm(4, {1, 1}), 3, 2);
    CHECK_FALSE(v.represented);
    CHECK(v.reason == LocalReason::QuadReduction2);
    CHECK(mgonal_represents_zp(MgonalForm(7, {1, 1}), 3, 3).reason == LocalReason::QuadReductionOdd);
    CHECK(std::string(to_string(LocalReason::UniversalCase1)) == "UNIVERSAL_CASE_1");
    CHECK(std::string(to_string(LocalReason::QuadReduction2)) == "QUAD_REDUCTION_2");
    CHECK_THROWS_AS(mgonal_represents_zp(f, 5, 4), std::invalid_argument);
  }

  TEST_CASE("relevant_primes examples") {
    CHECK(relevant_primes(MgonalForm(5, {1, 1, 1})) == std::vector<i64>{2, 3});
    CHECK(relevant_primes(MgonalForm(7, {1, 2, 6})) == std::vector<i64>{2, 3, 5});
    CHECK(relevant_primes(MgonalForm(4, {1})) == std::vector<i64>{2});
  }

  TEST_CASE("locally_represented examples") {
    const MgonalForm tri(3, {1, 1, 1});
    for (i64 N = 0; N <= 10'000; ++N) REQUIRE(locally_represented(tri, N).overall);
    CHECK_FALSE(locally_represented(MgonalForm(4, {1, 1}), 3).overall);
    for (i64 m = 3; m <= 12; ++m) CHECK(locally_represented(MgonalForm(m, {1}), 0).overall);
  }

  TEST_CASE("local_exceptions examples") {
    CHECK(local_exceptions(MgonalForm(5, {1, 1, 1, 1, 1}), 1000).empty());
    const auto two_squares = local_exceptions(MgonalForm(4, {1, 1}), 10);
    for (i64 N : {3, 6, 7}) CHECK(std::find(two_squares.begin(), two_squares.end(), N) != two_squares.end());
    CHECK(local_exceptions(MgonalForm(4, {2, 2}), 5) == std::vector<i64>{1, 3, 5});
  }

  TEST_CASE("small ranks see primes of the target") {
    // Two squares and one square are regular, so local and global agree.
    const MgonalForm two(4, {1, 1}), one(4, {1});
    for (i64 N = 0; N <= 2000; ++N) {
      REQUIRE(locally_represented(two, N).overall == oracle::represents(4, {1, 1}, N, true));
      REQUIRE(locally_represented(one, N).overall == oracle::represents(4, {1}, N, true));
    }
    CHECK_FALSE(locally_represented(two, 21).overall);
  }

  TEST_CASE("global representation implies local") {
    gen::Rng rng(32);
    for (int it = 0; it < 60; ++it) {
      const i64 m = rng.uniform(3, 16);
      const auto a = rng.coeffs(static_cast<std::size_t>(rng.uniform(1, 5)), 9);
      const MgonalForm f(m, a);
      const auto set = represented_set(f, 2000, Domain::NonNeg);
      for (i64 N = 0; N <= 2000; ++N)
        if (set.contains(N)) REQUIRE(locally_represented(f, N).overall);
    }
  }

  TEST_CASE("local verdicts match congruences modulo prime powers") {
    gen::Rng rng(33);
    const std::vector<i64> small_primes{2, 3, 5, 7, 11, 13};
    int refuted = 0;
    for (int it = 0; it < 120; ++it) {
      const i64 m = rng.uniform(3, 14);
      const auto a = rng.coeffs(static_cast<std::size_t>(rng.uniform(1, 4)), 6);
      const i64 N = rng.uniform(1, 3000);
      const MgonalForm f(m, a);
      const auto prof = locally_represented(f, N);
      if (prof.overall) {
        for (i64 p : small_primes)
          for (int e = 1; oracle::ipow(p, e) <= 512; ++e) REQUIRE(oracle::mgonal_congruence(m, a, N, p, e));
      } else {
        for (const auto& v : prof.verdicts) {
          if (v.represented) continue;
          const i64 p = v.p;
          const i64 pc = oracle::ipow(p, oracle::ord(f.content(), p));
          int E;
          if (N % pc != 0) {
            E = oracle::ord(N, p) + 1;
          } else {
            std::vector<i64> b;
            i64 S = 0;
            for (i64 c : a) {
              b.push_back(c / pc);
              S += c / pc;
            }
            const i64 n = N / pc;
            const i64 T = p == 2 ? (m - 2) / 2 * n + S * ((m - 4) / 4) * ((m - 4) / 4)
                                 : 8 * (m - 2) * n + S * (m - 4) * (m - 4);
            E = oracle::ord(pc, p) + local_precision(b, T, p);
          }
          if (std::pow(static_cast<double>(p), E) > oracle::kCongruenceMax) continue;
          REQUIRE_FALSE(oracle::mgonal_congruence(m, a, N, p, E));
          ++refuted;
        }
      }
    }
    CHECK(refuted > 0);
  }

  TEST_CASE("locally universal quadratic forms give locally universal m-gonal forms") {
    for (const std::vector<i64>& a : {std::vector<i64>{1, 1, 1, 1, 1}, std::vector<i64>{1, 1, 2, 4, 8},
                                      std::vector<i64>{1, 2, 3, 4, 5}}) {
      REQUIRE(local_universal_quad(a));
      for (i64 m = 3; m <= 30; ++m) {
        const MgonalForm f(m, a);
        for (i64 N = 0; N <= 1000; ++N) REQUIRE(locally_represented(f, N).overall);
      }
    }
  }
}
