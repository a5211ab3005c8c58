#include <doctest.h>

#include <fstream>
#include <sstream>

#include "mgonal/cache.hpp"
#include "tmpdir.hpp"

using namespace mgonal;

namespace {

std::uint64_t le64(const std::string& s, std::size_t at) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(s[at + static_cast<std::size_t>(i)]);
  return v;
}

}  // namespace

TEST_SUITE("cache") {
  TEST_CASE("byte layout") {
    const auto set = represented_set(MgonalForm(5, {1, 3}), 70, Domain::Int);
    std::ostringstream os;
    write_set(os, set);
    const auto s = os.str();
    CHECK(s.substr(0, 4) == "MGRS");
    CHECK(s[4] == 1);
    CHECK(s[5] == 1);
    CHECK(le64(s, 6) == 5);
    CHECK(le64(s, 14) == 2);
    CHECK(le64(s, 22) == 1);
    CHECK(le64(s, 30) == 3);
    CHECK(le64(s, 38) == 70);
    REQUIRE(s.size() == 46 + 2 * 8);
    for (i64 N = 0; N <= 70; ++N) {
      const auto w = le64(s, 46 + 8 * static_cast<std::size_t>(N / 64));
      CHECK(((w >> (N % 64)) & 1) == (set.contains(N) ? 1u : 0u));
    }
  }

  TEST_CASE("round trip is bit-exact") {
    for (i64 bound : {1, 63, 64, 65, 1000, 4096}) {
      const auto set = represented_set(MgonalForm(7, {1, 1, 2}), bound, Domain::NonNeg);
      std::stringstream ss;
      write_set(ss, set);
      const auto back = read_set(ss);
      CHECK(back.form == set.form);
      CHECK(back.domain == set.domain);
      CHECK(back.bound == set.bound);
      CHECK(back.bits == set.bits);
    }
  }

  TEST_CASE("corruption is detected") {
    const auto set = represented_set(MgonalForm(6, {1, 2}), 200, Domain::NonNeg);
    std::ostringstream os;
    write_set(os, set);
    const auto good = os.str();

    auto bad = good;
    bad[0] = 'X';
    std::istringstream a(bad);
    CHECK_THROWS_AS(read_set(a), CacheError);

    bad = good;
    bad[4] = 2;
    std::istringstream b(bad);
    CHECK_THROWS_AS(read_set(b), CacheError);

    std::istringstream c(good.substr(0, good.size() - 3));
    CHECK_THROWS_AS(read_set(c), CacheError);

    std::istringstream d(good + "x");
    CHECK_THROWS_AS(read_set(d), CacheError);
  }

  TEST_CASE("SetCache reuses larger sets and replaces smaller ones") {
    test::TempDir dir;
    SetCache cache(dir.path());
    const MgonalForm f(9, {1, 1, 3});
    const auto big = cache.get(f, 5000, Domain::NonNeg);
    const auto file = cache.file_for(f, Domain::NonNeg);
    REQUIRE(std::filesystem::exists(file));
    CHECK(load_set(file).bound == 5000);

    const auto small = cache.get(f, 100, Domain::NonNeg);
    CHECK(small.bits == represented_set(f, 100, Domain::NonNeg).bits);
    CHECK(load_set(file).bound == 5000);

    const auto bigger = cache.get(f, 9000, Domain::NonNeg);
    CHECK(bigger.bits == represented_set(f, 9000, Domain::NonNeg).bits);
    CHECK(load_set(file).bound == 9000);
    CHECK(big.bits == represented_set(f, 5000, Domain::NonNeg).bits);

    CHECK(cache.file_for(f, Domain::Int) != file);
    CHECK(cache.file_for(f.with_m(10), Domain::NonNeg) != file);
    for (const auto& entry : std::filesystem::directory_iterator(dir.path()))
      CHECK(entry.path().extension() == ".mgrs");
  }

  TEST_CASE("SetCache rejects a corrupted file") {
    test::TempDir dir;
    SetCache cache(dir.path());
    const MgonalForm f(5, {1, 2});
    cache.get(f, 300, Domain::NonNeg);
    {
      std::ofstream out(cache.file_for(f, Domain::NonNeg), std::ios::binary | std::ios::trunc);
      out << "JUNKJUNK";
    }
    CHECK_THROWS_AS(cache.get(f, 300, Domain::NonNeg), CacheError);
  }
}
