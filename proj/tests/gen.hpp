#pragma once
// Seeded generators for property tests.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace gen {

using i64 = std::int64_t;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  i64 uniform(i64 lo, i64 hi) { return std::uniform_int_distribution<i64>(lo, hi)(eng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(eng_); }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<i64>(v.size()) - 1))];
  }

  /// Sorted coefficient vector of the given rank with entries in [1, max_coeff].
  std::vector<i64> coeffs(std::size_t rank, i64 max_coeff) {
    std::vector<i64> a(rank);
    for (auto& c : a) c = uniform(1, max_coeff);
    std::sort(a.begin(), a.end());
    return a;
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace gen
