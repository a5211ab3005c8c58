#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace mgonal {

/// Fixed-length bit vector over 64-bit words; bit i lives in word i/64 at
/// position i%64. Bits past size() are kept zero.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

  std::size_t size() const { return nbits_; }
  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  /// this |= src << shift, truncated to size(). src may alias this.
  void or_shifted(const BitVector& src, std::size_t shift);

  /// First clear bit at index >= from.
  std::optional<std::size_t> find_first_zero(std::size_t from = 0) const;

  std::size_t count() const;
  bool is_subset_of(const BitVector& other) const;
  /// Copy of the first n bits (n <= size()).
  BitVector prefix(std::size_t n) const;

  bool operator==(const BitVector&) const = default;

  /// Clears the unused high bits of the last word.
  void mask_tail();

 private:
  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace mgonal
