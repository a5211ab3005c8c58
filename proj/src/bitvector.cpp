#include "mgonal/bitvector.hpp"

#include <bit>
#include <stdexcept>

namespace mgonal {

void BitVector::or_shifted(const BitVector& src, std::size_t shift) {
  if (shift >= nbits_) return;
  const std::size_t ws = shift >> 6, bs = shift & 63;
  const std::size_t n = words_.size();
  const std::size_t srcn = src.words_.size();
  // Descending so that aliasing src == this reads words before overwriting them.
  for (std::size_t i = n; i-- > ws;) {
    const std::size_t j = i - ws;
    std::uint64_t w = j < srcn ? src.words_[j] << bs : 0;
    if (bs != 0 && j >= 1 && j - 1 < srcn) w |= src.words_[j - 1] >> (64 - bs);
    words_[i] |= w;
  }
  mask_tail();
}

void BitVector::mask_tail() {
  if (nbits_ & 63) words_.back() &= (std::uint64_t{1} << (nbits_ & 63)) - 1;
}

std::optional<std::size_t> BitVector::find_first_zero(std::size_t from) const {
  for (std::size_t wi = from >> 6; wi < words_.size(); ++wi) {
    std::uint64_t inv = ~words_[wi];
    if (wi == (from >> 6)) inv &= ~std::uint64_t{0} << (from & 63);
    if (inv != 0) {
      std::size_t i = (wi << 6) + static_cast<std::size_t>(std::countr_zero(inv));
      return i < nbits_ ? std::optional<std::size_t>(i) : std::nullopt;
    }
  }
  return std::nullopt;
}

std::size_t BitVector::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool BitVector::is_subset_of(const BitVector& other) const {
  if (other.nbits_ != nbits_) throw std::invalid_argument("bit vectors differ in length");
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

BitVector BitVector::prefix(std::size_t n) const {
  if (n > nbits_) throw std::invalid_argument("prefix longer than bit vector");
  BitVector out(n);
  for (std::size_t i = 0; i < out.words_.size(); ++i) out.words_[i] = words_[i];
  out.mask_tail();
  return out;
}

}  // namespace mgonal
