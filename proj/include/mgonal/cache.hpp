#pragma once

#include <filesystem>
#include <iosfwd>

#include "mgonal/represent.hpp"

namespace mgonal {

// On-disk layout of a RepresentedSet, all integers little-endian:
//   "MGRS" | version u8 = 1 | domain u8 (0 nonneg, 1 int) | m u64 | n u64 |
//   n x coeff u64 | bound u64 | ceil((bound+1)/64) x word u64
// Bit N is (word[N/64] >> (N%64)) & 1.

void write_set(std::ostream& os, const RepresentedSet& set);
/// Throws CacheError on bad magic, version, truncation or inconsistent header.
RepresentedSet read_set(std::istream& is);

/// Writes to a sibling temp file and renames it into place.
void save_set_atomic(const std::filesystem::path& file, const RepresentedSet& set);
RepresentedSet load_set(const std::filesystem::path& file);

/// Directory of sieve results keyed by (m, domain, coeffs). A cached set with
/// a larger bound answers smaller queries; a smaller one is recomputed at the
/// requested bound and replaces the file.
class SetCache {
 public:
  explicit SetCache(std::filesystem::path dir, SieveLimits limits = {});

  RepresentedSet get(const MgonalForm& form, i64 bound, Domain domain);
  std::filesystem::path file_for(const MgonalForm& form, Domain domain) const;
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  SieveLimits limits_;
};

/// Deterministic 64-bit FNV-1a hash of (m, domain, coeffs).
u64 cache_key(const MgonalForm& form, Domain domain);

}  // namespace mgonal
