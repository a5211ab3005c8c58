#include "mgonal/cache.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

namespace mgonal {

namespace {

constexpr std::array<char, 4> kMagic{'M', 'G', 'R', 'S'};
constexpr std::uint8_t kVersion = 1;

void put_u64(std::ostream& os, u64 v) {
  std::array<char, 8> b{};
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(b.data(), 8);
}

u64 get_u64(std::istream& is) {
  std::array<unsigned char, 8> b{};
  if (!is.read(reinterpret_cast<char*>(b.data()), 8)) throw CacheError("truncated cache file");
  u64 v = 0;
  for (int i = 0; i < 8; ++i) v |= u64{b[i]} << (8 * i);
  return v;
}

std::uint8_t get_u8(std::istream& is) {
  char c;
  if (!is.get(c)) throw CacheError("truncated cache file");
  return static_cast<std::uint8_t>(c);
}

}  // namespace

void write_set(std::ostream& os, const RepresentedSet& set) {
  os.write(kMagic.data(), kMagic.size());
  os.put(static_cast<char>(kVersion));
  os.put(static_cast<char>(set.domain == Domain::NonNeg ? 0 : 1));
  put_u64(os, static_cast<u64>(set.form.m()));
  put_u64(os, set.form.rank());
  for (i64 a : set.form.coeffs()) put_u64(os, static_cast<u64>(a));
  put_u64(os, static_cast<u64>(set.bound));
  for (u64 w : set.bits.words()) put_u64(os, w);
}

RepresentedSet read_set(std::istream& is) {
  std::array<char, 4> magic{};
  if (!is.read(magic.data(), 4) || magic != kMagic) throw CacheError("cache magic mismatch");
  if (get_u8(is) != kVersion) throw CacheError("unsupported cache version");
  const std::uint8_t dom = get_u8(is);
  if (dom > 1) throw CacheError("bad domain byte in cache");
  const u64 m = get_u64(is);
  const u64 n = get_u64(is);
  if (m < 3 || m > (u64{1} << 40) || n > (u64{1} << 20)) throw CacheError("implausible cache header");
  std::vector<i64> coeffs(n);
  for (auto& a : coeffs) a = static_cast<i64>(get_u64(is));
  const u64 bound = get_u64(is);
  if (bound > (u64{1} << 40)) throw CacheError("implausible cache bound");
  const u64 nwords = (bound + 64) / 64;
  // Check the payload length up front so a damaged header cannot trigger a huge allocation.
  if (const auto here = is.tellg(); here != std::streampos(-1)) {
    is.seekg(0, std::ios::end);
    const auto end = is.tellg();
    is.seekg(here);
    if (static_cast<u64>(end - here) != 8 * nwords) throw CacheError("cache payload length mismatch");
  }
  BitVector bits(static_cast<std::size_t>(bound) + 1);
  for (auto& w : bits.words()) w = get_u64(is);
  if (is.peek() != std::char_traits<char>::eof()) throw CacheError("trailing bytes after cache payload");
  bits.mask_tail();
  try {
    return {MgonalForm(static_cast<i64>(m), std::move(coeffs)), dom == 0 ? Domain::NonNeg : Domain::Int,
            static_cast<i64>(bound), std::move(bits)};
  } catch (const std::invalid_argument& e) {
    throw CacheError(std::string("invalid form in cache: ") + e.what());
  }
}

void save_set_atomic(const std::filesystem::path& file, const RepresentedSet& set) {
  auto tmp = file;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw CacheError("cannot open " + tmp.string() + " for writing");
    write_set(os, set);
    if (!os.flush()) throw CacheError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, file);
}

RepresentedSet load_set(const std::filesystem::path& file) {
  std::ifstream is(file, std::ios::binary);
  if (!is) throw CacheError("cannot open " + file.string());
  return read_set(is);
}

u64 cache_key(const MgonalForm& form, Domain domain) {
  u64 h = 0xcbf29ce484222325ULL;
  auto mix = [&](u64 v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  mix(static_cast<u64>(form.m()));
  mix(domain == Domain::NonNeg ? 0 : 1);
  mix(form.rank());
  for (i64 a : form.coeffs()) mix(static_cast<u64>(a));
  return h;
}

SetCache::SetCache(std::filesystem::path dir, SieveLimits limits) : dir_(std::move(dir)), limits_(limits) {
  std::filesystem::create_directories(dir_);
}

std::filesystem::path SetCache::file_for(const MgonalForm& form, Domain domain) const {
  char name[40];
  std::snprintf(name, sizeof name, "%016llx.mgrs", static_cast<unsigned long long>(cache_key(form, domain)));
  return dir_ / name;
}

RepresentedSet SetCache::get(const MgonalForm& form, i64 bound, Domain domain) {
  const auto file = file_for(form, domain);
  if (std::filesystem::exists(file)) {
    auto cached = load_set(file);
    if (!(cached.form == form) || cached.domain != domain) throw CacheError("cache key collision at " + file.string());
    if (cached.bound >= bound) {
      cached.bits = cached.bits.prefix(static_cast<std::size_t>(bound) + 1);
      cached.bound = bound;
      return cached;
    }
  }
  auto fresh = represented_set(form, bound, domain, limits_);
  save_set_atomic(file, fresh);
  return fresh;
}

}  // namespace mgonal
