#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "klh/groups.hpp"
#include "klh/kl.hpp"
#include "klh/poly.hpp"

namespace klh {

enum class CacheErrorKind { IO, Format, Version, Context, Checksum };

struct CacheError : std::runtime_error {
  CacheError(CacheErrorKind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
  CacheErrorKind kind;
};

namespace detail {

constexpr std::uint32_t kCacheVersion = 1;
inline const char kCacheMagic[4] = {'K', 'L', 'H', 'C'};

inline void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

// Cursor over loaded bytes; every read is bounds-checked so truncated or
// padded files surface as Format errors, never as wild reads.
struct ByteReader {
  const std::string& bytes;
  std::size_t pos = 0;

  std::uint8_t u8() {
    if (pos + 1 > bytes.size()) throw CacheError(CacheErrorKind::Format, "cache file truncated");
    return static_cast<std::uint8_t>(bytes[pos++]);
  }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(u8()) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(u8()) << (8 * i);
    return v;
  }
  bool done() const { return pos == bytes.size(); }
};

}  // namespace detail

inline bool operator==(const KLTable& a, const KLTable& b) {
  return a.kind == b.kind && a.ctx == b.ctx && a.entries == b.entries;
}
inline bool operator!=(const KLTable& a, const KLTable& b) { return !(a == b); }

// File name a table is cached under; the version in the name keeps older
// builds from even opening files they cannot parse.
inline std::string cache_file_name(KLKind kind, const CoxeterContext& ctx) {
  return std::string("klh-") + (kind == KLKind::R ? "R" : "P") + "-" + ctx.str() + "-v" +
         std::to_string(detail::kCacheVersion) + ".bin";
}

// Serializes header plus entries in key order, then renames into place so a
// crash never leaves a half-written cache behind.
inline void save_table(const KLTable& table, const std::filesystem::path& path) {
  std::string payload;
  for (const auto& [key, poly] : table.entries) {
    detail::put_u32(payload, key.first);
    detail::put_u32(payload, key.second);
    std::uint32_t len = poly.is_zero() ? 0 : static_cast<std::uint32_t>(poly.degree()) + 1;
    detail::put_u32(payload, len);
    for (std::uint32_t i = 0; i < len; ++i)
      detail::put_u64(payload, static_cast<std::uint64_t>(poly.coeff(static_cast<int>(i))));
  }

  std::string blob(detail::kCacheMagic, 4);
  detail::put_u32(blob, detail::kCacheVersion);
  blob.push_back(table.kind == KLKind::R ? 'R' : 'P');
  blob.push_back(table.ctx.type == GroupType::A ? 'A' : 'D');
  detail::put_u32(blob, static_cast<std::uint32_t>(table.ctx.rank));
  detail::put_u64(blob, table.entries.size());
  detail::put_u64(blob, detail::fnv1a(payload));
  blob += payload;

  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CacheError(CacheErrorKind::IO, "cannot open " + tmp.string() + " for writing");
    out.write(blob.data(), static_cast<std::streamsize>(blob.size()));
    if (!out) throw CacheError(CacheErrorKind::IO, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw CacheError(CacheErrorKind::IO, "cannot move cache into place: " + ec.message());
  }
}

inline KLTable load_table(const std::filesystem::path& path) {
  std::string bytes;
  {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CacheError(CacheErrorKind::IO, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    bytes = std::move(buf).str();
  }
  detail::ByteReader r{bytes};
  for (char m : detail::kCacheMagic)
    if (r.u8() != static_cast<std::uint8_t>(m))
      throw CacheError(CacheErrorKind::Format, "not a cache file: " + path.string());
  std::uint32_t version = r.u32();
  if (version != detail::kCacheVersion)
    throw CacheError(CacheErrorKind::Version,
                     "cache version " + std::to_string(version) + ", expected " +
                         std::to_string(detail::kCacheVersion));
  std::uint8_t kind_byte = r.u8();
  if (kind_byte != 'R' && kind_byte != 'P')
    throw CacheError(CacheErrorKind::Format, "unknown table kind in cache header");
  std::uint8_t type_byte = r.u8();
  if (type_byte != 'A' && type_byte != 'D')
    throw CacheError(CacheErrorKind::Format, "unknown group type in cache header");
  std::uint32_t rank = r.u32();
  if (rank < 1 || rank > 64) throw CacheError(CacheErrorKind::Format, "rank out of range");
  std::uint64_t count = r.u64();
  std::uint64_t checksum = r.u64();

  if (detail::fnv1a(bytes.substr(r.pos)) != checksum)
    throw CacheError(CacheErrorKind::Checksum, "cache checksum mismatch: " + path.string());

  KLTable table{kind_byte == 'R' ? KLKind::R : KLKind::P,
                CoxeterContext(type_byte == 'A' ? GroupType::A : GroupType::D,
                               static_cast<int>(rank)),
                {}};
  for (std::uint64_t e = 0; e < count; ++e) {
    std::uint32_t y = r.u32();
    std::uint32_t w = r.u32();
    std::uint32_t len = r.u32();
    if (len > (1u << 16)) throw CacheError(CacheErrorKind::Format, "entry length out of range");
    std::vector<std::int64_t> coeffs(len);
    for (std::uint32_t i = 0; i < len; ++i) coeffs[i] = static_cast<std::int64_t>(r.u64());
    auto [it, fresh] = table.entries.emplace(std::make_pair(y, w), IntPolynomial(std::move(coeffs)));
    if (!fresh) throw CacheError(CacheErrorKind::Format, "duplicate entry in cache");
  }
  if (!r.done()) throw CacheError(CacheErrorKind::Format, "trailing bytes in cache file");
  return table;
}

// Loads and additionally pins the table to the expected kind and context, for
// callers that derived the path from a different source than the header.
inline KLTable load_table(const std::filesystem::path& path, KLKind kind,
                          const CoxeterContext& ctx) {
  KLTable table = load_table(path);
  if (table.kind != kind || table.ctx != ctx)
    throw CacheError(CacheErrorKind::Context,
                     "cache holds " + std::string(table.kind == KLKind::R ? "R" : "P") + " over " +
                         table.ctx.str() + ", expected " +
                         std::string(kind == KLKind::R ? "R" : "P") + " over " + ctx.str());
  return table;
}

}  // namespace klh
