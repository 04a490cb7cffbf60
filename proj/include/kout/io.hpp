#pragma once

// On-disk forms of a KOutDigraph.
//
//   JSON:   {"n": int, "k": int, "endpoints": [[int x k] x n]}
//   binary: "KOUT1", u64 n, u64 k, then n*k u32 endpoints, all little-endian,
//           row-major (vertex-major, label-minor).

#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kout/digraph.hpp"
#include "kout/error.hpp"

namespace kout {

enum class Format { json, binary };

inline constexpr std::string_view kBinaryMagic = "KOUT1";

inline nlohmann::json to_json(const KOutDigraph& g) {
  nlohmann::json rows = nlohmann::json::array();
  for (Vertex v = 0; v < g.n(); ++v) rows.push_back(std::vector<Vertex>(g.out(v).begin(), g.out(v).end()));
  return {{"n", g.n()}, {"k", g.k()}, {"endpoints", std::move(rows)}};
}

namespace detail {

inline void put_le(std::string& out, std::uint64_t x, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<char>((x >> (8 * i)) & 0xff));
}

inline std::uint64_t get_le(std::string_view in, std::size_t& pos, int bytes, const char* what) {
  if (in.size() - pos < static_cast<std::size_t>(bytes))
    throw ParseError(std::string("truncated binary digraph while reading ") + what, pos);
  std::uint64_t x = 0;
  for (int i = 0; i < bytes; ++i) x |= std::uint64_t(static_cast<unsigned char>(in[pos + i])) << (8 * i);
  pos += bytes;
  return x;
}

inline KOutDigraph from_json_value(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("k") || !j.contains("endpoints"))
    throw ValidationError("digraph JSON must be an object with keys n, k, endpoints");
  const auto n = j.at("n").get<std::int64_t>();
  const auto k = j.at("k").get<std::int64_t>();
  if (n < 1 || k < 0) throw ValidationError("digraph JSON: need n >= 1 and k >= 0");
  const auto& rows = j.at("endpoints");
  if (!rows.is_array() || rows.size() != static_cast<std::size_t>(n))
    throw ValidationError("digraph JSON: endpoints must hold n rows");
  std::vector<Vertex> flat;
  flat.reserve(static_cast<std::size_t>(n * k));
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != static_cast<std::size_t>(k))
      throw ValidationError("digraph JSON: every row must hold k endpoints");
    for (const auto& e : row) {
      const auto x = e.get<std::int64_t>();
      if (x < 0 || x >= n)
        throw ValidationError("digraph JSON: endpoint " + std::to_string(x) + " outside [0, " +
                              std::to_string(n) + ")");
      flat.push_back(static_cast<Vertex>(x));
    }
  }
  return KOutDigraph(static_cast<std::size_t>(n), static_cast<std::size_t>(k), std::move(flat));
}

}  // namespace detail

inline std::string serialize(const KOutDigraph& g, Format fmt = Format::binary) {
  if (fmt == Format::json) return to_json(g).dump();
  std::string out(kBinaryMagic);
  out.reserve(out.size() + 16 + 4 * g.arc_count());
  detail::put_le(out, g.n(), 8);
  detail::put_le(out, g.k(), 8);
  for (Vertex e : g.endpoints()) detail::put_le(out, e, 4);
  return out;
}

/// Accepts either form; the binary magic selects the binary decoder.
inline KOutDigraph deserialize(std::string_view bytes) {
  if (bytes.substr(0, kBinaryMagic.size()) == kBinaryMagic) {
    std::size_t pos = kBinaryMagic.size();
    const auto n = detail::get_le(bytes, pos, 8, "n");
    const auto k = detail::get_le(bytes, pos, 8, "k");
    if (n == 0) throw ValidationError("binary digraph: n must be >= 1");
    if (k != 0 && (n > (SIZE_MAX / 4) / k || 4 * n * k > bytes.size() - pos))
      throw ParseError("truncated binary digraph: header promises " + std::to_string(n) + " x " +
                           std::to_string(k) + " endpoints",
                       bytes.size());
    std::vector<Vertex> ends(n * k);
    for (auto& e : ends) {
      const std::size_t at = pos;
      const auto x = detail::get_le(bytes, pos, 4, "endpoints");
      if (x >= n)
        throw ValidationError("binary digraph: endpoint " + std::to_string(x) + " at byte " +
                              std::to_string(at) + " is not below n = " + std::to_string(n));
      e = static_cast<Vertex>(x);
    }
    if (pos != bytes.size()) throw ParseError("trailing bytes after binary digraph", pos);
    return KOutDigraph(n, k, std::move(ends));
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed digraph JSON: ") + e.what(), e.byte);
  }
  try {
    return detail::from_json_value(j);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("digraph JSON: ") + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading", path);
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed", path);
  return data;
}

inline void write_file(const std::string& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing", path);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("write failed", path);
}

}  // namespace kout
