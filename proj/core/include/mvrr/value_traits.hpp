#ifndef MVRR_VALUE_TRAITS_HPP
#define MVRR_VALUE_TRAITS_HPP

#include <concepts>
#include <cstdint>
#include <set>
#include <string>

#include "mvrr/bytes.hpp"

namespace mvrr {

/// Opaque, ordered replica identifier.
using ReplicaId = std::string;

/// Customization point for register payloads. Specializations provide text
/// rendering, the wire codec, and `stamp`, which binds a value to the write
/// that issues it (identity for plain values; LWW values record the writer).
template <typename V> struct value_traits;

template <> struct value_traits<std::string> {
  static std::string to_text(const std::string &v) { return v; }
  static std::string stamp(std::string v, const ReplicaId &, std::uint64_t) {
    return v;
  }
  static void encode(const std::string &v, ByteWriter &out) { out.put_string(v); }
  static std::string decode(ByteReader &in) { return in.get_string(); }
};

template <> struct value_traits<std::int64_t> {
  static std::string to_text(std::int64_t v) { return std::to_string(v); }
  static std::int64_t stamp(std::int64_t v, const ReplicaId &, std::uint64_t) {
    return v;
  }
  static void encode(std::int64_t v, ByteWriter &out) {
    ByteWriter inner;
    inner.put_i64(v);
    out.put_u32(8);
    out.put_raw(inner.bytes());
  }
  static std::int64_t decode(ByteReader &in);
};

template <typename V>
concept RegisterValue = std::totally_ordered<V> && std::copyable<V> &&
                        requires(const V &v, ByteWriter &w, ByteReader &r) {
                          { value_traits<V>::to_text(v) } -> std::convertible_to<std::string>;
                          { value_traits<V>::stamp(v, ReplicaId{}, std::uint64_t{}) } -> std::same_as<V>;
                          value_traits<V>::encode(v, w);
                          { value_traits<V>::decode(r) } -> std::same_as<V>;
                        };

template <RegisterValue V> std::string to_text(const V &v) {
  return value_traits<V>::to_text(v);
}

/// Renders a value set as `{a,b}` in set order.
template <RegisterValue V> std::string to_text(const std::set<V> &values) {
  std::string out = "{";
  bool first = true;
  for (const auto &v : values) {
    if (!first)
      out += ',';
    out += to_text(v);
    first = false;
  }
  out += '}';
  return out;
}

} // namespace mvrr

#endif // MVRR_VALUE_TRAITS_HPP
