#ifndef MVRR_LWW_VALUE_HPP
#define MVRR_LWW_VALUE_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <tuple>

#include "mvrr/value_order.hpp"
#include "mvrr/value_traits.hpp"

namespace mvrr {

/// A payload carried together with the time it was written. `writer` and
/// `sequence` make every written value distinct even when clocks tie.
struct LwwValue {
  std::string payload;
  std::int64_t timestamp = 0;
  ReplicaId writer;
  std::uint64_t sequence = 0;

  /// Key of the LWW arbitration order.
  auto arbitration_key() const { return std::tie(timestamp, writer, sequence); }

  friend bool operator==(const LwwValue &, const LwwValue &) = default;
  friend std::strong_ordering operator<=>(const LwwValue &a, const LwwValue &b) {
    if (auto c = a.arbitration_key() <=> b.arbitration_key(); c != 0)
      return c;
    return a.payload <=> b.payload;
  }
};

template <> struct value_traits<LwwValue> {
  // Text form is `payload@timestamp`; the writer stamp is not printed.
  static std::string to_text(const LwwValue &v) {
    return v.payload + "@" + std::to_string(v.timestamp);
  }
  static LwwValue stamp(LwwValue v, const ReplicaId &writer, std::uint64_t sequence) {
    v.writer = writer;
    v.sequence = sequence;
    return v;
  }
  static void encode(const LwwValue &v, ByteWriter &out);
  static LwwValue decode(ByteReader &in);
};

/// Orders LWW values lexicographically by (timestamp, writer, sequence).
ValueOrder<LwwValue> lww_order();

} // namespace mvrr

#endif // MVRR_LWW_VALUE_HPP
