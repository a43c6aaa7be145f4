#include "mvrr/lww_value.hpp"

namespace mvrr {

void value_traits<LwwValue>::encode(const LwwValue &v, ByteWriter &out) {
  ByteWriter inner;
  inner.put_string(v.payload);
  inner.put_i64(v.timestamp);
  inner.put_string(v.writer);
  inner.put_u64(v.sequence);
  out.put_u32(static_cast<std::uint32_t>(inner.bytes().size()));
  out.put_raw(inner.bytes());
}

LwwValue value_traits<LwwValue>::decode(ByteReader &in) {
  ByteReader block = in.get_block();
  LwwValue v;
  v.payload = block.get_string();
  v.timestamp = block.get_i64();
  v.writer = block.get_string();
  v.sequence = block.get_u64();
  block.expect_end("lww value");
  return v;
}

ValueOrder<LwwValue> lww_order() {
  return ValueOrder<LwwValue>(
      OrderKind::LwwTimestamped,
      [](const LwwValue &a, const LwwValue &b) {
        return a.arbitration_key() < b.arbitration_key();
      },
      "lww");
}

} // namespace mvrr
