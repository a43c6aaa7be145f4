#ifndef MVRR_CODEC_HPP
#define MVRR_CODEC_HPP

#include <array>
#include <cstdint>
#include <span>

#include "mvrr/bytes.hpp"
#include "mvrr/errors.hpp"
#include "mvrr/register.hpp"

namespace mvrr {

// Wire layout, all integers big-endian:
//   magic "MVRR" | version u8 | policy kind u8 |
//   entry count u32 | { replica str | counter u64 | value block }* |
//   context count u32 | { replica str | counter u64 }*
// where str and block are u32-length-prefixed. Entries are sorted by dot and
// context entries by replica, so equal states encode to equal bytes.
inline constexpr std::array<std::uint8_t, 4> kStateMagic = {'M', 'V', 'R', 'R'};
inline constexpr std::uint8_t kStateFormatVersion = 1;

template <RegisterValue V> Bytes encode_state(const RegisterState<V> &state) {
  ByteWriter out;
  out.put_raw(kStateMagic);
  out.put_u8(kStateFormatVersion);
  out.put_u8(static_cast<std::uint8_t>(state.policy().kind()));
  out.put_u32(static_cast<std::uint32_t>(state.entries().size()));
  for (const auto &[dot, v] : state.entries()) {
    out.put_string(dot.replica);
    out.put_u64(dot.counter);
    value_traits<V>::encode(v, out);
  }
  out.put_u32(static_cast<std::uint32_t>(state.context().size()));
  for (const auto &[replica, counter] : state.context().entries()) {
    out.put_string(replica);
    out.put_u64(counter);
  }
  return std::move(out).bytes();
}

/// Inverse of encode_state. Rejects anything encode_state would not produce:
/// unsorted or duplicate entries, zero counters, uncovered dots, trailing
/// bytes, or a policy kind different from `policy`'s.
template <RegisterValue V>
RegisterState<V> decode_state(std::span<const std::uint8_t> bytes, ValueOrder<V> policy) {
  ByteReader in(bytes);
  for (std::uint8_t expected : kStateMagic) {
    const std::size_t at = in.offset();
    if (in.get_u8() != expected)
      throw DecodeError("bad magic", at);
  }
  if (const std::uint8_t version = in.get_u8(); version != kStateFormatVersion)
    throw VersionMismatchError(version, kStateFormatVersion);

  const std::size_t kind_at = in.offset();
  const auto kind = order_kind_from_tag(in.get_u8());
  if (!kind)
    throw DecodeError("unknown policy kind", kind_at);
  if (*kind != policy.kind())
    throw DecodeError("state was encoded under a '" + std::string(to_string(*kind)) +
                          "' order, decoder given '" +
                          std::string(to_string(policy.kind())) + "'",
                      kind_at);

  typename RegisterState<V>::Entries entries;
  const std::uint32_t entry_count = in.get_u32();
  for (std::uint32_t i = 0; i < entry_count; ++i) {
    const std::size_t at = in.offset();
    Dot dot;
    dot.replica = in.get_string();
    dot.counter = in.get_u64();
    if (dot.counter == 0)
      throw DecodeError("dot counter is zero", at);
    if (!entries.empty() && !(entries.rbegin()->first < dot))
      throw DecodeError("entries not in canonical dot order", at);
    entries.emplace_hint(entries.end(), std::move(dot), value_traits<V>::decode(in));
  }

  VersionVector context;
  const std::uint32_t context_count = in.get_u32();
  ReplicaId previous;
  for (std::uint32_t i = 0; i < context_count; ++i) {
    const std::size_t at = in.offset();
    ReplicaId replica = in.get_string();
    const std::uint64_t counter = in.get_u64();
    if (counter == 0)
      throw DecodeError("context counter is zero", at);
    if (i > 0 && !(previous < replica))
      throw DecodeError("context not in canonical replica order", at);
    context.set(replica, counter);
    previous = std::move(replica);
  }
  in.expect_end("register state");

  for (const auto &[dot, v] : entries)
    if (!context.contains(dot))
      throw DecodeError("dot " + to_text(dot) + " not covered by context", in.offset());
  return RegisterState<V>::from_parts(std::move(entries), std::move(context),
                                      std::move(policy));
}

} // namespace mvrr

#endif // MVRR_CODEC_HPP
