#include "mvrr/value_traits.hpp"

#include "mvrr/errors.hpp"

namespace mvrr {

std::int64_t value_traits<std::int64_t>::decode(ByteReader &in) {
  ByteReader block = in.get_block();
  const std::int64_t v = block.get_i64();
  block.expect_end("integer value");
  return v;
}

} // namespace mvrr
