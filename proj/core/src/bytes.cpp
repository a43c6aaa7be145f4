#include "mvrr/bytes.hpp"

#include "mvrr/errors.hpp"

namespace mvrr {

void ByteWriter::put_u32(std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8)
    out_.push_back(static_cast<std::uint8_t>(v >> shift));
}

void ByteWriter::put_u64(std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8)
    out_.push_back(static_cast<std::uint8_t>(v >> shift));
}

void ByteWriter::put_string(std::string_view s) {
  put_u32(static_cast<std::uint32_t>(s.size()));
  out_.insert(out_.end(), s.begin(), s.end());
}

void ByteReader::need(std::size_t n, const char *what) const {
  if (remaining() < n)
    throw DecodeError(std::string("truncated input reading ") + what, offset());
}

std::uint8_t ByteReader::get_u8() {
  need(1, "u8");
  return in_[pos_++];
}

std::uint32_t ByteReader::get_u32() {
  need(4, "u32");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i)
    v = (v << 8) | in_[pos_++];
  return v;
}

std::uint64_t ByteReader::get_u64() {
  need(8, "u64");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i)
    v = (v << 8) | in_[pos_++];
  return v;
}

std::string ByteReader::get_string() {
  const std::size_t start = offset();
  const std::uint32_t len = get_u32();
  if (remaining() < len)
    throw DecodeError("length prefix " + std::to_string(len) + " exceeds input",
                      start);
  std::string s(reinterpret_cast<const char *>(in_.data() + pos_), len);
  pos_ += len;
  return s;
}

ByteReader ByteReader::get_block() {
  const std::size_t start = offset();
  const std::uint32_t len = get_u32();
  if (remaining() < len)
    throw DecodeError("length prefix " + std::to_string(len) + " exceeds input",
                      start);
  ByteReader block(in_.subspan(pos_, len), offset());
  pos_ += len;
  return block;
}

void ByteReader::expect_end(const char *what) const {
  if (!at_end())
    throw DecodeError(std::string("trailing bytes after ") + what, offset());
}

} // namespace mvrr
