#ifndef MVRR_BYTES_HPP
#define MVRR_BYTES_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mvrr {

using Bytes = std::vector<std::uint8_t>;

// Big-endian writer for the state wire format.
class ByteWriter {
public:
  void put_u8(std::uint8_t v) { out_.push_back(v); }
  void put_u32(std::uint32_t v);
  void put_u64(std::uint64_t v);
  void put_i64(std::int64_t v) { put_u64(static_cast<std::uint64_t>(v)); }
  // u32 length prefix, then the raw bytes.
  void put_string(std::string_view s);
  void put_raw(std::span<const std::uint8_t> raw) {
    out_.insert(out_.end(), raw.begin(), raw.end());
  }

  const Bytes &bytes() const & noexcept { return out_; }
  Bytes bytes() && noexcept { return std::move(out_); }

private:
  Bytes out_;
};

// Reader over a borrowed buffer; every accessor throws DecodeError with the
// offending offset when the buffer runs short.
class ByteReader {
public:
  explicit ByteReader(std::span<const std::uint8_t> in, std::size_t base = 0)
      : in_(in), base_(base) {}

  std::uint8_t get_u8();
  std::uint32_t get_u32();
  std::uint64_t get_u64();
  std::int64_t get_i64() { return static_cast<std::int64_t>(get_u64()); }
  std::string get_string();
  // u32 length prefix, then a reader over exactly that many bytes.
  ByteReader get_block();

  void expect_end(const char *what) const;

  std::size_t offset() const noexcept { return base_ + pos_; }
  bool at_end() const noexcept { return pos_ == in_.size(); }
  std::size_t remaining() const noexcept { return in_.size() - pos_; }

private:
  void need(std::size_t n, const char *what) const;

  std::span<const std::uint8_t> in_;
  std::size_t base_ = 0;
  std::size_t pos_ = 0;
};

} // namespace mvrr

#endif // MVRR_BYTES_HPP
