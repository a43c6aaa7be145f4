#include <doctest.h>

#include <cstdint>
#include <string>
#include <vector>

#include "mvrr/bug_tracker.hpp"
#include "mvrr/codec.hpp"
#include "mvrr/lww_value.hpp"

using namespace mvrr;
namespace bt = mvrr::bug_tracker;

TEST_CASE("state round-trip") {
  const auto order = empty_order<std::string>();
  const auto s = write(initial(order), "a", std::string("x"));
  const Bytes bytes = encode_state(s);
  CHECK(decode_state(std::span<const std::uint8_t>(bytes), order) == s);

  // Exact layout of ({((a,1),x)}, {a:1}) under the empty order.
  const Bytes expected{'M', 'V', 'R', 'R', 1, 0,
                       0,   0,   0,   1,                    // entry count
                       0,   0,   0,   1,   'a',             // replica
                       0,   0,   0,   0,   0, 0, 0, 1,      // counter
                       0,   0,   0,   1,   'x',             // value
                       0,   0,   0,   1,                    // context count
                       0,   0,   0,   1,   'a', 0, 0, 0, 0, 0, 0, 0, 1};
  CHECK(bytes == expected);
}

TEST_CASE("equal states built in different orders encode identically") {
  const auto order = bt::status_order();
  const auto s0 = initial(order);
  const auto a = write(s0, "a", bt::closed_fixed);
  const auto b = write(s0, "b", bt::closed_irreproducible);
  const auto c = write(s0, "c", bt::open);
  const auto m1 = merge(merge(a, b), c);
  const auto m2 = merge(c, merge(b, a));
  REQUIRE(m1 == m2);
  CHECK(encode_state(m1) == encode_state(m2));
}

TEST_CASE("lww values round-trip") {
  const auto order = lww_order();
  const auto s = merge(write(initial(order), "a", LwwValue{"p", -4, "a", 1}),
                       write(initial(order), "b", LwwValue{"q", 9, "b", 1}));
  const auto bytes = encode_state(s);
  CHECK(decode_state(std::span<const std::uint8_t>(bytes), order) == s);
}

TEST_CASE("decode errors") {
  const auto order = empty_order<std::string>();
  const auto s = merge(write(initial(order), "a", std::string("x")),
                       write(initial(order), "b", std::string("y")));
  const Bytes good = encode_state(s);
  auto decode = [&](const Bytes &bytes) {
    return decode_state(std::span<const std::uint8_t>(bytes), order);
  };

  SUBCASE("every truncation is malformed") {
    for (std::size_t n = 0; n < good.size(); ++n) {
      const Bytes cut(good.begin(), good.begin() + static_cast<std::ptrdiff_t>(n));
      CHECK_THROWS_AS(decode(cut), DecodeError);
    }
  }
  SUBCASE("truncation reports an offset inside the input") {
    const Bytes cut(good.begin(), good.begin() + 12);
    try {
      decode(cut);
      FAIL("expected DecodeError");
    } catch (const DecodeError &e) {
      CHECK(e.offset() <= cut.size());
    }
  }
  SUBCASE("version mismatch is its own error") {
    Bytes bad = good;
    bad[4] = 2;
    CHECK_THROWS_AS(decode(bad), VersionMismatchError);
  }
  SUBCASE("bad magic") {
    Bytes bad = good;
    bad[0] = 'X';
    CHECK_THROWS_AS(decode(bad), DecodeError);
  }
  SUBCASE("trailing bytes") {
    Bytes bad = good;
    bad.push_back(0);
    CHECK_THROWS_AS(decode(bad), DecodeError);
  }
  SUBCASE("policy kind mismatch") {
    CHECK_THROWS_AS(decode_state(std::span<const std::uint8_t>(good), bt::status_order()),
                    DecodeError);
  }
  SUBCASE("uncovered dot") {
    ByteWriter w;
    w.put_raw(kStateMagic);
    w.put_u8(kStateFormatVersion);
    w.put_u8(0);
    w.put_u32(1);
    w.put_string("a");
    w.put_u64(3);
    w.put_string("x");
    w.put_u32(1);
    w.put_string("a");
    w.put_u64(2);
    CHECK_THROWS_AS(decode(w.bytes()), DecodeError);
  }
  SUBCASE("non-canonical entry order") {
    ByteWriter w;
    w.put_raw(kStateMagic);
    w.put_u8(kStateFormatVersion);
    w.put_u8(0);
    w.put_u32(2);
    for (const char *r : {"b", "a"}) {
      w.put_string(r);
      w.put_u64(1);
      w.put_string("x");
    }
    w.put_u32(2);
    for (const char *r : {"a", "b"}) {
      w.put_string(r);
      w.put_u64(1);
    }
    CHECK_THROWS_AS(decode(w.bytes()), DecodeError);
  }
}
