#include <doctest.h>

#include <string>

#include "mvrr/bug_tracker.hpp"
#include "mvrr/scenario.hpp"

using namespace mvrr;

TEST_CASE("order blocks") {
  const auto doc = parse_document("order total low < medium < high\n");
  REQUIRE(doc.order);
  CHECK(doc.order->kind == OrderKind::TotalComparator);
  CHECK(doc.order->ranking == std::vector<std::string>{"low", "medium", "high"});
  CHECK(format_order(*doc.order) == "order total low < medium < high\n");

  const auto partial = parse_document("order partial\nedge a b\nedge b c # cover\n");
  CHECK(partial.order->edges.size() == 2);
  CHECK(partial.order->domain() == std::vector<std::string>{"a", "b", "c"});
  CHECK(make_order(*partial.order).precedes("a", "c"));

  CHECK(parse_document("order lww").order->kind == OrderKind::LwwTimestamped);
  CHECK(parse_document("order empty").order->kind == OrderKind::Empty);
}

TEST_CASE("parse errors carry line numbers") {
  auto line_of = [](std::string_view text) -> std::size_t {
    try {
      (void)parse_scenario(text);
    } catch (const ParseError &e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("replicas A\norder fancy\n") == 2);
  CHECK(line_of("replicas A\norder total a < < b\n") == 2);
  CHECK(line_of("replicas A\norder total a < b < a\n") == 2);
  CHECK(line_of("replicas A\norder empty\nedge a b\n") == 3);
  CHECK(line_of("replicas A\norder empty\n\nwrite B x\n") == 4);
  CHECK(line_of("replicas A\norder total a < b\nwrite A c\n") == 3);
  CHECK(line_of("replicas A\norder lww\nwrite A x\n") == 3);
  CHECK(line_of("replicas A\norder lww\nwrite A x@\n") == 3);
  CHECK(line_of("replicas A\norder empty\nread A maybe x\n") == 3);
  CHECK(line_of("write A x\n") == 1);
  CHECK(line_of("replicas A A\n") == 1);
  CHECK(line_of("replicas A\norder partial\nedge a b\nedge b a\n") == 2);
  CHECK(line_of("replicas A\nfrobnicate\n") == 2);
  CHECK_THROWS_AS((void)parse_scenario("order empty\n"), ParseError);
  CHECK_THROWS_AS((void)parse_scenario("replicas A\n"), ParseError);
}

TEST_CASE("scenario steps and stamping") {
  const auto any = parse_scenario(
      "replicas A B\norder lww\nwrite A x@5\nwrite A y@3\nwrite B z@5\nsend A B\n"
      "read B expect x@5 z@5\nread A\nread A expect\n");
  const auto &s = std::get<Scenario<LwwValue>>(any);
  REQUIRE(s.schedule.steps.size() == 7);
  CHECK(std::get<WriteStep<LwwValue>>(s.schedule.steps[0]).value == LwwValue{"x", 5, "A", 1});
  CHECK(std::get<WriteStep<LwwValue>>(s.schedule.steps[1]).value == LwwValue{"y", 3, "A", 2});
  CHECK(std::get<WriteStep<LwwValue>>(s.schedule.steps[2]).value == LwwValue{"z", 5, "B", 1});
  CHECK(std::get<ReadStep>(s.schedule.steps[4]).expect == std::set<std::string>{"x@5", "z@5"});
  CHECK_FALSE(std::get<ReadStep>(s.schedule.steps[5]).expect.has_value());
  CHECK(std::get<ReadStep>(s.schedule.steps[6]).expect == std::set<std::string>{});

  CHECK(parse_lww_value("a@b@-7") == LwwValue{"a@b", -7, {}, 0});
  CHECK_FALSE(parse_lww_value("@5").has_value());
  CHECK_FALSE(parse_lww_value("x@5z").has_value());
}

TEST_CASE("format_scenario re-parses to the same schedule") {
  const std::string text =
      "replicas A B\norder partial\nedge open assigned\nedge assigned closed-fixed\n"
      "write A open\nsend A B\nwrite B closed-fixed\nread B expect closed-fixed\n";
  const auto first = std::get<Scenario<std::string>>(parse_scenario(text));
  const std::string printed = format_scenario(first.schedule, first.spec);
  CHECK(printed == text);
  const auto second = std::get<Scenario<std::string>>(parse_scenario(printed));
  CHECK(second.schedule == first.schedule);
  CHECK(second.spec.edges == first.spec.edges);
}
