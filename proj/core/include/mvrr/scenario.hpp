#ifndef MVRR_SCENARIO_HPP
#define MVRR_SCENARIO_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "mvrr/lww_value.hpp"
#include "mvrr/schedule.hpp"
#include "mvrr/value_order.hpp"

// Text formats for orders and scenarios.
//
//   # comment
//   replicas A B
//   order empty | order total low < medium < high | order lww | order partial
//   edge open assigned          (only after `order partial`)
//   write A assigned            (LWW values: token@timestamp)
//   send B A
//   read A expect closed-fixed closed-irreproducible

namespace mvrr {

/// Parsed `order ...` block.
struct OrderSpec {
  OrderKind kind = OrderKind::Empty;
  std::vector<std::string> ranking;                         // total, lowest first
  std::vector<std::pair<std::string, std::string>> edges;   // partial covers
  std::size_t line = 0;

  /// Values the order mentions, in first-mention order.
  std::vector<std::string> domain() const;

  friend bool operator==(const OrderSpec &, const OrderSpec &) = default;
};

/// Builds the string-valued order; throws CycleError for cyclic partial
/// orders and Error for `lww`, which orders LwwValue instead.
ValueOrder<std::string> make_order(const OrderSpec &spec);

/// Partial orders built without rejecting cycles, for diagnostics.
ValueOrder<std::string> make_order_unchecked(const OrderSpec &spec);

ExplicitRelation<std::string> relation_of(const OrderSpec &spec);

/// Renders the order block, one declaration per line.
std::string format_order(const OrderSpec &spec);

struct RawStep {
  enum class Kind { Write, Send, Read } kind;
  std::vector<std::string> args;                     // replica(s) and written value
  std::optional<std::vector<std::string>> expect;    // read only
  std::size_t line = 0;
};

/// Untyped parse of a scenario or order-only file.
struct ScenarioDocument {
  std::vector<ReplicaId> replicas;
  std::optional<OrderSpec> order;
  std::vector<RawStep> steps;
};

/// Throws ParseError (with line number) on malformed input.
ScenarioDocument parse_document(std::string_view text);

template <RegisterValue V> struct Scenario {
  Schedule<V> schedule;
  ValueOrder<V> order;
  OrderSpec spec;
};

using AnyScenario = std::variant<Scenario<std::string>, Scenario<LwwValue>>;

/// Parses a complete scenario. LWW orders yield LwwValue scenarios, all
/// others string scenarios. Writes are stamped with their writer and
/// per-replica sequence number. Under a total order every written value must
/// appear in the ranking.
AnyScenario parse_scenario(std::string_view text);

/// Parses `token@timestamp`.
std::optional<LwwValue> parse_lww_value(std::string_view text);

/// Renders a schedule plus order block in the scenario format.
template <RegisterValue V>
std::string format_scenario(const Schedule<V> &schedule, const OrderSpec &spec) {
  std::string out = "replicas";
  for (const auto &r : schedule.replicas)
    out += " " + r;
  out += "\n" + format_order(spec);
  for (const auto &step : schedule.steps) {
    if (const auto *w = std::get_if<WriteStep<V>>(&step)) {
      out += "write " + w->replica + " " + to_text(w->value) + "\n";
    } else if (const auto *s = std::get_if<SendStep>(&step)) {
      out += "send " + s->from + " " + s->to + "\n";
    } else {
      const auto &r = std::get<ReadStep>(step);
      out += "read " + r.replica;
      if (r.expect) {
        out += " expect";
        for (const auto &v : *r.expect)
          out += " " + v;
      }
      out += "\n";
    }
  }
  return out;
}

} // namespace mvrr

#endif // MVRR_SCENARIO_HPP
