#include "mvrr/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

#include "mvrr/errors.hpp"

namespace mvrr {

namespace {

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    if (j > i)
      out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

OrderSpec parse_order_line(const std::vector<std::string> &tok, std::size_t line) {
  if (tok.size() < 2)
    throw ParseError("order declaration needs a kind", line);
  OrderSpec spec;
  spec.line = line;
  const std::string &kind = tok[1];
  if (kind == "empty" || kind == "lww" || kind == "partial") {
    if (tok.size() != 2)
      throw ParseError("'order " + kind + "' takes no arguments", line);
    spec.kind = kind == "empty"  ? OrderKind::Empty
                : kind == "lww" ? OrderKind::LwwTimestamped
                                : OrderKind::ExplicitRelation;
    return spec;
  }
  if (kind != "total")
    throw ParseError("unknown order kind '" + kind + "'", line);
  spec.kind = OrderKind::TotalComparator;
  // v1 < v2 < ... < vn
  for (std::size_t i = 2; i < tok.size(); ++i) {
    const bool separator = (i - 2) % 2 == 1;
    if (separator != (tok[i] == "<"))
      throw ParseError("expected 'order total v1 < v2 < ... < vn'", line);
    if (!separator) {
      if (std::find(spec.ranking.begin(), spec.ranking.end(), tok[i]) != spec.ranking.end())
        throw ParseError("value '" + tok[i] + "' ranked twice", line);
      spec.ranking.push_back(tok[i]);
    }
  }
  if (spec.ranking.empty() || tok.back() == "<")
    throw ParseError("expected 'order total v1 < v2 < ... < vn'", line);
  return spec;
}

} // namespace

std::vector<std::string> OrderSpec::domain() const {
  std::vector<std::string> out = ranking;
  auto add = [&](const std::string &v) {
    if (std::find(out.begin(), out.end(), v) == out.end())
      out.push_back(v);
  };
  for (const auto &[lo, hi] : edges) {
    add(lo);
    add(hi);
  }
  return out;
}

ExplicitRelation<std::string> relation_of(const OrderSpec &spec) {
  return ExplicitRelation<std::string>{spec.domain(), spec.edges};
}

ValueOrder<std::string> make_order(const OrderSpec &spec) {
  switch (spec.kind) {
  case OrderKind::Empty:
    return empty_order<std::string>();
  case OrderKind::ExplicitRelation:
    return explicit_relation_order(relation_of(spec));
  case OrderKind::TotalComparator:
    return ranked_order(spec.ranking);
  case OrderKind::LwwTimestamped:
    break;
  }
  throw Error("lww orders apply to timestamped values, not plain strings");
}

ValueOrder<std::string> make_order_unchecked(const OrderSpec &spec) {
  if (spec.kind == OrderKind::ExplicitRelation)
    return relation_order_unchecked(relation_of(spec));
  return make_order(spec);
}

std::string format_order(const OrderSpec &spec) {
  std::string out = "order " + std::string(to_string(spec.kind));
  for (std::size_t i = 0; i < spec.ranking.size(); ++i)
    out += (i == 0 ? " " : " < ") + spec.ranking[i];
  out += "\n";
  for (const auto &[lo, hi] : spec.edges)
    out += "edge " + lo + " " + hi + "\n";
  return out;
}

ScenarioDocument parse_document(std::string_view text) {
  ScenarioDocument doc;
  bool have_replicas = false;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos)
      raw.erase(hash);
    const auto tok = tokenize(raw);
    if (tok.empty())
      continue;
    const std::string &head = tok[0];

    if (head == "replicas") {
      if (have_replicas)
        throw ParseError("replicas declared twice", line_no);
      if (tok.size() < 2)
        throw ParseError("'replicas' needs at least one name", line_no);
      std::set<std::string> seen;
      for (std::size_t i = 1; i < tok.size(); ++i) {
        if (!seen.insert(tok[i]).second)
          throw ParseError("replica '" + tok[i] + "' listed twice", line_no);
        doc.replicas.push_back(tok[i]);
      }
      have_replicas = true;
    } else if (head == "order") {
      if (doc.order)
        throw ParseError("second order block (first on line " +
                             std::to_string(doc.order->line) + ")",
                         line_no);
      doc.order = parse_order_line(tok, line_no);
    } else if (head == "edge") {
      if (!doc.order || doc.order->kind != OrderKind::ExplicitRelation)
        throw ParseError("'edge' outside an 'order partial' block", line_no);
      if (!doc.steps.empty())
        throw ParseError("'edge' after the first step", line_no);
      if (tok.size() != 3)
        throw ParseError("expected 'edge <lesser> <greater>'", line_no);
      doc.order->edges.emplace_back(tok[1], tok[2]);
    } else if (head == "write" || head == "send" || head == "read") {
      if (!have_replicas)
        throw ParseError("step before the 'replicas' line", line_no);
      auto known = [&](const std::string &r) {
        if (std::find(doc.replicas.begin(), doc.replicas.end(), r) == doc.replicas.end())
          throw ParseError("undeclared replica '" + r + "'", line_no);
      };
      RawStep step;
      step.line = line_no;
      if (head == "write") {
        if (tok.size() != 3)
          throw ParseError("expected 'write <replica> <value>'", line_no);
        known(tok[1]);
        step.kind = RawStep::Kind::Write;
        step.args = {tok[1], tok[2]};
      } else if (head == "send") {
        if (tok.size() != 3)
          throw ParseError("expected 'send <from> <to>'", line_no);
        known(tok[1]);
        known(tok[2]);
        step.kind = RawStep::Kind::Send;
        step.args = {tok[1], tok[2]};
      } else {
        if (tok.size() < 2 || (tok.size() > 2 && tok[2] != "expect"))
          throw ParseError("expected 'read <replica> [expect <v>...]'", line_no);
        known(tok[1]);
        step.kind = RawStep::Kind::Read;
        step.args = {tok[1]};
        if (tok.size() > 2)
          step.expect.emplace(tok.begin() + 3, tok.end());
      }
      doc.steps.push_back(std::move(step));
    } else {
      throw ParseError("unknown directive '" + head + "'", line_no);
    }
  }
  return doc;
}

std::optional<LwwValue> parse_lww_value(std::string_view text) {
  const auto at = text.rfind('@');
  if (at == std::string_view::npos || at == 0 || at + 1 == text.size())
    return std::nullopt;
  std::int64_t ts = 0;
  const char *first = text.data() + at + 1;
  const char *last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, ts);
  if (ec != std::errc{} || ptr != last)
    return std::nullopt;
  return LwwValue{std::string(text.substr(0, at)), ts, {}, 0};
}

namespace {

template <RegisterValue V, typename ParseValue>
Schedule<V> build_schedule(const ScenarioDocument &doc, ParseValue parse_value) {
  Schedule<V> schedule;
  schedule.replicas = doc.replicas;
  std::map<ReplicaId, std::uint64_t> writes;
  for (const auto &raw : doc.steps) {
    switch (raw.kind) {
    case RawStep::Kind::Write: {
      const ReplicaId &replica = raw.args[0];
      V value = parse_value(raw.args[1], raw.line);
      schedule.steps.push_back(WriteStep<V>{
          replica, value_traits<V>::stamp(std::move(value), replica, ++writes[replica])});
      break;
    }
    case RawStep::Kind::Send:
      schedule.steps.push_back(SendStep{raw.args[0], raw.args[1]});
      break;
    case RawStep::Kind::Read: {
      std::optional<std::set<std::string>> expect;
      if (raw.expect)
        expect.emplace(raw.expect->begin(), raw.expect->end());
      schedule.steps.push_back(ReadStep{raw.args[0], std::move(expect)});
      break;
    }
    }
  }
  return schedule;
}

} // namespace

AnyScenario parse_scenario(std::string_view text) {
  ScenarioDocument doc = parse_document(text);
  if (doc.replicas.empty())
    throw ParseError("missing 'replicas' line", 1);
  if (!doc.order)
    throw ParseError("missing 'order' block", 1);
  const OrderSpec &spec = *doc.order;

  if (spec.kind == OrderKind::LwwTimestamped) {
    auto schedule = build_schedule<LwwValue>(doc, [](const std::string &tok, std::size_t line) {
      auto v = parse_lww_value(tok);
      if (!v)
        throw ParseError("expected '<token>@<timestamp>', got '" + tok + "'", line);
      return *v;
    });
    return Scenario<LwwValue>{std::move(schedule), lww_order(), spec};
  }

  ValueOrder<std::string> order = [&] {
    try {
      return make_order(spec);
    } catch (const CycleError &e) {
      throw ParseError(e.what(), spec.line);
    }
  }();
  auto schedule =
      build_schedule<std::string>(doc, [&](const std::string &tok, std::size_t line) {
        if (spec.kind == OrderKind::TotalComparator &&
            std::find(spec.ranking.begin(), spec.ranking.end(), tok) == spec.ranking.end())
          throw ParseError("value '" + tok + "' is not in the total order", line);
        return tok;
      });
  return Scenario<std::string>{std::move(schedule), std::move(order), spec};
}

} // namespace mvrr
