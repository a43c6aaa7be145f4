#ifndef MVRR_VALUE_ORDER_HPP
#define MVRR_VALUE_ORDER_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mvrr/errors.hpp"
#include "mvrr/value_traits.hpp"

namespace mvrr {

enum class OrderKind : std::uint8_t {
  Empty = 0,
  ExplicitRelation = 1,
  TotalComparator = 2,
  LwwTimestamped = 3,
};

std::string_view to_string(OrderKind kind) noexcept;
std::optional<OrderKind> order_kind_from_tag(std::uint8_t tag) noexcept;

/// A strict partial order on register values. `precedes(a, b)` reads "a is
/// dominated by b". Instances are immutable and cheap to copy; copies share
/// one identity, which is what `same_as` compares for application orders.
template <RegisterValue V> class ValueOrder {
public:
  using Predicate = std::function<bool(const V &, const V &)>;

  ValueOrder(OrderKind kind, Predicate precedes, std::string name,
             std::vector<V> domain = {})
      : impl_(std::make_shared<const Impl>(
            Impl{kind, std::move(precedes), std::move(name), std::move(domain)})) {}

  bool precedes(const V &a, const V &b) const {
    return impl_->precedes ? impl_->precedes(a, b) : false;
  }

  OrderKind kind() const noexcept { return impl_->kind; }
  const std::string &name() const noexcept { return impl_->name; }

  /// Declared carrier of explicit and ranked orders; empty otherwise.
  std::span<const V> domain() const noexcept { return impl_->domain; }

  /// Empty and LWW orders are fixed predicates, so any two instances agree.
  /// Application-defined orders match only when they share an identity.
  bool same_as(const ValueOrder &other) const noexcept {
    if (kind() != other.kind())
      return false;
    if (kind() == OrderKind::Empty || kind() == OrderKind::LwwTimestamped)
      return true;
    return impl_ == other.impl_;
  }

private:
  struct Impl {
    OrderKind kind;
    Predicate precedes;
    std::string name;
    std::vector<V> domain;
  };
  std::shared_ptr<const Impl> impl_;
};

/// Application-supplied cover relation. The order it induces is the transitive
/// closure of `edges`; each edge is (lesser, greater).
template <RegisterValue V> struct ExplicitRelation {
  std::vector<V> domain;
  std::vector<std::pair<V, V>> edges;
};

// resolve_≺: the maximal elements of `values`.
template <RegisterValue V>
std::set<V> resolve_under(const ValueOrder<V> &order, const std::set<V> &values) {
  if (order.kind() == OrderKind::Empty)
    return values;
  std::set<V> kept;
  for (const auto &v : values) {
    const bool dominated = std::any_of(values.begin(), values.end(),
                                       [&](const V &w) { return order.precedes(v, w); });
    if (!dominated)
      kept.insert(v);
  }
  return kept;
}

template <RegisterValue V> ValueOrder<V> empty_order() {
  return ValueOrder<V>(OrderKind::Empty, nullptr, "empty");
}

/// Strict total order from a "less than" comparator.
template <RegisterValue V>
ValueOrder<V> total_comparator_order(std::function<bool(const V &, const V &)> less,
                                     std::string name = "total",
                                     std::vector<V> domain = {}) {
  return ValueOrder<V>(OrderKind::TotalComparator, std::move(less), std::move(name),
                       std::move(domain));
}

/// Total order given by position in `ranked` (lowest first). Values missing
/// from the list are incomparable to everything.
template <RegisterValue V>
ValueOrder<V> ranked_order(std::vector<V> ranked, std::string name = "total") {
  auto rank = std::make_shared<std::map<V, std::size_t>>();
  for (std::size_t i = 0; i < ranked.size(); ++i)
    rank->emplace(ranked[i], i);
  auto less = [rank](const V &a, const V &b) {
    const auto ia = rank->find(a);
    const auto ib = rank->find(b);
    return ia != rank->end() && ib != rank->end() && ia->second < ib->second;
  };
  return total_comparator_order<V>(std::move(less), std::move(name), std::move(ranked));
}

namespace detail {

// Reachability matrix of `rel` over its domain. Throws Error when an edge
// endpoint is missing from the domain or the domain repeats a value.
template <RegisterValue V> struct RelationClosure {
  std::map<V, std::size_t> index;
  std::vector<std::vector<bool>> reach;

  explicit RelationClosure(const ExplicitRelation<V> &rel) {
    for (const auto &v : rel.domain)
      if (!index.emplace(v, index.size()).second)
        throw Error("relation domain repeats value " + to_text(v));
    const std::size_t n = index.size();
    reach.assign(n, std::vector<bool>(n, false));
    for (const auto &[lo, hi] : rel.edges) {
      const auto a = index.find(lo);
      const auto b = index.find(hi);
      if (a == index.end() || b == index.end())
        throw Error("relation edge (" + to_text(lo) + ", " + to_text(hi) +
                    ") leaves the domain");
      reach[a->second][b->second] = true;
    }
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (reach[i][k])
          for (std::size_t j = 0; j < n; ++j)
            if (reach[k][j])
              reach[i][j] = true;
  }

  bool precedes(const V &a, const V &b) const {
    const auto ia = index.find(a);
    const auto ib = index.find(b);
    return ia != index.end() && ib != index.end() && reach[ia->second][ib->second];
  }
};

// One cycle through the cover edges, as a closed path of values.
template <RegisterValue V>
std::optional<std::vector<V>> find_cycle(const ExplicitRelation<V> &rel) {
  std::map<V, std::vector<V>> succ;
  for (const auto &[lo, hi] : rel.edges)
    succ[lo].push_back(hi);
  enum class Mark { White, Grey, Black };
  std::map<V, Mark> mark;
  std::vector<V> path;
  std::optional<std::vector<V>> found;

  std::function<bool(const V &)> visit = [&](const V &v) {
    mark[v] = Mark::Grey;
    path.push_back(v);
    for (const auto &w : succ[v]) {
      const Mark m = mark.contains(w) ? mark[w] : Mark::White;
      if (m == Mark::Grey) {
        auto start = std::find(path.begin(), path.end(), w);
        std::vector<V> cycle(start, path.end());
        cycle.push_back(w);
        found = std::move(cycle);
        return true;
      }
      if (m == Mark::White && visit(w))
        return true;
    }
    path.pop_back();
    mark[v] = Mark::Black;
    return false;
  };
  for (const auto &v : rel.domain)
    if (!mark.contains(v) && visit(v))
      return found;
  return std::nullopt;
}

} // namespace detail

/// Order induced by the transitive closure of `rel`. Throws CycleError when the
/// closure is cyclic, since such a relation cannot be a strict order.
template <RegisterValue V>
ValueOrder<V> explicit_relation_order(const ExplicitRelation<V> &rel,
                                      std::string name = "partial") {
  auto closure = std::make_shared<const detail::RelationClosure<V>>(rel);
  if (auto cycle = detail::find_cycle(rel)) {
    std::vector<std::string> names;
    std::string text;
    for (const auto &v : *cycle) {
      names.push_back(to_text(v));
      text += (text.empty() ? "" : " < ") + names.back();
    }
    throw CycleError("relation has a cycle: " + text, std::move(names));
  }
  return ValueOrder<V>(
      OrderKind::ExplicitRelation,
      [closure](const V &a, const V &b) { return closure->precedes(a, b); },
      std::move(name), rel.domain);
}

/// Closure of `rel` without the cycle check, for diagnosing bad relations
/// with validate_order.
template <RegisterValue V>
ValueOrder<V> relation_order_unchecked(const ExplicitRelation<V> &rel,
                                       std::string name = "partial") {
  auto closure = std::make_shared<const detail::RelationClosure<V>>(rel);
  return ValueOrder<V>(
      OrderKind::ExplicitRelation,
      [closure](const V &a, const V &b) { return closure->precedes(a, b); },
      std::move(name), rel.domain);
}

enum class OrderLaw { Irreflexivity, Asymmetry, Transitivity };

std::string_view to_string(OrderLaw law) noexcept;

template <RegisterValue V> struct OrderViolation {
  OrderLaw law;
  // (v) for irreflexivity, (v, v') for asymmetry, (v, v', v'') for transitivity.
  std::vector<V> witness;
  // Number of violating tuples on the sample.
  std::size_t occurrences = 0;
};

template <RegisterValue V> struct OrderReport {
  std::size_t sample_size = 0;
  std::vector<OrderViolation<V>> violations;

  bool valid() const noexcept { return violations.empty(); }
  const OrderViolation<V> *find(OrderLaw law) const {
    for (const auto &v : violations)
      if (v.law == law)
        return &v;
    return nullptr;
  }
};

/// Checks the strict-order laws exhaustively over `sample`, reporting the first
/// witness of each violated law.
template <RegisterValue V>
OrderReport<V> validate_order(const ValueOrder<V> &order, std::span<const V> sample) {
  OrderReport<V> report;
  report.sample_size = sample.size();
  std::optional<OrderViolation<V>> irreflexive, asymmetric, transitive;
  auto note = [](std::optional<OrderViolation<V>> &slot, OrderLaw law,
                 std::vector<V> witness) {
    if (!slot)
      slot = OrderViolation<V>{law, std::move(witness), 0};
    ++slot->occurrences;
  };

  for (const auto &a : sample) {
    if (order.precedes(a, a))
      note(irreflexive, OrderLaw::Irreflexivity, {a});
    for (const auto &b : sample) {
      if (!order.precedes(a, b))
        continue;
      if (!(a == b) && order.precedes(b, a))
        note(asymmetric, OrderLaw::Asymmetry, {a, b});
      for (const auto &c : sample)
        if (order.precedes(b, c) && !order.precedes(a, c))
          note(transitive, OrderLaw::Transitivity, {a, b, c});
    }
  }
  for (auto *slot : {&irreflexive, &asymmetric, &transitive})
    if (*slot)
      report.violations.push_back(std::move(**slot));
  return report;
}

/// Validates over the order's declared domain.
template <RegisterValue V> OrderReport<V> validate_order(const ValueOrder<V> &order) {
  return validate_order(order, order.domain());
}

} // namespace mvrr

#endif // MVRR_VALUE_ORDER_HPP
