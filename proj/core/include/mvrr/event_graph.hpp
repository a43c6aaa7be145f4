#ifndef MVRR_EVENT_GRAPH_HPP
#define MVRR_EVENT_GRAPH_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mvrr/errors.hpp"
#include "mvrr/value_order.hpp"

// Reference semantics of the register: writes plus happens-before, and the
// value functions evaluated directly over them. Deliberately naive.

namespace mvrr {

using EventId = std::uint64_t;

template <RegisterValue V> struct WriteEvent {
  EventId id = 0;
  ReplicaId replica;
  V value;

  friend bool operator==(const WriteEvent &, const WriteEvent &) = default;
};

/// Write events with happens-before stored transitively closed.
template <RegisterValue V> class EventGraph {
public:
  using Edge = std::pair<EventId, EventId>;

  EventGraph() = default;

  /// Builds a graph from `events` and any generating relation over their ids;
  /// the relation is closed under transitivity. Throws EventGraphError on
  /// duplicate ids, unknown endpoints, or cycles.
  static EventGraph make(std::vector<WriteEvent<V>> events,
                         const std::vector<Edge> &generating) {
    EventGraph g;
    g.events_ = std::move(events);
    for (std::size_t i = 0; i < g.events_.size(); ++i)
      if (!g.index_.emplace(g.events_[i].id, i).second)
        throw EventGraphError("duplicate event id " + std::to_string(g.events_[i].id));

    std::vector<std::vector<std::size_t>> succ(g.events_.size());
    for (const auto &[a, b] : generating) {
      const auto ia = g.index_.find(a);
      const auto ib = g.index_.find(b);
      if (ia == g.index_.end() || ib == g.index_.end())
        throw EventGraphError("hb edge (" + std::to_string(a) + "," + std::to_string(b) +
                              ") names an unknown event");
      succ[ia->second].push_back(ib->second);
    }
    for (std::size_t from = 0; from < g.events_.size(); ++from) {
      std::vector<bool> seen(g.events_.size(), false);
      std::vector<std::size_t> stack(succ[from].begin(), succ[from].end());
      while (!stack.empty()) {
        const std::size_t at = stack.back();
        stack.pop_back();
        if (seen[at])
          continue;
        seen[at] = true;
        if (at == from)
          throw EventGraphError("hb is cyclic through event " +
                                std::to_string(g.events_[from].id));
        g.hb_.emplace(g.events_[from].id, g.events_[at].id);
        stack.insert(stack.end(), succ[at].begin(), succ[at].end());
      }
    }
    return g;
  }

  /// Appends `event`, ordered after every id in `predecessors`. The set must be
  /// causally closed, which keeps hb closed without recomputation.
  EventGraph with_event(WriteEvent<V> event, const std::set<EventId> &predecessors) const {
    if (index_.contains(event.id))
      throw EventGraphError("duplicate event id " + std::to_string(event.id));
    for (EventId p : predecessors) {
      if (!index_.contains(p))
        throw EventGraphError("predecessor " + std::to_string(p) + " is unknown");
      for (EventId q : predecessors_of(p))
        if (!predecessors.contains(q))
          throw CausalClosureError("predecessor set misses " + std::to_string(q) +
                                       " which precedes " + std::to_string(p),
                                   std::to_string(q), std::to_string(p));
    }
    EventGraph g = *this;
    g.index_.emplace(event.id, g.events_.size());
    for (EventId p : predecessors)
      g.hb_.emplace(p, event.id);
    g.events_.push_back(std::move(event));
    return g;
  }

  const std::vector<WriteEvent<V>> &events() const noexcept { return events_; }
  const std::set<Edge> &hb() const noexcept { return hb_; }
  bool contains(EventId id) const { return index_.contains(id); }
  const WriteEvent<V> &event(EventId id) const { return events_.at(index_.at(id)); }

  bool happens_before(EventId a, EventId b) const { return hb_.contains({a, b}); }

  /// True when some event follows `id`.
  bool has_successor(EventId id) const {
    const auto it = hb_.lower_bound({id, 0});
    return it != hb_.end() && it->first == id;
  }

  std::vector<EventId> predecessors_of(EventId id) const {
    std::vector<EventId> out;
    for (const auto &[a, b] : hb_)
      if (b == id)
        out.push_back(a);
    return out;
  }

private:
  std::vector<WriteEvent<V>> events_;
  std::map<EventId, std::size_t> index_;
  std::set<Edge> hb_;
};

/// Values of the hb-maximal writes: everything not overwritten.
template <RegisterValue V> std::set<V> f_mvr(const EventGraph<V> &g) {
  std::set<V> out;
  for (const auto &e : g.events())
    if (!g.has_successor(e.id))
      out.insert(e.value);
  return out;
}

/// f_mvr reduced to its maximal values under `order`.
template <RegisterValue V>
std::set<V> f_mvrr(const EventGraph<V> &g, const ValueOrder<V> &order) {
  return resolve_under(order, f_mvr(g));
}

/// Restriction of `g` to `observed`, which must be causally closed. Throws
/// CausalClosureError naming a missing predecessor, or EventGraphError for ids
/// not in `g`.
template <RegisterValue V>
EventGraph<V> observed_subgraph(const EventGraph<V> &g, const std::set<EventId> &observed) {
  std::vector<WriteEvent<V>> events;
  for (const auto &e : g.events())
    if (observed.contains(e.id))
      events.push_back(e);
  if (events.size() != observed.size())
    for (EventId id : observed)
      if (!g.contains(id))
        throw EventGraphError("observed event " + std::to_string(id) + " is unknown");

  std::vector<std::pair<EventId, EventId>> hb;
  for (const auto &[a, b] : g.hb()) {
    const bool has_a = observed.contains(a);
    const bool has_b = observed.contains(b);
    if (has_b && !has_a)
      throw CausalClosureError("observed set misses " + std::to_string(a) +
                                   " which precedes " + std::to_string(b),
                               std::to_string(a), std::to_string(b));
    if (has_a && has_b)
      hb.emplace_back(a, b);
  }
  return EventGraph<V>::make(std::move(events), hb);
}

} // namespace mvrr

#endif // MVRR_EVENT_GRAPH_HPP
