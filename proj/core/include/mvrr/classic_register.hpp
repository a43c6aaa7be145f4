#ifndef MVRR_CLASSIC_REGISTER_HPP
#define MVRR_CLASSIC_REGISTER_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <string>

#include "mvrr/value_order.hpp"
#include "mvrr/version_vector.hpp"

namespace mvrr {

// Baseline multi-value register: every retained value carries its own
// version vector.
template <RegisterValue V> struct ClassicEntry {
  V value;
  VersionVector clock;

  friend bool operator==(const ClassicEntry &, const ClassicEntry &) = default;
  friend auto operator<=>(const ClassicEntry &a, const ClassicEntry &b) {
    if (auto c = a.clock <=> b.clock; c != 0)
      return c;
    return a.value <=> b.value;
  }
};

template <RegisterValue V> struct ClassicMvrState {
  std::set<ClassicEntry<V>> entries;

  std::size_t metadata_vectors() const noexcept { return entries.size(); }

  // No entry's clock may be dominated by another's.
  std::optional<std::string> invariant_violation() const {
    for (const auto &a : entries)
      for (const auto &b : entries)
        if (a.clock.dominated_by(b.clock))
          return "entry " + to_text(a.value) + to_text(a.clock) + " dominated by " +
                 to_text(b.value) + to_text(b.clock);
    return std::nullopt;
  }

  friend bool operator==(const ClassicMvrState &, const ClassicMvrState &) = default;
};

template <RegisterValue V>
ClassicMvrState<V> classic_write(const ClassicMvrState<V> &state, const ReplicaId &replica,
                                 V v) {
  VersionVector clock;
  for (const auto &e : state.entries)
    clock = vv_join(clock, e.clock);
  clock.next(replica);
  ClassicMvrState<V> out;
  out.entries.insert(ClassicEntry<V>{std::move(v), std::move(clock)});
  return out;
}

template <RegisterValue V>
ClassicMvrState<V> classic_merge(const ClassicMvrState<V> &a, const ClassicMvrState<V> &b) {
  auto survives = [](const ClassicEntry<V> &e, const ClassicMvrState<V> &other) {
    return std::none_of(other.entries.begin(), other.entries.end(),
                        [&](const auto &o) { return e.clock.dominated_by(o.clock); });
  };
  ClassicMvrState<V> out;
  for (const auto &e : a.entries)
    if (survives(e, b))
      out.entries.insert(e);
  for (const auto &e : b.entries)
    if (survives(e, a))
      out.entries.insert(e);
  return out;
}

/// Values of all retained entries, reduced under `order`.
template <RegisterValue V>
std::set<V> classic_read(const ClassicMvrState<V> &state, const ValueOrder<V> &order) {
  std::set<V> values;
  for (const auto &e : state.entries)
    values.insert(e.value);
  return resolve_under(order, values);
}

} // namespace mvrr

#endif // MVRR_CLASSIC_REGISTER_HPP
