#ifndef MVRR_REGISTER_HPP
#define MVRR_REGISTER_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "mvrr/errors.hpp"
#include "mvrr/value_order.hpp"
#include "mvrr/version_vector.hpp"

namespace mvrr {

/// State of the optimized register: dot-tagged values plus a single causal
/// context covering every dot the replica has seen. Immutable in use; every
/// operation below returns a new state.
template <RegisterValue V> class RegisterState {
public:
  using Entries = std::map<Dot, V>;

  explicit RegisterState(ValueOrder<V> policy) : policy_(std::move(policy)) {}

  /// Assembles a state from raw parts, as the decoder does. Throws Error when
  /// a dot is uncovered by the context.
  static RegisterState from_parts(Entries entries, VersionVector context,
                                  ValueOrder<V> policy) {
    RegisterState s(std::move(policy));
    s.entries_ = std::move(entries);
    s.context_ = std::move(context);
    if (auto problem = s.invariant_violation(false))
      throw Error(*problem);
    return s;
  }

  const Entries &entries() const noexcept { return entries_; }
  const VersionVector &context() const noexcept { return context_; }
  const ValueOrder<V> &policy() const noexcept { return policy_; }

  /// Number of version vectors the state carries (always one context).
  std::size_t metadata_vectors() const noexcept { return 1; }
  std::size_t metadata_dots() const noexcept { return entries_.size(); }

  /// Describes the first broken invariant, if any. `resolved` additionally
  /// requires that no stored value is dominated by another.
  std::optional<std::string> invariant_violation(bool resolved) const {
    for (const auto &[dot, v] : entries_) {
      if (dot.counter == 0)
        return "dot " + to_text(dot) + " has counter 0";
      if (!context_.contains(dot))
        return "dot " + to_text(dot) + " not covered by context " + to_text(context_);
    }
    if (resolved)
      for (const auto &[d1, v1] : entries_)
        for (const auto &[d2, v2] : entries_)
          if (policy_.precedes(v1, v2))
            return "value " + to_text(v1) + " at " + to_text(d1) + " dominated by " +
                   to_text(v2) + " at " + to_text(d2);
    return std::nullopt;
  }

  friend bool operator==(const RegisterState &a, const RegisterState &b) {
    return a.entries_ == b.entries_ && a.context_ == b.context_ &&
           a.policy_.same_as(b.policy_);
  }

private:
  template <RegisterValue U>
  friend RegisterState<U> write(const RegisterState<U> &, const ReplicaId &, U);
  template <RegisterValue U>
  friend RegisterState<U> merge_with(const RegisterState<U> &, const RegisterState<U> &,
                                     bool);

  ValueOrder<V> policy_;
  Entries entries_;
  VersionVector context_;
};

template <RegisterValue V> RegisterState<V> initial(ValueOrder<V> policy) {
  return RegisterState<V>(std::move(policy));
}

/// A write replaces the value set with the single new value and advances the
/// writer's slot in the context.
template <RegisterValue V>
RegisterState<V> write(const RegisterState<V> &state, const ReplicaId &replica, V v) {
  RegisterState<V> out(state.policy_);
  out.context_ = state.context_;
  const Dot dot = out.context_.next(replica);
  out.entries_.emplace(dot, std::move(v));
  return out;
}

template <RegisterValue V> std::set<V> read(const RegisterState<V> &state) {
  std::set<V> values;
  for (const auto &[dot, v] : state.entries())
    values.insert(v);
  return values;
}

/// Join of two states. Keeps entries present on both sides plus entries one
/// side has not yet seen; entries that one side has seen (dot in its context)
/// but no longer holds were overwritten and are dropped. With `eager`, values
/// dominated under the policy are removed from the result.
template <RegisterValue V>
RegisterState<V> merge_with(const RegisterState<V> &left, const RegisterState<V> &right,
                            bool eager) {
  if (!left.policy_.same_as(right.policy_))
    throw PolicyMismatchError("cannot merge states ordered by '" + left.policy_.name() +
                              "' and '" + right.policy_.name() + "'");
  RegisterState<V> out(left.policy_);
  for (const auto &[dot, v] : left.entries_) {
    const auto other = right.entries_.find(dot);
    const bool in_both = other != right.entries_.end() && other->second == v;
    if (in_both || !right.context_.contains(dot))
      out.entries_.emplace(dot, v);
  }
  for (const auto &[dot, v] : right.entries_)
    if (!left.context_.contains(dot))
      out.entries_.emplace(dot, v);
  out.context_ = vv_join(left.context_, right.context_);

  if (eager && out.policy_.kind() != OrderKind::Empty) {
    const std::set<V> maximal = resolve_under(out.policy_, read(out));
    std::erase_if(out.entries_,
                  [&](const auto &entry) { return !maximal.contains(entry.second); });
  }
  return out;
}

/// Merge with conflict resolution applied to the joined set.
template <RegisterValue V>
RegisterState<V> merge(const RegisterState<V> &left, const RegisterState<V> &right) {
  return merge_with(left, right, true);
}

/// Merge that keeps every concurrent value; resolution is deferred to
/// lazy_read.
template <RegisterValue V>
RegisterState<V> lazy_merge(const RegisterState<V> &left, const RegisterState<V> &right) {
  return merge_with(left, right, false);
}

template <RegisterValue V> std::set<V> lazy_read(const RegisterState<V> &state) {
  return resolve_under(state.policy(), read(state));
}

template <RegisterValue V> std::string to_text(const RegisterState<V> &state) {
  std::string out = "{";
  for (const auto &[dot, v] : state.entries()) {
    if (out.size() > 1)
      out += ',';
    out += to_text(dot) + "=" + to_text(v);
  }
  return out + "} ctx=" + to_text(state.context());
}

} // namespace mvrr

#endif // MVRR_REGISTER_HPP
