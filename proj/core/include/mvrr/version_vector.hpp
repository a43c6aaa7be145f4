#ifndef MVRR_VERSION_VECTOR_HPP
#define MVRR_VERSION_VECTOR_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <string>

#include "mvrr/value_traits.hpp"

namespace mvrr {

/// Identifies one write: the issuing replica and its per-replica counter (>= 1).
struct Dot {
  ReplicaId replica;
  std::uint64_t counter = 0;

  friend bool operator==(const Dot &, const Dot &) = default;
  friend auto operator<=>(const Dot &, const Dot &) = default;
};

std::string to_text(const Dot &dot);

/// Map from replica to the highest counter observed. Absent replicas read as
/// zero and zero entries are never stored, so equal vectors compare equal.
class VersionVector {
public:
  using Entries = std::map<ReplicaId, std::uint64_t>;

  VersionVector() = default;
  VersionVector(std::initializer_list<Entries::value_type> init);

  std::uint64_t operator[](const ReplicaId &replica) const;
  void set(const ReplicaId &replica, std::uint64_t counter);
  /// Bumps `replica`'s slot and returns the dot of the new event.
  Dot next(const ReplicaId &replica);

  bool contains(const Dot &dot) const { return dot.counter <= (*this)[dot.replica]; }
  /// Pointwise <=.
  bool leq(const VersionVector &other) const;
  /// Pointwise <= with strict inequality somewhere.
  bool dominated_by(const VersionVector &other) const {
    return leq(other) && *this != other;
  }

  const Entries &entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }

  friend bool operator==(const VersionVector &, const VersionVector &) = default;
  friend auto operator<=>(const VersionVector &, const VersionVector &) = default;

private:
  Entries entries_;
};

/// Pointwise maximum.
VersionVector vv_join(const VersionVector &a, const VersionVector &b);

std::string to_text(const VersionVector &vv);

} // namespace mvrr

#endif // MVRR_VERSION_VECTOR_HPP
