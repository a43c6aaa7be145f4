#include "mvrr/version_vector.hpp"

#include <algorithm>

namespace mvrr {

std::string to_text(const Dot &dot) {
  return "(" + dot.replica + "," + std::to_string(dot.counter) + ")";
}

VersionVector::VersionVector(std::initializer_list<Entries::value_type> init) {
  for (const auto &[replica, counter] : init)
    set(replica, counter);
}

std::uint64_t VersionVector::operator[](const ReplicaId &replica) const {
  const auto it = entries_.find(replica);
  return it == entries_.end() ? 0 : it->second;
}

void VersionVector::set(const ReplicaId &replica, std::uint64_t counter) {
  if (counter == 0)
    entries_.erase(replica);
  else
    entries_[replica] = counter;
}

Dot VersionVector::next(const ReplicaId &replica) {
  const std::uint64_t counter = (*this)[replica] + 1;
  entries_[replica] = counter;
  return Dot{replica, counter};
}

bool VersionVector::leq(const VersionVector &other) const {
  return std::all_of(entries_.begin(), entries_.end(), [&](const auto &entry) {
    return entry.second <= other[entry.first];
  });
}

VersionVector vv_join(const VersionVector &a, const VersionVector &b) {
  VersionVector out = a;
  for (const auto &[replica, counter] : b.entries())
    if (counter > out[replica])
      out.set(replica, counter);
  return out;
}

std::string to_text(const VersionVector &vv) {
  std::string out = "{";
  for (const auto &[replica, counter] : vv.entries()) {
    if (out.size() > 1)
      out += ',';
    out += replica + ":" + std::to_string(counter);
  }
  return out + "}";
}

} // namespace mvrr
