#include "mvrr/schedule.hpp"

namespace mvrr {

ReplicaId replica_name(std::size_t index) {
  if (index < 26)
    return ReplicaId(1, static_cast<char>('A' + index));
  return "R" + std::to_string(index + 1);
}

} // namespace mvrr
