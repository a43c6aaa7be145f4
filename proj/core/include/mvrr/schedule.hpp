#ifndef MVRR_SCHEDULE_HPP
#define MVRR_SCHEDULE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mvrr/errors.hpp"
#include "mvrr/value_traits.hpp"

namespace mvrr {

template <RegisterValue V> struct WriteStep {
  ReplicaId replica;
  V value;
  friend bool operator==(const WriteStep &, const WriteStep &) = default;
};

/// `to` merges a snapshot of `from`'s state as of this step.
struct SendStep {
  ReplicaId from;
  ReplicaId to;
  friend bool operator==(const SendStep &, const SendStep &) = default;
};

/// Reads every model at `replica`. Expectations are compared on the text
/// rendering of values, which is what scenario files can express.
struct ReadStep {
  ReplicaId replica;
  std::optional<std::set<std::string>> expect;
  friend bool operator==(const ReadStep &, const ReadStep &) = default;
};

template <RegisterValue V> using Step = std::variant<WriteStep<V>, SendStep, ReadStep>;

template <RegisterValue V> struct Schedule {
  std::vector<ReplicaId> replicas;
  std::vector<Step<V>> steps;
  friend bool operator==(const Schedule &, const Schedule &) = default;
};

/// Throws ScheduleError when the replica list is empty or repeats a name, or a
/// step references an undeclared replica.
template <RegisterValue V> void validate_schedule(const Schedule<V> &schedule) {
  if (schedule.replicas.empty())
    throw ScheduleError("schedule declares no replicas");
  std::set<ReplicaId> declared;
  for (const auto &r : schedule.replicas)
    if (!declared.insert(r).second)
      throw ScheduleError("replica " + r + " declared twice");
  auto check = [&](std::size_t index, const ReplicaId &r) {
    if (!declared.contains(r))
      throw ScheduleError("step " + std::to_string(index) + " references undeclared replica " +
                          r);
  };
  for (std::size_t i = 0; i < schedule.steps.size(); ++i) {
    std::visit(
        [&](const auto &step) {
          using T = std::decay_t<decltype(step)>;
          if constexpr (std::is_same_v<T, SendStep>) {
            check(i, step.from);
            check(i, step.to);
          } else {
            check(i, step.replica);
          }
        },
        schedule.steps[i]);
  }
}

/// Replica names used by generated schedules: A, B, ..., Z, R27, R28, ...
ReplicaId replica_name(std::size_t index);

/// Small deterministic RNG wrapper. Bounded draws use plain modulo on a
/// 64-bit Mersenne twister so schedules are identical across standard
/// libraries.
class ScheduleRng {
public:
  explicit ScheduleRng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  bool chance(unsigned percent) { return below(100) < percent; }

private:
  std::mt19937_64 engine_;
};

/// Appends two rounds in which every replica sends to every other, so that
/// each replica ends up having observed every write.
template <RegisterValue V> void append_full_exchange(Schedule<V> &schedule) {
  for (int round = 0; round < 2; ++round)
    for (const auto &from : schedule.replicas)
      for (const auto &to : schedule.replicas)
        if (from != to)
          schedule.steps.push_back(SendStep{from, to});
}

/// Seeded schedule of `step_count` random writes, sends, and reads followed by
/// the full exchange rounds. Written values are drawn from `domain` and
/// stamped with their writer and per-replica sequence number.
template <RegisterValue V>
Schedule<V> random_schedule(std::uint64_t seed, std::size_t replica_count,
                            std::size_t step_count, std::span<const V> domain) {
  if (replica_count == 0)
    throw ScheduleError("replica count must be at least 1");
  if (domain.empty())
    throw ScheduleError("value domain is empty");
  ScheduleRng rng(seed);
  Schedule<V> schedule;
  for (std::size_t i = 0; i < replica_count; ++i)
    schedule.replicas.push_back(replica_name(i));
  std::map<ReplicaId, std::uint64_t> writes;

  for (std::size_t i = 0; i < step_count; ++i) {
    const ReplicaId &at = schedule.replicas[rng.below(replica_count)];
    const auto roll = rng.below(100);
    if (roll < 45 || (replica_count == 1 && roll < 80)) {
      const V &base = domain[rng.below(domain.size())];
      schedule.steps.push_back(
          WriteStep<V>{at, value_traits<V>::stamp(base, at, ++writes[at])});
    } else if (roll < 80) {
      ReplicaId to = at;
      while (to == at)
        to = schedule.replicas[rng.below(replica_count)];
      schedule.steps.push_back(SendStep{at, to});
    } else {
      schedule.steps.push_back(ReadStep{at, std::nullopt});
    }
  }
  append_full_exchange(schedule);
  return schedule;
}

} // namespace mvrr

#endif // MVRR_SCHEDULE_HPP
