#ifndef MVRR_WITNESS_HPP
#define MVRR_WITNESS_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mvrr/codec.hpp"
#include "mvrr/simulation.hpp"

namespace mvrr {

/// Implementation whose reads are compared against the oracle.
enum class Variant { Eager, Lazy, Classic };

std::string_view to_string(Variant variant) noexcept;

/// A schedule ending in a read at which `variant` disagrees with the oracle.
template <RegisterValue V> struct Witness {
  Schedule<V> schedule;
  std::size_t step = 0; // index of the final read step
  ReplicaId replica;
  Variant variant = Variant::Eager;
  std::set<V> variant_read;
  std::set<V> oracle_read;
};

struct SearchBounds {
  std::uint64_t seed_begin = 0;
  std::uint64_t seed_end = 0; // random schedules tried: [seed_begin, seed_end)
  std::size_t max_replicas = 3;
  std::size_t max_steps = 8;
  bool exhaustive = true;
};

struct SearchStats {
  std::size_t random_schedules = 0;
  std::size_t enumerated_states = 0; // distinct states reached by enumeration
  std::size_t enumerated_nodes = 0;  // search-tree nodes expanded
  std::size_t depth_completed = 0;   // every schedule up to this length checked
  bool exhaustive_completed = false;
};

template <RegisterValue V> struct WitnessResult {
  std::optional<Witness<V>> witness;
  SearchStats stats;
};

namespace detail {

template <RegisterValue V>
const std::set<V> &variant_read(const ModelReads<V> &reads, Variant variant) {
  switch (variant) {
  case Variant::Eager:
    return reads.eager;
  case Variant::Lazy:
    return reads.lazy;
  case Variant::Classic:
    break;
  }
  return reads.classic;
}

// First replica (in name order) at which `variant` disagrees with the oracle.
template <RegisterValue V>
std::optional<std::pair<ReplicaId, ModelReads<V>>> disagreement(const Simulation<V> &sim,
                                                                Variant variant) {
  for (const auto &[replica, models] : sim.replicas()) {
    (void)models;
    auto reads = sim.read(replica);
    if (variant_read(reads, variant) != reads.oracle)
      return std::pair{replica, std::move(reads)};
  }
  return std::nullopt;
}

template <RegisterValue V>
Witness<V> make_witness(const Schedule<V> &schedule, std::size_t prefix_len,
                        const ReplicaId &replica, const ModelReads<V> &reads,
                        Variant variant) {
  Witness<V> w;
  w.schedule.replicas = schedule.replicas;
  w.schedule.steps.assign(schedule.steps.begin(),
                          schedule.steps.begin() + static_cast<std::ptrdiff_t>(prefix_len));
  w.schedule.steps.push_back(ReadStep{replica, std::nullopt});
  w.step = w.schedule.steps.size() - 1;
  w.replica = replica;
  w.variant = variant;
  w.variant_read = variant_read(reads, variant);
  w.oracle_read = reads.oracle;
  return w;
}

// Restamps writes after steps were removed so each replica's sequence numbers
// stay dense, matching what a scenario file would produce.
template <RegisterValue V> void restamp(Schedule<V> &schedule) {
  std::map<ReplicaId, std::uint64_t> writes;
  for (auto &step : schedule.steps)
    if (auto *w = std::get_if<WriteStep<V>>(&step))
      w->value = value_traits<V>::stamp(w->value, w->replica, ++writes[w->replica]);
}

} // namespace detail

/// Earliest point in `schedule` where `variant` disagrees with the oracle at
/// any replica, checking every replica after every step.
template <RegisterValue V>
std::optional<Witness<V>> first_divergence(const Schedule<V> &schedule,
                                           const ValueOrder<V> &order, Variant variant) {
  validate_schedule(schedule);
  Simulation<V> sim(schedule.replicas, order);
  for (std::size_t i = 0; i < schedule.steps.size(); ++i) {
    sim.apply(schedule.steps[i]);
    if (auto found = detail::disagreement(sim, variant))
      return detail::make_witness(schedule, i + 1, found->first, found->second, variant);
  }
  return std::nullopt;
}

/// Greedy step deletion: drops any step whose removal keeps a divergence.
template <RegisterValue V>
Witness<V> shrink_witness(Witness<V> witness, const ValueOrder<V> &order) {
  bool changed = true;
  while (changed) {
    changed = false;
    const std::size_t body = witness.schedule.steps.size() - 1;
    for (std::size_t i = 0; i < body; ++i) {
      Schedule<V> candidate = witness.schedule;
      candidate.steps.erase(candidate.steps.begin() + static_cast<std::ptrdiff_t>(i));
      candidate.steps.pop_back();
      detail::restamp(candidate);
      if (auto smaller = first_divergence(candidate, order, witness.variant)) {
        witness = std::move(*smaller);
        changed = true;
        break;
      }
    }
  }
  // Drop replicas no step mentions.
  std::set<ReplicaId> mentioned;
  for (const auto &step : witness.schedule.steps)
    std::visit(
        [&](const auto &s) {
          if constexpr (std::is_same_v<std::decay_t<decltype(s)>, SendStep>) {
            mentioned.insert(s.from);
            mentioned.insert(s.to);
          } else {
            mentioned.insert(s.replica);
          }
        },
        step);
  std::erase_if(witness.schedule.replicas,
                [&](const ReplicaId &r) { return !mentioned.contains(r); });
  return witness;
}

namespace detail {

// Depth-bounded enumeration of every schedule over `domain` with at most
// `max_replicas` replicas. Schedules reaching the same combined state have the
// same futures, so states are memoized with the largest remaining depth
// already explored from them. States are keyed up to renaming of replicas and
// up to automorphisms of the order on the domain; LWW stamps carry the writer,
// so those runs keep the identity only.
template <RegisterValue V> class Enumerator {
public:
  Enumerator(const ValueOrder<V> &order, std::span<const V> domain, std::size_t max_replicas,
             Variant variant, SearchStats &stats)
      : order_(order), domain_(domain.begin(), domain.end()), variant_(variant),
        stats_(stats) {
    for (std::size_t i = 0; i < max_replicas; ++i)
      replicas_.push_back(replica_name(i));
    std::vector<std::size_t> ids(replicas_.size());
    for (std::size_t i = 0; i < ids.size(); ++i)
      ids[i] = i;
    const bool symmetric = order.kind() != OrderKind::LwwTimestamped;
    do
      replica_perms_.push_back(ids);
    while (symmetric && std::next_permutation(ids.begin(), ids.end()));

    std::vector<std::size_t> values(domain_.size());
    for (std::size_t i = 0; i < values.size(); ++i)
      values[i] = i;
    do {
      bool preserves = true;
      for (std::size_t a = 0; a < values.size() && preserves; ++a)
        for (std::size_t b = 0; b < values.size() && preserves; ++b)
          preserves = order.precedes(domain_[a], domain_[b]) ==
                      order.precedes(domain_[values[a]], domain_[values[b]]);
      if (preserves)
        value_perms_.push_back(values);
    } while (symmetric && values.size() <= 6 && std::next_permutation(values.begin(), values.end()));
  }

  // Explores every schedule of length <= depth; returns a witness of exactly
  // minimal length among those when one exists and shorter ones were cleared.
  std::optional<Witness<V>> run(std::size_t depth) {
    memo_.clear();
    Simulation<V> sim(replicas_, order_);
    path_.clear();
    return visit(sim, depth, 0, nullptr);
  }

private:
  std::optional<Witness<V>> visit(const Simulation<V> &sim, std::size_t remaining,
                                  std::size_t used, const ReplicaId *touched) {
    ++stats_.enumerated_nodes;
    // Leaves are only checked; memoizing them costs more than it saves.
    if (remaining == 0) {
      if (touched) {
        auto reads = sim.read(*touched);
        if (variant_read(reads, variant_) != reads.oracle) {
          Schedule<V> schedule{replicas_, path_};
          return make_witness(schedule, path_.size(), *touched, reads, variant_);
        }
      }
      return std::nullopt;
    }
    auto [it, inserted] = memo_.try_emplace(state_key(sim), remaining);
    if (!inserted) {
      if (it->second >= remaining)
        return std::nullopt;
      it->second = remaining;
    } else {
      ++stats_.enumerated_states;
      // Only the replica the last step changed can newly disagree.
      if (touched) {
        auto reads = sim.read(*touched);
        if (variant_read(reads, variant_) != reads.oracle) {
          Schedule<V> schedule{replicas_, path_};
          return make_witness(schedule, path_.size(), *touched, reads, variant_);
        }
      }
    }
    const std::size_t allowed = std::min(used + 1, replicas_.size());
    // After a local write every model reads just that value, so a schedule's
    // last step only matters when it is a send.
    if (remaining > 1)
      for (std::size_t r = 0; r < allowed; ++r) {
        const ReplicaId &at = replicas_[r];
        const std::uint64_t seq = sim.at(at).writes + 1;
        for (const V &base : domain_) {
          if (auto found =
                  descend(sim, WriteStep<V>{at, value_traits<V>::stamp(base, at, seq)},
                          remaining, std::max(used, r + 1), at))
            return found;
        }
      }
    for (std::size_t from = 0; from < allowed; ++from)
      for (std::size_t to = 0; to < allowed; ++to) {
        if (from == to)
          continue;
        if (auto found = descend(sim, SendStep{replicas_[from], replicas_[to]}, remaining,
                                 std::max(used, std::max(from, to) + 1), replicas_[to]))
          return found;
      }
    return std::nullopt;
  }

  std::optional<Witness<V>> descend(const Simulation<V> &sim, Step<V> step,
                                    std::size_t remaining, std::size_t used,
                                    const ReplicaId &touched) {
    Simulation<V> next = sim;
    next.apply(step);
    path_.push_back(std::move(step));
    auto found = visit(next, remaining - 1, used, &touched);
    path_.pop_back();
    return found;
  }

  std::size_t replica_index(const ReplicaId &r) const {
    return static_cast<std::size_t>(std::find(replicas_.begin(), replicas_.end(), r) -
                                    replicas_.begin());
  }

  // Domain index of a value, or npos for stamped values (LWW).
  std::size_t value_index(const V &v) const {
    const auto it = std::find(domain_.begin(), domain_.end(), v);
    return it == domain_.end() ? std::string::npos
                               : static_cast<std::size_t>(it - domain_.begin());
  }

  // Smallest encoding of the state over every replica renaming and order
  // automorphism.
  std::string state_key(const Simulation<V> &sim) const {
    // Events are named (writer, k) for the writer's k-th write, so
    // interleavings of independent writes give the same key.
    const auto &events = sim.graph().events();
    std::vector<std::size_t> writer(events.size()), nth(events.size()), value(events.size());
    std::vector<std::size_t> writes(replicas_.size(), 0);
    std::map<EventId, std::size_t> position;
    for (std::size_t i = 0; i < events.size(); ++i) {
      writer[i] = replica_index(events[i].replica);
      nth[i] = ++writes[writer[i]];
      value[i] = value_index(events[i].value);
      position[events[i].id] = i;
    }
    std::vector<std::vector<std::size_t>> preds(events.size());
    for (std::size_t i = 0; i < events.size(); ++i)
      for (EventId p : sim.graph().predecessors_of(events[i].id))
        preds[i].push_back(position.at(p));

    std::string best;
    for (const auto &rho : replica_perms_) {
      // Canonical event numbering under this renaming: by (slot, k).
      std::vector<std::size_t> order(events.size());
      for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::pair{rho[writer[a]], nth[a]} < std::pair{rho[writer[b]], nth[b]};
      });
      std::vector<std::size_t> canon(events.size());
      for (std::size_t c = 0; c < order.size(); ++c)
        canon[order[c]] = c;
      for (const auto &sigma : value_perms_) {
        std::string key = encode(sim, rho, sigma, order, canon, writer, value, preds);
        if (best.empty() || key < best)
          best = std::move(key);
      }
    }
    return best;
  }

  std::string encode(const Simulation<V> &sim, const std::vector<std::size_t> &rho,
                     const std::vector<std::size_t> &sigma,
                     const std::vector<std::size_t> &order,
                     const std::vector<std::size_t> &canon,
                     const std::vector<std::size_t> &writer,
                     const std::vector<std::size_t> &value,
                     const std::vector<std::vector<std::size_t>> &preds) const {
    const auto &events = sim.graph().events();
    std::string key;
    auto put = [&](std::size_t n) { key.push_back(static_cast<char>(n & 0xff)); };
    auto put_value = [&](std::size_t index, const V &v) {
      if (index != std::string::npos) {
        put(sigma[index]);
        return;
      }
      ByteWriter raw;
      value_traits<V>::encode(v, raw);
      put(0xff);
      key.append(raw.bytes().begin(), raw.bytes().end());
    };
    auto put_vector = [&](const VersionVector &vv) {
      std::vector<std::uint64_t> slots(rho.size(), 0);
      for (const auto &[r, n] : vv.entries())
        slots[rho[replica_index(r)]] = n;
      for (auto n : slots)
        put(n);
    };

    for (std::size_t c : order) {
      put(rho[writer[c]]);
      put_value(value[c], events[c].value);
      std::uint64_t mask = 0;
      for (std::size_t p : preds[c])
        mask |= std::uint64_t{1} << canon[p];
      for (int b = 0; b < 8; ++b)
        put(mask >> (8 * b));
    }
    put(0xfe);

    std::vector<const ReplicaModels<V> *> slots(rho.size());
    for (const auto &[r, models] : sim.replicas())
      slots[rho[replica_index(r)]] = &models;
    for (const auto *models : slots) {
      std::vector<std::size_t> observed;
      for (EventId id : models->observed)
        observed.push_back(canon[id - 1]);
      std::sort(observed.begin(), observed.end());
      put(observed.size());
      for (auto o : observed)
        put(o);
      for (const auto *state : {&models->eager, &models->lazy}) {
        std::vector<std::string> entries;
        for (const auto &[dot, v] : state->entries()) {
          std::string e;
          e.push_back(static_cast<char>(rho[replica_index(dot.replica)]));
          e.push_back(static_cast<char>(dot.counter));
          const auto index = value_index(v);
          e.push_back(static_cast<char>(index == std::string::npos ? 0xff : sigma[index]));
          if (index == std::string::npos)
            e += to_text(v);
          entries.push_back(std::move(e));
        }
        std::sort(entries.begin(), entries.end());
        put(entries.size());
        for (const auto &e : entries) {
          put(e.size());
          key += e;
        }
        put_vector(state->context());
      }
      std::vector<std::string> classic;
      for (const auto &entry : models->classic.entries) {
        std::string e;
        const auto index = value_index(entry.value);
        e.push_back(static_cast<char>(index == std::string::npos ? 0xff : sigma[index]));
        if (index == std::string::npos)
          e += to_text(entry.value);
        std::vector<std::uint64_t> clock(rho.size(), 0);
        for (const auto &[r, n] : entry.clock.entries())
          clock[rho[replica_index(r)]] = n;
        for (auto n : clock)
          e.push_back(static_cast<char>(n));
        classic.push_back(std::move(e));
      }
      std::sort(classic.begin(), classic.end());
      put(classic.size());
      for (const auto &e : classic) {
        put(e.size());
        key += e;
      }
    }
    return key;
  }

  const ValueOrder<V> &order_;
  std::vector<V> domain_;
  Variant variant_;
  SearchStats &stats_;
  std::vector<ReplicaId> replicas_;
  std::vector<std::vector<std::size_t>> replica_perms_;
  std::vector<std::vector<std::size_t>> value_perms_;
  std::vector<Step<V>> path_;
  std::unordered_map<std::string, std::size_t> memo_;
};

} // namespace detail

/// Searches for a point where `variant`'s read differs from the oracle: first
/// over random schedules drawn from the seed range, then by exhaustive
/// enumeration up to the size bounds (iterative deepening, so the first
/// enumerated witness is of minimal length). Returns the shortest witness
/// found, shrunk by step deletion.
template <RegisterValue V>
WitnessResult<V> find_divergence_witness(const SearchBounds &bounds, const ValueOrder<V> &order,
                                         std::span<const V> domain,
                                         Variant variant = Variant::Eager) {
  WitnessResult<V> result;
  if (domain.empty() || bounds.max_replicas == 0)
    return result;

  auto keep = [&](Witness<V> w) {
    if (!result.witness || w.schedule.steps.size() < result.witness->schedule.steps.size())
      result.witness = std::move(w);
  };

  for (std::uint64_t seed = bounds.seed_begin; seed < bounds.seed_end; ++seed) {
    ScheduleRng pick(seed ^ 0x5bd1e995ULL);
    const std::size_t replicas =
        bounds.max_replicas == 1 ? 1 : pick.between(2, bounds.max_replicas);
    auto schedule = random_schedule(seed, replicas, bounds.max_steps, domain);
    ++result.stats.random_schedules;
    if (auto w = first_divergence(schedule, order, variant))
      keep(shrink_witness(std::move(*w), order));
  }

  if (bounds.exhaustive) {
    detail::Enumerator<V> enumerator(order, domain, bounds.max_replicas, variant,
                                     result.stats);
    for (std::size_t depth = 0; depth <= bounds.max_steps; ++depth) {
      if (auto w = enumerator.run(depth)) {
        keep(shrink_witness(std::move(*w), order));
        break;
      }
      result.stats.depth_completed = depth;
    }
    result.stats.exhaustive_completed = true;
  }
  return result;
}

} // namespace mvrr

#endif // MVRR_WITNESS_HPP
