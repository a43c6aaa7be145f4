#ifndef MVRR_SIMULATION_HPP
#define MVRR_SIMULATION_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mvrr/classic_register.hpp"
#include "mvrr/event_graph.hpp"
#include "mvrr/register.hpp"
#include "mvrr/schedule.hpp"

namespace mvrr {

enum class Model { Eager, Lazy, Classic, Oracle };

std::string_view to_string(Model model) noexcept;

inline constexpr Model kAllModels[] = {Model::Eager, Model::Lazy, Model::Classic,
                                       Model::Oracle};

/// One read evaluated against every model.
template <RegisterValue V> struct ModelReads {
  std::set<V> eager;
  std::set<V> lazy;
  std::set<V> classic;
  std::set<V> oracle;

  const std::set<V> &of(Model m) const {
    switch (m) {
    case Model::Eager:
      return eager;
    case Model::Lazy:
      return lazy;
    case Model::Classic:
      return classic;
    case Model::Oracle:
      break;
    }
    return oracle;
  }

  friend bool operator==(const ModelReads &, const ModelReads &) = default;
};

/// Everything one simulated replica holds, per model.
template <RegisterValue V> struct ReplicaModels {
  RegisterState<V> eager;
  RegisterState<V> lazy;
  ClassicMvrState<V> classic;
  // Ids of the writes this replica has observed; always causally closed.
  std::set<EventId> observed;
  std::uint64_t writes = 0;

  friend bool operator==(const ReplicaModels &, const ReplicaModels &) = default;
};

/// Runs the eager register, the lazy variant, the classic register, and the
/// event-graph oracle side by side over the same steps.
template <RegisterValue V> class Simulation {
public:
  Simulation(const std::vector<ReplicaId> &replicas, ValueOrder<V> order)
      : order_(std::move(order)) {
    for (const auto &r : replicas)
      replicas_.emplace(r, ReplicaModels<V>{initial(order_), initial(order_), {}, {}, 0});
  }

  /// Applies a write or send; reads do not change state.
  void apply(const Step<V> &step) {
    if (const auto *w = std::get_if<WriteStep<V>>(&step))
      apply_write(*w);
    else if (const auto *s = std::get_if<SendStep>(&step))
      apply_send(*s);
  }

  ModelReads<V> read(const ReplicaId &replica) const {
    const auto &models = at(replica);
    return ModelReads<V>{
        mvrr::read(models.eager),
        lazy_read(models.lazy),
        classic_read(models.classic, order_),
        f_mvrr(observed_subgraph(graph_, models.observed), order_),
    };
  }

  const ReplicaModels<V> &at(const ReplicaId &replica) const {
    const auto it = replicas_.find(replica);
    if (it == replicas_.end())
      throw ScheduleError("unknown replica " + replica);
    return it->second;
  }

  const std::map<ReplicaId, ReplicaModels<V>> &replicas() const noexcept { return replicas_; }
  const EventGraph<V> &graph() const noexcept { return graph_; }
  const ValueOrder<V> &order() const noexcept { return order_; }
  const std::vector<std::string> &invariant_violations() const noexcept {
    return violations_;
  }

  /// True when every replica has observed every write.
  bool fully_exchanged() const {
    for (const auto &[id, models] : replicas_)
      if (models.observed.size() != graph_.events().size())
        return false;
    return true;
  }

private:
  ReplicaModels<V> &at_mut(const ReplicaId &replica) {
    const auto it = replicas_.find(replica);
    if (it == replicas_.end())
      throw ScheduleError("unknown replica " + replica);
    return it->second;
  }

  void apply_write(const WriteStep<V> &w) {
    auto &models = at_mut(w.replica);
    models.eager = write(models.eager, w.replica, w.value);
    models.lazy = write(models.lazy, w.replica, w.value);
    models.classic = classic_write(models.classic, w.replica, w.value);
    const EventId id = graph_.events().size() + 1;
    graph_ = graph_.with_event(WriteEvent<V>{id, w.replica, w.value}, models.observed);
    models.observed.insert(id);
    ++models.writes;
    check(w.replica, models);
  }

  void apply_send(const SendStep &s) {
    const ReplicaModels<V> snapshot = at(s.from);
    auto &to = at_mut(s.to);
    to.eager = merge(to.eager, snapshot.eager);
    to.lazy = lazy_merge(to.lazy, snapshot.lazy);
    to.classic = classic_merge(to.classic, snapshot.classic);
    to.observed.insert(snapshot.observed.begin(), snapshot.observed.end());
    check(s.to, to);
  }

  void check(const ReplicaId &replica, const ReplicaModels<V> &models) {
    auto note = [&](const char *model, const std::optional<std::string> &problem) {
      if (problem)
        violations_.push_back(replica + " " + model + ": " + *problem);
    };
    note("eager", models.eager.invariant_violation(true));
    note("lazy", models.lazy.invariant_violation(false));
    note("classic", models.classic.invariant_violation());
  }

  ValueOrder<V> order_;
  std::map<ReplicaId, ReplicaModels<V>> replicas_;
  EventGraph<V> graph_;
  std::vector<std::string> violations_;
};

template <RegisterValue V> struct ReadRecord {
  std::size_t step = 0;
  ReplicaId replica;
  ModelReads<V> reads;
  std::optional<std::set<std::string>> expected;
  bool expectation_met = true;

  friend bool operator==(const ReadRecord &, const ReadRecord &) = default;
};

struct ConvergenceVerdict {
  bool eager = true;
  bool lazy = true;
  bool classic = true;
  bool oracle = true;
  bool fully_exchanged = true;

  bool converged(Model m) const {
    switch (m) {
    case Model::Eager:
      return eager;
    case Model::Lazy:
      return lazy;
    case Model::Classic:
      return classic;
    case Model::Oracle:
      break;
    }
    return oracle;
  }
  bool all() const { return eager && lazy && classic && oracle; }

  friend bool operator==(const ConvergenceVerdict &, const ConvergenceVerdict &) = default;
};

template <RegisterValue V> struct RunReport {
  OrderKind order_kind = OrderKind::Empty;
  std::vector<ReadRecord<V>> reads;
  std::map<ReplicaId, ModelReads<V>> final_reads;
  std::map<ReplicaId, ReplicaModels<V>> final_states;
  std::vector<std::string> invariant_violations;
  bool fully_exchanged = true;

  // Agreement with the oracle over every read step and every final read.
  bool lazy_conforms = true;
  bool classic_conforms = true;
  bool eager_conforms = true;
  std::optional<std::size_t> first_divergence;       // any model vs oracle
  std::optional<std::size_t> first_eager_divergence; // eager vs oracle
  std::size_t expectation_failures = 0;

  /// Required properties: lazy and classic match the oracle, invariants hold,
  /// and with the empty order the eager register matches too.
  bool conformant() const {
    return lazy_conforms && classic_conforms && invariant_violations.empty() &&
           (order_kind != OrderKind::Empty || eager_conforms);
  }

  friend bool operator==(const RunReport &, const RunReport &) = default;
};

template <RegisterValue V> ConvergenceVerdict check_convergence(const RunReport<V> &report) {
  ConvergenceVerdict verdict;
  verdict.fully_exchanged = report.fully_exchanged;
  if (report.final_reads.empty())
    return verdict;
  const ModelReads<V> &first = report.final_reads.begin()->second;
  for (const auto &[replica, reads] : report.final_reads) {
    verdict.eager = verdict.eager && reads.eager == first.eager;
    verdict.lazy = verdict.lazy && reads.lazy == first.lazy;
    verdict.classic = verdict.classic && reads.classic == first.classic;
    verdict.oracle = verdict.oracle && reads.oracle == first.oracle;
  }
  return verdict;
}

/// Position reported for divergences found in final reads.
inline constexpr std::size_t kFinalReadStep = static_cast<std::size_t>(-1);

template <RegisterValue V>
RunReport<V> run_schedule(const Schedule<V> &schedule, const ValueOrder<V> &order) {
  validate_schedule(schedule);
  Simulation<V> sim(schedule.replicas, order);
  RunReport<V> report;
  report.order_kind = order.kind();

  auto compare = [&](std::size_t step, const ModelReads<V> &r) {
    const bool lazy_ok = r.lazy == r.oracle;
    const bool classic_ok = r.classic == r.oracle;
    const bool eager_ok = r.eager == r.oracle;
    report.lazy_conforms = report.lazy_conforms && lazy_ok;
    report.classic_conforms = report.classic_conforms && classic_ok;
    report.eager_conforms = report.eager_conforms && eager_ok;
    if (!(lazy_ok && classic_ok && eager_ok) && !report.first_divergence)
      report.first_divergence = step;
    if (!eager_ok && !report.first_eager_divergence)
      report.first_eager_divergence = step;
  };

  for (std::size_t i = 0; i < schedule.steps.size(); ++i) {
    const auto &step = schedule.steps[i];
    sim.apply(step);
    if (const auto *r = std::get_if<ReadStep>(&step)) {
      ReadRecord<V> record{i, r->replica, sim.read(r->replica), r->expect, true};
      compare(i, record.reads);
      if (r->expect) {
        for (Model m : kAllModels) {
          std::set<std::string> rendered;
          for (const auto &v : record.reads.of(m))
            rendered.insert(to_text(v));
          record.expectation_met = record.expectation_met && rendered == *r->expect;
        }
        if (!record.expectation_met)
          ++report.expectation_failures;
      }
      report.reads.push_back(std::move(record));
    }
  }
  for (const auto &[replica, models] : sim.replicas()) {
    auto reads = sim.read(replica);
    compare(kFinalReadStep, reads);
    report.final_reads.emplace(replica, std::move(reads));
    report.final_states.emplace(replica, models);
  }
  report.invariant_violations = sim.invariant_violations();
  report.fully_exchanged = sim.fully_exchanged();
  return report;
}

} // namespace mvrr

#endif // MVRR_SIMULATION_HPP
