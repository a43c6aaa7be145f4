// Acceptance suite: one pass/fail line per criterion.
//
//   acceptance                 run every criterion
//   acceptance --criterion N   run one (ctest registers each separately)

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mvrr/bug_tracker.hpp"
#include "mvrr/codec.hpp"
#include "mvrr/corpus.hpp"
#include "mvrr/scenario.hpp"
#include "mvrr/simulation.hpp"
#include "mvrr/witness.hpp"

using namespace mvrr;

namespace {

constexpr std::uint64_t kCorpusSize = 10'000;
constexpr std::size_t kTriplesPerRun = 2;
constexpr std::size_t kCodecStates = 1'000;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ------------------------------------------------------------------ corpus

// Counts gathered in one pass over the corpus. Every replica is checked after
// every step that changes it, and every replica once more at the end.
struct LawCounts {
  std::size_t triples = 0;
  std::size_t commutativity = 0;
  std::size_t idempotence = 0;
  std::size_t associativity = 0;
  std::string example;

  bool ok() const { return commutativity + idempotence + associativity == 0; }
  std::string text() const {
    return "comm=" + std::to_string(commutativity) + " idem=" + std::to_string(idempotence) +
           " assoc=" + std::to_string(associativity);
  }
};

struct CorpusScan {
  std::size_t schedules = 0;
  std::map<OrderKind, std::size_t> per_kind;
  std::size_t reads = 0;

  std::size_t lazy_mismatches = 0;
  std::size_t classic_vs_oracle = 0;
  std::size_t classic_vs_lazy = 0;
  std::string first_lazy_mismatch;
  std::string first_classic_mismatch;

  std::size_t empty_reads = 0;
  std::size_t empty_eager_vs_mvr = 0;
  std::string first_empty_mismatch;

  std::size_t singleton_reads = 0;
  std::size_t singleton_violations = 0;
  std::size_t unvalidated_total_orders = 0;
  std::string first_singleton_violation;

  std::size_t metadata_checks = 0;
  std::size_t metadata_violations = 0;
  std::size_t max_classic_vectors = 0;
  std::string first_metadata_violation;

  std::size_t invariant_violations = 0;

  LawCounts eager, lazy, classic;
};

template <RegisterValue V> struct Snapshot {
  RegisterState<V> eager;
  RegisterState<V> lazy;
  ClassicMvrState<V> classic;
};

template <typename S, typename Merge>
void check_laws(LawCounts &laws, const S &a, const S &b, const S &c, Merge merge_fn) {
  ++laws.triples;
  auto note = [&](std::size_t &counter, const char *law, const std::string &what) {
    if (counter++ == 0 && laws.example.empty())
      laws.example = std::string(law) + " " + what;
  };
  if (!(merge_fn(a, b) == merge_fn(b, a)))
    note(laws.commutativity, "commutativity", "");
  if (!(merge_fn(a, a) == a))
    note(laws.idempotence, "idempotence", "");
  const S left = merge_fn(merge_fn(a, b), c);
  const S right = merge_fn(a, merge_fn(b, c));
  if (!(left == right)) {
    if constexpr (requires { to_text(left); })
      note(laws.associativity, "associativity",
           "(a.b).c=" + to_text(left) + " a.(b.c)=" + to_text(right));
    else
      note(laws.associativity, "associativity", "");
  }
}

template <RegisterValue V> void scan_case(const CorpusCase<V> &c, CorpusScan &scan) {
  ++scan.schedules;
  ++scan.per_kind[c.order.kind()];
  Simulation<V> sim(c.schedule.replicas, c.order);
  const bool empty = c.order.kind() == OrderKind::Empty;
  const bool singleton = c.order.kind() == OrderKind::LwwTimestamped ||
                         c.order.kind() == OrderKind::TotalComparator;
  if (c.order.kind() == OrderKind::TotalComparator &&
      !validate_order(c.order, std::span<const V>(c.domain)).valid())
    ++scan.unvalidated_total_orders;

  std::vector<Snapshot<V>> pool;
  const std::string where = "seed " + std::to_string(c.seed);

  auto check = [&](const ReplicaId &replica, const std::string &when) {
    const ModelReads<V> reads = sim.read(replica);
    const auto &models = sim.at(replica);
    ++scan.reads;
    const std::string at = where + " " + when + " replica " + replica;
    if (reads.lazy != reads.oracle && scan.lazy_mismatches++ == 0)
      scan.first_lazy_mismatch =
          at + ": lazy " + to_text(reads.lazy) + " oracle " + to_text(reads.oracle);
    if (reads.classic != reads.oracle) {
      if (scan.classic_vs_oracle++ == 0)
        scan.first_classic_mismatch =
            at + ": classic " + to_text(reads.classic) + " oracle " + to_text(reads.oracle);
    }
    if (reads.classic != reads.lazy)
      ++scan.classic_vs_lazy;

    const auto graph = observed_subgraph(sim.graph(), models.observed);
    const std::set<V> mvr = f_mvr(graph);
    if (empty) {
      ++scan.empty_reads;
      if (reads.eager != mvr && scan.empty_eager_vs_mvr++ == 0)
        scan.first_empty_mismatch =
            at + ": eager " + to_text(reads.eager) + " f_mvr " + to_text(mvr);
    }
    if (singleton) {
      ++scan.singleton_reads;
      for (Model m : kAllModels)
        if (reads.of(m).size() > 1 && scan.singleton_violations++ == 0)
          scan.first_singleton_violation =
              at + ": " + std::string(to_string(m)) + " " + to_text(reads.of(m));
    }

    // One vector for the dotted states; one per retained value for the
    // classic register, which retains exactly the concurrent maximal writes.
    ++scan.metadata_checks;
    const std::size_t classic_vectors = models.classic.metadata_vectors();
    scan.max_classic_vectors = std::max(scan.max_classic_vectors, classic_vectors);
    std::size_t maximal = 0;
    for (const auto &e : graph.events())
      maximal += graph.has_successor(e.id) ? 0 : 1;
    const bool counts_ok = models.eager.metadata_vectors() == 1 &&
                           models.lazy.metadata_vectors() == 1 &&
                           classic_vectors == models.classic.entries.size() &&
                           classic_vectors == maximal;
    if (!counts_ok && scan.metadata_violations++ == 0)
      scan.first_metadata_violation =
          at + ": eager " + std::to_string(models.eager.metadata_vectors()) + " classic " +
          std::to_string(classic_vectors) + " maximal writes " + std::to_string(maximal);

    pool.push_back(Snapshot<V>{models.eager, models.lazy, models.classic});
  };

  for (std::size_t i = 0; i < c.schedule.steps.size(); ++i) {
    const auto &step = c.schedule.steps[i];
    sim.apply(step);
    if (const auto *w = std::get_if<WriteStep<V>>(&step))
      check(w->replica, "step " + std::to_string(i));
    else if (const auto *s = std::get_if<SendStep>(&step))
      check(s->to, "step " + std::to_string(i));
    else
      check(std::get<ReadStep>(step).replica, "step " + std::to_string(i));
  }
  for (const auto &replica : c.schedule.replicas)
    check(replica, "final");
  scan.invariant_violations += sim.invariant_violations().size();

  ScheduleRng rng(c.seed ^ 0x7a11e5ULL);
  for (std::size_t t = 0; t < kTriplesPerRun; ++t) {
    const auto &a = pool[rng.below(pool.size())];
    const auto &b = pool[rng.below(pool.size())];
    const auto &d = pool[rng.below(pool.size())];
    check_laws(scan.eager, a.eager, b.eager, d.eager,
               [](const auto &x, const auto &y) { return merge(x, y); });
    check_laws(scan.lazy, a.lazy, b.lazy, d.lazy,
               [](const auto &x, const auto &y) { return lazy_merge(x, y); });
    check_laws(scan.classic, a.classic, b.classic, d.classic,
               [](const auto &x, const auto &y) { return classic_merge(x, y); });
  }
}

const CorpusScan &corpus_scan() {
  static const CorpusScan scan = [] {
    CorpusScan s;
    for (std::uint64_t seed = 0; seed < kCorpusSize; ++seed)
      std::visit([&](const auto &c) { scan_case(c, s); }, make_corpus_case(seed));
    return s;
  }();
  return scan;
}

std::string corpus_shape(const CorpusScan &s) {
  std::string out = std::to_string(s.schedules) + " schedules (";
  bool first = true;
  for (const auto &[kind, n] : s.per_kind) {
    out += (first ? "" : " ") + std::string(to_string(kind)) + "=" + std::to_string(n);
    first = false;
  }
  return out + ")";
}

// -------------------------------------------------------------- criteria

Outcome lazy_conformance() {
  const auto &s = corpus_scan();
  Outcome o;
  o.pass = s.schedules >= kCorpusSize && s.per_kind.size() == 4 && s.lazy_mismatches == 0 &&
           s.invariant_violations == 0;
  o.detail = corpus_shape(s) + ", " + std::to_string(s.reads) + " reads, " +
             std::to_string(s.lazy_mismatches) + " lazy/oracle mismatches, " +
             std::to_string(s.invariant_violations) + " invariant violations";
  if (!s.first_lazy_mismatch.empty())
    o.detail += "; first: " + s.first_lazy_mismatch;
  return o;
}

Outcome classic_equivalence() {
  const auto &s = corpus_scan();
  Outcome o;
  o.pass = s.schedules >= kCorpusSize && s.classic_vs_oracle == 0 && s.classic_vs_lazy == 0;
  o.detail = std::to_string(s.reads) + " reads, classic/oracle mismatches " +
             std::to_string(s.classic_vs_oracle) + ", classic/lazy mismatches " +
             std::to_string(s.classic_vs_lazy);
  if (!s.first_classic_mismatch.empty())
    o.detail += "; first: " + s.first_classic_mismatch;
  return o;
}

Outcome empty_order_equivalence() {
  const auto &s = corpus_scan();
  Outcome o;
  o.pass = s.per_kind.count(OrderKind::Empty) && s.empty_reads > 0 && s.empty_eager_vs_mvr == 0;
  o.detail = std::to_string(s.per_kind.count(OrderKind::Empty) ? s.per_kind.at(OrderKind::Empty)
                                                               : 0) +
             " empty-order schedules, " + std::to_string(s.empty_reads) + " reads, " +
             std::to_string(s.empty_eager_vs_mvr) + " eager/f_mvr mismatches";
  if (!s.first_empty_mismatch.empty())
    o.detail += "; first: " + s.first_empty_mismatch;
  return o;
}

Outcome semilattice_laws() {
  const auto &s = corpus_scan();
  Outcome o;
  o.pass = s.eager.triples >= 10'000 && s.eager.ok() && s.lazy.ok() && s.classic.ok();
  o.detail = std::to_string(s.eager.triples) + " triples per implementation; eager " +
             s.eager.text() + ", lazy " + s.lazy.text() + ", classic " + s.classic.text();
  for (const auto *laws : {&s.eager, &s.lazy, &s.classic})
    if (!laws->example.empty()) {
      o.detail += "; first violation: " + laws->example;
      break;
    }
  return o;
}

Outcome total_order_singleton() {
  const auto &s = corpus_scan();
  Outcome o;
  o.pass = s.singleton_reads > 0 && s.singleton_violations == 0 &&
           s.unvalidated_total_orders == 0;
  o.detail = std::to_string(s.singleton_reads) + " reads under total and lww orders, " +
             std::to_string(s.singleton_violations) + " with more than one value, " +
             std::to_string(s.unvalidated_total_orders) + " total orders failing validation";
  if (!s.first_singleton_violation.empty())
    o.detail += "; first: " + s.first_singleton_violation;
  return o;
}

template <RegisterValue V>
std::optional<RunReport<V>> run_file(const std::string &name, std::string &why) {
  const auto any = parse_scenario(read_file(std::string(MVRR_SCENARIO_DIR) + "/" + name));
  const auto *scenario = std::get_if<Scenario<V>>(&any);
  if (!scenario) {
    why = name + " parsed to the wrong value type";
    return std::nullopt;
  }
  return run_schedule(scenario->schedule, scenario->order);
}

// Every model must give `want` at the given read.
template <RegisterValue V>
bool all_models_read(const ReadRecord<V> &rec, const std::set<V> &want) {
  for (Model m : kAllModels)
    if (rec.reads.of(m) != want)
      return false;
  return true;
}

Outcome bug_status_scenario() {
  Outcome o;
  std::string why;
  const auto report = run_file<std::string>("bug_status.scn", why);
  if (!report)
    return {false, why};
  namespace bt = bug_tracker;
  const std::vector<std::pair<std::string, std::set<std::string>>> want{
      {"A", {bt::closed_irreproducible}},
      {"A", {bt::closed_fixed, bt::closed_irreproducible}},
      {"A", {bt::assigned}},
      {"B", {bt::assigned}},
  };
  bool ok = report->reads.size() == want.size() && report->expectation_failures == 0 &&
            report->conformant();
  for (std::size_t i = 0; ok && i < want.size(); ++i)
    ok = report->reads[i].replica == want[i].first &&
         all_models_read(report->reads[i], want[i].second);
  for (const auto &[replica, reads] : report->final_reads)
    ok = ok && reads.eager == std::set<std::string>{bt::assigned} &&
         reads.oracle == std::set<std::string>{bt::assigned};
  o.pass = ok;
  o.detail = "reads";
  for (const auto &rec : report->reads)
    o.detail += " " + rec.replica + "=" + to_text(rec.reads.eager);
  return o;
}

Outcome lww_scenario() {
  Outcome o;
  std::string why;
  const auto report = run_file<LwwValue>("lww.scn", why);
  if (!report)
    return {false, why};
  auto payloads = [](const std::set<LwwValue> &s) {
    std::string out;
    for (const auto &v : s)
      out += (out.empty() ? "" : ",") + to_text(v);
    return "{" + out + "}";
  };
  bool ok = report->expectation_failures == 0 && report->conformant() &&
            report->reads.size() == 4;
  // Later write with the smaller timestamp replaces the earlier one.
  for (std::size_t i = 0; ok && i < 2; ++i)
    for (Model m : kAllModels)
      ok = ok && payloads(report->reads[i].reads.of(m)) == "{v2@50}";
  // Concurrent writes: the higher timestamp wins everywhere.
  for (std::size_t i = 2; ok && i < 4; ++i)
    for (Model m : kAllModels)
      ok = ok && payloads(report->reads[i].reads.of(m)) == "{v4@70}";

  // Same check built directly, with the lower timestamp written second.
  Schedule<LwwValue> concurrent{{"A", "B"}, {}};
  concurrent.steps.push_back(WriteStep<LwwValue>{"A", LwwValue{"hi", 90, "A", 1}});
  concurrent.steps.push_back(WriteStep<LwwValue>{"B", LwwValue{"lo", 10, "B", 1}});
  append_full_exchange(concurrent);
  const auto direct = run_schedule(concurrent, lww_order());
  for (const auto &[replica, reads] : direct.final_reads)
    for (Model m : kAllModels)
      ok = ok && payloads(reads.of(m)) == "{hi@90}";
  o.pass = ok;
  o.detail = "reads";
  for (const auto &rec : report->reads)
    o.detail += " " + rec.replica + "=" + payloads(rec.reads.eager);
  o.detail += "; concurrent hi@90 vs lo@10 -> " + payloads(direct.final_reads.at("A").eager);
  return o;
}

Outcome metadata_counts() {
  const auto &s = corpus_scan();
  Outcome o;
  o.pass = s.metadata_checks > 0 && s.metadata_violations == 0;
  o.detail = std::to_string(s.metadata_checks) + " replica states: eager and lazy carry 1 " +
             "vector, classic carries one per retained value (max " +
             std::to_string(s.max_classic_vectors) + "); " +
             std::to_string(s.metadata_violations) + " violations";
  if (!s.first_metadata_violation.empty())
    o.detail += "; first: " + s.first_metadata_violation;
  return o;
}

Outcome witness_search() {
  SearchBounds bounds;
  bounds.seed_begin = 0;
  bounds.seed_end = 200;
  bounds.max_replicas = 3;
  bounds.max_steps = 8;
  const auto order = bug_tracker::status_order();
  const auto domain = order.domain();
  OrderSpec spec;
  spec.kind = OrderKind::ExplicitRelation;
  spec.edges = bug_tracker::status_relation().edges;

  const auto eager = find_divergence_witness<std::string>(bounds, order, domain, Variant::Eager);
  const auto lazy = find_divergence_witness<std::string>(bounds, order, domain, Variant::Lazy);

  std::string record;
  if (eager.witness) {
    record = format_scenario(eager.witness->schedule, spec);
  } else {
    record = "no divergence within 3 replicas and 8 steps\n";
  }
  std::ofstream(MVRR_FINDINGS_PATH) << record;

  // The outcome must match what the findings document records.
  const std::string doc = read_file(MVRR_FINDINGS_DOC);
  const bool recorded = !doc.empty() && doc.find(record) != std::string::npos;

  Outcome o;
  o.pass = eager.stats.exhaustive_completed && lazy.stats.exhaustive_completed &&
           lazy.stats.depth_completed == bounds.max_steps && !lazy.witness && recorded;
  if (eager.witness)
    o.detail = "eager witness of " + std::to_string(eager.witness->schedule.steps.size() - 1) +
               " steps (replica " + eager.witness->replica + " reads " +
               to_text(eager.witness->variant_read) + ", oracle " +
               to_text(eager.witness->oracle_read) + ")";
  else
    o.detail = "no eager witness";
  o.detail += std::string(recorded ? ", matches" : ", does NOT match") + " the findings document";
  o.detail += "; lazy: " + std::string(lazy.witness ? "witness found" : "none") + " after " +
              std::to_string(lazy.stats.enumerated_states) + " states, complete to depth " +
              std::to_string(lazy.stats.depth_completed);
  return o;
}

template <RegisterValue V>
void collect_states(const CorpusCase<V> &c, std::vector<RegisterState<V>> &out) {
  const auto report = run_schedule(c.schedule, c.order);
  for (const auto &[replica, models] : report.final_states) {
    out.push_back(models.eager);
    out.push_back(models.lazy);
  }
}

template <RegisterValue V>
void codec_round_trips(const std::vector<RegisterState<V>> &states, std::size_t &failures,
                       std::size_t &equality_failures, std::string &first) {
  std::vector<Bytes> encoded;
  for (const auto &s : states) {
    const Bytes bytes = encode_state(s);
    const auto back = decode_state<V>(bytes, s.policy());
    if (!(back == s) || encode_state(back) != bytes) {
      if (failures++ == 0)
        first = "round trip of " + to_text(s);
    }
    encoded.push_back(bytes);
  }
  // Equal states give identical bytes, and distinct states distinct bytes.
  for (std::size_t i = 0; i < states.size(); ++i)
    for (std::size_t j = i + 1; j < states.size(); ++j) {
      if (!states[i].policy().same_as(states[j].policy()))
        continue;
      if ((states[i] == states[j]) != (encoded[i] == encoded[j]) && equality_failures++ == 0)
        first = "equality of " + to_text(states[i]) + " and " + to_text(states[j]);
    }
  // Equal states built along different merge orders.
  for (std::size_t i = 0; i + 1 < states.size(); i += 2) {
    const auto &a = states[i];
    const auto &b = states[i + 1];
    if (!a.policy().same_as(b.policy()))
      continue;
    const auto ab = lazy_merge(a, b);
    const auto ba = lazy_merge(b, a);
    if (ab == ba && encode_state(ab) != encode_state(ba) && equality_failures++ == 0)
      first = "merge orders of " + to_text(a) + " and " + to_text(b);
  }
}

Outcome codec() {
  std::vector<RegisterState<std::string>> strings;
  std::vector<RegisterState<LwwValue>> lww;
  for (std::uint64_t seed = 0; strings.size() + lww.size() < kCodecStates; ++seed)
    std::visit(
        [&](const auto &c) {
          using V = typename std::decay_t<decltype(c)>::value_type;
          if constexpr (std::is_same_v<V, LwwValue>)
            collect_states(c, lww);
          else
            collect_states(c, strings);
        },
        make_corpus_case(seed));
  std::size_t failures = 0, equality_failures = 0;
  std::string first;
  codec_round_trips(strings, failures, equality_failures, first);
  codec_round_trips(lww, failures, equality_failures, first);
  Outcome o;
  const std::size_t total = strings.size() + lww.size();
  o.pass = total >= kCodecStates && failures == 0 && equality_failures == 0;
  o.detail = std::to_string(total) + " states (" + std::to_string(lww.size()) + " lww), " +
             std::to_string(failures) + " round-trip failures, " +
             std::to_string(equality_failures) + " equality/byte mismatches";
  if (!first.empty())
    o.detail += "; first: " + first;
  return o;
}

struct Criterion {
  const char *name;
  std::function<Outcome()> run;
};

const std::vector<Criterion> &criteria() {
  static const std::vector<Criterion> all{
      {"lazy conformance", lazy_conformance},
      {"classic equivalence", classic_equivalence},
      {"empty-order equivalence", empty_order_equivalence},
      {"semilattice laws", semilattice_laws},
      {"total-order singleton", total_order_singleton},
      {"bug-status scenario", bug_status_scenario},
      {"lww scenario", lww_scenario},
      {"metadata counts", metadata_counts},
      {"divergence-witness search", witness_search},
      {"codec", codec},
  };
  return all;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Acceptance criteria"};
  std::size_t only = 0;
  app.add_option("--criterion", only, "Run a single criterion (1-10)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  bool all_pass = true;
  for (std::size_t i = 0; i < criteria().size(); ++i) {
    if (only != 0 && only != i + 1)
      continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria()[i].run();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all_pass = all_pass && o.pass;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(1);
    line << "criterion " << (i + 1) << " " << (o.pass ? "PASS" : "FAIL") << " "
         << criteria()[i].name << " (" << secs << "s): " << o.detail;
    std::cout << line.str() << std::endl;
  }
  return all_pass ? 0 : 1;
}
