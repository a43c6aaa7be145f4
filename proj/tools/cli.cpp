#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mvrr/bug_tracker.hpp"
#include "mvrr/corpus.hpp"
#include "mvrr/scenario.hpp"
#include "mvrr/simulation.hpp"
#include "mvrr/witness.hpp"

namespace mvrr::cli {

namespace {

enum class Format { Text, Structured };

struct Config {
  std::string scenario;
  std::uint64_t seed = 0;
  std::size_t runs = 0;
  std::size_t replicas = 0;
  std::size_t steps = 0;
  Format format = Format::Text;
  Variant variant = Variant::Eager;
};

class FileNotFound : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw FileNotFound("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char *yes_no(bool v, Format f) {
  if (f == Format::Structured)
    return v ? "true" : "false";
  return v ? "yes" : "no";
}

std::string step_label(std::size_t step) {
  return step == kFinalReadStep ? std::string("final") : std::to_string(step);
}

// ---------------------------------------------------------------- run

template <RegisterValue V>
int run_scenario(const Scenario<V> &scenario, const Config &cfg, std::ostream &out) {
  const auto report = run_schedule(scenario.schedule, scenario.order);
  const auto verdict = check_convergence(report);
  const bool structured = cfg.format == Format::Structured;

  if (structured)
    out << "scenario path=" << cfg.scenario << " order=" << to_string(scenario.spec.kind)
        << " replicas=" << scenario.schedule.replicas.size()
        << " steps=" << scenario.schedule.steps.size() << "\n";
  else
    out << "scenario " << cfg.scenario << " (order " << to_string(scenario.spec.kind) << ", "
        << scenario.schedule.steps.size() << " steps)\n";

  std::size_t next_read = 0;
  for (std::size_t i = 0; i < scenario.schedule.steps.size(); ++i) {
    const auto &step = scenario.schedule.steps[i];
    if (const auto *w = std::get_if<WriteStep<V>>(&step)) {
      if (!structured)
        out << "step " << i << " write " << w->replica << " " << to_text(w->value) << "\n";
      continue;
    }
    if (const auto *s = std::get_if<SendStep>(&step)) {
      if (!structured)
        out << "step " << i << " send " << s->from << " -> " << s->to << "\n";
      continue;
    }
    const auto &rec = report.reads[next_read++];
    if (structured) {
      out << "read step=" << i << " replica=" << rec.replica;
      for (Model m : kAllModels)
        out << " " << to_string(m) << "=" << to_text(rec.reads.of(m));
      if (rec.expected)
        out << " expect=" << to_text(*rec.expected)
            << " match=" << yes_no(rec.expectation_met, cfg.format);
      out << "\n";
    } else {
      out << "step " << i << " read " << rec.replica << "\n";
      for (Model m : kAllModels)
        out << "  " << to_string(m) << std::string(9 - to_string(m).size(), ' ')
            << to_text(rec.reads.of(m)) << "\n";
      if (rec.expected)
        out << "  expect   " << to_text(*rec.expected)
            << (rec.expectation_met ? "  ok" : "  MISMATCH") << "\n";
    }
  }

  for (const auto &[replica, reads] : report.final_reads) {
    out << "final replica=" << replica;
    for (Model m : kAllModels)
      out << " " << to_string(m) << "=" << to_text(reads.of(m));
    out << "\n";
  }
  out << "convergence";
  for (Model m : kAllModels)
    out << " " << to_string(m) << "=" << yes_no(verdict.converged(m), cfg.format);
  out << " fully_exchanged=" << yes_no(verdict.fully_exchanged, cfg.format) << "\n";
  out << "conformance lazy=" << yes_no(report.lazy_conforms, cfg.format)
      << " classic=" << yes_no(report.classic_conforms, cfg.format)
      << " eager=" << yes_no(report.eager_conforms, cfg.format)
      << " invariant_violations=" << report.invariant_violations.size() << "\n";
  for (const auto &v : report.invariant_violations)
    out << "invariant " << v << "\n";
  out << "divergence step="
      << (report.first_eager_divergence ? step_label(*report.first_eager_divergence)
                                        : std::string("none"))
      << "\n";

  const bool pass = report.expectation_failures == 0 && report.conformant();
  out << "result status=" << (pass ? "pass" : "fail")
      << " expectation_failures=" << report.expectation_failures << "\n";
  return pass ? kOk : kFailure;
}

int cmd_run(const Config &cfg, std::ostream &out) {
  const AnyScenario any = parse_scenario(read_file(cfg.scenario));
  return std::visit([&](const auto &s) { return run_scenario(s, cfg, out); }, any);
}

// ---------------------------------------------------------------- fuzz

int cmd_fuzz(const Config &cfg, std::ostream &out) {
  CorpusConfig corpus;
  corpus.replicas = cfg.replicas;
  corpus.steps = cfg.steps;
  const bool structured = cfg.format == Format::Structured;
  std::size_t conformance_failures = 0, convergence_failures = 0, eager_divergences = 0;

  if (structured)
    out << "fuzz seed=" << cfg.seed << " runs=" << cfg.runs << " replicas=" << cfg.replicas
        << " steps=" << cfg.steps << "\n";
  else
    out << "fuzzing " << cfg.runs << " schedules from seed " << cfg.seed << "\n";

  for (std::size_t i = 0; i < cfg.runs; ++i) {
    const std::uint64_t seed = cfg.seed + i;
    std::visit(
        [&](const auto &c) {
          const auto report = run_schedule(c.schedule, c.order);
          const auto verdict = check_convergence(report);
          const bool conformant = report.conformant();
          const bool converged = verdict.all() && verdict.fully_exchanged;
          if (report.first_eager_divergence)
            ++eager_divergences;
          if (conformant && converged)
            return;
          conformance_failures += conformant ? 0 : 1;
          convergence_failures += converged ? 0 : 1;
          out << "failure seed=" << seed << " order=" << to_string(c.spec.kind)
              << " conformant=" << yes_no(conformant, cfg.format)
              << " converged=" << yes_no(converged, cfg.format) << "\n";
          if (!structured) {
            std::istringstream lines(format_scenario(c.schedule, c.spec));
            for (std::string line; std::getline(lines, line);)
              out << "  " << line << "\n";
          }
        },
        make_corpus_case(seed, corpus));
  }
  out << "summary schedules=" << cfg.runs << " conformance_failures=" << conformance_failures
      << " convergence_failures=" << convergence_failures
      << " eager_divergences=" << eager_divergences << "\n";
  return conformance_failures + convergence_failures == 0 ? kOk : kFailure;
}

// ---------------------------------------------------------------- check-order

template <RegisterValue V>
int print_order_report(const OrderReport<V> &report, const OrderSpec &spec, Format f,
                       std::ostream &out) {
  out << "order kind=" << to_string(spec.kind) << " sample=" << report.sample_size
      << " valid=" << yes_no(report.valid(), f) << "\n";
  for (const auto &v : report.violations) {
    out << "violation law=" << to_string(v.law) << " witness=";
    for (std::size_t i = 0; i < v.witness.size(); ++i)
      out << (i ? "," : "") << to_text(v.witness[i]);
    out << " occurrences=" << v.occurrences << "\n";
  }
  return report.valid() ? kOk : kFailure;
}

int cmd_check_order(const Config &cfg, std::ostream &out) {
  const ScenarioDocument doc = parse_document(read_file(cfg.scenario));
  if (!doc.order)
    throw ParseError("no 'order' block", 1);
  const OrderSpec &spec = *doc.order;

  std::vector<std::string> written;
  for (const auto &step : doc.steps)
    if (step.kind == RawStep::Kind::Write)
      written.push_back(step.args[1]);

  if (spec.kind == OrderKind::LwwTimestamped) {
    std::vector<LwwValue> sample;
    std::map<ReplicaId, std::uint64_t> writes;
    for (const auto &step : doc.steps)
      if (step.kind == RawStep::Kind::Write) {
        auto v = parse_lww_value(step.args[1]);
        if (!v)
          throw ParseError("expected '<token>@<timestamp>'", step.line);
        sample.push_back(value_traits<LwwValue>::stamp(*v, step.args[0], ++writes[step.args[0]]));
      }
    return print_order_report(validate_order(lww_order(), std::span<const LwwValue>(sample)),
                              spec, cfg.format, out);
  }

  std::vector<std::string> sample = spec.domain();
  for (const auto &w : written)
    if (std::find(sample.begin(), sample.end(), w) == sample.end())
      sample.push_back(w);

  int status = kOk;
  if (spec.kind == OrderKind::ExplicitRelation) {
    try {
      (void)explicit_relation_order(relation_of(spec));
    } catch (const CycleError &e) {
      out << "cycle";
      for (std::size_t i = 0; i < e.cycle().size(); ++i)
        out << (i ? " < " : " ") << e.cycle()[i];
      out << "\n";
      status = kFailure;
    }
  }
  const auto order = make_order_unchecked(spec);
  const int laws = print_order_report(
      validate_order(order, std::span<const std::string>(sample)), spec, cfg.format, out);
  return status == kOk ? laws : status;
}

// ---------------------------------------------------------------- witness

template <RegisterValue V>
int print_witness(const WitnessResult<V> &result, const OrderSpec &spec, const Config &cfg,
                  const SearchBounds &bounds, std::ostream &out) {
  const bool structured = cfg.format == Format::Structured;
  const auto &stats = result.stats;
  if (structured) {
    out << "# witness variant=" << to_string(cfg.variant)
        << " found=" << yes_no(result.witness.has_value(), cfg.format);
    if (result.witness)
      out << " step=" << result.witness->step << " replica=" << result.witness->replica
          << " " << to_string(cfg.variant) << "=" << to_text(result.witness->variant_read)
          << " oracle=" << to_text(result.witness->oracle_read);
    out << "\n# search seed=" << bounds.seed_begin
        << " random_schedules=" << stats.random_schedules
        << " max_replicas=" << bounds.max_replicas << " max_steps=" << bounds.max_steps
        << " enumerated_states=" << stats.enumerated_states
        << " depth_completed=" << stats.depth_completed
        << " exhaustive_completed=" << yes_no(stats.exhaustive_completed, cfg.format) << "\n";
  } else {
    out << "# Searched " << stats.random_schedules << " random schedules from seed "
        << bounds.seed_begin << " and every schedule of up to " << stats.depth_completed
        << " steps over " << bounds.max_replicas << " replicas (" << stats.enumerated_states
        << " states).\n";
    if (result.witness)
      out << "# The " << to_string(cfg.variant) << " register disagrees with the oracle at step "
          << result.witness->step << ": replica " << result.witness->replica << " reads "
          << to_text(result.witness->variant_read) << ", oracle reads "
          << to_text(result.witness->oracle_read) << ".\n";
    else
      out << "# No divergence found for the " << to_string(cfg.variant) << " register.\n";
  }
  if (result.witness)
    out << format_scenario(result.witness->schedule, spec);
  return kOk;
}

int cmd_witness(const Config &cfg, std::ostream &out) {
  SearchBounds bounds;
  bounds.seed_begin = cfg.seed;
  bounds.seed_end = cfg.seed + cfg.runs;
  bounds.max_replicas = cfg.replicas;
  bounds.max_steps = cfg.steps;

  OrderSpec spec;
  std::vector<std::string> written;
  if (cfg.scenario.empty()) {
    spec.kind = OrderKind::ExplicitRelation;
    spec.edges = bug_tracker::status_relation().edges;
  } else {
    const ScenarioDocument doc = parse_document(read_file(cfg.scenario));
    if (!doc.order)
      throw ParseError("no 'order' block", 1);
    spec = *doc.order;
    for (const auto &step : doc.steps)
      if (step.kind == RawStep::Kind::Write &&
          std::find(written.begin(), written.end(), step.args[1]) == written.end())
        written.push_back(step.args[1]);
  }

  if (spec.kind == OrderKind::LwwTimestamped) {
    std::vector<LwwValue> domain;
    for (const auto &w : written) {
      auto v = parse_lww_value(w);
      if (!v)
        throw ParseError("expected '<token>@<timestamp>', got '" + w + "'", 1);
      domain.push_back(*v);
    }
    if (domain.empty())
      domain = {LwwValue{"x", 1, {}, 0}, LwwValue{"y", 1, {}, 0}, LwwValue{"z", 2, {}, 0}};
    const auto order = lww_order();
    return print_witness(
        find_divergence_witness<LwwValue>(bounds, order, domain, cfg.variant), spec, cfg,
        bounds, out);
  }

  std::vector<std::string> domain = spec.domain();
  for (const auto &w : written)
    if (std::find(domain.begin(), domain.end(), w) == domain.end())
      domain.push_back(w);
  if (domain.empty())
    domain = {"x", "y", "z"};
  const auto order = make_order(spec);
  return print_witness(
      find_divergence_witness<std::string>(bounds, order, domain, cfg.variant), spec, cfg,
      bounds, out);
}

} // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Replicated register with order-based conflict resolution: "
               "scenario runner, fuzzer, order checker, and divergence search"};
  app.require_subcommand(1);
  Config cfg;

  const std::map<std::string, Format> formats{{"text", Format::Text},
                                              {"structured", Format::Structured}};
  auto add_format = [&](CLI::App *sub) {
    sub->add_option("--format", cfg.format, "Output format: text or structured")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  };

  auto *run = app.add_subcommand("run", "Execute a scenario file against every model");
  run->add_option("--scenario", cfg.scenario, "Scenario file")->required();
  add_format(run);

  auto *fuzz = app.add_subcommand("fuzz", "Run seeded random schedules and check properties");
  fuzz->add_option("--seed", cfg.seed, "First seed")->required();
  fuzz->add_option("--runs", cfg.runs, "Number of schedules")->required();
  fuzz->add_option("--replicas", cfg.replicas, "Replicas per schedule (default: 2-5)")
      ->check(CLI::Range(1, 26));
  fuzz->add_option("--steps", cfg.steps, "Random steps per schedule (default: 0-25)");
  add_format(fuzz);

  auto *check = app.add_subcommand("check-order", "Validate the order block of a file");
  check->add_option("--scenario", cfg.scenario, "Scenario or order file")->required();
  add_format(check);

  auto *witness = app.add_subcommand(
      "witness", "Search for a schedule where a register disagrees with the oracle");
  witness->add_option("--seed", cfg.seed, "First random seed")->required();
  cfg.runs = 0;
  witness->add_option("--runs", cfg.runs, "Random schedules to try before enumerating");
  cfg.replicas = 0;
  cfg.steps = 0;
  witness->add_option("--replicas", cfg.replicas, "Maximum replicas (1-3, default 3)")
      ->check(CLI::Range(1, 3));
  witness->add_option("--steps", cfg.steps, "Maximum steps (0-8, default 8)")
      ->check(CLI::Range(0, 8));
  witness->add_option("--scenario", cfg.scenario,
                      "File whose order block and written values define the search "
                      "(default: bug-status order)");
  const std::map<std::string, Variant> variants{
      {"eager", Variant::Eager}, {"lazy", Variant::Lazy}, {"classic", Variant::Classic}};
  std::string variant_name = "eager";
  witness->add_option("--variant", variant_name, "Register compared against the oracle")
      ->check(CLI::IsMember(variants, CLI::ignore_case));
  add_format(witness);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (run->parsed())
      return cmd_run(cfg, out);
    if (fuzz->parsed()) {
      if (cfg.runs == 0)
        throw CLI::ValidationError("--runs", "must be at least 1");
      return cmd_fuzz(cfg, out);
    }
    if (check->parsed())
      return cmd_check_order(cfg, out);
    if (witness->parsed()) {
      cfg.variant = variants.at(CLI::detail::to_lower(variant_name));
      if (cfg.replicas == 0)
        cfg.replicas = 3;
      if (witness->count("--steps") == 0)
        cfg.steps = 8;
      if (witness->count("--runs") == 0)
        cfg.runs = 200;
      return cmd_witness(cfg, out);
    }
  } catch (const FileNotFound &e) {
    err << "error: " << e.what() << "\n";
    return kFileNotFound;
  } catch (const ParseError &e) {
    err << "error: " << cfg.scenario << ": " << e.what() << "\n";
    return kParseError;
  } catch (const CLI::ValidationError &e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

} // namespace mvrr::cli
