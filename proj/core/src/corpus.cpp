#include "mvrr/corpus.hpp"

#include <algorithm>
#include <numeric>

namespace mvrr {

AnyCorpusCase make_corpus_case(std::uint64_t seed, const CorpusConfig &config) {
  ScheduleRng rng(seed * 0x9e3779b97f4a7c15ULL + 0x7f4a7c15ULL);
  const std::size_t replicas =
      config.replicas ? config.replicas : rng.between(config.min_replicas, config.max_replicas);
  const std::size_t steps = config.steps ? config.steps : rng.between(0, config.max_steps);
  const std::size_t domain_size = rng.between(config.min_domain, config.max_domain);

  std::vector<std::string> tokens;
  for (std::size_t i = 0; i < domain_size; ++i)
    tokens.push_back("v" + std::to_string(i));

  OrderSpec spec;
  switch (seed % 4) {
  case 0:
    spec.kind = OrderKind::Empty;
    break;
  case 1: {
    spec.kind = OrderKind::ExplicitRelation;
    // Edges only go forward in a shuffled sequence, so the relation is acyclic.
    std::vector<std::string> shuffled = tokens;
    for (std::size_t i = shuffled.size(); i > 1; --i)
      std::swap(shuffled[i - 1], shuffled[rng.below(i)]);
    for (std::size_t i = 0; i < shuffled.size(); ++i)
      for (std::size_t j = i + 1; j < shuffled.size(); ++j)
        if (rng.chance(35))
          spec.edges.emplace_back(shuffled[i], shuffled[j]);
    break;
  }
  case 2:
    spec.kind = OrderKind::TotalComparator;
    spec.ranking = tokens;
    for (std::size_t i = spec.ranking.size(); i > 1; --i)
      std::swap(spec.ranking[i - 1], spec.ranking[rng.below(i)]);
    break;
  default:
    spec.kind = OrderKind::LwwTimestamped;
    break;
  }

  if (spec.kind == OrderKind::LwwTimestamped) {
    CorpusCase<LwwValue> c{seed, spec, lww_order(), {}, {}};
    for (const auto &t : tokens)
      c.domain.push_back(LwwValue{t, static_cast<std::int64_t>(rng.between(1, 3)), {}, 0});
    c.schedule = random_schedule<LwwValue>(seed, replicas, steps, c.domain);
    return c;
  }
  CorpusCase<std::string> c{seed, spec, make_order(spec), tokens, {}};
  c.schedule = random_schedule<std::string>(seed, replicas, steps, c.domain);
  return c;
}

} // namespace mvrr
