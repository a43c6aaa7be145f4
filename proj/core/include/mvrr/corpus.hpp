#ifndef MVRR_CORPUS_HPP
#define MVRR_CORPUS_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "mvrr/lww_value.hpp"
#include "mvrr/scenario.hpp"
#include "mvrr/schedule.hpp"

namespace mvrr {

/// Shape of generated test cases. Zero `replicas`/`steps` means "draw from
/// the range"; nonzero pins the value.
struct CorpusConfig {
  std::size_t min_replicas = 2;
  std::size_t max_replicas = 5;
  std::size_t max_steps = 25;
  std::size_t min_domain = 3;
  std::size_t max_domain = 6;
  std::size_t replicas = 0;
  std::size_t steps = 0;
};

template <RegisterValue V> struct CorpusCase {
  using value_type = V;

  std::uint64_t seed = 0;
  OrderSpec spec;
  ValueOrder<V> order;
  std::vector<V> domain;
  Schedule<V> schedule;
};

using AnyCorpusCase = std::variant<CorpusCase<std::string>, CorpusCase<LwwValue>>;

/// Deterministic test case for `seed`. The order kind cycles with the seed
/// (empty, partial, total, lww); partial orders are random DAGs over the
/// domain, total orders random rankings, and LWW domains use a narrow
/// timestamp range so ties occur.
AnyCorpusCase make_corpus_case(std::uint64_t seed, const CorpusConfig &config = {});

} // namespace mvrr

#endif // MVRR_CORPUS_HPP
