#include "mvrr/bug_tracker.hpp"

namespace mvrr::bug_tracker {

ExplicitRelation<std::string> status_relation() {
  return {
      {open, assigned, closed_fixed, closed_irreproducible},
      {{open, assigned}, {assigned, closed_fixed}, {assigned, closed_irreproducible}},
  };
}

ValueOrder<std::string> status_order() {
  return explicit_relation_order(status_relation(), "bug-status");
}

ValueOrder<std::string> priority_order() {
  return ranked_order<std::string>({low, medium, high}, "bug-priority");
}

} // namespace mvrr::bug_tracker
