#ifndef MVRR_BUG_TRACKER_HPP
#define MVRR_BUG_TRACKER_HPP

#include <string>

#include "mvrr/value_order.hpp"

namespace mvrr::bug_tracker {

inline const std::string open = "open";
inline const std::string assigned = "assigned";
inline const std::string closed_fixed = "closed-fixed";
inline const std::string closed_irreproducible = "closed-irreproducible";

inline const std::string low = "low";
inline const std::string medium = "medium";
inline const std::string high = "high";

/// open < assigned < {closed-fixed, closed-irreproducible}; the two closed
/// states are incomparable.
ExplicitRelation<std::string> status_relation();
ValueOrder<std::string> status_order();

/// low < medium < high.
ValueOrder<std::string> priority_order();

} // namespace mvrr::bug_tracker

#endif // MVRR_BUG_TRACKER_HPP
