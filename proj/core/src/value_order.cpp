#include "mvrr/value_order.hpp"

namespace mvrr {

std::string_view to_string(OrderKind kind) noexcept {
  switch (kind) {
  case OrderKind::Empty:
    return "empty";
  case OrderKind::ExplicitRelation:
    return "partial";
  case OrderKind::TotalComparator:
    return "total";
  case OrderKind::LwwTimestamped:
    return "lww";
  }
  return "unknown";
}

std::optional<OrderKind> order_kind_from_tag(std::uint8_t tag) noexcept {
  if (tag > static_cast<std::uint8_t>(OrderKind::LwwTimestamped))
    return std::nullopt;
  return static_cast<OrderKind>(tag);
}

std::string_view to_string(OrderLaw law) noexcept {
  switch (law) {
  case OrderLaw::Irreflexivity:
    return "irreflexivity";
  case OrderLaw::Asymmetry:
    return "asymmetry";
  case OrderLaw::Transitivity:
    return "transitivity";
  }
  return "unknown";
}

} // namespace mvrr
