#include "mvrr/simulation.hpp"
#include "mvrr/witness.hpp"

namespace mvrr {

std::string_view to_string(Model model) noexcept {
  switch (model) {
  case Model::Eager:
    return "eager";
  case Model::Lazy:
    return "lazy";
  case Model::Classic:
    return "classic";
  case Model::Oracle:
    return "oracle";
  }
  return "unknown";
}

std::string_view to_string(Variant variant) noexcept {
  switch (variant) {
  case Variant::Eager:
    return "eager";
  case Variant::Lazy:
    return "lazy";
  case Variant::Classic:
    return "classic";
  }
  return "unknown";
}

} // namespace mvrr
