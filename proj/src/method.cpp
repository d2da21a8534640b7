#include "papf/method.hpp"

namespace papf {

std::optional<MethodVariant> parse_variant(std::string_view name) {
  for (MethodVariant v : kAllVariants)
    if (to_string(v) == name)
      return v;
  return std::nullopt;
}

} // namespace papf
