#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace papf {

/// Planner ablations, from the plain field up to the full predictive method.
enum class MethodVariant { TAPF, AL, AL_VA, PAPF };

inline constexpr std::array<MethodVariant, 4> kAllVariants = {
    MethodVariant::TAPF, MethodVariant::AL, MethodVariant::AL_VA, MethodVariant::PAPF};

constexpr bool uses_angle_limit(MethodVariant v) { return v != MethodVariant::TAPF; }

constexpr bool uses_velocity_adjustment(MethodVariant v) {
  return v == MethodVariant::AL_VA || v == MethodVariant::PAPF;
}

constexpr bool uses_predictive_field(MethodVariant v) { return v == MethodVariant::PAPF; }

constexpr std::string_view to_string(MethodVariant v) {
  switch (v) {
  case MethodVariant::TAPF:
    return "tapf";
  case MethodVariant::AL:
    return "al";
  case MethodVariant::AL_VA:
    return "al_va";
  case MethodVariant::PAPF:
    return "papf";
  }
  return "?";
}

/// Accepts the lower-case names produced by to_string.
std::optional<MethodVariant> parse_variant(std::string_view name);

} // namespace papf
