#ifndef FUNNELQUAD_CHANNELS_HPP
#define FUNNELQUAD_CHANNELS_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace funnelquad {

// One entry per tracked error signal, in the order the control cascade
// evaluates them: position, velocity, tilt, yaw, body rates.
enum class Channel : int {
  p_x = 0,
  p_y,
  p_z,
  v_x,
  v_y,
  v_z,
  phitheta_1,
  phitheta_2,
  psi,
  omega_phi,
  omega_theta,
  omega_psi,
};

inline constexpr std::size_t kChannelCount = 12;

inline constexpr std::array<std::string_view, kChannelCount> kChannelNames = {
    "p_x",        "p_y",        "p_z",       "v_x",
    "v_y",        "v_z",        "phitheta_1", "phitheta_2",
    "psi",        "omega_phi",  "omega_theta", "omega_psi",
};

constexpr std::string_view channel_name(Channel c) {
  return kChannelNames[static_cast<std::size_t>(c)];
}

constexpr std::size_t channel_index(Channel c) {
  return static_cast<std::size_t>(c);
}

inline std::optional<Channel> channel_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kChannelCount; ++i) {
    if (kChannelNames[i] == name) return static_cast<Channel>(i);
  }
  return std::nullopt;
}

// Loop stage a channel belongs to, used to tag errors raised mid-cascade.
constexpr std::string_view channel_stage(Channel c) {
  switch (c) {
    case Channel::p_x:
    case Channel::p_y:
    case Channel::p_z:
      return "position";
    case Channel::v_x:
    case Channel::v_y:
    case Channel::v_z:
      return "velocity";
    case Channel::phitheta_1:
    case Channel::phitheta_2:
      return "tilt";
    case Channel::psi:
      return "yaw";
    case Channel::omega_phi:
    case Channel::omega_theta:
    case Channel::omega_psi:
      return "rate";
  }
  return "?";
}

}  // namespace funnelquad

#endif  // FUNNELQUAD_CHANNELS_HPP
