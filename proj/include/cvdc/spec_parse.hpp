#pragma once

// Text specs for channels and states, e.g. "amplifier:s=0.1" or "kappa:r=1,k=0.3".
// Parameters may be left out; build() then reports which one is missing.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "cvdc/channels.hpp"
#include "cvdc/phase_space.hpp"

namespace cvdc {

struct ChannelSpec {
  ChannelKind kind = ChannelKind::kIdentity;
  std::map<std::string, double> params;
  EnvConvention convention = kDefaultEnvConvention;

  /// Names of the numeric parameters this kind accepts, required ones first.
  static const char* const* param_names(ChannelKind kind, std::size_t& required);

  bool accepts(const std::string& name) const;
  ChannelSpec with(const std::string& name, double value) const;
  GaussianChannel build() const;
  std::string to_string() const;
};

enum class StateFamily { kTmsv, kKappa, kPure, kDecomp, kRandom };

const char* to_string(StateFamily family) noexcept;

struct StateSpec {
  StateFamily family = StateFamily::kTmsv;
  std::map<std::string, double> params;
  std::optional<std::uint64_t> seed;  // random family only

  std::optional<double> get(const std::string& name) const;
  /// Concrete state; every parameter of the family must be present.
  TwoModeState build() const;
  std::string to_string() const;
};

ChannelSpec parse_channel_spec(std::string_view text);
StateSpec parse_state_spec(std::string_view text);

/// parse_channel_spec(text).build()
GaussianChannel parse_channel(std::string_view text);

}  // namespace cvdc
