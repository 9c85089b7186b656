#pragma once

// Scalar-isotropic single-mode Gaussian CP maps: cov -> x^2 cov + y I, d -> x d.

#include "cvdc/phase_space.hpp"

namespace cvdc {

enum class ChannelKind { kIdentity, kAmplifier, kAttenuator, kEnvironmental };

// Prefactor of the added noise for environmental channels:
// kHalfPhoton uses (nbar + 1/2)(1 - e^{-gamma t}), kFullPhoton uses (nbar + 1)(...).
enum class EnvConvention { kHalfPhoton, kFullPhoton };

inline constexpr EnvConvention kDefaultEnvConvention = EnvConvention::kHalfPhoton;

const char* to_string(ChannelKind kind) noexcept;
const char* to_string(EnvConvention conv) noexcept;

struct GaussianChannel {
  double x = 1.0;
  double y = 0.0;
  ChannelKind kind = ChannelKind::kIdentity;
  // Only meaningful for kEnvironmental.
  EnvConvention convention = kDefaultEnvConvention;
};

GaussianChannel identity_channel();

/// X = cosh(s), Y = n_th sinh^2(s). Requires s >= 0, n_th >= 1.
GaussianChannel amplifier_channel(double s, double n_th = 1.0);

/// X = cos(theta), Y = n_th sin^2(theta). Requires n_th >= 1.
GaussianChannel attenuator_channel(double theta, double n_th = 1.0);

/// X = exp(-gamma t / 2), Y from the convention. Requires gamma, t, nbar >= 0.
GaussianChannel environmental_channel(double gamma, double t, double nbar,
                                      EnvConvention conv = kDefaultEnvConvention);

/// y >= |x^2 - 1| - 1e-9.
bool is_cp(const GaussianChannel& ch);

/// Raw (x, y) channel; throws kDomain if it is not CP.
GaussianChannel make_channel(double x, double y, ChannelKind kind = ChannelKind::kIdentity);

TwoModeState apply_to_mode(const TwoModeState& state, const GaussianChannel& ch, Mode mode);

/// Channel equal to `first` followed by `second`.
GaussianChannel compose(const GaussianChannel& first, const GaussianChannel& second);

}  // namespace cvdc
