#include "cvdc/channels.hpp"

#include <cmath>
#include <string>

#include "cvdc/error.hpp"

namespace cvdc {

const char* to_string(ChannelKind kind) noexcept {
  switch (kind) {
    case ChannelKind::kIdentity: return "identity";
    case ChannelKind::kAmplifier: return "amplifier";
    case ChannelKind::kAttenuator: return "attenuator";
    case ChannelKind::kEnvironmental: return "environmental";
  }
  return "unknown";
}

const char* to_string(EnvConvention conv) noexcept {
  return conv == EnvConvention::kHalfPhoton ? "nbarhalf" : "nbar1";
}

bool is_cp(const GaussianChannel& ch) {
  return std::isfinite(ch.x) && std::isfinite(ch.y) &&
         ch.y >= std::abs(ch.x * ch.x - 1.0) - kPhysicalTol;
}

GaussianChannel make_channel(double x, double y, ChannelKind kind) {
  GaussianChannel ch{x, y, kind, kDefaultEnvConvention};
  if (!is_cp(ch)) {
    throw Error(ErrorCode::kDomain, "channel (x=" + std::to_string(x) + ", y=" +
                                        std::to_string(y) + ") is not completely positive");
  }
  return ch;
}

GaussianChannel identity_channel() { return {}; }

GaussianChannel amplifier_channel(double s, double n_th) {
  if (!(s >= 0.0) || !std::isfinite(s)) throw Error(ErrorCode::kDomain, "amplifier needs s >= 0");
  if (!(n_th >= 1.0)) throw Error(ErrorCode::kDomain, "amplifier needs nth >= 1");
  const double sh = std::sinh(s);
  return make_channel(std::cosh(s), n_th * sh * sh, ChannelKind::kAmplifier);
}

GaussianChannel attenuator_channel(double theta, double n_th) {
  if (!std::isfinite(theta)) throw Error(ErrorCode::kDomain, "attenuator needs finite theta");
  if (!(n_th >= 1.0)) throw Error(ErrorCode::kDomain, "attenuator needs nth >= 1");
  const double sn = std::sin(theta);
  return make_channel(std::cos(theta), n_th * sn * sn, ChannelKind::kAttenuator);
}

GaussianChannel environmental_channel(double gamma, double t, double nbar, EnvConvention conv) {
  if (!(gamma >= 0.0) || !(t >= 0.0) || !(nbar >= 0.0) ||
      !std::isfinite(gamma * t) || !std::isfinite(nbar)) {
    throw Error(ErrorCode::kDomain, "environmental channel needs gamma, t, nbar >= 0");
  }
  const double offset = conv == EnvConvention::kHalfPhoton ? 0.5 : 1.0;
  // -expm1(-gt) = 1 - e^{-gt} without cancellation at small gt.
  const double loss = -std::expm1(-gamma * t);
  GaussianChannel ch = make_channel(std::exp(-gamma * t / 2.0), (nbar + offset) * loss,
                                    ChannelKind::kEnvironmental);
  ch.convention = conv;
  return ch;
}

TwoModeState apply_to_mode(const TwoModeState& state, const GaussianChannel& ch, Mode mode) {
  const int k = mode == Mode::A ? 0 : 2;
  const int o = 2 - k;
  TwoModeState out = state;
  out.d.segment<2>(k) *= ch.x;
  out.cov.block<2, 2>(k, k) = ch.x * ch.x * state.cov.block<2, 2>(k, k) + ch.y * Mat2::Identity();
  out.cov.block<2, 2>(k, o) *= ch.x;
  out.cov.block<2, 2>(o, k) *= ch.x;
  return out;
}

GaussianChannel compose(const GaussianChannel& first, const GaussianChannel& second) {
  GaussianChannel ch{second.x * first.x, second.x * second.x * first.y + second.y,
                     ChannelKind::kIdentity, kDefaultEnvConvention};
  return ch;
}

}  // namespace cvdc
