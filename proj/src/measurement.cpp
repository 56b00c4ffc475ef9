#include "seqsteer/measurement.hpp"

#include <cmath>
#include <stdexcept>

namespace seqsteer {

namespace {

double sign_of(Bit outcome) { return outcome == 0 ? 1.0 : -1.0; }

}  // namespace

CMat2 projector(const SharpSetting& s, Bit outcome) {
  return (CMat2::identity() + direction_operator(s.direction) * sign_of(outcome)) * 0.5;
}

Povm2 observable_projectors(const CMat2& observable) {
  return {(CMat2::identity() + observable) * 0.5, (CMat2::identity() - observable) * 0.5};
}

CMat2 effect(const UnsharpSetting& u, Bit outcome) {
  return projector(SharpSetting{u.direction}, outcome) * u.lambda +
         CMat2::identity() * (0.5 * (1.0 - u.lambda));
}

CMat2 sqrt_effect(const UnsharpSetting& u, Bit outcome) {
  const SharpSetting s{u.direction};
  const double hi = std::sqrt(0.5 * (1.0 + u.lambda));
  const double lo = std::sqrt(std::max(0.0, 0.5 * (1.0 - u.lambda)));
  return projector(s, outcome) * hi + projector(s, 1 - outcome) * lo;
}

CMat2 weak_kraus(const WeakKrausSetting& w, Bit outcome) {
  const double c = std::cos(w.angle);
  const double s = std::sin(w.angle);
  CMat2 diag;
  diag(0, 0) = outcome == 0 ? c : s;
  diag(1, 1) = outcome == 0 ? s : c;
  const CMat2 h = hadamard();
  return h * diag * h;
}

TradeoffPair tradeoff(double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("tradeoff: sharpness must lie in (0, 1]");
  }
  return {std::sqrt((1.0 - lambda) * (1.0 + lambda)), lambda};
}

Povm2 projectors(const SharpSetting& s) { return {projector(s, 0), projector(s, 1)}; }

Povm2 effects(const UnsharpSetting& u) { return {effect(u, 0), effect(u, 1)}; }

}  // namespace seqsteer
