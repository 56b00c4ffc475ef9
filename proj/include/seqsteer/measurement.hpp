// Sharp projectors, unsharp (noisy) effects and the weak Kraus pair.

#pragma once

#include "seqsteer/quantum.hpp"

#include <array>

namespace seqsteer {

/// Outcome label of a dichotomic measurement, 0 or 1.
using Bit = unsigned;

/// Projective spin measurement along a Bloch direction.
struct SharpSetting {
  BlochDirection direction;

  friend bool operator==(const SharpSetting&, const SharpSetting&) = default;
};

/// Spin measurement mixed with white noise; `lambda` is the sharpness in (0, 1].
struct UnsharpSetting {
  BlochDirection direction;
  double lambda = 1.0;

  friend bool operator==(const UnsharpSetting&, const UnsharpSetting&) = default;
};

/// Weak measurement diagonal in the sigma_x eigenbasis. `angle` enters
/// through cos/sin and lies in (0, pi/4]; pi/4 extracts no information.
struct WeakKrausSetting {
  double angle = 0.0;
};

/// Quality factor F (disturbance) and precision G (information gain).
struct TradeoffPair {
  double F = 0.0;
  double G = 0.0;
};

/// Dichotomic POVM: element [c] belongs to outcome c.
using Povm2 = std::array<CMat2, 2>;

CMat2 projector(const SharpSetting& s, Bit outcome);
/// Projectors (I +/- O)/2 of an arbitrary dichotomic observable O.
Povm2 observable_projectors(const CMat2& observable);

/// lambda * projector + (1 - lambda) * I/2
CMat2 effect(const UnsharpSetting& u, Bit outcome);

/// sqrt((1+lambda)/2) P_c + sqrt((1-lambda)/2) P_{1-c}
CMat2 sqrt_effect(const UnsharpSetting& u, Bit outcome);

/// Outcome 0: cos(a)|+><+| + sin(a)|-><-|; outcome 1 swaps cos and sin.
/// Returned in the computational basis.
CMat2 weak_kraus(const WeakKrausSetting& w, Bit outcome);

/// G = lambda, F = sqrt(1 - lambda^2). Throws std::invalid_argument
/// for lambda outside (0, 1].
TradeoffPair tradeoff(double lambda);

Povm2 projectors(const SharpSetting& s);
Povm2 effects(const UnsharpSetting& u);

}  // namespace seqsteer
