// Sequential chain of unsharp-measuring eavesdroppers between Alice and Bob.
//
// Alice holds qubit A and measures projectively. Qubit B travels through
// Eve 1..n, each of whom picks one of two unsharp measurements (input 0 with
// probability `input_bias`), applies the Lueders update and forwards the
// qubit. Bob measures projectively at the end.

#pragma once

#include "seqsteer/measurement.hpp"
#include "seqsteer/quantum.hpp"

#include <array>
#include <span>
#include <string>
#include <vector>

namespace seqsteer {

using SharpPair = std::array<SharpSetting, 2>;

/// sigma_z for input 0, sigma_x for input 1.
SharpPair mub_pair();

struct EveSettings {
  std::array<UnsharpSetting, 2> inputs;
  double input_bias = 0.5;  // probability of input 0

  /// Both inputs share the sharpness `lambda`, directions z and x.
  static EveSettings mub(double lambda, double input_bias = 0.5);

  friend bool operator==(const EveSettings&, const EveSettings&) = default;
};

/// Chain position: Eve m (1-based) or Bob.
struct Party {
  enum class Kind { eve, bob };
  Kind kind = Kind::bob;
  std::size_t index = 0;

  static Party eve(std::size_t m) { return {Kind::eve, m}; }
  static Party bob() { return {Kind::bob, 0}; }

  std::string label() const;

  friend bool operator==(const Party&, const Party&) = default;
};

struct ChainSpec {
  TwoQubitState initial = TwoQubitState(bell_state());
  SharpPair alice = mub_pair();
  std::vector<EveSettings> eves;
  SharpPair bob = mub_pair();

  /// Bell state, MUB settings for everybody, unbiased Eves.
  static ChainSpec bell_mub(std::span<const double> lambdas);

  /// Throws std::invalid_argument if a sharpness or bias is out of range.
  void validate() const;
};

/// Outcome statistics of one party against Alice.
///
/// joint(i, a, k, c) = P(a, c | Alice input i, party input k), marginalized
/// over every upstream Eve's input and outcome.
class ConditionalTable {
 public:
  /// Alice outcome probabilities below this are treated as impossible.
  static constexpr double kZeroProbability = 1e-14;

  ConditionalTable() = default;

  double joint(Bit i, Bit a, Bit k, Bit c) const { return joint_[i][a][k][c]; }
  double alice_marginal(Bit i, Bit a) const { return alice_[i][a]; }
  bool conditionable(Bit i, Bit a) const { return alice_[i][a] > kZeroProbability; }

  /// P(c | party input k, Alice input i, Alice outcome a). Throws
  /// ComputationError when Alice's outcome has zero probability.
  double conditional(Bit k, Bit c, Bit i, Bit a) const;

  void set(Bit i, Bit a, Bit k, Bit c, double p) { joint_[i][a][k][c] = p; }
  void set_alice_marginal(Bit i, Bit a, double p) { alice_[i][a] = p; }

 private:
  double joint_[2][2][2][2] = {};
  double alice_[2][2] = {};
};

/// Builds the table from a joint state and POVMs indexed [input][outcome].
ConditionalTable tabulate(const TwoQubitState& state, const std::array<Povm2, 2>& alice,
                          const std::array<Povm2, 2>& party);

/// Unnormalized conditional state Tr_A[(A_a (x) I) rho] on qubit B.
CMat2 assemblage(const TwoQubitState& state, const SharpSetting& alice, Bit a);

/// P(c | a) for an unsharp measurement performed directly on `state`.
double eve1_conditional(const TwoQubitState& state, const SharpSetting& alice, Bit a,
                        const UnsharpSetting& eve, Bit c);

/// Tr_A[(P_a (x) sqrt(E_c)) rho (P_a (x) sqrt(E_c))]; trace is P(a, c).
CMat2 post_measurement_state(const TwoQubitState& state, const SharpSetting& alice, Bit a,
                             const UnsharpSetting& eve, Bit c);

/// (I (x) k) rho (I (x) k)^dagger
CMat4 conjugate_b(const CMat4& rho, const CMat2& k);

/// Non-selective pass through one Eve: summed over outcomes, averaged over
/// inputs with the Eve's bias.
CMat4 pass_through(const CMat4& rho, const EveSettings& eve);

/// Joint Alice/party state after every upstream Eve has measured.
TwoQubitState propagate(const ChainSpec& spec, Party party);

ConditionalTable conditional_table(const ChainSpec& spec, Party party);

}  // namespace seqsteer
