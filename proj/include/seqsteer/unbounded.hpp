// Strategy that lets any number of Eves share the key: every Eve measures
// weakly in the sigma_x eigenbasis, rotates her outcome-dependent local
// unitary away before forwarding, and Alice adapts her second measurement to
// the precomputed branch she is in.

#pragma once

#include "seqsteer/measurement.hpp"
#include "seqsteer/quantum.hpp"
#include "seqsteer/steering.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace seqsteer {

/// Pure state written as e^{i phase} (u (x) v)(cos t |00> + sin t |11>).
///
/// Convention: cos t >= sin t >= 0; each Schmidt pair is rephased so that the
/// first nonzero entry of the columns of v is real and positive; the global
/// phase then makes the first nonzero entry of u's first column real and
/// positive. A state already in canonical form yields v = I.
struct SchmidtForm {
  double theta = 0.0;
  CMat2 u_alice = CMat2::identity();
  CMat2 v_other = CMat2::identity();
  double global_phase = 0.0;
  /// theta below kDegenerateTheta: (numerically) a product state.
  bool degenerate = false;

  PureTwoQubitState reconstruct() const;
};

inline constexpr double kDegenerateTheta = 1e-8;

SchmidtForm schmidt_decompose(const PureTwoQubitState& psi);

struct WeakStep {
  SchmidtForm form;
  double probability = 0.0;
};

/// Applies I (x) M_c, renormalizes and decomposes. Throws ComputationError
/// for a zero-probability outcome.
WeakStep weak_step(const PureTwoQubitState& psi, const WeakKrausSetting& w, Bit outcome);

/// (u (x) I)(cos t |00> + sin t |11>): the state after the Eve undoes v.
PureTwoQubitState correct_and_forward(const SchmidtForm& sf);

struct BranchNode {
  std::vector<Bit> outcomes;  // c^1 .. c^depth
  double theta = 0.0;
  CMat2 u_alice = CMat2::identity();
  double probability = 1.0;
  bool degenerate = false;

  /// Bits as a string, e.g. "010"; "root" for the empty history.
  std::string id() const;
  PureTwoQubitState state() const;
};

/// Branch states for a fixed chain of weak sigma_x measurements.
///
/// levels[d] holds the nodes after d + 1 Eves, ordered by outcome history
/// read as a binary number. Degenerate nodes are kept but not expanded.
struct BranchTree {
  double theta1 = 0.0;
  std::vector<double> lambdas;
  std::vector<std::vector<BranchNode>> levels;

  std::size_t depth() const { return levels.size(); }
  /// Last level plus every degenerate node pruned on the way.
  std::vector<BranchNode> terminal_nodes() const;
  bool has_degenerate() const;
  /// 2^(n-1): states Alice must prepare for once the last outcome is
  /// marginalized.
  std::size_t alice_facing_count() const;
};

/// Mixture over the last Eve's outcome for each history c^1..c^(n-1).
struct AliceFacingState {
  std::vector<Bit> prefix;
  double probability = 0.0;
  TwoQubitState state;
};

std::vector<AliceFacingState> alice_facing_states(const BranchTree& tree);

/// Throws std::invalid_argument for an empty chain, theta1 outside (0, pi/4]
/// or a weak angle outside (0, pi/4].
BranchTree branch_tree(double theta1, std::span<const double> lambdas);

/// Observables of the two parties; [0] is input 0.
struct MeasurementPair {
  std::array<CMat2, 2> alice;
  std::array<CMat2, 2> bob;
};

/// A1 = B1 = sigma_z, A2 = cos 2t sigma_z + sin 2t sigma_x, B2 = sigma_x.
MeasurementPair canonical_settings(double theta);

struct AdaptedMeasurement {
  double mu = 0.0;  // tan(mu) = sin(2 theta)
  CMat2 first;      // u sigma_z u^dagger
  CMat2 second;     // u (cos mu sigma_z + sin mu sigma_x) u^dagger
};

AdaptedMeasurement adapted_alice_measurement(const BranchNode& node);

enum class AliceChoice { canonical, adapted };

const char* to_string(AliceChoice choice);

/// Steering report of the branch state against Bob's fixed sigma_z/sigma_x.
/// Both choices conjugate Alice's observables by the branch unitary.
SteeringReport evaluate_branch(const BranchNode& node, AliceChoice choice);

}  // namespace seqsteer
