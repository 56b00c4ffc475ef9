// Fine-grained steering inequality and the key-rate bound derived from it.

#pragma once

#include "seqsteer/chain.hpp"

namespace seqsteer {

/// Local-hidden-state bound on the inequality's left-hand side.
inline constexpr double kSteeringBound = 0.75;
/// Largest possible violation.
inline constexpr double kMaxViolation = 0.25;

struct SteeringReport {
  double lhs = 0.0;
  double delta = 0.0;     // max(lhs - 3/4, 0)
  double key_rate = 0.0;  // bits per raw pair
  bool violated = false;
};

/// Left-hand side of the fine-grained inequality,
///   1/2 [ P(b|a; inputs 0,0) + P(b|a; inputs 1,1) ].
///
/// Each term pairs Bob's outcome with Alice's as b = a XOR s. The relabeling
/// s is chosen per term to maximize the term, and the term is the smallest
/// conditional over Alice's outcomes a that occur with nonzero probability.
/// For product states every term is at most 1/2.
double fgi_lhs(const ConditionalTable& table);

/// log2((3/4 + delta) / (3/4 - delta)). Throws std::invalid_argument for
/// delta outside [0, 1/4] (1e-12 of slack at the top).
double key_rate(double delta);

/// Inverse of key_rate: (3/4)(2^r - 1)/(2^r + 1).
double delta_for_rate(double rate);

SteeringReport make_report(double lhs);
SteeringReport make_report(const ConditionalTable& table);

/// Report for one party of the chain against Alice.
SteeringReport report(const ChainSpec& spec, Party party);

}  // namespace seqsteer
