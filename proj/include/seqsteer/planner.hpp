// Minimal sharpness per Eve for a target key rate, and the longest chain of
// Eves that still leaves Bob with a strictly larger rate.
//
// All plans use the Bell state with sigma_z / sigma_x settings for every
// party and unbiased Eve inputs.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace seqsteer {

inline constexpr double kLambdaTolerance = 1e-6;
inline constexpr int kMaxBisectionSteps = 50;
inline constexpr std::size_t kMaxChainLength = 64;

enum class StopReason {
  lambda_exceeds_one,  // next Eve cannot reach the target even at lambda = 1
  bob_not_supreme,     // next Eve could, but Bob would drop to <= target
  chain_cap,           // kMaxChainLength reached
};

struct PlanResult {
  double target_rate = 0.0;
  std::vector<double> lambdas;  // lambda_m^min, m = 1..max_eves
  double bob_rate = 0.0;        // with every Eve at lambda_m^min
  std::size_t max_eves = 0;
  bool feasible = false;        // Eve 1 can reach the target at all
  StopReason stop = StopReason::lambda_exceeds_one;
  /// Smallest lambda for the first rejected Eve, if one exists.
  std::optional<double> rejected_lambda;
};

/// Key rate of Eve m = prefix.size() + 1 measuring with sharpness `lambda`.
double eve_rate(std::span<const double> prefix, double lambda);

/// Key rate of Bob behind the given chain.
double bob_rate(std::span<const double> lambdas);

/// Smallest lambda in (0, 1] for which the next Eve's rate reaches
/// `target_rate`, by bisection to kLambdaTolerance. Returns nullopt when even
/// a projective measurement falls short.
std::optional<double> lambda_min_for_rate(std::span<const double> prefix, double target_rate);

/// Greedy chain extension. Throws std::invalid_argument unless the target
/// lies in (0, 1).
PlanResult max_eves(double target_rate);

/// Analytic counterpart of the planner, valid for the Bell/MUB/unbiased
/// setting only. Each sigma_z/sigma_x measurement of sharpness l shrinks both
/// downstream correlations by f(l) = (1 + sqrt(1 - l^2))/2, and Eve m sees
/// the correlation l_m * prod_{i<m} f(l_i).
struct ClosedFormChain {
  std::vector<double> lambdas;
  /// 1-based position where the chain stops being valid, if before n.
  std::optional<std::size_t> infeasible_at;
};

/// Correlation an Eve (or Bob) needs for the given rate: 1/2 + 2 delta(r).
double required_correlation(double rate);
/// (1 + sqrt(1 - l^2))/2
double shrink_factor(double lambda);

/// Position m is infeasible when lambda_m > 1 or when Bob's correlation with
/// m Eves no longer exceeds the required one.
ClosedFormChain closed_form_chain(double target_rate, std::size_t n);

}  // namespace seqsteer
