#include "seqsteer/planner.hpp"

#include "seqsteer/chain.hpp"
#include "seqsteer/steering.hpp"

#include <cmath>
#include <stdexcept>

namespace seqsteer {

namespace {

// Eve m's rate given the state that reaches her.
double rate_after(const TwoQubitState& upstream, double lambda) {
  const EveSettings eve = EveSettings::mub(lambda);
  const SharpPair alice = mub_pair();
  const ConditionalTable t =
      tabulate(upstream, {projectors(alice[0]), projectors(alice[1])}, {effects(eve.inputs[0]), effects(eve.inputs[1])});
  return make_report(t).key_rate;
}

TwoQubitState state_after(std::span<const double> prefix) {
  const ChainSpec spec = ChainSpec::bell_mub(prefix);
  return propagate(spec, Party::bob());
}

std::optional<double> bisect(const TwoQubitState& upstream, double target_rate) {
  if (rate_after(upstream, 1.0) < target_rate) return std::nullopt;
  double lo = 0.0;  // rate(lo) < target
  double hi = 1.0;  // rate(hi) >= target
  for (int step = 0; step < kMaxBisectionSteps && hi - lo > kLambdaTolerance; ++step) {
    const double mid = 0.5 * (lo + hi);
    if (rate_after(upstream, mid) >= target_rate)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace

double eve_rate(std::span<const double> prefix, double lambda) {
  return rate_after(state_after(prefix), lambda);
}

double bob_rate(std::span<const double> lambdas) {
  return report(ChainSpec::bell_mub(lambdas), Party::bob()).key_rate;
}

std::optional<double> lambda_min_for_rate(std::span<const double> prefix, double target_rate) {
  if (!(target_rate > 0.0)) throw std::invalid_argument("lambda_min_for_rate: target rate must be positive");
  for (double l : prefix) {
    if (!(l > 0.0 && l <= 1.0)) throw std::invalid_argument("lambda_min_for_rate: prefix sharpness outside (0, 1]");
  }
  return bisect(state_after(prefix), target_rate);
}

PlanResult max_eves(double target_rate) {
  if (!(target_rate > 0.0 && target_rate < 1.0)) {
    throw std::invalid_argument("max_eves: target rate must lie in (0, 1)");
  }
  PlanResult plan;
  plan.target_rate = target_rate;
  plan.bob_rate = bob_rate({});
  plan.stop = StopReason::chain_cap;

  while (plan.lambdas.size() < kMaxChainLength) {
    const auto next = lambda_min_for_rate(plan.lambdas, target_rate);
    if (!next) {
      plan.stop = StopReason::lambda_exceeds_one;
      break;
    }
    std::vector<double> candidate = plan.lambdas;
    candidate.push_back(*next);
    const double bob = bob_rate(candidate);
    if (!(bob > target_rate)) {
      plan.stop = StopReason::bob_not_supreme;
      plan.rejected_lambda = *next;
      break;
    }
    plan.lambdas = std::move(candidate);
    plan.bob_rate = bob;
  }
  plan.max_eves = plan.lambdas.size();
  plan.feasible = !(plan.max_eves == 0 && plan.stop == StopReason::lambda_exceeds_one);
  return plan;
}

double required_correlation(double rate) { return 0.5 + 2.0 * delta_for_rate(rate); }

double shrink_factor(double lambda) { return 0.5 * (1.0 + std::sqrt((1.0 - lambda) * (1.0 + lambda))); }

ClosedFormChain closed_form_chain(double target_rate, std::size_t n) {
  ClosedFormChain out;
  const double needed = required_correlation(target_rate);
  double damping = 1.0;
  for (std::size_t m = 1; m <= n; ++m) {
    const double lambda = needed / damping;
    if (lambda > 1.0 || !(damping * shrink_factor(lambda) > needed)) {
      out.infeasible_at = m;
      break;
    }
    out.lambdas.push_back(lambda);
    damping *= shrink_factor(lambda);
  }
  return out;
}

}  // namespace seqsteer
