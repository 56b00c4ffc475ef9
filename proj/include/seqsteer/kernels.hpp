// Batch evaluation kernels. Every kernel has a serial reference version and
// an OpenMP version; both produce identical results in identical order.

#pragma once

#include "seqsteer/chain.hpp"
#include "seqsteer/planner.hpp"
#include "seqsteer/steering.hpp"
#include "seqsteer/unbounded.hpp"

#include <span>
#include <vector>

namespace seqsteer {

/// Reports for Eve 1..n and then Bob, propagating the state once.
std::vector<SteeringReport> chain_reports(const ChainSpec& spec);

namespace serial {
std::vector<std::vector<SteeringReport>> batch_chain_reports(std::span<const ChainSpec> specs);
std::vector<SteeringReport> evaluate_branches(std::span<const BranchNode> nodes, AliceChoice choice);
std::vector<PlanResult> plan_targets(std::span<const double> rates);
}  // namespace serial

namespace parallel {
std::vector<std::vector<SteeringReport>> batch_chain_reports(std::span<const ChainSpec> specs);
std::vector<SteeringReport> evaluate_branches(std::span<const BranchNode> nodes, AliceChoice choice);
std::vector<PlanResult> plan_targets(std::span<const double> rates);

/// Threads OpenMP will use for the kernels above.
int max_threads();
}  // namespace parallel

}  // namespace seqsteer
