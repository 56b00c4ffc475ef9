#include "seqsteer/kernels.hpp"

#include <omp.h>

#include <exception>

namespace seqsteer {

std::vector<SteeringReport> chain_reports(const ChainSpec& spec) {
  spec.validate();
  const std::array<Povm2, 2> alice = {projectors(spec.alice[0]), projectors(spec.alice[1])};
  std::vector<SteeringReport> out;
  out.reserve(spec.eves.size() + 1);
  CMat4 rho = spec.initial.rho();
  for (const auto& eve : spec.eves) {
    const TwoQubitState incoming(rho);
    out.push_back(make_report(tabulate(incoming, alice, {effects(eve.inputs[0]), effects(eve.inputs[1])})));
    rho = pass_through(rho, eve);
  }
  out.push_back(make_report(tabulate(TwoQubitState(rho), alice, {projectors(spec.bob[0]), projectors(spec.bob[1])})));
  return out;
}

namespace {

// Runs body(i) for i in [0, n) across OpenMP threads and rethrows the first
// exception on the calling thread.
template <typename Body>
void parallel_for(std::size_t n, Body&& body) {
  std::exception_ptr error;
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(seqsteer_kernel_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

namespace serial {

std::vector<std::vector<SteeringReport>> batch_chain_reports(std::span<const ChainSpec> specs) {
  std::vector<std::vector<SteeringReport>> out;
  out.reserve(specs.size());
  for (const auto& spec : specs) out.push_back(chain_reports(spec));
  return out;
}

std::vector<SteeringReport> evaluate_branches(std::span<const BranchNode> nodes, AliceChoice choice) {
  std::vector<SteeringReport> out;
  out.reserve(nodes.size());
  for (const auto& node : nodes) out.push_back(evaluate_branch(node, choice));
  return out;
}

std::vector<PlanResult> plan_targets(std::span<const double> rates) {
  std::vector<PlanResult> out;
  out.reserve(rates.size());
  for (double r : rates) out.push_back(max_eves(r));
  return out;
}

}  // namespace serial

namespace parallel {

std::vector<std::vector<SteeringReport>> batch_chain_reports(std::span<const ChainSpec> specs) {
  std::vector<std::vector<SteeringReport>> out(specs.size());
  parallel_for(specs.size(), [&](std::size_t i) { out[i] = chain_reports(specs[i]); });
  return out;
}

std::vector<SteeringReport> evaluate_branches(std::span<const BranchNode> nodes, AliceChoice choice) {
  std::vector<SteeringReport> out(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t i) { out[i] = evaluate_branch(nodes[i], choice); });
  return out;
}

std::vector<PlanResult> plan_targets(std::span<const double> rates) {
  std::vector<PlanResult> out(rates.size());
  parallel_for(rates.size(), [&](std::size_t i) { out[i] = max_eves(rates[i]); });
  return out;
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace parallel

}  // namespace seqsteer
