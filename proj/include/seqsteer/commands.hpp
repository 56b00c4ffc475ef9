// Command implementations behind the seqsteer executable. Each returns a
// process exit code and writes results to the configured destination.

#pragma once

#include "seqsteer/chain.hpp"
#include "seqsteer/io.hpp"
#include "seqsteer/planner.hpp"
#include "seqsteer/unbounded.hpp"

#include <ostream>
#include <span>
#include <vector>

namespace seqsteer {

enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 2,
  kExitInfeasible = 3,
  kExitGoldenMismatch = 4,
};

struct Terminal {
  std::ostream& out;
  std::ostream& err;
  bool color = false;
};

/// Reference sharpness tables for the Bell-state chain.
struct ReferenceTable {
  double rate;
  std::vector<double> lambdas;
  std::vector<double> lambda_tolerance;
  std::size_t max_eves;
  double bob_rate;
};

inline constexpr double kBobRateTolerance = 0.002;

const std::vector<ReferenceTable>& reference_tables();
const ReferenceTable* find_reference_table(double rate);

struct GoldenComparison {
  bool pass = true;
  std::vector<std::string> lines;
};

GoldenComparison compare_with_reference(const PlanResult& plan, const ReferenceTable& table);

ChainSpec build_chain_spec(const Scenario& s);

Table chain_table(const Scenario& s);
Table plan_table(std::span<const PlanResult> plans);
Table unbounded_table(const BranchTree& tree);

int cmd_chain(const Scenario& s, const Terminal& term);
int cmd_plan(std::span<const double> rates, bool check_reference, const OutputSpec& output, const Terminal& term);
int cmd_unbounded(double theta1, std::span<const double> lambdas, const OutputSpec& output, const Terminal& term);
/// Dispatches on the scenario's mode.
int cmd_run(const Scenario& s, const Terminal& term);

/// Runs `body`, mapping InputError/std::invalid_argument to 2 and
/// ComputationError to 3 with the message on term.err.
template <typename Body>
int guarded(const Terminal& term, Body&& body) {
  try {
    return body();
  } catch (const ComputationError& e) {
    term.err << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::invalid_argument& e) {
    term.err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace seqsteer
