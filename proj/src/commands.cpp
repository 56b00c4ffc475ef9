#include "seqsteer/commands.hpp"

#include "seqsteer/kernels.hpp"
#include "seqsteer/steering.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace seqsteer {

const std::vector<ReferenceTable>& reference_tables() {
  static const std::vector<ReferenceTable> tables = {
      {0.1, {0.552, 0.602, 0.67, 0.768}, {0.001, 0.001, 0.005, 0.001}, 4, 0.172},
      {0.2, {0.604, 0.672, 0.772}, {0.001, 0.001, 0.001}, 3, 0.269},
      {0.3, {0.655, 0.747}, {0.001, 0.001}, 2, 0.447},
  };
  return tables;
}

const ReferenceTable* find_reference_table(double rate) {
  for (const auto& t : reference_tables())
    if (std::abs(t.rate - rate) < 1e-9) return &t;
  return nullptr;
}

GoldenComparison compare_with_reference(const PlanResult& plan, const ReferenceTable& table) {
  GoldenComparison cmp;
  auto check = [&](bool ok, const std::string& what) {
    cmp.pass = cmp.pass && ok;
    cmp.lines.push_back(std::string(ok ? "PASS " : "FAIL ") + what);
  };
  const std::string tag = "r=" + format_number(table.rate) + " ";
  check(plan.max_eves == table.max_eves,
        tag + "max_eves " + std::to_string(plan.max_eves) + " (expected " + std::to_string(table.max_eves) + ")");
  for (std::size_t m = 0; m < table.lambdas.size(); ++m) {
    const std::string label = tag + "lambda" + std::to_string(m + 1) + "_min ";
    if (m >= plan.lambdas.size()) {
      check(false, label + "missing (expected " + format_number(table.lambdas[m]) + ")");
      continue;
    }
    const double diff = std::abs(plan.lambdas[m] - table.lambdas[m]);
    check(diff <= table.lambda_tolerance[m], label + format_number(plan.lambdas[m]) + " (expected " +
                                                 format_number(table.lambdas[m]) + " +/- " +
                                                 format_number(table.lambda_tolerance[m]) + ")");
  }
  check(std::abs(plan.bob_rate - table.bob_rate) <= kBobRateTolerance,
        tag + "bob_rate " + format_number(plan.bob_rate) + " (expected " + format_number(table.bob_rate) + " +/- " +
            format_number(kBobRateTolerance) + ")");
  return cmp;
}

namespace {

SharpPair sharp_pair(const SettingsSpec& s) {
  return {SharpSetting{s.directions[0]}, SharpSetting{s.directions[1]}};
}

std::string describe(const Scenario& s) {
  std::ostringstream os;
  os << "seqsteer " << to_string(s.mode) << " state="
     << (s.state.kind == StateSpec::Kind::bell ? std::string("bell") : "tilted(" + format_number(s.state.theta) + ")")
     << " eves=" << s.eves.size();
  return os.str();
}

// Writes to output.path, or to `fallback` when no path is set.
void emit(const Table& t, const OutputSpec& output, const std::string& metadata, std::ostream& fallback) {
  std::ofstream file;
  if (!output.path.empty()) {
    file.open(output.path);
    if (!file) throw InputError("output.path", "cannot write '" + output.path + "'");
  }
  std::ostream& os = output.path.empty() ? fallback : file;
  if (output.format == OutputFormat::csv)
    write_csv(os, t, metadata);
  else
    write_json(os, t);
}

std::string join(std::span<const double> values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + format_number(values[i]);
  return s;
}

const char* paint(bool color, bool ok) {
  if (!color) return "";
  return ok ? "\x1b[32m" : "\x1b[31m";
}

}  // namespace

ChainSpec build_chain_spec(const Scenario& s) {
  ChainSpec spec;
  spec.initial = TwoQubitState(make_state(s.state));
  spec.alice = sharp_pair(s.alice);
  spec.bob = sharp_pair(s.bob);
  for (const auto& e : s.eves) {
    EveSettings eve;
    eve.inputs = {UnsharpSetting{e.settings.directions[0], e.lambda}, UnsharpSetting{e.settings.directions[1], e.lambda}};
    eve.input_bias = e.bias;
    spec.eves.push_back(eve);
  }
  spec.validate();
  return spec;
}

Table chain_table(const Scenario& s) {
  const auto reports = chain_reports(build_chain_spec(s));
  Table t;
  t.columns = {"party", "input_model", "lambda", "lhs", "delta", "key_rate"};
  for (std::size_t m = 0; m < s.eves.size(); ++m) {
    const auto& r = reports[m];
    t.rows.push_back({Party::eve(m + 1).label(), "unsharp:p0=" + format_number(s.eves[m].bias), s.eves[m].lambda,
                      r.lhs, r.delta, r.key_rate});
  }
  const auto& bob = reports.back();
  t.rows.push_back({Party::bob().label(), std::string("sharp"), std::monostate{}, bob.lhs, bob.delta, bob.key_rate});
  return t;
}

Table plan_table(std::span<const PlanResult> plans) {
  Table t;
  t.columns = {"target_rate", "max_eves", "party", "lambda_min", "key_rate"};
  for (const auto& p : plans) {
    const double eves = static_cast<double>(p.max_eves);
    for (std::size_t m = 0; m < p.lambdas.size(); ++m) {
      const std::span<const double> prefix(p.lambdas.data(), m);
      t.rows.push_back({p.target_rate, eves, Party::eve(m + 1).label(), p.lambdas[m], eve_rate(prefix, p.lambdas[m])});
    }
    t.rows.push_back({p.target_rate, eves, Party::bob().label(), std::monostate{}, p.bob_rate});
  }
  return t;
}

Table unbounded_table(const BranchTree& tree) {
  const auto nodes = tree.terminal_nodes();
  const auto canonical = parallel::evaluate_branches(nodes, AliceChoice::canonical);
  const auto adapted = parallel::evaluate_branches(nodes, AliceChoice::adapted);
  Table t;
  t.columns = {"branch", "theta", "weight", "lhs_canonical", "key_rate_canonical", "lhs_adapted", "key_rate_adapted"};
  double weight = 0.0, lhs_c = 0.0, rate_c = 0.0, lhs_a = 0.0, rate_a = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    t.rows.push_back({n.id(), n.theta, n.probability, canonical[i].lhs, canonical[i].key_rate, adapted[i].lhs,
                      adapted[i].key_rate});
    weight += n.probability;
    lhs_c += n.probability * canonical[i].lhs;
    rate_c += n.probability * canonical[i].key_rate;
    lhs_a += n.probability * adapted[i].lhs;
    rate_a += n.probability * adapted[i].key_rate;
  }
  t.rows.push_back({std::string("mean"), std::monostate{}, weight, lhs_c / weight, rate_c / weight, lhs_a / weight,
                    rate_a / weight});
  return t;
}

int cmd_chain(const Scenario& s, const Terminal& term) {
  return guarded(term, [&] {
    if (s.mode != Mode::chain) throw InputError("mode", "the chain command needs mode \"chain\"");
    emit(chain_table(s), s.output, describe(s), term.out);
    return int{kExitOk};
  });
}

int cmd_plan(std::span<const double> rates, bool check_reference, const OutputSpec& output, const Terminal& term) {
  return guarded(term, [&] {
    if (rates.empty()) throw InputError("rates", "need at least one target rate");
    for (std::size_t i = 0; i < rates.size(); ++i) {
      if (!(rates[i] > 0.0 && rates[i] < 1.0)) {
        throw InputError("rates[" + std::to_string(i) + "]", "must lie in (0, 1)");
      }
    }
    const auto plans = parallel::plan_targets(rates);
    for (const auto& p : plans) {
      if (!p.feasible) throw ComputationError("rate " + format_number(p.target_rate) + " is unreachable even for Eve1");
    }
    emit(plan_table(plans), output, "seqsteer plan rates=" + join(rates), term.out);
    if (!check_reference) return int{kExitOk};

    bool all = true;
    bool any = false;
    for (const auto& p : plans) {
      const ReferenceTable* table = find_reference_table(p.target_rate);
      if (!table) continue;
      any = true;
      const auto cmp = compare_with_reference(p, *table);
      for (const auto& line : cmp.lines) {
        const bool ok = line.rfind("PASS", 0) == 0;
        term.err << paint(term.color, ok) << line << (term.color ? "\x1b[0m" : "") << '\n';
      }
      all = all && cmp.pass;
    }
    if (!any) throw InputError("rates", "no reference table for the requested rates (have 0.1, 0.2, 0.3)");
    return all ? int{kExitOk} : int{kExitGoldenMismatch};
  });
}

int cmd_unbounded(double theta1, std::span<const double> lambdas, const OutputSpec& output, const Terminal& term) {
  return guarded(term, [&] {
    if (lambdas.size() > kMaxUnboundedDepth) {
      throw InputError("lambdas", "depth exceeds " + std::to_string(kMaxUnboundedDepth));
    }
    const BranchTree tree = branch_tree(theta1, lambdas);
    if (tree.has_degenerate()) {
      for (const auto& n : tree.terminal_nodes()) {
        if (n.degenerate) throw ComputationError("branch " + n.id() + " collapsed to a product state");
      }
    }
    emit(unbounded_table(tree), output,
         "seqsteer unbounded theta1=" + format_number(theta1) + " lambdas=" + join(lambdas), term.out);
    return int{kExitOk};
  });
}

int cmd_run(const Scenario& s, const Terminal& term) {
  switch (s.mode) {
    case Mode::chain:
      return cmd_chain(s, term);
    case Mode::plan:
      return cmd_plan(s.targets, false, s.output, term);
    case Mode::unbounded:
      return cmd_unbounded(s.unbounded->theta1, s.unbounded->lambdas, s.output, term);
  }
  return kExitInputError;
}

}  // namespace seqsteer
