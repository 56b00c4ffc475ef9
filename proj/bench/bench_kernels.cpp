// Serial vs OpenMP timing for the batch kernels.
//
//   seqsteer_bench [repeats]

#include "seqsteer/kernels.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <random>
#include <vector>

using namespace seqsteer;

namespace {

template <typename Fn>
double best_of(int repeats, Fn&& fn) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

void row(const char* name, double serial, double parallel, bool same) {
  std::printf("%-28s %10.4f %10.4f %8.2fx  %s\n", name, serial * 1e3, parallel * 1e3, serial / parallel,
              same ? "identical" : "MISMATCH");
}

bool same_reports(const std::vector<SteeringReport>& l, const std::vector<SteeringReport>& r) {
  if (l.size() != r.size()) return false;
  for (std::size_t i = 0; i < l.size(); ++i)
    if (l[i].lhs != r[i].lhs || l[i].key_rate != r[i].key_rate) return false;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::atoi(argv[1]) : 5;
  std::printf("threads: %d, repeats: %d\n", parallel::max_threads(), repeats);
  std::printf("%-28s %10s %10s %9s\n", "kernel", "serial ms", "omp ms", "speedup");

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> sharpness(0.05, 1.0);
  std::vector<ChainSpec> specs;
  for (int i = 0; i < 4000; ++i) {
    std::vector<double> lambdas(1 + i % 6);
    for (auto& l : lambdas) l = sharpness(rng);
    specs.push_back(ChainSpec::bell_mub(lambdas));
  }
  std::vector<std::vector<SteeringReport>> a, b;
  const double ts = best_of(repeats, [&] { a = serial::batch_chain_reports(specs); });
  const double tp = best_of(repeats, [&] { b = parallel::batch_chain_reports(specs); });
  bool same = a.size() == b.size();
  for (std::size_t i = 0; same && i < a.size(); ++i) same = same_reports(a[i], b[i]);
  row("batch_chain_reports(4000)", ts, tp, same);

  const std::vector<double> angles(12, std::numbers::pi / 7.0);
  const auto leaves = branch_tree(std::numbers::pi / 5.0, angles).terminal_nodes();
  std::vector<SteeringReport> ls, lp;
  const double bs = best_of(repeats, [&] { ls = serial::evaluate_branches(leaves, AliceChoice::adapted); });
  const double bp = best_of(repeats, [&] { lp = parallel::evaluate_branches(leaves, AliceChoice::adapted); });
  row("evaluate_branches(4096)", bs, bp, same_reports(ls, lp));

  std::vector<double> rates;
  for (int i = 1; i <= 16; ++i) rates.push_back(0.02 * i);
  std::vector<PlanResult> ps, pp;
  const double ps_t = best_of(repeats, [&] { ps = serial::plan_targets(rates); });
  const double pp_t = best_of(repeats, [&] { pp = parallel::plan_targets(rates); });
  bool plans_same = ps.size() == pp.size();
  for (std::size_t i = 0; plans_same && i < ps.size(); ++i) plans_same = ps[i].lambdas == pp[i].lambdas;
  row("plan_targets(16)", ps_t, pp_t, plans_same);
  return 0;
}
