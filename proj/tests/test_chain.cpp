#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "seqsteer/chain.hpp"
#include "seqsteer/planner.hpp"
#include "seqsteer/steering.hpp"
#include "test_support.hpp"

#include <vector>

using namespace seqsteer;
using seqsteer::testing::Generator;

namespace {

// Brute-force sequential probability: enumerate every upstream Eve's input
// and outcome, carrying the unnormalized conditional state of qubit B for a
// fixed Alice projector. Shares nothing with pass_through.
double oracle_joint(const ChainSpec& spec, std::size_t upstream, Bit i, Bit a, const Povm2& party, Bit c) {
  const CMat4 pa = kron(projector(spec.alice[i], a), CMat2::identity());
  struct Branch {
    CMat4 rho;
    double weight;
  };
  std::vector<Branch> branches = {{pa * spec.initial.rho() * pa, 1.0}};
  for (std::size_t m = 0; m < upstream; ++m) {
    std::vector<Branch> next;
    const auto& eve = spec.eves[m];
    for (const auto& b : branches) {
      for (Bit k = 0; k < 2; ++k) {
        const double pk = k == 0 ? eve.input_bias : 1.0 - eve.input_bias;
        for (Bit o = 0; o < 2; ++o) {
          const CMat4 kraus = kron(CMat2::identity(), sqrt_effect(eve.inputs[k], o));
          next.push_back({kraus * b.rho * adjoint(kraus), b.weight * pk});
        }
      }
    }
    branches = std::move(next);
  }
  double p = 0.0;
  const CMat4 e = kron(CMat2::identity(), party[c]);
  for (const auto& b : branches) p += b.weight * trace(e * b.rho).real();
  return p;
}

std::vector<double> random_lambdas(Generator& g, std::size_t n) {
  std::vector<double> l(n);
  for (auto& x : l) x = g.uniform(0.05, 1.0);
  return l;
}

ChainSpec random_chain(Generator& g, std::size_t n) {
  ChainSpec spec;
  spec.initial = TwoQubitState(g.density4());
  spec.alice = {SharpSetting{g.direction()}, SharpSetting{g.direction()}};
  spec.bob = {SharpSetting{g.direction()}, SharpSetting{g.direction()}};
  for (std::size_t m = 0; m < n; ++m) {
    EveSettings e;
    e.inputs = {UnsharpSetting{g.direction(), g.uniform(0.05, 1.0)}, UnsharpSetting{g.direction(), g.uniform(0.05, 1.0)}};
    e.input_bias = g.uniform();
    spec.eves.push_back(e);
  }
  return spec;
}

}  // namespace

TEST_CASE("party labels") {
  CHECK(Party::eve(1).label() == "Eve1");
  CHECK(Party::eve(12).label() == "Eve12");
  CHECK(Party::bob().label() == "Bob");
}

TEST_CASE("assemblage of the Bell state") {
  const TwoQubitState bell(bell_state());
  const CMat2 s = assemblage(bell, SharpSetting{BlochDirection::z()}, 0);
  CHECK(s(0, 0).real() == doctest::Approx(0.5));
  CHECK(std::abs(s(1, 1)) < kEps);
  CHECK(trace(assemblage(bell, SharpSetting{BlochDirection::x()}, 1)).real() == doctest::Approx(0.5));
}

TEST_CASE("Eve1 conditional on the Bell state") {
  const TwoQubitState bell(bell_state());
  const SharpSetting z{BlochDirection::z()};
  const UnsharpSetting ez{BlochDirection::z(), 0.552};
  CHECK(eve1_conditional(bell, z, 0, ez, 0) == doctest::Approx(0.776).epsilon(1e-12));
  CHECK(eve1_conditional(bell, z, 0, ez, 1) == doctest::Approx(0.224).epsilon(1e-12));

  const CMat2 post = post_measurement_state(bell, z, 0, ez, 0);
  CHECK(trace(post).real() == doctest::Approx(0.5 * 0.776).epsilon(1e-12));

  // Alice's outcome 1 along z cannot occur on |00>.
  const TwoQubitState zero(kron(projector(z, 0), projector(z, 0)));
  CHECK_THROWS_AS(eve1_conditional(zero, z, 1, ez, 0), ComputationError);
}

TEST_CASE("chain on the Bell state") {
  const std::vector<double> lambdas = {0.552, 0.602};
  const ChainSpec spec = ChainSpec::bell_mub(lambdas);

  const auto e1 = report(spec, Party::eve(1));
  CHECK(e1.lhs == doctest::Approx(0.776).epsilon(1e-12));
  CHECK(e1.delta == doctest::Approx(0.026).epsilon(1e-12));

  // Eve2 sees 0.602 * f(0.552), f(0.552) = (1 + sqrt(1 - 0.552^2))/2
  const double f1 = (1.0 + std::sqrt(1.0 - 0.552 * 0.552)) / 2.0;
  CHECK(f1 == doctest::Approx(0.91692206).epsilon(1e-8));
  const auto e2 = report(spec, Party::eve(2));
  CHECK(e2.lhs == doctest::Approx(0.5 + 0.5 * 0.602 * f1).epsilon(1e-12));
  CHECK(e2.lhs == doctest::Approx(0.77598).epsilon(1e-5));

  const double f2 = (1.0 + std::sqrt(1.0 - 0.602 * 0.602)) / 2.0;
  CHECK(f1 * f2 == doctest::Approx(0.82455).epsilon(1e-5));
  const auto bob = report(spec, Party::bob());
  CHECK(bob.lhs == doctest::Approx(0.5 + 0.5 * f1 * f2).epsilon(1e-12));
  CHECK(bob.key_rate == doctest::Approx(0.634).epsilon(0.002 / 0.634));
}

TEST_CASE("projective Eve breaks the chain") {
  const std::vector<double> lambdas = {1.0};
  const ChainSpec spec = ChainSpec::bell_mub(lambdas);
  CHECK(report(spec, Party::eve(1)).lhs == doctest::Approx(1.0).epsilon(1e-12));
  // f(1) = 1/2: Bob's correlation halves, leaving lhs = 3/4 (no violation).
  const auto bob = report(spec, Party::bob());
  CHECK(bob.lhs == doctest::Approx(0.75).epsilon(1e-12));
  CHECK_FALSE(bob.violated);
}

TEST_CASE("validation") {
  ChainSpec spec = ChainSpec::bell_mub(std::vector<double>{0.5});
  spec.eves[0].inputs[1].lambda = 1.2;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = ChainSpec::bell_mub(std::vector<double>{0.5});
  spec.eves[0].input_bias = -0.1;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = ChainSpec::bell_mub(std::vector<double>{0.5});
  CHECK_THROWS_AS(propagate(spec, Party::eve(2)), std::invalid_argument);
  CHECK_THROWS_AS(propagate(spec, Party::eve(0)), std::invalid_argument);
}

TEST_CASE("closed-form recursion agrees with the density-matrix chain") {
  Generator g(5);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto lambdas = random_lambdas(g, 1 + trial % 5);
    const ChainSpec spec = ChainSpec::bell_mub(lambdas);
    double shrink = 1.0;
    for (std::size_t m = 0; m < lambdas.size(); ++m) {
      const double expected = 0.5 + 0.5 * lambdas[m] * shrink;
      worst = std::max(worst, std::abs(report(spec, Party::eve(m + 1)).lhs - expected));
      shrink *= shrink_factor(lambdas[m]);
    }
    worst = std::max(worst, std::abs(report(spec, Party::bob()).lhs - (0.5 + 0.5 * shrink)));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("sequential oracle on random chains") {
  Generator g(17);
  double worst = 0.0;
  for (int trial = 0; trial < 60; ++trial) {
    const ChainSpec spec = random_chain(g, 1 + trial % 4);
    for (std::size_t m = 0; m <= spec.eves.size(); ++m) {
      const Party party = m < spec.eves.size() ? Party::eve(m + 1) : Party::bob();
      const ConditionalTable t = conditional_table(spec, party);
      for (Bit k = 0; k < 2; ++k) {
        const Povm2 povm =
            m < spec.eves.size() ? effects(spec.eves[m].inputs[k]) : projectors(spec.bob[k]);
        for (Bit i = 0; i < 2; ++i)
          for (Bit a = 0; a < 2; ++a)
            for (Bit c = 0; c < 2; ++c)
              worst = std::max(worst, std::abs(t.joint(i, a, k, c) - oracle_joint(spec, m, i, a, povm, c)));
      }
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("no-signalling") {
  Generator g(8);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const ChainSpec spec = random_chain(g, 1 + trial % 5);
    const CMat2 alice0 = partial_trace(spec.initial.rho(), Subsystem::A);
    for (std::size_t m = 1; m <= spec.eves.size(); ++m) {
      worst = std::max(worst, max_abs_diff(partial_trace(propagate(spec, Party::eve(m)).rho(), Subsystem::A), alice0));
    }
    worst = std::max(worst, max_abs_diff(partial_trace(propagate(spec, Party::bob()).rho(), Subsystem::A), alice0));

    const ConditionalTable first = conditional_table(spec, Party::eve(1));
    const ConditionalTable last = conditional_table(spec, Party::bob());
    for (Bit i = 0; i < 2; ++i)
      for (Bit a = 0; a < 2; ++a) {
        worst = std::max(worst, std::abs(first.alice_marginal(i, a) - last.alice_marginal(i, a)));
        const double direct = trace(projector(spec.alice[i], a) * alice0).real();
        worst = std::max(worst, std::abs(last.alice_marginal(i, a) - direct));
      }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("pass_through keeps the state valid") {
  Generator g(3);
  for (int trial = 0; trial < 100; ++trial) {
    const CMat4 rho = g.density4();
    EveSettings e;
    e.inputs = {UnsharpSetting{g.direction(), g.uniform(0.01, 1.0)}, UnsharpSetting{g.direction(), g.uniform(0.01, 1.0)}};
    e.input_bias = g.uniform();
    const CMat4 out = pass_through(rho, e);
    CHECK(std::abs(trace(out) - 1.0) < 1e-12);
    CHECK(is_hermitian(out, 1e-12));
    CHECK_NOTHROW(TwoQubitState{out});
  }
}

TEST_CASE("conditional table") {
  const ChainSpec spec = ChainSpec::bell_mub(std::vector<double>{0.7});
  const ConditionalTable t = conditional_table(spec, Party::eve(1));
  for (Bit i = 0; i < 2; ++i)
    for (Bit k = 0; k < 2; ++k) {
      double total = 0.0;
      for (Bit a = 0; a < 2; ++a)
        for (Bit c = 0; c < 2; ++c) total += t.joint(i, a, k, c);
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  CHECK(t.conditional(0, 0, 0, 0) == doctest::Approx(0.85).epsilon(1e-12));
  CHECK(t.conditional(1, 1, 1, 1) == doctest::Approx(0.85).epsilon(1e-12));
  CHECK(t.conditional(1, 0, 0, 0) == doctest::Approx(0.5).epsilon(1e-12));

  ConditionalTable empty;
  CHECK_THROWS_AS(empty.conditional(0, 0, 0, 0), ComputationError);
}
