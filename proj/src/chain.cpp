#include "seqsteer/chain.hpp"

#include <stdexcept>

namespace seqsteer {

SharpPair mub_pair() { return {SharpSetting{BlochDirection::z()}, SharpSetting{BlochDirection::x()}}; }

EveSettings EveSettings::mub(double lambda, double input_bias) {
  return {{UnsharpSetting{BlochDirection::z(), lambda}, UnsharpSetting{BlochDirection::x(), lambda}},
          input_bias};
}

std::string Party::label() const {
  return kind == Kind::bob ? std::string("Bob") : "Eve" + std::to_string(index);
}

ChainSpec ChainSpec::bell_mub(std::span<const double> lambdas) {
  ChainSpec spec;
  spec.eves.reserve(lambdas.size());
  for (double l : lambdas) spec.eves.push_back(EveSettings::mub(l));
  return spec;
}

void ChainSpec::validate() const {
  for (std::size_t m = 0; m < eves.size(); ++m) {
    const auto& e = eves[m];
    for (const auto& u : e.inputs) {
      if (!(u.lambda > 0.0 && u.lambda <= 1.0)) {
        throw std::invalid_argument("Eve" + std::to_string(m + 1) + ": sharpness must lie in (0, 1]");
      }
    }
    if (!(e.input_bias >= 0.0 && e.input_bias <= 1.0)) {
      throw std::invalid_argument("Eve" + std::to_string(m + 1) + ": input bias must lie in [0, 1]");
    }
  }
}

double ConditionalTable::conditional(Bit k, Bit c, Bit i, Bit a) const {
  if (!conditionable(i, a)) {
    throw ComputationError("conditioning on Alice outcome a=" + std::to_string(a) + " for input " +
                           std::to_string(i) + " which has zero probability");
  }
  return joint_[i][a][k][c] / alice_[i][a];
}

ConditionalTable tabulate(const TwoQubitState& state, const std::array<Povm2, 2>& alice,
                          const std::array<Povm2, 2>& party) {
  ConditionalTable t;
  const CMat4& rho = state.rho();
  for (Bit i = 0; i < 2; ++i)
    for (Bit a = 0; a < 2; ++a) {
      t.set_alice_marginal(i, a, trace_product(kron(alice[i][a], CMat2::identity()), rho));
      for (Bit k = 0; k < 2; ++k)
        for (Bit c = 0; c < 2; ++c) t.set(i, a, k, c, trace_product(kron(alice[i][a], party[k][c]), rho));
    }
  return t;
}

CMat2 assemblage(const TwoQubitState& state, const SharpSetting& alice, Bit a) {
  return partial_trace(kron(projector(alice, a), CMat2::identity()) * state.rho(), Subsystem::B);
}

double eve1_conditional(const TwoQubitState& state, const SharpSetting& alice, Bit a,
                        const UnsharpSetting& eve, Bit c) {
  const CMat2 pa = projector(alice, a);
  const double marginal = trace_product(kron(pa, CMat2::identity()), state.rho());
  if (!(marginal > ConditionalTable::kZeroProbability)) {
    throw ComputationError("eve1_conditional: Alice outcome has zero probability");
  }
  return trace_product(kron(pa, effect(eve, c)), state.rho()) / marginal;
}

CMat2 post_measurement_state(const TwoQubitState& state, const SharpSetting& alice, Bit a,
                             const UnsharpSetting& eve, Bit c) {
  const CMat4 k = kron(projector(alice, a), sqrt_effect(eve, c));
  return partial_trace(k * state.rho() * adjoint(k), Subsystem::B);
}

CMat4 conjugate_b(const CMat4& rho, const CMat2& k) {
  const CMat4 full = kron(CMat2::identity(), k);
  return full * rho * adjoint(full);
}

CMat4 pass_through(const CMat4& rho, const EveSettings& eve) {
  CMat4 out;
  const double weight[2] = {eve.input_bias, 1.0 - eve.input_bias};
  for (Bit k = 0; k < 2; ++k) {
    if (weight[k] == 0.0) continue;
    for (Bit c = 0; c < 2; ++c) out += conjugate_b(rho, sqrt_effect(eve.inputs[k], c)) * weight[k];
  }
  return out;
}

namespace {

std::size_t upstream_count(const ChainSpec& spec, Party party) {
  if (party.kind == Party::Kind::bob) return spec.eves.size();
  if (party.index < 1 || party.index > spec.eves.size()) {
    throw std::invalid_argument("no " + party.label() + " in a chain of " + std::to_string(spec.eves.size()) +
                                " Eves");
  }
  return party.index - 1;
}

}  // namespace

TwoQubitState propagate(const ChainSpec& spec, Party party) {
  const std::size_t n = upstream_count(spec, party);
  CMat4 rho = spec.initial.rho();
  for (std::size_t m = 0; m < n; ++m) rho = pass_through(rho, spec.eves[m]);
  return TwoQubitState(rho);
}

ConditionalTable conditional_table(const ChainSpec& spec, Party party) {
  const TwoQubitState state = propagate(spec, party);
  const std::array<Povm2, 2> alice = {projectors(spec.alice[0]), projectors(spec.alice[1])};
  std::array<Povm2, 2> measured;
  if (party.kind == Party::Kind::bob) {
    measured = {projectors(spec.bob[0]), projectors(spec.bob[1])};
  } else {
    const auto& eve = spec.eves[party.index - 1];
    measured = {effects(eve.inputs[0]), effects(eve.inputs[1])};
  }
  return tabulate(state, alice, measured);
}

}  // namespace seqsteer
