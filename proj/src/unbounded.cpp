#include "seqsteer/unbounded.hpp"

#include "seqsteer/chain.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace seqsteer {

namespace {

using Vec2 = std::array<cplx, 2>;

constexpr double kPhaseThreshold = 1e-9;

void set_column(CMat2& m, std::size_t j, const Vec2& v) {
  m(0, j) = v[0];
  m(1, j) = v[1];
}

Vec2 normalize(Vec2 v) {
  const double n = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
  return {v[0] / n, v[1] / n};
}

// Unit vector orthogonal to v with the determinant [v w] = 1.
Vec2 complement(const Vec2& v) { return {-std::conj(v[1]), std::conj(v[0])}; }

// Unit phase of the first entry whose magnitude exceeds the threshold.
cplx leading_phase(const Vec2& v) {
  for (const auto& x : v) {
    if (std::abs(x) > kPhaseThreshold) return x / std::abs(x);
  }
  return 1.0;
}

// Dominant unit eigenvector of a Hermitian 2x2 matrix.
Vec2 dominant_eigenvector(const CMat2& h) {
  const double a = h(0, 0).real();
  const double d = h(1, 1).real();
  const cplx b = h(0, 1);
  const double r = std::hypot(0.5 * (a - d), std::abs(b));
  if (r < 1e-15) return {1.0, 0.0};
  const double top = 0.5 * (a + d) + r;
  const Vec2 first = {b, top - a};
  const Vec2 second = {top - d, std::conj(b)};
  const double n1 = std::norm(first[0]) + std::norm(first[1]);
  const double n2 = std::norm(second[0]) + std::norm(second[1]);
  return normalize(n1 >= n2 ? first : second);
}

PureTwoQubitState canonical_with(const CMat2& u, double theta) {
  CVec4 amp{};
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  // (u (x) I)(c|00> + s|11>) = c u|0>|0> + s u|1>|1>
  for (std::size_t i = 0; i < 2; ++i) {
    amp[2 * i + 0] = c * u(i, 0);
    amp[2 * i + 1] = s * u(i, 1);
  }
  return PureTwoQubitState::normalized(amp);
}

void check_angle(double angle, const char* what) {
  if (!(angle > 0.0 && angle <= std::numbers::pi / 4.0 + kEps)) {
    throw std::invalid_argument(std::string(what) + " must lie in (0, pi/4]");
  }
}

}  // namespace

PureTwoQubitState SchmidtForm::reconstruct() const {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const cplx phase = std::polar(1.0, global_phase);
  CVec4 amp{};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      amp[2 * i + j] = phase * (c * u_alice(i, 0) * v_other(j, 0) + s * u_alice(i, 1) * v_other(j, 1));
  return PureTwoQubitState::normalized(amp);
}

SchmidtForm schmidt_decompose(const PureTwoQubitState& psi) {
  // Coefficient matrix: psi = sum_ij C_ij |i>|j> = sum_k s_k u_k (x) v_k with
  // C = U diag(s) V^T.
  CMat2 coeff;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) coeff(i, j) = psi[2 * i + j];

  const Vec2 u1 = dominant_eigenvector(coeff * adjoint(coeff));
  const Vec2 u2 = complement(u1);

  double top = 0.0;
  for (std::size_t j = 0; j < 2; ++j) top += std::norm(std::conj(u1[0]) * coeff(0, j) + std::conj(u1[1]) * coeff(1, j));
  const double s1 = std::sqrt(top);
  const double det = std::abs(coeff(0, 0) * coeff(1, 1) - coeff(0, 1) * coeff(1, 0));
  const double s2 = det / s1;

  // v_k = C^T conj(u_k) / s_k
  auto right_vector = [&](const Vec2& u, double s) {
    return Vec2{(coeff(0, 0) * std::conj(u[0]) + coeff(1, 0) * std::conj(u[1])) / s,
                (coeff(0, 1) * std::conj(u[0]) + coeff(1, 1) * std::conj(u[1])) / s};
  };

  SchmidtForm sf;
  sf.theta = std::atan2(s2, s1);
  sf.degenerate = sf.theta < kDegenerateTheta;

  std::array<Vec2, 2> left = {u1, u2};
  std::array<Vec2, 2> right;
  right[0] = normalize(right_vector(u1, s1));
  if (sf.degenerate) {
    // Second Schmidt pair carries no weight; complete both bases.
    right[1] = complement(right[0]);
  } else {
    right[1] = normalize(right_vector(u2, s2));
  }

  // Pair gauge u_k -> p u_k, v_k -> conj(p) v_k leaves the state unchanged.
  for (std::size_t k = 0; k < 2; ++k) {
    const cplx p = leading_phase(right[k]);
    right[k] = {right[k][0] * std::conj(p), right[k][1] * std::conj(p)};
    left[k] = {left[k][0] * p, left[k][1] * p};
  }
  const cplx g = leading_phase(left[0]);
  for (auto& l : left) l = {l[0] * std::conj(g), l[1] * std::conj(g)};
  sf.global_phase = std::arg(g);

  for (std::size_t k = 0; k < 2; ++k) {
    set_column(sf.u_alice, k, left[k]);
    set_column(sf.v_other, k, right[k]);
  }
  return sf;
}

WeakStep weak_step(const PureTwoQubitState& psi, const WeakKrausSetting& w, Bit outcome) {
  const CVec4 out = multiply(kron(CMat2::identity(), weak_kraus(w, outcome)), psi.amplitudes());
  double p = 0.0;
  for (const auto& x : out) p += std::norm(x);
  if (!(p > ConditionalTable::kZeroProbability)) {
    throw ComputationError("weak_step: outcome " + std::to_string(outcome) + " has zero probability");
  }
  return {schmidt_decompose(PureTwoQubitState::normalized(out)), p};
}

PureTwoQubitState correct_and_forward(const SchmidtForm& sf) { return canonical_with(sf.u_alice, sf.theta); }

std::string BranchNode::id() const {
  if (outcomes.empty()) return "root";
  std::string s;
  for (Bit b : outcomes) s.push_back(b ? '1' : '0');
  return s;
}

PureTwoQubitState BranchNode::state() const { return canonical_with(u_alice, theta); }

std::vector<BranchNode> BranchTree::terminal_nodes() const {
  std::vector<BranchNode> out;
  for (std::size_t d = 0; d + 1 < levels.size(); ++d)
    for (const auto& n : levels[d])
      if (n.degenerate) out.push_back(n);
  if (!levels.empty()) out.insert(out.end(), levels.back().begin(), levels.back().end());
  return out;
}

bool BranchTree::has_degenerate() const {
  for (const auto& level : levels)
    for (const auto& n : level)
      if (n.degenerate) return true;
  return false;
}

std::size_t BranchTree::alice_facing_count() const {
  return levels.empty() ? 0 : std::size_t{1} << (levels.size() - 1);
}

BranchTree branch_tree(double theta1, std::span<const double> lambdas) {
  if (lambdas.empty()) throw std::invalid_argument("branch_tree: need at least one Eve");
  check_angle(theta1, "branch_tree: initial angle");
  for (double l : lambdas) check_angle(l, "branch_tree: weak-measurement angle");

  BranchTree tree;
  tree.theta1 = theta1;
  tree.lambdas.assign(lambdas.begin(), lambdas.end());

  BranchNode root;
  root.theta = theta1;
  std::vector<BranchNode> frontier = {root};
  for (double lambda : lambdas) {
    std::vector<BranchNode> next;
    next.reserve(2 * frontier.size());
    for (const auto& parent : frontier) {
      if (parent.degenerate) continue;
      const PureTwoQubitState incoming = parent.state();
      for (Bit c = 0; c < 2; ++c) {
        const WeakStep step = weak_step(incoming, WeakKrausSetting{lambda}, c);
        BranchNode child;
        child.outcomes = parent.outcomes;
        child.outcomes.push_back(c);
        child.theta = step.form.theta;
        child.u_alice = step.form.u_alice;
        child.probability = parent.probability * step.probability;
        child.degenerate = step.form.degenerate;
        next.push_back(std::move(child));
      }
    }
    tree.levels.push_back(next);
    frontier = std::move(next);
  }
  return tree;
}

std::vector<AliceFacingState> alice_facing_states(const BranchTree& tree) {
  std::map<std::vector<Bit>, std::pair<double, CMat4>> groups;
  if (tree.levels.empty()) return {};
  for (const auto& leaf : tree.levels.back()) {
    std::vector<Bit> prefix(leaf.outcomes.begin(), leaf.outcomes.end() - 1);
    auto& [weight, rho] = groups[prefix];
    weight += leaf.probability;
    rho += leaf.state().density() * leaf.probability;
  }
  std::vector<AliceFacingState> out;
  out.reserve(groups.size());
  for (auto& [prefix, entry] : groups) {
    auto& [weight, rho] = entry;
    out.push_back({prefix, weight, TwoQubitState(rho * (1.0 / weight))});
  }
  return out;
}

MeasurementPair canonical_settings(double theta) {
  const CMat2 z = pauli::z();
  const CMat2 x = pauli::x();
  return {{z, z * std::cos(2.0 * theta) + x * std::sin(2.0 * theta)}, {z, x}};
}

AdaptedMeasurement adapted_alice_measurement(const BranchNode& node) {
  AdaptedMeasurement m;
  m.mu = std::atan(std::sin(2.0 * node.theta));
  const CMat2& u = node.u_alice;
  const CMat2 local = pauli::z() * std::cos(m.mu) + pauli::x() * std::sin(m.mu);
  m.first = u * pauli::z() * adjoint(u);
  m.second = u * local * adjoint(u);
  return m;
}

const char* to_string(AliceChoice choice) {
  return choice == AliceChoice::canonical ? "canonical" : "adapted";
}

SteeringReport evaluate_branch(const BranchNode& node, AliceChoice choice) {
  std::array<CMat2, 2> alice;
  if (choice == AliceChoice::canonical) {
    const MeasurementPair canonical = canonical_settings(node.theta);
    const CMat2& u = node.u_alice;
    alice = {u * canonical.alice[0] * adjoint(u), u * canonical.alice[1] * adjoint(u)};
  } else {
    const AdaptedMeasurement m = adapted_alice_measurement(node);
    alice = {m.first, m.second};
  }
  const TwoQubitState state(node.state());
  const ConditionalTable t = tabulate(state, {observable_projectors(alice[0]), observable_projectors(alice[1])},
                                      {observable_projectors(pauli::z()), observable_projectors(pauli::x())});
  return make_report(t);
}

}  // namespace seqsteer
