#include "seqsteer/quantum.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <sstream>

namespace seqsteer {

namespace pauli {
CMat2 identity() { return CMat2::identity(); }
CMat2 x() {
  CMat2 m;
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}
CMat2 y() {
  CMat2 m;
  m(0, 1) = cplx(0.0, -1.0);
  m(1, 0) = cplx(0.0, 1.0);
  return m;
}
CMat2 z() {
  CMat2 m;
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}
}  // namespace pauli

CMat2 hadamard() {
  const double h = std::numbers::sqrt2 / 2.0;
  CMat2 m;
  m(0, 0) = h;
  m(0, 1) = h;
  m(1, 0) = h;
  m(1, 1) = -h;
  return m;
}

CMat4 kron(const CMat2& l, const CMat2& r) {
  CMat4 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t m = 0; m < 2; ++m) out(2 * i + k, 2 * j + m) = l(i, j) * r(k, m);
  return out;
}

CVec4 multiply(const CMat4& m, const CVec4& v) {
  CVec4 out{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) out[i] += m(i, j) * v[j];
  return out;
}

CMat2 partial_trace(const CMat4& rho, Subsystem keep) {
  CMat2 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k) {
        if (keep == Subsystem::A)
          out(i, j) += rho(2 * i + k, 2 * j + k);
        else
          out(i, j) += rho(2 * k + i, 2 * k + j);
      }
  return out;
}

std::array<double, 2> hermitian_eigenvalues(const CMat2& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const double mean = 0.5 * (a + d);
  const double r = std::hypot(0.5 * (a - d), std::abs(m(0, 1)));
  return {mean - r, mean + r};
}

std::array<double, 4> hermitian_eigenvalues(const CMat4& m) {
  Eigen::Matrix4cd e;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) e(i, j) = m(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(e, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev(0), ev(1), ev(2), ev(3)};
}

CMat2 psd_sqrt(const CMat2& m) {
  auto [lo, hi] = hermitian_eigenvalues(m);
  if (lo < -1e-9) {
    throw NumericalError("psd_sqrt: eigenvalue " + std::to_string(lo) + " is negative");
  }
  lo = std::max(lo, 0.0);
  hi = std::max(hi, 0.0);
  const double s_lo = std::sqrt(lo);
  const double s_hi = std::sqrt(hi);
  const double denom = s_lo + s_hi;
  if (denom == 0.0) return CMat2::zero();
  // Both eigenvalues share the eigenvectors of m, so
  // sqrt(m) = (m + sqrt(lo*hi) I) / (sqrt(lo) + sqrt(hi)).
  CMat2 out = m + CMat2::identity() * (s_lo * s_hi);
  out *= cplx(1.0 / denom);
  // Clean up the diagonal so the result is exactly Hermitian.
  out(0, 0) = out(0, 0).real();
  out(1, 1) = out(1, 1).real();
  out(1, 0) = std::conj(out(0, 1));
  return out;
}

BlochDirection BlochDirection::x() { return {std::numbers::pi / 2.0, 0.0}; }
BlochDirection BlochDirection::y() { return {std::numbers::pi / 2.0, std::numbers::pi / 2.0}; }

std::array<double, 3> BlochDirection::unit_vector() const {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

CMat2 direction_operator(const BlochDirection& n) {
  const auto [nx, ny, nz] = n.unit_vector();
  CMat2 m;
  m(0, 0) = nz;
  m(1, 1) = -nz;
  m(0, 1) = cplx(nx, -ny);
  m(1, 0) = cplx(nx, ny);
  return m;
}

namespace {

double squared_norm(const CVec4& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return s;
}

}  // namespace

PureTwoQubitState::PureTwoQubitState(const CVec4& amp) : amp_(amp) {
  if (std::abs(squared_norm(amp) - 1.0) > kComposedTol) {
    throw std::invalid_argument("PureTwoQubitState: amplitudes are not normalized");
  }
}

PureTwoQubitState PureTwoQubitState::normalized(const CVec4& v) {
  const double n2 = squared_norm(v);
  if (!(n2 > 1e-300)) throw NumericalError("PureTwoQubitState: zero vector");
  const double inv = 1.0 / std::sqrt(n2);
  CVec4 out;
  for (std::size_t i = 0; i < 4; ++i) out[i] = v[i] * inv;
  return PureTwoQubitState(out);
}

CMat4 PureTwoQubitState::density() const {
  CMat4 rho;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) rho(i, j) = amp_[i] * std::conj(amp_[j]);
  return rho;
}

TwoQubitState::TwoQubitState(const CMat4& rho, double tol) : rho_(rho) {
  if (!is_hermitian(rho, tol)) throw std::invalid_argument("TwoQubitState: matrix is not Hermitian");
  const cplx tr = trace(rho);
  if (std::abs(tr - cplx(1.0)) > tol) {
    throw std::invalid_argument("TwoQubitState: trace " + std::to_string(tr.real()) + " != 1");
  }
  if (hermitian_eigenvalues(rho)[0] < -tol) {
    throw std::invalid_argument("TwoQubitState: matrix is not positive semidefinite");
  }
}

TwoQubitState::TwoQubitState(const PureTwoQubitState& psi) : TwoQubitState(psi.density()) {}

TwoQubitState TwoQubitState::maximally_mixed() { return TwoQubitState(CMat4::identity() * 0.25); }

double TwoQubitState::expectation(const CMat2& l, const CMat2& r) const {
  return trace_product(kron(l, r), rho_);
}

PureTwoQubitState bell_state() {
  const double h = std::numbers::sqrt2 / 2.0;
  return PureTwoQubitState(CVec4{h, 0.0, 0.0, h});
}

PureTwoQubitState tilted_state(double theta) {
  if (!(theta > 0.0 && theta <= std::numbers::pi / 4.0 + kEps)) {
    throw std::invalid_argument("tilted_state: theta must lie in (0, pi/4]");
  }
  return PureTwoQubitState(CVec4{std::cos(theta), 0.0, 0.0, std::sin(theta)});
}

PureTwoQubitState make_state(const StateSpec& spec) {
  switch (spec.kind) {
    case StateSpec::Kind::bell:
      return bell_state();
    case StateSpec::Kind::tilted:
      return tilted_state(spec.theta);
  }
  throw std::invalid_argument("make_state: unknown state kind");
}

double fidelity(const PureTwoQubitState& l, const PureTwoQubitState& r) {
  cplx overlap{};
  for (std::size_t i = 0; i < 4; ++i) overlap += std::conj(l[i]) * r[i];
  return std::norm(overlap);
}

std::string to_string(const CMat2& m) {
  std::ostringstream os;
  os.precision(6);
  os << "[[" << m(0, 0) << ", " << m(0, 1) << "], [" << m(1, 0) << ", " << m(1, 1) << "]]";
  return os.str();
}

}  // namespace seqsteer
