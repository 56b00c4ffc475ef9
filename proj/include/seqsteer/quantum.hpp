// Fixed-dimension complex linear algebra for one- and two-qubit systems.
//
// Everything here works on 2x2 and 4x4 dense row-major matrices. Qubit A
// (Alice) is the left tensor factor, so basis index = 2*a + b.

#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace seqsteer {

using cplx = std::complex<double>;

/// Absolute tolerance for invariant checks on freshly built values.
inline constexpr double kEps = 1e-12;
/// Tolerance for results composed from several operations.
inline constexpr double kComposedTol = 1e-10;

/// A well-formed request that has no meaningful answer: zero-probability
/// conditioning, degenerate branches, unreachable targets.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical failure that signals a logic error upstream (e.g. a density
/// matrix with a clearly negative eigenvalue).
class NumericalError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

template <std::size_t N>
struct Mat {
  std::array<cplx, N * N> a{};

  static constexpr std::size_t dim = N;

  cplx& operator()(std::size_t r, std::size_t c) { return a[r * N + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return a[r * N + c]; }

  static Mat zero() { return Mat{}; }
  static Mat identity() {
    Mat m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  Mat& operator+=(const Mat& o) {
    for (std::size_t i = 0; i < N * N; ++i) a[i] += o.a[i];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    for (std::size_t i = 0; i < N * N; ++i) a[i] -= o.a[i];
    return *this;
  }
  Mat& operator*=(cplx s) {
    for (auto& x : a) x *= s;
    return *this;
  }

  friend Mat operator+(Mat l, const Mat& r) { return l += r; }
  friend Mat operator-(Mat l, const Mat& r) { return l -= r; }
  friend Mat operator*(Mat m, cplx s) { return m *= s; }
  friend Mat operator*(cplx s, Mat m) { return m *= s; }
  friend Mat operator*(Mat m, double s) { return m *= cplx(s); }
  friend Mat operator*(double s, Mat m) { return m *= cplx(s); }

  friend Mat operator*(const Mat& l, const Mat& r) {
    Mat out;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) {
        const cplx lik = l(i, k);
        if (lik == cplx{}) continue;
        for (std::size_t j = 0; j < N; ++j) out(i, j) += lik * r(k, j);
      }
    return out;
  }

  friend bool operator==(const Mat&, const Mat&) = default;
};

using CMat2 = Mat<2>;
using CMat4 = Mat<4>;
using CVec4 = std::array<cplx, 4>;

template <std::size_t N>
Mat<N> adjoint(const Mat<N>& m) {
  Mat<N> out;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) out(i, j) = std::conj(m(j, i));
  return out;
}

template <std::size_t N>
cplx trace(const Mat<N>& m) {
  cplx t{};
  for (std::size_t i = 0; i < N; ++i) t += m(i, i);
  return t;
}

/// Largest absolute entrywise difference.
template <std::size_t N>
double max_abs_diff(const Mat<N>& l, const Mat<N>& r) {
  double d = 0.0;
  for (std::size_t i = 0; i < N * N; ++i) d = std::max(d, std::abs(l.a[i] - r.a[i]));
  return d;
}

template <std::size_t N>
bool approx_equal(const Mat<N>& l, const Mat<N>& r, double tol = kEps) {
  return max_abs_diff(l, r) <= tol;
}

template <std::size_t N>
bool is_hermitian(const Mat<N>& m, double tol = kEps) {
  return max_abs_diff(m, adjoint(m)) <= tol;
}

/// Real part of Tr(a b) without forming the product.
template <std::size_t N>
double trace_product(const Mat<N>& l, const Mat<N>& r) {
  cplx t{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t k = 0; k < N; ++k) t += l(i, k) * r(k, i);
  return t.real();
}

namespace pauli {
CMat2 identity();
CMat2 x();
CMat2 y();
CMat2 z();
}  // namespace pauli

/// Hadamard gate; columns are |+> and |->.
CMat2 hadamard();

CMat4 kron(const CMat2& l, const CMat2& r);
CVec4 multiply(const CMat4& m, const CVec4& v);

enum class Subsystem { A, B };

/// Reduced 2x2 matrix of `rho` keeping the named subsystem.
CMat2 partial_trace(const CMat4& rho, Subsystem keep);

/// Eigenvalues of a Hermitian 2x2 matrix in ascending order.
std::array<double, 2> hermitian_eigenvalues(const CMat2& m);
/// Eigenvalues of a Hermitian 4x4 matrix in ascending order.
std::array<double, 4> hermitian_eigenvalues(const CMat4& m);

/// Principal square root of a Hermitian PSD 2x2 matrix.
///
/// Uses the closed form sqrt(M) = (M + sqrt(det M) I) / sqrt(tr M + 2 sqrt(det M)).
/// Eigenvalues in [-1e-9, 0) are treated as roundoff and clamped to zero;
/// anything more negative throws NumericalError.
CMat2 psd_sqrt(const CMat2& m);

/// Point on the Bloch sphere: polar angle theta in [0, pi], azimuth phi.
struct BlochDirection {
  double theta = 0.0;
  double phi = 0.0;

  static BlochDirection z() { return {0.0, 0.0}; }
  static BlochDirection x();
  static BlochDirection y();

  std::array<double, 3> unit_vector() const;

  friend bool operator==(const BlochDirection&, const BlochDirection&) = default;
};

/// n . sigma for the direction n.
CMat2 direction_operator(const BlochDirection& n);

/// Amplitudes in the |00>, |01>, |10>, |11> basis; unit norm.
class PureTwoQubitState {
 public:
  /// Throws std::invalid_argument unless the vector has unit norm.
  explicit PureTwoQubitState(const CVec4& amp);

  /// Normalizes `v`; throws NumericalError for a (near) zero vector.
  static PureTwoQubitState normalized(const CVec4& v);

  const CVec4& amplitudes() const { return amp_; }
  cplx operator[](std::size_t i) const { return amp_[i]; }

  CMat4 density() const;

 private:
  CVec4 amp_;
};

/// Density matrix with validated trace, Hermiticity and positivity.
class TwoQubitState {
 public:
  /// Throws std::invalid_argument when an invariant is violated by more
  /// than `tol` (eigenvalues may dip to -tol).
  explicit TwoQubitState(const CMat4& rho, double tol = kComposedTol);
  explicit TwoQubitState(const PureTwoQubitState& psi);

  static TwoQubitState maximally_mixed();

  const CMat4& rho() const { return rho_; }

  /// Expectation Tr[(l (x) r) rho].
  double expectation(const CMat2& l, const CMat2& r) const;

 private:
  CMat4 rho_;
};

/// (|00> + |11>)/sqrt(2)
PureTwoQubitState bell_state();
/// cos(theta)|00> + sin(theta)|11> with theta in (0, pi/4].
PureTwoQubitState tilted_state(double theta);

struct StateSpec {
  enum class Kind { bell, tilted };
  Kind kind = Kind::bell;
  double theta = 0.0;  // used by Kind::tilted only

  friend bool operator==(const StateSpec&, const StateSpec&) = default;
};

PureTwoQubitState make_state(const StateSpec& spec);

double fidelity(const PureTwoQubitState& l, const PureTwoQubitState& r);

std::string to_string(const CMat2& m);

}  // namespace seqsteer
