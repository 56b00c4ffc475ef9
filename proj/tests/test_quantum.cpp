#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "seqsteer/quantum.hpp"
#include "test_support.hpp"

#include <numbers>

using namespace seqsteer;
using seqsteer::testing::Generator;

namespace {

CMat2 diag(double a, double b) {
  CMat2 m;
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("kron") {
  CHECK(kron(pauli::identity(), pauli::identity()) == CMat4::identity());

  CMat4 zz;
  zz(0, 0) = 1.0;
  zz(1, 1) = -1.0;
  zz(2, 2) = -1.0;
  zz(3, 3) = 1.0;
  CHECK(kron(pauli::z(), pauli::z()) == zz);

  // sigma_x (x) sigma_x swaps |00> <-> |11> and |01> <-> |10>, so the Bell
  // vector (a, 0, 0, a) maps to (a, 0, 0, a).
  const CVec4 out = multiply(kron(pauli::x(), pauli::x()), bell_state().amplitudes());
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(out[i] - bell_state()[i]) < kEps);

  SUBCASE("mixed product property") {
    Generator g(11);
    for (int i = 0; i < 50; ++i) {
      const CMat2 a = g.matrix2(), b = g.matrix2(), c = g.matrix2(), d = g.matrix2();
      CHECK(max_abs_diff(kron(a, b) * kron(c, d), kron(a * c, b * d)) < 1e-11);
    }
  }
}

TEST_CASE("partial_trace") {
  const CMat4 bell = bell_state().density();
  CHECK(approx_equal(partial_trace(bell, Subsystem::B), CMat2::identity() * 0.5));

  Generator g(12);
  const CMat2 ra = g.density2();
  const CMat2 rb = g.psd2();
  CHECK(max_abs_diff(partial_trace(kron(ra, rb), Subsystem::A), ra * trace(rb)) < 1e-12);
  CHECK(max_abs_diff(partial_trace(kron(ra, rb), Subsystem::B), rb * trace(ra)) < 1e-12);

  const CMat4 tilted = tilted_state(std::numbers::pi / 6.0).density();
  CHECK(approx_equal(partial_trace(tilted, Subsystem::A), diag(0.75, 0.25)));

  SUBCASE("linearity and trace preservation") {
    for (int i = 0; i < 200; ++i) {
      const CMat4 r1 = g.hermitian4(), r2 = g.hermitian4();
      const double alpha = g.gauss(), beta = g.gauss();
      for (auto keep : {Subsystem::A, Subsystem::B}) {
        const CMat2 lhs = partial_trace(r1 * alpha + r2 * beta, keep);
        const CMat2 rhs = partial_trace(r1, keep) * alpha + partial_trace(r2, keep) * beta;
        CHECK(max_abs_diff(lhs, rhs) < 1e-11);
        CHECK(std::abs(trace(partial_trace(r1, keep)) - trace(r1)) < 1e-11);
        CHECK(is_hermitian(partial_trace(r1, keep), 1e-12));
      }
    }
  }
}

TEST_CASE("psd_sqrt") {
  CHECK(approx_equal(psd_sqrt(CMat2::identity()), CMat2::identity()));
  CHECK(approx_equal(psd_sqrt(diag(0.75, 0.25)), diag(std::sqrt(0.75), 0.5)));
  // Sharpness 0.552 effect along z, outcome 0: eigenvalues (1 +/- 0.552)/2.
  CHECK(approx_equal(psd_sqrt(diag(0.776, 0.224)), diag(0.880908621, 0.473286383), 1e-9));
  CHECK(approx_equal(psd_sqrt(CMat2::zero()), CMat2::zero()));

  SUBCASE("rejects clearly negative input") {
    CHECK_THROWS_AS(psd_sqrt(diag(1.0, -1e-6)), NumericalError);
    CHECK_NOTHROW(psd_sqrt(diag(1.0, -1e-12)));
  }

  SUBCASE("squares back for random PSD matrices") {
    Generator g(13);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const CMat2 m = g.psd2();
      const CMat2 s = psd_sqrt(m);
      worst = std::max(worst, max_abs_diff(s * s, m));
      CHECK(is_hermitian(s, 1e-14));
      CHECK(hermitian_eigenvalues(s)[0] >= -1e-12);
    }
    CHECK(worst < 1e-10);
  }

  SUBCASE("rank one") {
    const CMat2 p = diag(1.0, 0.0);
    CHECK(approx_equal(psd_sqrt(p), p));
  }
}

TEST_CASE("direction_operator") {
  CHECK(approx_equal(direction_operator(BlochDirection::z()), pauli::z()));
  CHECK(approx_equal(direction_operator(BlochDirection::x()), pauli::x()));
  CHECK(approx_equal(direction_operator(BlochDirection::y()), pauli::y()));

  Generator g(14);
  for (int i = 0; i < 500; ++i) {
    const BlochDirection n = g.direction();
    const auto v = n.unit_vector();
    CHECK(std::abs(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] - 1.0) < kEps);
    const CMat2 op = direction_operator(n);
    CHECK(approx_equal(op * op, CMat2::identity()));
    CHECK(is_hermitian(op));
    CHECK(std::abs(trace(op)) < kEps);
    const auto ev = hermitian_eigenvalues(op);
    CHECK(ev[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(ev[1] == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("states") {
  const double h = std::numbers::sqrt2 / 2.0;
  const auto bell = make_state({StateSpec::Kind::bell});
  CHECK(std::abs(bell[0] - h) < kEps);
  CHECK(std::abs(bell[3] - h) < kEps);
  CHECK(std::abs(bell[1]) < kEps);

  const auto quarter = make_state({StateSpec::Kind::tilted, std::numbers::pi / 4.0});
  CHECK(fidelity(quarter, bell) == doctest::Approx(1.0).epsilon(1e-15));

  const auto sixth = tilted_state(std::numbers::pi / 6.0);
  CHECK(std::abs(sixth[0] - std::sqrt(3.0) / 2.0) < kEps);
  CHECK(std::abs(sixth[3] - 0.5) < kEps);

  CHECK_THROWS_AS(tilted_state(0.0), std::invalid_argument);
  CHECK_THROWS_AS(tilted_state(1.0), std::invalid_argument);
  CHECK_THROWS_AS(PureTwoQubitState(CVec4{1.0, 1.0, 0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(PureTwoQubitState::normalized(CVec4{}), NumericalError);

  SUBCASE("density matrices of pure states are valid and rank one") {
    Generator g(15);
    for (int i = 0; i < 300; ++i) {
      const auto psi = g.pure_state();
      const TwoQubitState rho(psi);
      const auto ev = hermitian_eigenvalues(rho.rho());
      CHECK(ev[2] < 1e-10);
      CHECK(ev[3] == doctest::Approx(1.0).epsilon(1e-10));
    }
  }

  SUBCASE("invalid density matrices are rejected") {
    CHECK_THROWS_AS(TwoQubitState(CMat4::identity()), std::invalid_argument);
    CMat4 neg = CMat4::identity() * 0.25;
    neg(0, 0) = 0.75;
    neg(3, 3) = -0.25;
    CHECK_THROWS_AS(TwoQubitState{neg}, std::invalid_argument);
    CMat4 nonherm = CMat4::identity() * 0.25;
    nonherm(0, 1) = 0.1;
    CHECK_THROWS_AS(TwoQubitState{nonherm}, std::invalid_argument);
    CHECK_NOTHROW(TwoQubitState::maximally_mixed());
  }
}
