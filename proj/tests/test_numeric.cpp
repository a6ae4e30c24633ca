#include "phnet/error.hpp"
#include "phnet/numeric.hpp"
#include "support.hpp"

#include <doctest.h>

#include <numbers>

using namespace phnet;
using namespace phnet::test;

namespace {

ComplexMatrix dimer(double j, double gamma) {
  ComplexMatrix m(2, 2);
  m << Complex(0, gamma), -j, -j, Complex(0, -gamma);
  return m;
}

ComplexMatrix ring(Index n, double kappa) {
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Index a = 0; a < n; ++a) {
    m(a, (a + 1) % n) += -kappa;
    m((a + 1) % n, a) += -kappa;
  }
  return m;
}

void check_pair(const ComplexMatrix& m, const EigenPair& p, double tol) {
  CHECK((m * p.right - p.eigenvalue * p.right).norm() <= tol * norm1(m));
  CHECK((m.adjoint() * p.left - std::conj(p.eigenvalue) * p.left).norm() <= tol * norm1(m) * p.left.norm());
  CHECK(std::abs(p.left.dot(p.right) - 1.0) < 1e-12);
  CHECK(p.right.norm() == doctest::Approx(1.0).epsilon(1e-13));
}

}  // namespace

TEST_CASE("eig_general_small: pseudo-Hermitian dimer has eigenvalues +-sqrt(J^2 - gamma^2)") {
  const auto pairs = eig_general_small(dimer(0.10, 0.05));
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0].eigenvalue.real() == doctest::Approx(-0.0866025403784).epsilon(1e-12));
  CHECK(pairs[1].eigenvalue.real() == doctest::Approx(0.0866025403784).epsilon(1e-12));
  CHECK(std::abs(pairs[0].eigenvalue.imag()) < 1e-14);
  for (const auto& p : pairs) check_pair(dimer(0.10, 0.05), p, 1e-13);
}

TEST_CASE("eig_general_small: identity gives eigenvalue 1 three times with orthonormal vectors") {
  const ComplexMatrix id = ComplexMatrix::Identity(3, 3);
  const auto pairs = eig_general_small(id);
  REQUIRE(pairs.size() == 3);
  ComplexMatrix v(3, 3);
  for (Index i = 0; i < 3; ++i) {
    CHECK(std::abs(pairs[static_cast<std::size_t>(i)].eigenvalue - 1.0) < 1e-15);
    v.col(i) = pairs[static_cast<std::size_t>(i)].right;
  }
  CHECK(max_abs(v.adjoint() * v - id) < 1e-12);
}

TEST_CASE("eig_general_small: random 4x4 matches characteristic-polynomial roots") {
  Rng rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const ComplexMatrix m = random_matrix(rng, 4, 4);
    const auto pairs = eig_general_small(m);
    std::vector<Complex> got;
    for (const auto& p : pairs) {
      got.push_back(p.eigenvalue);
      CHECK((m * p.right - p.eigenvalue * p.right).norm() <= 1e-12 * norm1(m));
    }
    const auto roots = polynomial_roots(characteristic_polynomial(m));
    CHECK(matching_distance(got, roots) < 1e-10);
  }
}

TEST_CASE("eig_general_small: property checks on random matrices") {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = uniform_index(rng, 1, 8);
    const ComplexMatrix m = random_matrix(rng, n, n);
    const auto pairs = eig_general_small(m);
    Complex sum = 0.0;
    for (const auto& p : pairs) sum += p.eigenvalue;
    CHECK(std::abs(sum - m.trace()) <= 1e-10 * norm1(m));
    for (std::size_t i = 1; i < pairs.size(); ++i) {
      const Complex a = pairs[i - 1].eigenvalue, b = pairs[i].eigenvalue;
      CHECK((a.real() < b.real() || (a.real() == b.real() && a.imag() <= b.imag())));
    }

    const ComplexMatrix h = random_hermitian(rng, n);
    for (const auto& p : eig_general_small(h)) CHECK(std::abs(p.eigenvalue.imag()) <= 1e-12 * norm1(h));
  }
}

TEST_CASE("eig_general_small: errors") {
  ComplexMatrix jordan(2, 2);
  jordan << 1.0, 1.0, 0.0, 1.0;
  CHECK_THROWS_AS(eig_general_small(jordan), Error);
  try {
    eig_general_small(jordan);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Defective);
  }
  // The dimer at its exceptional point is defective too.
  try {
    eig_general_small(dimer(0.1, 0.1));
    FAIL("expected Defective");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Defective);
  }
}

TEST_CASE("eig_hermitian: small closed-form spectra") {
  ComplexMatrix pair(2, 2);
  pair << 0.0, -1.0, -1.0, 0.0;
  const auto e2 = eig_hermitian(pair);
  CHECK(e2.values[0] == doctest::Approx(-1.0));
  CHECK(e2.values[1] == doctest::Approx(1.0));

  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d.diagonal() << 3.0, 1.0, 2.0;
  const auto e3 = eig_hermitian(d);
  CHECK(e3.values[0] == doctest::Approx(1.0));
  CHECK(e3.values[1] == doctest::Approx(2.0));
  CHECK(e3.values[2] == doctest::Approx(3.0));
}

TEST_CASE("eig_hermitian: periodic chain of 8 sites has the circulant spectrum") {
  const auto e = eig_hermitian(ring(8, 1.0));
  std::vector<double> expected;
  for (int n = 1; n <= 8; ++n) expected.push_back(-2.0 * std::cos(2.0 * std::numbers::pi * n / 8.0));
  std::sort(expected.begin(), expected.end());
  for (Index i = 0; i < 8; ++i) CHECK(std::abs(e.values[i] - expected[static_cast<std::size_t>(i)]) < 1e-13);
  CHECK(max_abs(e.vectors.adjoint() * e.vectors - ComplexMatrix::Identity(8, 8)) < 1e-13);
}

TEST_CASE("eig_hermitian: rejects non-Hermitian input") {
  try {
    eig_hermitian(dimer(0.1, 0.05));
    FAIL("expected NotHermitian");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotHermitian);
  }
}

TEST_CASE("expm: matches spectral exponential of Hermitian matrices") {
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = uniform_index(rng, 1, 12);
    const double scale = std::pow(10.0, uniform(rng, -3.0, 2.0));
    const ComplexMatrix h = scale * random_hermitian(rng, n);
    const auto e = eig_hermitian(h);
    const ComplexVector phases = (-kI * e.values.cast<Complex>()).array().exp();
    const ComplexMatrix expected = e.vectors * phases.asDiagonal() * e.vectors.adjoint();
    CHECK(max_abs(expm(-kI * h) - expected) < 1e-11 * std::max(1.0, scale));
  }
}

TEST_CASE("propagate: null generator leaves the state unchanged") {
  Rng rng(14);
  const ComplexMatrix zero = ComplexMatrix::Zero(4, 4);
  const ComplexMatrix psi = random_matrix(rng, 4, 1);
  for (auto method : {PropagationMethod::Rk4, PropagationMethod::Expm}) {
    CHECK(max_abs(propagate(zero, psi, 3.7, method, 0.1) - psi) == 0.0);
  }
}

TEST_CASE("propagate: Hermitian 2x2 closed form at t = pi/2") {
  ComplexMatrix h(2, 2);
  h << 0.0, -1.0, -1.0, 0.0;
  ComplexMatrix psi(2, 1);
  psi << 1.0, 0.0;
  const double t = std::numbers::pi / 2;
  // exp(-iHt) = cos t I + i sin t sigma_x
  ComplexMatrix expected(2, 1);
  expected << std::cos(t), Complex(0, std::sin(t));
  CHECK(max_abs(propagate(h, psi, t, PropagationMethod::Expm, 0.0) - expected) < 1e-14);
  CHECK(max_abs(propagate(h, psi, t, PropagationMethod::Rk4, 1e-3) - expected) < 1e-12);
}

TEST_CASE("propagate: rk4 is fourth order") {
  Rng rng(15);
  const ComplexMatrix h = planted_matrix(rng, separated_spectrum(rng, 5));
  const ComplexMatrix psi = random_matrix(rng, 5, 1);
  const double t = 2.0 / norm1(h);
  const ComplexMatrix exact = propagate(h, psi, t, PropagationMethod::Expm, 0.0);
  const double dt = 0.2 / norm1(h);
  const double e1 = (propagate(h, psi, t, PropagationMethod::Rk4, dt) - exact).norm();
  const double e2 = (propagate(h, psi, t, PropagationMethod::Rk4, dt / 2) - exact).norm();
  CHECK(e1 / e2 >= 8.0);
}

TEST_CASE("propagate: unitarity and semigroup properties") {
  Rng rng(16);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = uniform_index(rng, 2, 10);
    const ComplexMatrix h = random_hermitian(rng, n);
    const ComplexMatrix psi = random_unit_vector(rng, n);
    const double t = uniform(rng, 0.1, 3.0);
    const double dt = default_rk4_step(norm1(h), t);
    const ComplexMatrix rk = propagate(h, psi, t, PropagationMethod::Rk4, dt);
    const ComplexMatrix ex = propagate(h, psi, t, PropagationMethod::Expm, 0.0);
    CHECK(std::abs(rk.norm() - 1.0) <= 1e-10 * t);
    CHECK(std::abs(ex.norm() - 1.0) < 1e-13);

    const ComplexMatrix g = planted_matrix(rng, separated_spectrum(rng, n));
    const double t1 = uniform(rng, 0.1, 2.0), t2 = uniform(rng, 0.1, 2.0);
    for (auto method : {PropagationMethod::Expm, PropagationMethod::Rk4}) {
      const double step = default_rk4_step(norm1(g), t1 + t2);
      const ComplexMatrix whole = propagate(g, psi, t1 + t2, method, step);
      const ComplexMatrix split = propagate(g, propagate(g, psi, t1, method, step), t2, method, step);
      CHECK(max_abs(whole - split) < 1e-9 * std::max(1.0, max_abs(whole)));
    }
  }
}

TEST_CASE("propagate: step guard and numeric failures") {
  ComplexMatrix h(2, 2);
  h << 0.0, -1.0, -1.0, 0.0;
  ComplexMatrix psi(2, 1);
  psi << 1.0, 0.0;
  try {
    propagate(h, psi, 1.0, PropagationMethod::Rk4, 0.6);
    FAIL("expected StepTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::StepTooLarge);
  }
  ComplexMatrix big(1, 1);
  big << Complex(0, 800.0);  // exp(800 t) overflows
  ComplexMatrix one(1, 1);
  one << 1.0;
  try {
    propagate(big, one, 1.0, PropagationMethod::Expm, 0.0);
    FAIL("expected Overflow");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Overflow);
  }
}

TEST_CASE("StateVector rejects non-finite amplitudes and ragged shapes") {
  ComplexVector v(4);
  v << 1.0, 0.0, std::numeric_limits<double>::quiet_NaN(), 0.0;
  CHECK_THROWS_AS(StateVector(v, 2), Error);
  CHECK_THROWS_AS(StateVector(ComplexVector::Zero(3), 2), Error);
  const StateVector ok(ComplexVector::Ones(6), 3);
  CHECK(ok.cluster_count() == 2);
  CHECK(ok.flat_index(1, 2) == 5);
}
