#include "phnet/dynamics.hpp"
#include "phnet/error.hpp"
#include "support.hpp"

#include <doctest.h>

#include <numbers>

using namespace phnet;
using namespace phnet::test;

namespace {

const LadderSpec kFig2{400, 0.10, 0.05, 1.00};

double max_state_gap(const EvolutionResult& a, const EvolutionResult& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.states.size(); ++i) {
    worst = std::max(worst, max_abs(a.states[i].amplitudes() - b.states[i].amplitudes()));
  }
  return worst;
}

}  // namespace

TEST_CASE("uniform_grid") {
  const auto g = uniform_grid(2.0, 5);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 2.0);
  CHECK(g[1] == doctest::Approx(0.5));
  CHECK(uniform_grid(3.0, 1) == std::vector<double>{0.0});
}

TEST_CASE("dirac_norm and site profiles") {
  CHECK(dirac_norm(StateVector::zero(4, 2)) == 0.0);

  const NetworkSpec net = build_ladder({10, 0.10, 0.05, 1.0});
  const BiorthoModes modes = dimer_modes_analytic(0.10, 0.05);
  ComplexVector c = ComplexVector::Zero(10);
  c[4] = 1.0;  // rung 5
  const LegProfiles p = site_profile(lift_mode_state(net, modes, dimer_mode(+1), c), net);
  CHECK(p.leg1[4] == doctest::Approx(0.577350).epsilon(1e-6));
  CHECK(p.leg2[4] == doctest::Approx(0.577350).epsilon(1e-6));
  CHECK(p.leg1.sum() + p.leg2.sum() == doctest::Approx(1.154701).epsilon(1e-6));
  CHECK(p.leg1.sum() == doctest::Approx(p.leg1[4]));

  const StateVector flat(ComplexVector::Constant(20, 1.0 / std::sqrt(20.0)), 2);
  const LegProfiles f = site_profile(flat, net);
  CHECK((f.leg1.array() - 1.0 / 20.0).abs().maxCoeff() < 1e-16);
  CHECK((f.leg2.array() - 1.0 / 20.0).abs().maxCoeff() < 1e-16);

  NetworkSpec triple;
  triple.cluster.hopping = ComplexMatrix::Identity(3, 3);
  triple.scale = {1.0, 1.0};
  try {
    site_profile(StateVector::zero(2, 3), triple);
    FAIL("expected WrongShape");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::WrongShape);
  }
}

TEST_CASE("evolve: a single-sample grid returns the initial state exactly") {
  Rng rng(41);
  const NetworkSpec net = random_network(rng, 4, 3);
  const StateVector psi(random_unit_vector(rng, 12), 3);
  for (auto method : {EvolutionMethod::Rk4, EvolutionMethod::Expm, EvolutionMethod::Spectral}) {
    const auto r = evolve(net, psi, {0.0}, method);
    REQUIRE(r.states.size() == 1);
    CHECK(r.states[0].amplitudes() == psi.amplitudes());
  }
}

TEST_CASE("evolve: grid validation") {
  const NetworkSpec net = build_ladder({4, 0.10, 0.05, 1.0});
  const StateVector psi = StateVector::zero(4, 2);
  CHECK_THROWS_AS(evolve(net, psi, {0.5, 1.0}, EvolutionMethod::Rk4), Error);
  CHECK_THROWS_AS(evolve(net, psi, {0.0, 1.0, 0.5}, EvolutionMethod::Rk4), Error);
  CHECK_THROWS_AS(evolve(net, psi, {}, EvolutionMethod::Rk4), Error);
}

TEST_CASE("evolve: spectral path is unavailable for defective clusters") {
  NetworkSpec net;
  net.cluster.hopping.resize(2, 2);
  net.cluster.hopping << 1.0, 1.0, 0.0, 1.0;
  net.scale = {1.0, 1.0};
  net.couplings = {{0, 1, 0.5}};
  try {
    evolve(net, StateVector::zero(2, 2), {0.0, 1.0}, EvolutionMethod::Spectral);
    FAIL("expected SpectralUnavailable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SpectralUnavailable);
  }
}

TEST_CASE("evolve: single-mode ladder state keeps its Dirac norm at the figure parameters") {
  const NetworkSpec net = build_ladder(kFig2);
  const BiorthoModes modes = dimer_modes_analytic(kFig2.rung_hopping, kFig2.gamma);
  Rng rng(42);
  const StateVector psi = lift_mode_state(net, modes, dimer_mode(+1), random_unit_vector(rng, 400));
  const auto grid = uniform_grid(kFig2.period(), 11);
  const auto r = evolve(net, psi, grid, EvolutionMethod::Expm);
  for (double n : r.dirac_norm) CHECK(std::abs(n - 2.0 / std::sqrt(3.0)) < 1e-8);
  CHECK(std::abs(r.dirac_norm.back() - r.dirac_norm.front()) < 1e-8);
}

TEST_CASE("evolve: rk4, expm and spectral agree on a random two-mode ladder state") {
  const LadderSpec l{40, 0.10, 0.05, 1.0};
  const NetworkSpec net = build_ladder(l);
  const BiorthoModes modes = dimer_modes_analytic(l.rung_hopping, l.gamma);
  Rng rng(43);
  ModeCoefficients c = random_matrix(rng, 40, 2);
  c /= c.norm();
  const StateVector psi = lift_modes(modes, c);
  const std::vector<double> grid{0.0, l.period() / 3, l.period()};
  EvolveOptions opts;
  opts.modes = modes;
  const auto rk = evolve(net, psi, grid, EvolutionMethod::Rk4, opts);
  const auto ex = evolve(net, psi, grid, EvolutionMethod::Expm, opts);
  const auto sp = evolve(net, psi, grid, EvolutionMethod::Spectral, opts);
  CHECK(max_state_gap(rk, sp) < 1e-8);
  CHECK(max_state_gap(ex, sp) < 1e-8);
  CHECK(max_state_gap(rk, ex) < 1e-8);
}

TEST_CASE("evolve: gamma = 0 conserves the Dirac norm of arbitrary states") {
  Rng rng(44);
  const LadderSpec l{30, 0.3, 0.0, 0.7};
  const NetworkSpec net = build_ladder(l);
  for (int trial = 0; trial < 5; ++trial) {
    const StateVector psi(random_unit_vector(rng, 60), 2);
    for (auto method : {EvolutionMethod::Rk4, EvolutionMethod::Expm, EvolutionMethod::Spectral}) {
      const auto r = evolve(net, psi, uniform_grid(2 * l.period(), 20), method);
      for (double n : r.dirac_norm) CHECK(std::abs(n - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("biortho_propagator: identity at t = 0 and circulant closed form on 3 rungs") {
  const LadderSpec l{3, 0.10, 0.05, 1.0};
  const NetworkSpec net = build_ladder(l);
  const BiorthoModes modes = dimer_modes_analytic(l.rung_hopping, l.gamma);
  CHECK(max_abs(biortho_propagator(net, modes, dimer_mode(+1), 0.0).u - ComplexMatrix::Identity(3, 3)) < 1e-15);

  const double t = 2.3;
  ComplexMatrix expected = ComplexMatrix::Zero(3, 3);
  for (Index b = 0; b < 3; ++b) {
    for (Index a = 0; a < 3; ++a) {
      for (Index n = 1; n <= 3; ++n) {
        const double k = 2.0 * std::numbers::pi * static_cast<double>(n) / 3.0;
        const double eps = -2.0 * l.leg_hopping * std::cos(k) + l.gap();
        expected(b, a) += std::exp(Complex(0, k * static_cast<double>(b - a) - eps * t)) / 3.0;
      }
    }
  }
  const PropagatorMatrix u = biortho_propagator(net, modes, dimer_mode(+1), t);
  CHECK(max_abs(u.u - expected) < 1e-13);
  const PropagatorMatrix d = direct_propagator(net, modes, dimer_mode(+1), t);
  CHECK(max_abs(d.u - expected) < 1e-12);
}

TEST_CASE("direct_propagator is unitary on random networks") {
  Rng rng(45);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = uniform_index(rng, 2, 8), nd = uniform_index(rng, 2, 4);
    const NetworkSpec net = random_network(rng, n, nd);
    const BiorthoModes modes = cluster_modes_numeric(net.cluster);
    const double t = uniform(rng, 0.0, 10.0) / norm1(assemble_hamiltonian(net));
    for (Index s = 0; s < nd; ++s) {
      const PropagatorMatrix direct = direct_propagator(net, modes, s, t);
      const PropagatorMatrix closed = biortho_propagator(net, modes, s, t);
      CHECK(direct.unitarity_defect() < 1e-8);
      CHECK(closed.unitarity_defect() < 1e-12);
      CHECK(max_abs(direct.u - closed.u) < 1e-9);
    }
    const PropagatorMatrix rk = direct_propagator(net, modes, 0, t, PropagationMethod::Rk4);
    CHECK(rk.unitarity_defect() < 1e-8);
  }
}

TEST_CASE("norm_series sums the legs") {
  const LadderSpec l{20, 0.10, 0.05, 1.0};
  const NetworkSpec net = build_ladder(l);
  Rng rng(46);
  const auto r = evolve(net, StateVector(random_unit_vector(rng, 40), 2), uniform_grid(5.0, 6), EvolutionMethod::Expm);
  const NormSeries s = norm_series(r);
  for (std::size_t i = 0; i < s.total.size(); ++i) {
    CHECK(s.leg1[i] + s.leg2[i] == doctest::Approx(s.total[i]).epsilon(1e-14));
    CHECK(s.total[i] == doctest::Approx(r.dirac_norm[i]).epsilon(1e-14));
  }
}
