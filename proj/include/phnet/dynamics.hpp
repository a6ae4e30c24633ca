#pragma once

// Time evolution of network states and the Dirac-norm observables measured
// on them.

#include "phnet/biortho.hpp"
#include "phnet/lattice.hpp"
#include "phnet/numeric.hpp"

#include <optional>
#include <vector>

namespace phnet {

enum class EvolutionMethod { Rk4, Expm, Spectral };

/// Site probabilities |psi_{(alpha, l)}|^2 stored as N x N_d.
using SiteProbabilities = Eigen::MatrixXd;

struct EvolutionResult {
  std::vector<double> times;
  std::vector<StateVector> states;
  std::vector<double> dirac_norm;
  std::vector<SiteProbabilities> profiles;
};

struct EvolveOptions {
  /// RK4 step; defaults to default_rk4_step(|H|_1, t_grid.back()).
  std::optional<double> dt;
  /// Modes for the spectral path; computed numerically from the cluster when absent.
  std::optional<BiorthoModes> modes;
};

/// Uniform grid of `samples` points over [0, t_max].
std::vector<double> uniform_grid(double t_max, Index samples);

inline constexpr Index kDefaultSamples = 200;

EvolutionResult evolve(const NetworkSpec& spec, const StateVector& psi0, const std::vector<double>& t_grid,
                       EvolutionMethod method, const EvolveOptions& options = {});

double dirac_norm(const StateVector& psi);

SiteProbabilities site_probabilities(const StateVector& psi);

struct LegProfiles {
  RealVector leg1;  // P_1(j), j = 0..N-1
  RealVector leg2;
};

/// Requires N_d = 2 (WrongShape otherwise).
LegProfiles site_profile(const StateVector& psi, const NetworkSpec& spec);

struct PropagatorMatrix {
  ComplexMatrix u;  // U_{beta alpha}(t)

  /// |U^H U - I| in the induced infinity norm.
  double unitarity_defect() const;
};

/// exp(-i h_sigma t) from the Hermitian mode block.
PropagatorMatrix biortho_propagator(const NetworkSpec& spec, const BiorthoModes& modes, Index sigma, double t);

/// The same matrix built by evolving lifted single-cluster states with the
/// full non-Hermitian H and projecting back: U_{beta alpha} =
/// <g_{beta sigma}| exp(-i H t) |f_{alpha sigma}>.
PropagatorMatrix direct_propagator(const NetworkSpec& spec, const BiorthoModes& modes, Index sigma, double t,
                                   PropagationMethod method = PropagationMethod::Expm,
                                   std::optional<double> dt = std::nullopt);

struct NormSeries {
  std::vector<double> leg1;
  std::vector<double> leg2;
  std::vector<double> total;
};

NormSeries norm_series(const EvolutionResult& result);

}  // namespace phnet
