#pragma once

// Biorthogonal eigenmodes of a single (pseudo-Hermitian) cluster and the
// per-mode decomposition of the whole network built from them.

#include "phnet/lattice.hpp"
#include "phnet/numeric.hpp"

#include <optional>
#include <vector>

namespace phnet {

/// Right modes f_sigma (columns of `right`) and dual left modes g_sigma
/// (columns of `left`) with G^H F = I. Modes are ordered by ascending energy.
struct BiorthoModes {
  RealVector energies;
  ComplexMatrix right;
  ComplexMatrix left;
  std::optional<double> theta;  // set only by the analytic dimer construction

  Index dim() const noexcept { return energies.size(); }
};

/// Mode index of the dimer band sigma = -1 / +1 under ascending ordering.
constexpr Index dimer_mode(int sigma) noexcept { return sigma < 0 ? 0 : 1; }
constexpr int dimer_sigma(Index mode) noexcept { return mode == 0 ? -1 : +1; }

inline constexpr double kRealSpectrumTolerance = 1e-10;

/// Numeric modes of an arbitrary cluster. The spectrum must be real within
/// tol * |J|_1 (ComplexSpectrum otherwise).
///
/// Convention: |f_sigma| = |g_sigma| with g_sigma^H f_sigma = 1, and the
/// largest-magnitude component of f_sigma real and positive (first such index
/// when several tie to within 1e-9). Both rules are needed because the
/// Dirac-norm quantities below depend on the individual scaling of f.
BiorthoModes cluster_modes_numeric(const ClusterSpec& cluster, double tol = kRealSpectrumTolerance);

/// Closed-form modes of the dimer [[i gamma, -J], [-J, -i gamma]]:
/// f_sigma = (e^{i sigma theta/2}, -sigma e^{-i sigma theta/2}) / sqrt(2 cos theta),
/// g_sigma = conj(f_sigma), energies sigma * sqrt(J^2 - gamma^2).
BiorthoModes dimer_modes_analytic(double rung_hopping, double gamma);

/// Largest deviation of G^H F and F G^H from the identity (max-abs entry).
double biorthonormality_defect(const BiorthoModes& modes);

struct GramMatrices {
  ComplexMatrix right;  // D_f(s', s) = sum_l conj(f_{l s'}) f_{l s}
  ComplexMatrix left;   // D_g(s, s') = sum_l conj(g_{l s}) g_{l s'}
};

GramMatrices dirac_gram(const BiorthoModes& modes);

/// Delta_sigma = sum_l |f_{l sigma}|^2.
double metric_factor(const BiorthoModes& modes, Index sigma);

/// Projector f_sigma g_sigma^H; independent of the per-mode scaling freedom.
ComplexMatrix mode_projector(const BiorthoModes& modes, Index sigma);

struct ModeBlocks {
  std::vector<ComplexMatrix> blocks;  // one N x N Hermitian matrix per mode
};

/// h_sigma with diagonal lambda_alpha * eps_sigma and the couplings
/// kappa_{alpha beta} (conjugated below the diagonal).
ModeBlocks mode_block_hamiltonians(const NetworkSpec& spec, const BiorthoModes& modes);

/// sum_sigma h_sigma (x) f_sigma g_sigma^H, which equals the assembled H.
ComplexMatrix reconstruct_hamiltonian(const ModeBlocks& blocks, const BiorthoModes& modes);

/// Mode amplitudes c(alpha, sigma) for a whole network: N x N_d.
using ModeCoefficients = ComplexMatrix;

/// psi_{(alpha, l)} = c_alpha f_{l sigma}; throws NotNormalized unless
/// sum |c_alpha|^2 = 1 within 1e-10.
StateVector lift_mode_state(const NetworkSpec& spec, const BiorthoModes& modes, Index sigma,
                            const ComplexVector& c);

/// psi_{(alpha, l)} = sum_sigma f_{l sigma} c(alpha, sigma), no normalisation.
StateVector lift_modes(const BiorthoModes& modes, const ModeCoefficients& c);

/// c(alpha, sigma) = sum_l conj(g_{l sigma}) psi_{(alpha, l)}.
ModeCoefficients project_biortho(const NetworkSpec& spec, const BiorthoModes& modes, const StateVector& psi);

}  // namespace phnet
