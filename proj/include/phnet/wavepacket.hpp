#pragma once

// Gaussian wavepackets on the PT-symmetric ladder and closed-form
// predictions for their Dirac norms, breathing and translation.

#include "phnet/biortho.hpp"
#include "phnet/lattice.hpp"
#include "phnet/numeric.hpp"

namespace phnet {

/// Two-band dispersion -2 kappa cos k + sigma Delta.
double dispersion(double k, double kappa, double gap, int sigma);

/// Reduce an angle to (-pi, pi].
double wrap_angle(double x);

/// Packet A rides the upper band (sigma = +), packet B the lower band.
struct GaussianSpec {
  Index center_a = 1;  // N_A, 1-based rung
  Index center_b = 1;  // N_B
  double phi_a = 0.0;
  double phi_b = 0.0;
  double rho = 0.05;
};

void validate_gaussian(const GaussianSpec& spec, Index rungs);

/// Band amplitudes on k_n = 2 pi n / N, n = 1..N (stored at n - 1).
struct KSpaceCoeffs {
  ComplexVector plus;
  ComplexVector minus;

  Index size() const noexcept { return plus.size(); }
  double total_weight() const { return plus.squaredNorm() + minus.squaredNorm(); }
};

double momentum(Index n, Index rungs);

/// Normalisation Omega of the two-packet state: the exact discrete sum
/// sum_k [exp(-(k - phi_A)^2 / rho^2) + exp(-(k - phi_B)^2 / rho^2)].
double gaussian_normalization(const GaussianSpec& spec, Index rungs);

KSpaceCoeffs gaussian_kspace(const GaussianSpec& spec, const LadderSpec& ladder);

/// Site state sum_{k, sigma} f_{k sigma} (1/sqrt N) sum_j e^{ikj} f_sigma on rung j.
/// Needs the analytic dimer modes (theta set).
StateVector to_site_state(const KSpaceCoeffs& coeffs, const BiorthoModes& modes);

/// Inverse of to_site_state for any ladder state.
KSpaceCoeffs to_kspace(const StateVector& psi, const BiorthoModes& modes);

/// sec(theta) + i tan(theta) sum_{k,sigma} sigma conj(f_{k,-sigma}) f_{k,sigma} e^{-i sigma 2 pi t / T_D}.
/// Exact for the ladder; the returned value drops an imaginary part that is
/// zero up to roundoff.
double predict_norm_exact(const KSpaceCoeffs& coeffs, double theta, double gap, double t);

inline constexpr double kSeparationThreshold = 1e-12;

/// Broad-packet estimate: sec(theta) + s sin(2 pi t / T_D - phi_AB) tan(theta) with
/// s = exp(-(phi_A - phi_B)^2 / (4 rho^2)) exp(-rho^2 (N_B - N_A)^2 / 4); s below
/// 1e-12 counts as fully separated packets.
double predict_norm_gaussian(const GaussianSpec& spec, double theta, double gap, double t);

/// Overlap factor s used by predict_norm_gaussian.
double gaussian_suppression(const GaussianSpec& spec);

struct BreathingPrediction {
  double leg1;   // P_1^s
  double leg2;   // P_2^s
  double total;  // P_T^s
  Complex g1;    // leg envelopes, |g_l|^2 = P_l^s
  Complex g2;
};

BreathingPrediction predict_breathing(double theta, double period, double t);

struct PacketCenters {
  double a;  // 1-based rung, in (0, N]
  double b;
};

/// Centers of the counter-propagating packets, N_A + 2 kappa t and N_B - 2 kappa t
/// on the ring. Requires phi_A = -phi_B = pi / 2.
PacketCenters predict_translation(const GaussianSpec& spec, const LadderSpec& ladder, double t);

struct PacketMoments {
  double center;  // 1-based rung on the ring, in (0, N]
  double width;   // standard deviation in rungs
};

/// Circular first and second moment of a density over the ring of N rungs.
PacketMoments measure_packet(const RealVector& density);

}  // namespace phnet
