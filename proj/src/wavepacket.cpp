#include "phnet/wavepacket.hpp"

#include "phnet/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace phnet {

namespace {

constexpr double kPi = std::numbers::pi;

// e^{2 pi i m / N} for m = 0..N-1.
ComplexVector roots_of_unity(Index rungs) {
  ComplexVector w(rungs);
  for (Index m = 0; m < rungs; ++m) w[m] = std::polar(1.0, 2.0 * kPi * static_cast<double>(m) / rungs);
  return w;
}

double ring_position(double x, Index rungs) {
  const auto n = static_cast<double>(rungs);
  double r = std::fmod(x, n);
  if (r <= 0.0) r += n;
  return r;
}

}  // namespace

double dispersion(double k, double kappa, double gap, int sigma) {
  return -2.0 * kappa * std::cos(k) + (sigma < 0 ? -gap : gap);
}

double wrap_angle(double x) {
  double r = std::remainder(x, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

double momentum(Index n, Index rungs) { return 2.0 * kPi * static_cast<double>(n) / static_cast<double>(rungs); }

void validate_gaussian(const GaussianSpec& spec, Index rungs) {
  if (spec.center_a < 1 || spec.center_a > rungs || spec.center_b < 1 || spec.center_b > rungs) {
    throw Error(ErrorKind::InvalidValue, "packet centers must lie in [1, " + std::to_string(rungs) + "]");
  }
  if (!(spec.rho > 0.0) || !std::isfinite(spec.rho)) throw Error(ErrorKind::InvalidValue, "rho must be > 0");
  if (!std::isfinite(spec.phi_a) || !std::isfinite(spec.phi_b)) {
    throw Error(ErrorKind::InvalidValue, "packet momenta must be finite");
  }
}

double gaussian_normalization(const GaussianSpec& spec, Index rungs) {
  double sum = 0.0;
  for (Index n = 1; n <= rungs; ++n) {
    const double k = momentum(n, rungs);
    const double da = wrap_angle(k - spec.phi_a);
    const double db = wrap_angle(k - spec.phi_b);
    sum += std::exp(-da * da / (spec.rho * spec.rho)) + std::exp(-db * db / (spec.rho * spec.rho));
  }
  return sum;
}

KSpaceCoeffs gaussian_kspace(const GaussianSpec& spec, const LadderSpec& ladder) {
  validate_ladder(ladder);
  validate_gaussian(spec, ladder.rungs);
  const Index n_rungs = ladder.rungs;
  const double scale = 1.0 / std::sqrt(gaussian_normalization(spec, n_rungs));
  const double two_rho2 = 2.0 * spec.rho * spec.rho;

  KSpaceCoeffs out{ComplexVector(n_rungs), ComplexVector(n_rungs)};
  for (Index n = 1; n <= n_rungs; ++n) {
    const double k = momentum(n, n_rungs);
    const double da = wrap_angle(k - spec.phi_a);
    const double db = wrap_angle(k - spec.phi_b);
    out.plus[n - 1] = scale * std::exp(-da * da / two_rho2) *
                      std::polar(1.0, -da * static_cast<double>(spec.center_a));
    out.minus[n - 1] = scale * std::exp(-db * db / two_rho2) *
                       std::polar(1.0, -db * static_cast<double>(spec.center_b));
  }
  return out;
}

StateVector to_site_state(const KSpaceCoeffs& coeffs, const BiorthoModes& modes) {
  if (!modes.theta || modes.dim() != 2) {
    throw Error(ErrorKind::InvalidValue, "k-space states need the analytic dimer modes");
  }
  if (coeffs.minus.size() != coeffs.plus.size() || coeffs.size() < 1) {
    throw Error(ErrorKind::WrongShape, "band coefficient vectors differ in length");
  }
  const Index rungs = coeffs.size();
  const ComplexVector w = roots_of_unity(rungs);
  const double norm = 1.0 / std::sqrt(static_cast<double>(rungs));

  ModeCoefficients c = ModeCoefficients::Zero(rungs, 2);
  for (Index j = 1; j <= rungs; ++j) {
    Complex plus{}, minus{};
    for (Index n = 1; n <= rungs; ++n) {
      const Complex phase = w[(n * j) % rungs];
      plus += coeffs.plus[n - 1] * phase;
      minus += coeffs.minus[n - 1] * phase;
    }
    c(j - 1, dimer_mode(+1)) = norm * plus;
    c(j - 1, dimer_mode(-1)) = norm * minus;
  }
  return lift_modes(modes, c);
}

KSpaceCoeffs to_kspace(const StateVector& psi, const BiorthoModes& modes) {
  if (!modes.theta || modes.dim() != 2 || psi.cluster_dim() != 2) {
    throw Error(ErrorKind::InvalidValue, "k-space states need the analytic dimer modes on a ladder");
  }
  const Index rungs = psi.cluster_count();
  const Eigen::Map<const ComplexMatrix> cols(psi.amplitudes().data(), 2, rungs);
  const ModeCoefficients c = (modes.left.adjoint() * cols).transpose();

  const ComplexVector w = roots_of_unity(rungs);
  const double norm = 1.0 / std::sqrt(static_cast<double>(rungs));
  KSpaceCoeffs out{ComplexVector::Zero(rungs), ComplexVector::Zero(rungs)};
  for (Index n = 1; n <= rungs; ++n) {
    Complex plus{}, minus{};
    for (Index j = 1; j <= rungs; ++j) {
      const Complex phase = std::conj(w[(n * j) % rungs]);
      plus += c(j - 1, dimer_mode(+1)) * phase;
      minus += c(j - 1, dimer_mode(-1)) * phase;
    }
    out.plus[n - 1] = norm * plus;
    out.minus[n - 1] = norm * minus;
  }
  return out;
}

double predict_norm_exact(const KSpaceCoeffs& coeffs, double theta, double gap, double t) {
  // sigma = + contributes z e^{-2i gap t}, sigma = - contributes -conj(z) e^{+2i gap t}.
  const Complex z = coeffs.minus.dot(coeffs.plus);
  const Complex rot = std::polar(1.0, -2.0 * gap * t);
  const Complex cross = z * rot - std::conj(z * rot);
  const Complex value = 1.0 / std::cos(theta) + kI * std::tan(theta) * cross;
  return value.real();
}

double gaussian_suppression(const GaussianSpec& spec) {
  const double dphi = wrap_angle(spec.phi_a - spec.phi_b);
  const double dn = static_cast<double>(spec.center_b - spec.center_a);
  return std::exp(-dphi * dphi / (4.0 * spec.rho * spec.rho)) * std::exp(-spec.rho * spec.rho * dn * dn / 4.0);
}

double predict_norm_gaussian(const GaussianSpec& spec, double theta, double gap, double t) {
  const double base = 1.0 / std::cos(theta);
  const double s = gaussian_suppression(spec);
  if (s < kSeparationThreshold) return base;
  const double dphi = wrap_angle(spec.phi_a - spec.phi_b);
  const double phase_ab = static_cast<double>(spec.center_a + spec.center_b) * dphi / 2.0;
  const double period = kPi / gap;
  return base + s * std::sin(2.0 * kPi * t / period - phase_ab) * std::tan(theta);
}

BreathingPrediction predict_breathing(double theta, double period, double t) {
  const double phase = kPi * t / period;
  const double amp = 1.0 / std::sqrt(std::cos(theta));
  BreathingPrediction p{};
  p.g1 = Complex(amp * std::cos(phase - theta / 2.0), 0.0);
  p.g2 = Complex(0.0, amp * std::sin(phase + theta / 2.0));
  p.leg1 = std::norm(p.g1);
  p.leg2 = std::norm(p.g2);
  p.total = 1.0 / std::cos(theta) + std::tan(theta) * std::sin(2.0 * phase);
  return p;
}

PacketCenters predict_translation(const GaussianSpec& spec, const LadderSpec& ladder, double t) {
  if (std::abs(wrap_angle(spec.phi_a - kPi / 2.0)) > 1e-9 || std::abs(wrap_angle(spec.phi_b + kPi / 2.0)) > 1e-9) {
    throw Error(ErrorKind::InvalidValue, "translation prediction needs phi_A = -phi_B = pi/2");
  }
  const double shift = 2.0 * ladder.leg_hopping * t;
  return {ring_position(static_cast<double>(spec.center_a) + shift, ladder.rungs),
          ring_position(static_cast<double>(spec.center_b) - shift, ladder.rungs)};
}

PacketMoments measure_packet(const RealVector& density) {
  const Index rungs = density.size();
  if (rungs < 1) throw Error(ErrorKind::EmptyData, "empty density");
  const double total = density.sum();
  if (!(total > 0.0)) throw Error(ErrorKind::InvalidValue, "density has no weight");
  const auto n = static_cast<double>(rungs);

  Complex acc{};
  for (Index j = 1; j <= rungs; ++j) acc += density[j - 1] * std::polar(1.0, 2.0 * kPi * static_cast<double>(j) / n);
  const double center = ring_position(std::arg(acc) * n / (2.0 * kPi), rungs);

  double var = 0.0;
  for (Index j = 1; j <= rungs; ++j) {
    const double d = std::remainder(static_cast<double>(j) - center, n);
    var += density[j - 1] * d * d;
  }
  return {center, std::sqrt(var / total)};
}

}  // namespace phnet
