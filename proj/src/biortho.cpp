#include "phnet/biortho.hpp"

#include "phnet/error.hpp"

#include <cmath>
#include <string>

namespace phnet {

namespace {

// Amplitudes of a network state as an N_d x N matrix, column alpha = cluster alpha.
Eigen::Map<const ComplexMatrix> as_cluster_columns(const StateVector& psi) {
  return {psi.amplitudes().data(), psi.cluster_dim(), psi.cluster_count()};
}

void require_mode(const BiorthoModes& modes, Index sigma) {
  if (sigma < 0 || sigma >= modes.dim()) {
    throw Error(ErrorKind::InvalidValue, "mode index " + std::to_string(sigma) + " out of range 0.." +
                                             std::to_string(modes.dim() - 1));
  }
}

void require_compatible(const NetworkSpec& spec, const BiorthoModes& modes) {
  if (spec.cluster_dim() != modes.dim()) {
    throw Error(ErrorKind::WrongShape, "modes of dimension " + std::to_string(modes.dim()) +
                                           " do not match cluster dimension " + std::to_string(spec.cluster_dim()));
  }
}

}  // namespace

BiorthoModes cluster_modes_numeric(const ClusterSpec& cluster, double tol) {
  const auto pairs = eig_general_small(cluster.hopping);
  const Index nd = cluster.dim();
  const double scale = std::max(norm1(cluster.hopping), 1e-300);

  BiorthoModes modes;
  modes.energies.resize(nd);
  modes.right.resize(nd, nd);
  modes.left.resize(nd, nd);
  for (Index s = 0; s < nd; ++s) {
    const auto& p = pairs[static_cast<std::size_t>(s)];
    if (std::abs(p.eigenvalue.imag()) > tol * scale) {
      throw Error(ErrorKind::ComplexSpectrum, "cluster eigenvalue " + std::to_string(p.eigenvalue.real()) +
                                                  (p.eigenvalue.imag() < 0 ? " - " : " + ") +
                                                  std::to_string(std::abs(p.eigenvalue.imag())) +
                                                  "i is not real; the cluster is not pseudo-Hermitian");
    }
    modes.energies[s] = p.eigenvalue.real();

    // p.right is unit and p.left^H p.right = 1; rescale f -> a v, g -> w / conj(a).
    const double vmax = p.right.cwiseAbs().maxCoeff();
    Index lead = 0;
    while (std::abs(p.right[lead]) < vmax * (1.0 - 1e-9)) ++lead;
    const Complex phase = std::conj(p.right[lead]) / std::abs(p.right[lead]);
    const Complex a = std::sqrt(p.left.norm() / p.right.norm()) * phase;
    modes.right.col(s) = a * p.right;
    modes.left.col(s) = p.left / std::conj(a);
  }
  return modes;
}

BiorthoModes dimer_modes_analytic(double rung_hopping, double gamma) {
  validate_ladder({2, rung_hopping, gamma, 0.0});
  const double theta = std::asin(gamma / rung_hopping);
  const double gap = std::sqrt((rung_hopping - gamma) * (rung_hopping + gamma));
  const double norm = 1.0 / std::sqrt(2.0 * std::cos(theta));

  BiorthoModes modes;
  modes.theta = theta;
  modes.energies.resize(2);
  modes.right.resize(2, 2);
  for (int sigma : {-1, +1}) {
    const Index s = dimer_mode(sigma);
    modes.energies[s] = sigma * gap;
    modes.right(0, s) = norm * std::polar(1.0, sigma * theta / 2.0);
    modes.right(1, s) = -static_cast<double>(sigma) * norm * std::polar(1.0, -sigma * theta / 2.0);
  }
  modes.left = modes.right.conjugate();
  return modes;
}

double biorthonormality_defect(const BiorthoModes& modes) {
  const Index nd = modes.dim();
  const ComplexMatrix id = ComplexMatrix::Identity(nd, nd);
  const double dual = (modes.left.adjoint() * modes.right - id).cwiseAbs().maxCoeff();
  const double complete = (modes.right * modes.left.adjoint() - id).cwiseAbs().maxCoeff();
  return std::max(dual, complete);
}

GramMatrices dirac_gram(const BiorthoModes& modes) {
  return {modes.right.adjoint() * modes.right, modes.left.adjoint() * modes.left};
}

double metric_factor(const BiorthoModes& modes, Index sigma) {
  require_mode(modes, sigma);
  return modes.right.col(sigma).squaredNorm();
}

ComplexMatrix mode_projector(const BiorthoModes& modes, Index sigma) {
  require_mode(modes, sigma);
  return modes.right.col(sigma) * modes.left.col(sigma).adjoint();
}

ModeBlocks mode_block_hamiltonians(const NetworkSpec& spec, const BiorthoModes& modes) {
  validate_network(spec);
  require_compatible(spec, modes);
  const Index n = spec.cluster_count();
  ModeBlocks out;
  out.blocks.reserve(static_cast<std::size_t>(modes.dim()));
  for (Index s = 0; s < modes.dim(); ++s) {
    ComplexMatrix h = ComplexMatrix::Zero(n, n);
    for (Index a = 0; a < n; ++a) h(a, a) = spec.scale[static_cast<std::size_t>(a)] * modes.energies[s];
    for (const auto& c : spec.couplings) {
      h(c.alpha, c.beta) += c.kappa;
      h(c.beta, c.alpha) += std::conj(c.kappa);
    }
    out.blocks.push_back(std::move(h));
  }
  return out;
}

ComplexMatrix reconstruct_hamiltonian(const ModeBlocks& blocks, const BiorthoModes& modes) {
  if (blocks.blocks.empty()) throw Error(ErrorKind::EmptyData, "no mode blocks");
  const Index n = blocks.blocks.front().rows();
  const Index nd = modes.dim();
  ComplexMatrix h = ComplexMatrix::Zero(n * nd, n * nd);
  for (Index s = 0; s < nd; ++s) {
    const ComplexMatrix proj = mode_projector(modes, s);
    const auto& hs = blocks.blocks[static_cast<std::size_t>(s)];
    for (Index a = 0; a < n; ++a) {
      for (Index b = 0; b < n; ++b) {
        if (hs(a, b) != Complex{}) h.block(a * nd, b * nd, nd, nd) += hs(a, b) * proj;
      }
    }
  }
  return h;
}

StateVector lift_mode_state(const NetworkSpec& spec, const BiorthoModes& modes, Index sigma,
                            const ComplexVector& c) {
  require_compatible(spec, modes);
  require_mode(modes, sigma);
  if (c.size() != spec.cluster_count()) {
    throw Error(ErrorKind::WrongShape, "expected " + std::to_string(spec.cluster_count()) +
                                           " cluster coefficients, got " + std::to_string(c.size()));
  }
  const double norm = c.squaredNorm();
  if (std::abs(norm - 1.0) > 1e-10) {
    throw Error(ErrorKind::NotNormalized, "sum |c_alpha|^2 = " + std::to_string(norm) + ", expected 1");
  }
  ModeCoefficients coeffs = ModeCoefficients::Zero(spec.cluster_count(), modes.dim());
  coeffs.col(sigma) = c;
  return lift_modes(modes, coeffs);
}

StateVector lift_modes(const BiorthoModes& modes, const ModeCoefficients& c) {
  if (c.cols() != modes.dim()) {
    throw Error(ErrorKind::WrongShape, "coefficient matrix has " + std::to_string(c.cols()) +
                                           " mode columns, expected " + std::to_string(modes.dim()));
  }
  const Index nd = modes.dim();
  const Index n = c.rows();
  ComplexVector amps(n * nd);
  Eigen::Map<ComplexMatrix>(amps.data(), nd, n).noalias() = modes.right * c.transpose();
  return StateVector(std::move(amps), nd);
}

ModeCoefficients project_biortho(const NetworkSpec& spec, const BiorthoModes& modes, const StateVector& psi) {
  require_compatible(spec, modes);
  if (psi.dim() != spec.dim() || psi.cluster_dim() != spec.cluster_dim()) {
    throw Error(ErrorKind::WrongShape, "state dimension " + std::to_string(psi.dim()) +
                                           " does not match network dimension " + std::to_string(spec.dim()));
  }
  return (modes.left.adjoint() * as_cluster_columns(psi)).transpose();
}

}  // namespace phnet
