#include "phnet/dynamics.hpp"

#include "phnet/error.hpp"

#include <cmath>
#include <string>

namespace phnet {

std::vector<double> uniform_grid(double t_max, Index samples) {
  if (samples < 1) throw Error(ErrorKind::InvalidValue, "sample count must be >= 1");
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw Error(ErrorKind::InvalidValue, "t_max must be >= 0");
  std::vector<double> grid(static_cast<std::size_t>(samples), 0.0);
  for (Index i = 1; i < samples; ++i) {
    grid[static_cast<std::size_t>(i)] = t_max * static_cast<double>(i) / static_cast<double>(samples - 1);
  }
  return grid;
}

double dirac_norm(const StateVector& psi) { return psi.amplitudes().squaredNorm(); }

SiteProbabilities site_probabilities(const StateVector& psi) {
  const Eigen::Map<const ComplexMatrix> cols(psi.amplitudes().data(), psi.cluster_dim(), psi.cluster_count());
  return cols.cwiseAbs2().transpose();
}

LegProfiles site_profile(const StateVector& psi, const NetworkSpec& spec) {
  if (spec.cluster_dim() != 2 || psi.cluster_dim() != 2) {
    throw Error(ErrorKind::WrongShape, "leg profiles need a ladder-shaped network (N_d = 2), got N_d = " +
                                           std::to_string(spec.cluster_dim()));
  }
  if (psi.dim() != spec.dim()) throw Error(ErrorKind::WrongShape, "state does not match the network");
  const SiteProbabilities p = site_probabilities(psi);
  return {p.col(0), p.col(1)};
}

namespace {

void check_grid(const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw Error(ErrorKind::InvalidValue, "time grid is empty");
  if (t_grid.front() != 0.0) throw Error(ErrorKind::InvalidValue, "time grid must start at 0");
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (!(t_grid[i] >= t_grid[i - 1]) || !std::isfinite(t_grid[i])) {
      throw Error(ErrorKind::InvalidValue, "time grid must be finite and ascending");
    }
  }
}

void record(EvolutionResult& out, double t, StateVector state) {
  out.times.push_back(t);
  out.dirac_norm.push_back(dirac_norm(state));
  out.profiles.push_back(site_probabilities(state));
  out.states.push_back(std::move(state));
}

BiorthoModes spectral_modes(const NetworkSpec& spec, const EvolveOptions& options) {
  if (options.modes) return *options.modes;
  try {
    return cluster_modes_numeric(spec.cluster);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Defective || e.kind() == ErrorKind::ComplexSpectrum) {
      throw Error(ErrorKind::SpectralUnavailable, std::string("cluster has no complete real mode basis: ") + e.what());
    }
    throw;
  }
}

}  // namespace

EvolutionResult evolve(const NetworkSpec& spec, const StateVector& psi0, const std::vector<double>& t_grid,
                       EvolutionMethod method, const EvolveOptions& options) {
  validate_network(spec);
  check_grid(t_grid);
  if (psi0.dim() != spec.dim() || psi0.cluster_dim() != spec.cluster_dim()) {
    throw Error(ErrorKind::WrongShape, "initial state dimension " + std::to_string(psi0.dim()) +
                                           " does not match network dimension " + std::to_string(spec.dim()));
  }

  EvolutionResult out;
  out.times.reserve(t_grid.size());
  record(out, 0.0, psi0);
  const Index nd = spec.cluster_dim();

  switch (method) {
    case EvolutionMethod::Rk4: {
      const NetworkOperator op(spec);
      const double dt = options.dt.value_or(default_rk4_step(op.norm1(), t_grid.back()));
      ComplexMatrix y = psi0.amplitudes();
      for (std::size_t i = 1; i < t_grid.size(); ++i) {
        y = rk4_propagate(op, y, t_grid[i] - t_grid[i - 1], dt);
        record(out, t_grid[i], StateVector(y.col(0), nd));
      }
      break;
    }
    case EvolutionMethod::Expm: {
      const ComplexMatrix h = assemble_hamiltonian(spec);
      ComplexMatrix step;
      double step_length = -1.0;
      ComplexVector y = psi0.amplitudes();
      for (std::size_t i = 1; i < t_grid.size(); ++i) {
        const double delta = t_grid[i] - t_grid[i - 1];
        if (std::abs(delta - step_length) > 1e-12 * std::abs(delta)) {
          step = expm(Complex(0.0, -delta) * h);
          step_length = delta;
        }
        y = step * y;
        if (!y.allFinite()) throw Error(ErrorKind::Overflow, "non-finite amplitudes in expm evolution");
        record(out, t_grid[i], StateVector(y, nd));
      }
      break;
    }
    case EvolutionMethod::Spectral: {
      const BiorthoModes modes = spectral_modes(spec, options);
      const ModeBlocks blocks = mode_block_hamiltonians(spec, modes);
      const ModeCoefficients c0 = project_biortho(spec, modes, psi0);
      std::vector<HermitianEigen> eig;
      std::vector<ComplexVector> rotated;
      for (Index s = 0; s < modes.dim(); ++s) {
        eig.push_back(eig_hermitian(blocks.blocks[static_cast<std::size_t>(s)]));
        rotated.push_back(eig.back().vectors.adjoint() * c0.col(s));
      }
      ModeCoefficients c(c0.rows(), c0.cols());
      for (std::size_t i = 1; i < t_grid.size(); ++i) {
        const double t = t_grid[i];
        for (Index s = 0; s < modes.dim(); ++s) {
          const auto& e = eig[static_cast<std::size_t>(s)];
          const ComplexVector phases =
              (Complex(0.0, -t) * e.values.cast<Complex>()).array().exp().matrix();
          c.col(s) = e.vectors * phases.cwiseProduct(rotated[static_cast<std::size_t>(s)]);
        }
        record(out, t, lift_modes(modes, c));
      }
      break;
    }
  }
  return out;
}

double PropagatorMatrix::unitarity_defect() const {
  const ComplexMatrix d = u.adjoint() * u - ComplexMatrix::Identity(u.cols(), u.cols());
  return d.cwiseAbs().rowwise().sum().maxCoeff();
}

PropagatorMatrix biortho_propagator(const NetworkSpec& spec, const BiorthoModes& modes, Index sigma, double t) {
  const ModeBlocks blocks = mode_block_hamiltonians(spec, modes);
  if (sigma < 0 || sigma >= modes.dim()) throw Error(ErrorKind::InvalidValue, "mode index out of range");
  const HermitianEigen e = eig_hermitian(blocks.blocks[static_cast<std::size_t>(sigma)]);
  const ComplexVector phases = (Complex(0.0, -t) * e.values.cast<Complex>()).array().exp().matrix();
  return {e.vectors * phases.asDiagonal() * e.vectors.adjoint()};
}

PropagatorMatrix direct_propagator(const NetworkSpec& spec, const BiorthoModes& modes, Index sigma, double t,
                                   PropagationMethod method, std::optional<double> dt) {
  validate_network(spec);
  if (sigma < 0 || sigma >= modes.dim()) throw Error(ErrorKind::InvalidValue, "mode index out of range");
  if (modes.dim() != spec.cluster_dim()) throw Error(ErrorKind::WrongShape, "modes do not match the cluster");
  const Index n = spec.cluster_count();
  const Index nd = spec.cluster_dim();

  // Column alpha: the lifted basis state f_sigma on cluster alpha.
  ComplexMatrix lifted = ComplexMatrix::Zero(n * nd, n);
  for (Index a = 0; a < n; ++a) lifted.block(a * nd, a, nd, 1) = modes.right.col(sigma);

  ComplexMatrix evolved;
  if (method == PropagationMethod::Rk4) {
    const NetworkOperator op(spec);
    evolved = rk4_propagate(op, lifted, t, dt.value_or(default_rk4_step(op.norm1(), t)));
  } else {
    evolved = propagate(assemble_hamiltonian(spec), lifted, t, PropagationMethod::Expm, 0.0);
  }

  ComplexMatrix u(n, n);
  for (Index a = 0; a < n; ++a) {
    u.col(a) = (modes.left.col(sigma).adjoint() *
                Eigen::Map<const ComplexMatrix>(evolved.col(a).data(), nd, n))
                   .transpose();
  }
  return {u};
}

NormSeries norm_series(const EvolutionResult& result) {
  NormSeries out;
  for (const auto& p : result.profiles) {
    if (p.cols() != 2) {
      throw Error(ErrorKind::WrongShape, "norm series need a ladder-shaped result (N_d = 2), got N_d = " +
                                             std::to_string(p.cols()));
    }
    out.leg1.push_back(p.col(0).sum());
    out.leg2.push_back(p.col(1).sum());
    out.total.push_back(out.leg1.back() + out.leg2.back());
  }
  return out;
}

}  // namespace phnet
