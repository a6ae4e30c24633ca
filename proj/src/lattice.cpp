#include "phnet/lattice.hpp"

#include "phnet/error.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <string>
#include <utility>

namespace phnet {

double LadderSpec::theta() const { return std::asin(gamma / rung_hopping); }

double LadderSpec::gap() const {
  return std::sqrt((rung_hopping - gamma) * (rung_hopping + gamma));
}

double LadderSpec::period() const { return std::numbers::pi / gap(); }

void validate_ladder(const LadderSpec& spec) {
  if (!std::isfinite(spec.rung_hopping) || !std::isfinite(spec.gamma) || !std::isfinite(spec.leg_hopping)) {
    throw Error(ErrorKind::InvalidValue, "ladder parameters must be finite");
  }
  if (spec.rungs < 2) throw Error(ErrorKind::InvalidValue, "ladder needs N >= 2 rungs");
  if (!(spec.rung_hopping > 0.0)) throw Error(ErrorKind::InvalidValue, "rung hopping J must be > 0");
  if (spec.gamma < 0.0) throw Error(ErrorKind::InvalidValue, "gamma must be >= 0");
  if (spec.gamma >= spec.rung_hopping) {
    throw Error(ErrorKind::ExceptionalPoint,
                "gamma = " + std::to_string(spec.gamma) + " >= J = " + std::to_string(spec.rung_hopping) +
                    ": theta = arcsin(gamma/J) is undefined and the dimer is defective");
  }
}

NetworkSpec build_ladder(const LadderSpec& spec) {
  validate_ladder(spec);
  NetworkSpec net;
  net.cluster.hopping.resize(2, 2);
  net.cluster.hopping << Complex(0.0, spec.gamma), -spec.rung_hopping, -spec.rung_hopping,
      Complex(0.0, -spec.gamma);
  net.scale.assign(static_cast<std::size_t>(spec.rungs), 1.0);

  const Complex kappa(-spec.leg_hopping, 0.0);
  const Index n = spec.rungs;
  if (n == 2) {
    // The ring links 1-2 and 2-1 land on the same pair.
    net.couplings.push_back({0, 1, 2.0 * kappa});
    return net;
  }
  for (Index a = 0; a + 1 < n; ++a) net.couplings.push_back({a, a + 1, kappa});
  net.couplings.push_back({0, n - 1, kappa});
  return net;
}

ValidationReport validate_network(const NetworkSpec& spec) {
  const Index nd = spec.cluster.hopping.rows();
  if (nd < 1 || spec.cluster.hopping.cols() != nd) {
    throw Error(ErrorKind::InvalidValue, "cluster hopping matrix must be square with N_d >= 1");
  }
  if (!spec.cluster.hopping.allFinite()) throw Error(ErrorKind::InvalidValue, "cluster hopping has non-finite entries");
  if (spec.scale.empty()) throw Error(ErrorKind::InvalidValue, "network needs at least one cluster");
  for (std::size_t a = 0; a < spec.scale.size(); ++a) {
    if (!std::isfinite(spec.scale[a])) {
      throw Error(ErrorKind::InvalidValue, "scale factor lambda_" + std::to_string(a + 1) + " is not finite");
    }
  }

  const Index n = spec.cluster_count();
  std::set<std::pair<Index, Index>> seen;
  for (const auto& c : spec.couplings) {
    const std::string pair = "(" + std::to_string(c.alpha + 1) + ", " + std::to_string(c.beta + 1) + ")";
    if (c.alpha < 0 || c.beta >= n || !(c.alpha < c.beta)) {
      throw Error(ErrorKind::MalformedCoupling, "coupling " + pair + " violates 1 <= alpha < beta <= " +
                                                    std::to_string(n));
    }
    if (!seen.emplace(c.alpha, c.beta).second) {
      throw Error(ErrorKind::MalformedCoupling, "duplicate coupling " + pair);
    }
    if (!std::isfinite(c.kappa.real()) || !std::isfinite(c.kappa.imag())) {
      throw Error(ErrorKind::InvalidValue, "coupling " + pair + " is not finite");
    }
  }

  const auto& j = spec.cluster.hopping;
  const double scale = std::max(norm1(j), 1e-300);
  return {n, nd, static_cast<Index>(spec.couplings.size()), norm1(j - j.adjoint()) <= 1e-12 * scale};
}

ComplexMatrix assemble_hamiltonian(const NetworkSpec& spec) {
  validate_network(spec);
  const Index nd = spec.cluster_dim();
  const Index dim = spec.dim();
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  for (Index a = 0; a < spec.cluster_count(); ++a) {
    h.block(a * nd, a * nd, nd, nd) = spec.scale[static_cast<std::size_t>(a)] * spec.cluster.hopping;
  }
  for (const auto& c : spec.couplings) {
    for (Index l = 0; l < nd; ++l) {
      h(c.alpha * nd + l, c.beta * nd + l) += c.kappa;
      h(c.beta * nd + l, c.alpha * nd + l) += std::conj(c.kappa);
    }
  }
  return h;
}

NetworkOperator::NetworkOperator(NetworkSpec spec) : spec_(std::move(spec)) {
  validate_network(spec_);
  const RealVector cluster_cols = spec_.cluster.hopping.cwiseAbs().colwise().sum().transpose();
  RealVector coupling_sum = RealVector::Zero(spec_.cluster_count());
  for (const auto& c : spec_.couplings) {
    coupling_sum[c.alpha] += std::abs(c.kappa);
    coupling_sum[c.beta] += std::abs(c.kappa);
  }
  for (Index a = 0; a < spec_.cluster_count(); ++a) {
    const double cols = std::abs(spec_.scale[static_cast<std::size_t>(a)]) * cluster_cols.maxCoeff();
    norm_ = std::max(norm_, cols + coupling_sum[a]);
  }
}

void NetworkOperator::apply(const ComplexMatrix& in, ComplexMatrix& out) const {
  const Index nd = spec_.cluster_dim();
  const Index n = spec_.cluster_count();
  const Complex* j = spec_.cluster.hopping.data();
  out.resize(in.rows(), in.cols());
  for (Index col = 0; col < in.cols(); ++col) {
    // Raw loops: the blocks are tiny and per-block Eigen expressions cost more
    // than the arithmetic.
    const Complex* x = in.col(col).data();
    Complex* y = out.col(col).data();
    for (Index a = 0; a < n; ++a) {
      const double lambda = spec_.scale[static_cast<std::size_t>(a)];
      const Complex* xa = x + a * nd;
      Complex* ya = y + a * nd;
      for (Index l = 0; l < nd; ++l) {
        Complex acc = 0.0;
        for (Index m = 0; m < nd; ++m) acc += j[l + m * nd] * xa[m];
        ya[l] = lambda * acc;
      }
    }
    for (const auto& c : spec_.couplings) {
      const Complex k = c.kappa, kc = std::conj(c.kappa);
      const Complex* xa = x + c.alpha * nd;
      const Complex* xb = x + c.beta * nd;
      Complex* ya = y + c.alpha * nd;
      Complex* yb = y + c.beta * nd;
      for (Index l = 0; l < nd; ++l) {
        ya[l] += k * xb[l];
        yb[l] += kc * xa[l];
      }
    }
  }
}

}  // namespace phnet
