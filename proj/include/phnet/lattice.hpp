#pragma once

// Network descriptions: N isomorphic clusters sharing one hopping matrix,
// real per-cluster scale factors, and site-uniform Hermitian couplings
// between pairs of clusters.

#include "phnet/numeric.hpp"

#include <vector>

namespace phnet {

struct ClusterSpec {
  ComplexMatrix hopping;  // N_d x N_d, need not be Hermitian

  Index dim() const noexcept { return hopping.rows(); }
};

/// Coupling kappa * sum_l a^dag_{alpha,l} a_{beta,l} + h.c. between two
/// clusters. Indices are zero-based with alpha < beta.
struct Coupling {
  Index alpha = 0;
  Index beta = 0;
  Complex kappa{};
};

struct NetworkSpec {
  ClusterSpec cluster;
  std::vector<double> scale;  // lambda_alpha, one per cluster
  std::vector<Coupling> couplings;

  Index cluster_count() const noexcept { return static_cast<Index>(scale.size()); }
  Index cluster_dim() const noexcept { return cluster.dim(); }
  Index dim() const noexcept { return cluster_count() * cluster_dim(); }
};

/// Two-leg ladder: N rungs, each the dimer [[i gamma, -J], [-J, -i gamma]],
/// joined along both legs by -kappa with periodic boundary.
struct LadderSpec {
  Index rungs = 0;
  double rung_hopping = 0.0;  // J
  double gamma = 0.0;
  double leg_hopping = 0.0;  // kappa

  double theta() const;      // arcsin(gamma / J)
  double gap() const;        // Delta = sqrt(J^2 - gamma^2)
  double period() const;     // T_D = pi / Delta
};

/// Throws ExceptionalPoint for gamma >= J and InvalidValue for the other
/// structural violations (N < 2, J <= 0, gamma < 0, non-finite values).
void validate_ladder(const LadderSpec& spec);

NetworkSpec build_ladder(const LadderSpec& spec);

struct ValidationReport {
  Index cluster_count = 0;
  Index cluster_dim = 0;
  Index coupling_count = 0;
  bool cluster_hermitian = false;
};

ValidationReport validate_network(const NetworkSpec& spec);

ComplexMatrix assemble_hamiltonian(const NetworkSpec& spec);

/// Matrix-free network Hamiltonian: applies the cluster blocks and the
/// coupling identities directly.
class NetworkOperator final : public LinearOperator {
 public:
  explicit NetworkOperator(NetworkSpec spec);

  Index dim() const override { return spec_.dim(); }
  double norm1() const override { return norm_; }
  void apply(const ComplexMatrix& in, ComplexMatrix& out) const override;

  const NetworkSpec& spec() const noexcept { return spec_; }

 private:
  NetworkSpec spec_;
  double norm_ = 0.0;
};

}  // namespace phnet
