#pragma once

// Dense complex linear algebra, small-matrix eigensolvers and the two
// propagators (RK4, scaling-and-squaring exponential) used by everything
// above it.

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace phnet {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Operator 1-norm (maximum absolute column sum). This is the norm behind
/// every relative tolerance in the library.
double norm1(const ComplexMatrix& m);

bool all_finite(const ComplexMatrix& m);

/// Single-particle amplitudes on a network of `cluster_count` clusters with
/// `cluster_dim` sites each. Site (alpha, l) lives at alpha * cluster_dim + l
/// (zero-based).
class StateVector {
 public:
  StateVector() = default;
  StateVector(ComplexVector amplitudes, Index cluster_dim);

  static StateVector zero(Index cluster_count, Index cluster_dim);

  Index dim() const noexcept { return amplitudes_.size(); }
  Index cluster_dim() const noexcept { return cluster_dim_; }
  Index cluster_count() const noexcept { return cluster_dim_ == 0 ? 0 : dim() / cluster_dim_; }

  Index flat_index(Index alpha, Index l) const noexcept { return alpha * cluster_dim_ + l; }
  Complex operator()(Index alpha, Index l) const { return amplitudes_[flat_index(alpha, l)]; }

  const ComplexVector& amplitudes() const noexcept { return amplitudes_; }

 private:
  ComplexVector amplitudes_;
  Index cluster_dim_ = 1;
};

struct EigenPair {
  Complex eigenvalue;
  ComplexVector right;  // M v = lambda v, unit 2-norm
  ComplexVector left;   // M^H w = conj(lambda) w, scaled so that w^H v = 1
};

inline constexpr Index kMaxSmallDim = 32;
inline constexpr double kDefectTolerance = 1e-6;

/// All eigenpairs of a general complex matrix of dimension <= 32, sorted by
/// ascending real part then imaginary part. Throws Defective when some
/// eigenvalue has |w^H v| < tol * |v| |w| for unit-normalised v, w, which is
/// how an exceptional point shows up numerically.
std::vector<EigenPair> eig_general_small(const ComplexMatrix& m, double tol = kDefectTolerance);

struct HermitianEigen {
  RealVector values;     // ascending
  ComplexMatrix vectors;  // columns, unitary
};

HermitianEigen eig_hermitian(const ComplexMatrix& m);

/// exp(a) by scaling and squaring with the [13/13] Pade approximant.
ComplexMatrix expm(const ComplexMatrix& a);

/// A linear map applied to a block of column vectors. Lets RK4 run on the
/// block-sparse network Hamiltonian without assembling it.
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;
  virtual Index dim() const = 0;
  virtual double norm1() const = 0;
  /// out = H * in; `out` is resized by the callee.
  virtual void apply(const ComplexMatrix& in, ComplexMatrix& out) const = 0;
};

class DenseOperator final : public LinearOperator {
 public:
  explicit DenseOperator(const ComplexMatrix& h);
  Index dim() const override { return h_.rows(); }
  double norm1() const override { return norm_; }
  void apply(const ComplexMatrix& in, ComplexMatrix& out) const override;

 private:
  const ComplexMatrix& h_;
  double norm_;
};

enum class PropagationMethod { Rk4, Expm };

inline constexpr double kMaxRk4Step = 0.5;   // hard limit on |H|_1 * dt
inline constexpr double kRk4StepBudget = 0.05;  // default ceiling on |H|_1 * dt

/// Default RK4 step for a run of length `horizon`: at most 0.05 / |H|_1, and
/// small enough that the accumulated phase error t |H| (|H| dt)^4 / 120 stays
/// below 1e-10.
double default_rk4_step(double h_norm1, double horizon);

/// psi(t) = exp(-i H t) psi0 by classical RK4 with steps no longer than dt.
/// Columns of psi0 are propagated independently.
ComplexMatrix rk4_propagate(const LinearOperator& h, const ComplexMatrix& psi0, double t, double dt);

ComplexMatrix propagate(const ComplexMatrix& h, const ComplexMatrix& psi0, double t,
                        PropagationMethod method, double dt);

StateVector propagate(const ComplexMatrix& h, const StateVector& psi0, double t,
                      PropagationMethod method, double dt);

}  // namespace phnet
