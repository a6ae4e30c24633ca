#include "phnet/numeric.hpp"

#include "phnet/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace phnet {

double norm1(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

bool all_finite(const ComplexMatrix& m) { return m.allFinite(); }

StateVector::StateVector(ComplexVector amplitudes, Index cluster_dim)
    : amplitudes_(std::move(amplitudes)), cluster_dim_(cluster_dim) {
  if (cluster_dim_ < 1 || amplitudes_.size() % cluster_dim_ != 0) {
    throw Error(ErrorKind::InvalidValue, "state dimension " + std::to_string(amplitudes_.size()) +
                                             " is not a multiple of cluster dimension " +
                                             std::to_string(cluster_dim_));
  }
  if (!amplitudes_.allFinite()) throw Error(ErrorKind::Overflow, "non-finite state amplitude");
}

StateVector StateVector::zero(Index cluster_count, Index cluster_dim) {
  return StateVector(ComplexVector::Zero(cluster_count * cluster_dim), cluster_dim);
}

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::InvalidValue, std::string(what) + ": matrix is " + std::to_string(m.rows()) +
                                             "x" + std::to_string(m.cols()) + ", expected square");
  }
}

bool eigen_less(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

std::vector<EigenPair> eig_general_small(const ComplexMatrix& m, double tol) {
  require_square(m, "eig_general_small");
  const Index n = m.rows();
  if (n == 0 || n > kMaxSmallDim) {
    throw Error(ErrorKind::InvalidValue,
                "eig_general_small supports dimensions 1.." + std::to_string(kMaxSmallDim) + ", got " +
                    std::to_string(n));
  }
  if (!m.allFinite()) throw Error(ErrorKind::InvalidValue, "matrix has non-finite entries");

  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, true);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NonConvergence, "complex Schur iteration did not converge");
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  const auto& values = solver.eigenvalues();
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return eigen_less(values[a], values[b]); });

  ComplexMatrix right(n, n);
  for (Index c = 0; c < n; ++c) right.col(c) = solver.eigenvectors().col(order[c]).normalized();

  // Rows of V^{-1} are the left eigenvectors dual to the columns of V.
  Eigen::PartialPivLU<ComplexMatrix> lu(right);
  const double rcond = lu.rcond();
  if (!(rcond > 0.0) || !std::isfinite(rcond)) {
    throw Error(ErrorKind::Defective, "eigenvector matrix is singular (exceptional point)");
  }
  const ComplexMatrix left = lu.inverse().adjoint();
  if (!left.allFinite()) throw Error(ErrorKind::Defective, "left eigenvectors diverge (exceptional point)");

  std::vector<EigenPair> pairs;
  pairs.reserve(static_cast<std::size_t>(n));
  for (Index c = 0; c < n; ++c) {
    const ComplexVector v = right.col(c);
    const ComplexVector w = left.col(c);
    const double overlap = std::abs(w.dot(v)) / (v.norm() * w.norm());
    if (overlap < tol) {
      throw Error(ErrorKind::Defective, "left-right overlap " + std::to_string(overlap) +
                                            " below tolerance at eigenvalue index " + std::to_string(c) +
                                            " (exceptional point)");
    }
    pairs.push_back({values[order[c]], v, w});
  }
  return pairs;
}

HermitianEigen eig_hermitian(const ComplexMatrix& m) {
  require_square(m, "eig_hermitian");
  const double scale = std::max(norm1(m), 1e-300);
  const double defect = norm1(m - m.adjoint());
  if (defect > 1e-12 * scale) {
    throw Error(ErrorKind::NotHermitian,
                "|M - M^H|_1 = " + std::to_string(defect) + " exceeds 1e-12 |M|_1");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::NonConvergence, "Hermitian eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix expm(const ComplexMatrix& a) {
  require_square(a, "expm");
  const Index n = a.rows();
  if (n == 0) return a;

  // Higham (2005) degree-13 coefficients and the matching scaling threshold.
  static constexpr double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                 1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                 670442572800.0,      33522128640.0,       1323241920.0,
                                 40840800.0,          960960.0,            16380.0,
                                 182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;

  const double norm = norm1(a);
  if (norm == 0.0) return ComplexMatrix::Identity(n, n);
  int squarings = 0;
  if (norm > theta13) squarings = static_cast<int>(std::ceil(std::log2(norm / theta13)));
  const ComplexMatrix x = a * std::ldexp(1.0, -squarings);

  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix x2 = x * x;
  const ComplexMatrix x4 = x2 * x2;
  const ComplexMatrix x6 = x4 * x2;

  ComplexMatrix inner = b[13] * x6 + b[11] * x4 + b[9] * x2;
  ComplexMatrix u = x6 * inner;
  u += b[7] * x6 + b[5] * x4 + b[3] * x2 + b[1] * id;
  u = (x * u).eval();

  inner = b[12] * x6 + b[10] * x4 + b[8] * x2;
  ComplexMatrix v = x6 * inner;
  v += b[6] * x6 + b[4] * x4 + b[2] * x2 + b[0] * id;

  ComplexMatrix r = (v - u).partialPivLu().solve(v + u);
  for (int s = 0; s < squarings; ++s) r = (r * r).eval();
  return r;
}

DenseOperator::DenseOperator(const ComplexMatrix& h) : h_(h), norm_(phnet::norm1(h)) {
  require_square(h, "DenseOperator");
}

void DenseOperator::apply(const ComplexMatrix& in, ComplexMatrix& out) const { out.noalias() = h_ * in; }

double default_rk4_step(double h_norm1, double horizon) {
  if (!(h_norm1 > 0.0)) return horizon > 0.0 ? horizon : 1.0;
  double step = kRk4StepBudget / h_norm1;
  if (horizon > 0.0) {
    const double accuracy = std::pow(1.2e-8 / (horizon * h_norm1), 0.25) / h_norm1;
    step = std::min(step, accuracy);
  }
  return step;
}

ComplexMatrix rk4_propagate(const LinearOperator& h, const ComplexMatrix& psi0, double t, double dt) {
  if (psi0.rows() != h.dim()) {
    throw Error(ErrorKind::InvalidValue, "state dimension " + std::to_string(psi0.rows()) +
                                             " does not match operator dimension " + std::to_string(h.dim()));
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorKind::InvalidValue, "rk4 requires dt > 0");
  if (!(t >= 0.0) || !std::isfinite(t)) throw Error(ErrorKind::InvalidValue, "propagation time must be >= 0");
  if (h.norm1() * dt > kMaxRk4Step) {
    throw Error(ErrorKind::StepTooLarge, "|H|_1 * dt = " + std::to_string(h.norm1() * dt) + " exceeds 0.5");
  }
  if (t == 0.0) return psi0;

  const auto steps = static_cast<long>(std::ceil(t / dt * (1.0 - 1e-12)));
  const double step = t / static_cast<double>(std::max(steps, 1L));
  const Complex half = -kI * (0.5 * step);
  const Complex full = -kI * step;

  ComplexMatrix y = psi0;
  ComplexMatrix k1, k2, k3, k4, tmp;
  for (long s = 0; s < std::max(steps, 1L); ++s) {
    h.apply(y, k1);
    tmp = y + half * k1;
    h.apply(tmp, k2);
    tmp = y + half * k2;
    h.apply(tmp, k3);
    tmp = y + full * k3;
    h.apply(tmp, k4);
    y += (full / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  if (!y.allFinite()) throw Error(ErrorKind::Overflow, "non-finite amplitudes after rk4 propagation");
  return y;
}

ComplexMatrix propagate(const ComplexMatrix& h, const ComplexMatrix& psi0, double t,
                        PropagationMethod method, double dt) {
  require_square(h, "propagate");
  if (psi0.rows() != h.rows()) {
    throw Error(ErrorKind::InvalidValue, "state dimension " + std::to_string(psi0.rows()) +
                                             " does not match Hamiltonian dimension " + std::to_string(h.rows()));
  }
  if (method == PropagationMethod::Rk4) return rk4_propagate(DenseOperator(h), psi0, t, dt);

  if (!(t >= 0.0) || !std::isfinite(t)) throw Error(ErrorKind::InvalidValue, "propagation time must be >= 0");
  if (t == 0.0) return psi0;
  ComplexMatrix out = expm(Complex(0.0, -t) * h) * psi0;
  if (!out.allFinite()) throw Error(ErrorKind::Overflow, "non-finite amplitudes after expm propagation");
  return out;
}

StateVector propagate(const ComplexMatrix& h, const StateVector& psi0, double t, PropagationMethod method,
                      double dt) {
  ComplexVector out = propagate(h, ComplexMatrix(psi0.amplitudes()), t, method, dt);
  return StateVector(std::move(out), psi0.cluster_dim());
}

}  // namespace phnet
