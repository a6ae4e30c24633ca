#pragma once

// Shared generators and independent oracles for the test binaries.

#include "phnet/lattice.hpp"
#include "phnet/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace phnet::test {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo = -1.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Index uniform_index(Rng& rng, Index lo, Index hi) {
  return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

inline Complex random_complex(Rng& rng) { return {uniform(rng), uniform(rng)}; }

inline ComplexMatrix random_matrix(Rng& rng, Index rows, Index cols) {
  ComplexMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = random_complex(rng);
  }
  return m;
}

inline ComplexVector random_unit_vector(Rng& rng, Index n) {
  ComplexVector v = random_matrix(rng, n, 1).col(0);
  return v / v.norm();
}

inline ComplexMatrix random_hermitian(Rng& rng, Index n) {
  const ComplexMatrix a = random_matrix(rng, n, n);
  return (a + a.adjoint()) / 2.0;
}

/// S diag(d) S^-1 with S = I + 0.5 * random: non-Hermitian, diagonalizable,
/// and real spectrum d by construction.
inline ComplexMatrix planted_matrix(Rng& rng, const RealVector& d) {
  const Index n = d.size();
  const ComplexMatrix s = ComplexMatrix::Identity(n, n) + 0.5 * random_matrix(rng, n, n);
  return s * d.cast<Complex>().asDiagonal() * s.inverse();
}

/// Well separated real spectrum so that the planted matrix is comfortably
/// away from any exceptional point.
inline RealVector separated_spectrum(Rng& rng, Index n) {
  std::vector<double> v;
  double x = uniform(rng, -1.5, -0.5);
  for (Index i = 0; i < n; ++i) {
    v.push_back(x);
    x += uniform(rng, 0.4, 1.0);
  }
  std::shuffle(v.begin(), v.end(), rng);
  return Eigen::Map<RealVector>(v.data(), n);
}

/// Random network: planted pseudo-Hermitian cluster, random lambda, ring plus
/// random chords with complex couplings.
inline NetworkSpec random_network(Rng& rng, Index clusters, Index cluster_dim) {
  NetworkSpec net;
  net.cluster.hopping = planted_matrix(rng, separated_spectrum(rng, cluster_dim));
  for (Index a = 0; a < clusters; ++a) net.scale.push_back(uniform(rng, 0.5, 1.5));
  std::vector<std::vector<bool>> used(static_cast<std::size_t>(clusters),
                                      std::vector<bool>(static_cast<std::size_t>(clusters), false));
  auto add = [&](Index a, Index b) {
    if (a == b) return;
    if (a > b) std::swap(a, b);
    if (used[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) return;
    used[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = true;
    net.couplings.push_back({a, b, random_complex(rng)});
  };
  for (Index a = 0; a + 1 < clusters; ++a) add(a, a + 1);
  for (Index extra = uniform_index(rng, 0, clusters); extra > 0; --extra) {
    add(uniform_index(rng, 0, clusters - 1), uniform_index(rng, 0, clusters - 1));
  }
  return net;
}

/// Characteristic polynomial coefficients c_0..c_n (monic, c_n = 1) of
/// det(z I - M) from the Faddeev-LeVerrier recursion.
inline std::vector<Complex> characteristic_polynomial(const ComplexMatrix& m) {
  const Index n = m.rows();
  std::vector<Complex> c(static_cast<std::size_t>(n + 1));
  c[static_cast<std::size_t>(n)] = 1.0;
  ComplexMatrix mk = ComplexMatrix::Zero(n, n);
  for (Index k = 1; k <= n; ++k) {
    mk = m * mk + c[static_cast<std::size_t>(n - k + 1)] * ComplexMatrix::Identity(n, n);
    c[static_cast<std::size_t>(n - k)] = -(m * mk).trace() / static_cast<double>(k);
  }
  return c;
}

/// Durand-Kerner simultaneous iteration on a monic polynomial.
inline std::vector<Complex> polynomial_roots(const std::vector<Complex>& c) {
  const std::size_t n = c.size() - 1;
  std::vector<Complex> z(n);
  const Complex seed(0.4, 0.9);
  double radius = 1.0;
  for (std::size_t i = 0; i < n; ++i) radius = std::max(radius, 1.0 + std::abs(c[i]));
  for (std::size_t i = 0; i < n; ++i) z[i] = radius * std::pow(seed, static_cast<double>(i));
  auto eval = [&](Complex x) {
    Complex p = 0.0;
    for (std::size_t i = n + 1; i-- > 0;) p = p * x + c[i];
    return p;
  };
  for (int iter = 0; iter < 5000; ++iter) {
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      Complex denom = 1.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) denom *= z[i] - z[j];
      }
      const Complex step = eval(z[i]) / denom;
      z[i] -= step;
      change = std::max(change, std::abs(step));
    }
    if (change < 1e-15) break;
  }
  // Newton polish on the full polynomial.
  for (auto& x : z) {
    for (int k = 0; k < 3; ++k) {
      Complex p = 0.0, dp = 0.0;
      for (std::size_t i = n + 1; i-- > 0;) {
        dp = dp * x + p;
        p = p * x + c[i];
      }
      if (std::abs(dp) > 0.0) x -= p / dp;
    }
  }
  return z;
}

/// Largest distance from each element of `a` to its nearest unused partner in `b`.
inline double matching_distance(std::vector<Complex> a, std::vector<Complex> b) {
  double worst = 0.0;
  for (const Complex& x : a) {
    auto best = std::min_element(b.begin(), b.end(),
                                 [&](Complex p, Complex q) { return std::abs(p - x) < std::abs(q - x); });
    worst = std::max(worst, std::abs(*best - x));
    b.erase(best);
  }
  return worst;
}

inline double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace phnet::test
