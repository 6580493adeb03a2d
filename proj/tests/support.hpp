#pragma once

#include <Eigen/Eigenvalues>

#include "mcs/hermitian.hpp"
#include "mcs/pencil.hpp"
#include "mcs/random.hpp"

namespace mcs::test {

// Independent reference evaluation: explicit block assembly of A0 (x) I + sum A_i (x) X_i.
inline CMatrix reference_evaluate(const LinearPencil& l, const MatrixTuple& x) {
  const auto k = static_cast<Eigen::Index>(l.k());
  const auto n = static_cast<Eigen::Index>(x.level());
  CMatrix out = CMatrix::Zero(k * n, k * n);
  for (Eigen::Index p = 0; p < k; ++p) {
    for (Eigen::Index q = 0; q < k; ++q) {
      CMatrix block = l.a0().matrix()(p, q) * CMatrix::Identity(n, n);
      for (std::size_t i = 0; i < l.g(); ++i) block += l.a(i).matrix()(p, q) * x[i].matrix();
      out.block(p * n, q * n, n, n) = block;
    }
  }
  return out;
}

inline RVector reference_eigenvalues(const CMatrix& m) {
  return Eigen::SelfAdjointEigenSolver<CMatrix>(m, Eigen::EigenvaluesOnly).eigenvalues();
}

inline double reference_min_eigenvalue(const CMatrix& m) { return reference_eigenvalues(m)(0); }

// Random contraction with operator norm at most 1.
inline CMatrix random_contraction(std::size_t rows, std::size_t cols, Rng& rng) {
  const CMatrix g = gaussian_matrix(rows, cols, rng);
  const double s = Eigen::JacobiSVD<CMatrix>(g).singularValues()(0);
  return g / (s * (1.0 + uniform(rng, 0.0, 0.5)));
}

// Largest principal-angle sine between the column spans of orthonormal a and b.
inline double subspace_distance(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.cols()) return 1.0;
  if (a.cols() == 0) return 0.0;
  const CMatrix pa = a * a.adjoint();
  const CMatrix pb = b * b.adjoint();
  return Eigen::JacobiSVD<CMatrix>(pa - pb).singularValues()(0);
}

}  // namespace mcs::test
