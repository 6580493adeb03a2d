#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "mcs/error.hpp"

namespace mcs {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Effective tolerance for a matrix M is absolute + relative * ||M||_2.
struct ScaledTolerance {
  double absolute = 1e-9;
  double relative = 1e-9;

  double effective(double norm) const { return absolute + relative * norm; }
  ScaledTolerance scaled(double factor) const {
    return {absolute * factor, relative * factor};
  }
};

class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  /// Throws Validation if the input is not square or its asymmetry exceeds 1e-12 * ||M||_F.
  explicit HermitianMatrix(const CMatrix& m);

  /// Replaces m by (m + m*)/2 without validation; used for computed products.
  static HermitianMatrix symmetrized(const CMatrix& m);
  static HermitianMatrix identity(std::size_t n);
  static HermitianMatrix zero(std::size_t n);
  static HermitianMatrix diagonal(const std::vector<double>& d);
  static HermitianMatrix scalar(double x) { return diagonal({x}); }

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  Complex operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  double frobenius_norm() const { return m_.norm(); }

  HermitianMatrix operator+(const HermitianMatrix& o) const;
  HermitianMatrix operator-(const HermitianMatrix& o) const;
  HermitianMatrix operator*(double s) const;
  HermitianMatrix operator-() const { return *this * -1.0; }

  /// gamma* M gamma for any gamma with dim() rows.
  HermitianMatrix congruence(const CMatrix& gamma) const;

 private:
  CMatrix m_;
};

/// A point of S_n^g: g Hermitian n x n matrices sharing a level.
class MatrixTuple {
 public:
  MatrixTuple() = default;
  explicit MatrixTuple(std::vector<HermitianMatrix> coords);

  static MatrixTuple zero(std::size_t level, std::size_t g);
  /// Level-1 point from real coordinates.
  static MatrixTuple scalars(const std::vector<double>& x);

  std::size_t level() const { return level_; }
  std::size_t g() const { return coords_.size(); }
  const HermitianMatrix& operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<HermitianMatrix>& coords() const { return coords_; }

  MatrixTuple operator+(const MatrixTuple& o) const;
  MatrixTuple operator-(const MatrixTuple& o) const;
  MatrixTuple operator*(double s) const;

  /// gamma* X_i gamma coordinatewise; gamma has level() rows.
  MatrixTuple congruence(const CMatrix& gamma) const;
  /// Largest Frobenius norm over coordinates.
  double norm() const;

 private:
  std::size_t level_ = 0;
  std::vector<HermitianMatrix> coords_;
};

MatrixTuple direct_sum(const MatrixTuple& x, const MatrixTuple& y);
/// v (level 1) ampliated to v_1 I_n, ..., v_g I_n.
MatrixTuple ampliate(const MatrixTuple& v, std::size_t n);
double max_distance(const MatrixTuple& x, const MatrixTuple& y);

/// Coefficient-left Kronecker product: block (p,q) equals a(p,q) * b.
CMatrix kron(const CMatrix& a, const CMatrix& b);

struct EigenDecomposition {
  RVector values;   ///< ascending
  CMatrix vectors;  ///< orthonormal columns
};

/// Cyclic complex Jacobi. Throws SolverError after the sweep cap.
EigenDecomposition eig_hermitian(const HermitianMatrix& m);

/// Columns spanning the eigenvectors with |lambda| <= tol_eff.
/// Throws AmbiguousRank when the smallest nonzero |lambda| is below 10x the largest zero one.
CMatrix kernel_basis(const HermitianMatrix& m, const ScaledTolerance& tol);

/// Numerical rank at the same threshold and gap rule as kernel_basis.
std::size_t numerical_rank(const HermitianMatrix& m, const ScaledTolerance& tol);

enum class PsdVerdict { PositiveDefinite, PositiveSemidefiniteSingular, Indefinite };
const char* to_string(PsdVerdict v);

struct PsdReport {
  PsdVerdict verdict;
  double min_eigenvalue;
};

PsdReport is_psd(const HermitianMatrix& m, const ScaledTolerance& tol);

double spectral_norm(const HermitianMatrix& m);
double min_eigenvalue(const HermitianMatrix& m);

/// V f(Lambda) V* for a real function applied to the spectrum.
template <class F>
HermitianMatrix spectral_function(const HermitianMatrix& m, F f) {
  const EigenDecomposition e = eig_hermitian(m);
  CMatrix scaled = e.vectors;
  for (Eigen::Index j = 0; j < scaled.cols(); ++j) scaled.col(j) *= f(e.values(j));
  return HermitianMatrix::symmetrized(scaled * e.vectors.adjoint());
}

/// Square root of the clipped PSD part.
HermitianMatrix psd_sqrt(const HermitianMatrix& m);
/// Inverse square root; the input must be positive definite.
HermitianMatrix inverse_sqrt(const HermitianMatrix& m);

/// Unitary U with gamma = U delta, for surjective r x n factors with equal Gram matrices.
CMatrix douglas_unitary(const CMatrix& gamma, const CMatrix& delta,
                        const ScaledTolerance& tol = {});

struct EquivalenceOptions {
  /// 0 selects 2 n^2.
  std::size_t word_length = 0;
  /// Caps the number of trace words; the length bound shrinks to fit.
  std::size_t max_words = 20000;
  std::size_t witness_restarts = 32;
  unsigned long long seed = 0x5eedULL;
};

/// Decides whether some unitary U has U* X_i U = Y_i for all i.
/// Throws Inconclusive when all trace words agree but no witness is found.
bool unitarily_equivalent(const MatrixTuple& x, const MatrixTuple& y,
                          const ScaledTolerance& tol = {},
                          const EquivalenceOptions& opts = {});

/// Same decision, also returning the witness when one is found.
bool unitarily_equivalent(const MatrixTuple& x, const MatrixTuple& y, CMatrix* witness,
                          const ScaledTolerance& tol, const EquivalenceOptions& opts);

/// Orthonormal real coordinates on Hermitian n x n matrices for the trace form Re tr(MN).
/// Order: diagonal entries, then for a < b the symmetric part sqrt2 Re M_ab and the
/// antisymmetric part sqrt2 Im M_ab.
RVector to_real(const HermitianMatrix& m);
HermitianMatrix hermitian_from_real(const Eigen::Ref<const RVector>& v, std::size_t n);
RVector to_real(const MatrixTuple& x);
MatrixTuple tuple_from_real(const Eigen::Ref<const RVector>& v, std::size_t n, std::size_t g);

/// Orthonormal basis of the real nullspace of a real matrix (columns).
/// Same threshold and gap rule as kernel_basis applied to singular values.
RMatrix real_nullspace(const RMatrix& a, const ScaledTolerance& tol);

/// Orthonormal basis of the complex nullspace (columns), same rule.
CMatrix complex_nullspace(const CMatrix& a, const ScaledTolerance& tol);

}  // namespace mcs
