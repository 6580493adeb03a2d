#pragma once

#include <optional>
#include <vector>

#include "mcs/pencil.hpp"
#include "mcs/random.hpp"

namespace mcs {

/// The face of D(n) containing X in its relative interior:
/// F = {Y in D(n) : L(Y) v = 0 for every kernel column v}.
struct FaceDescriptor {
  std::size_t level = 0;
  CMatrix kernel;          ///< k n x d, orthonormal columns spanning ker L(X)
  MatrixTuple generator;   ///< X
  RMatrix affine_system;   ///< rows in to_real coordinates of Y - X; (sum A_i (x) (Y - X)_i) v = 0
  RMatrix directions;      ///< orthonormal basis of the solution space of affine_system

  std::size_t dimension() const { return static_cast<std::size_t>(directions.cols()); }
};

FaceDescriptor face_of(const LinearPencil& l, std::size_t n, const MatrixTuple& x, const ScaledTolerance& tol = {});

/// Max over kernel columns of ||L(Y) v||.
double face_residual(const LinearPencil& l, const FaceDescriptor& f, const MatrixTuple& y);

/// Y in D(n) with face residual at most 10 tol_eff.
bool in_face(const LinearPencil& l, const FaceDescriptor& f, const MatrixTuple& y, const ScaledTolerance& tol = {});

/// Hit-and-run point of F starting from the generator; the generator itself when dim F = 0.
MatrixTuple sample_face_point(const LinearPencil& l, const FaceDescriptor& f, Rng& rng, std::size_t steps = 3);

/// Walks inside successively smaller faces until the face is a point.
MatrixTuple descend_to_extreme(const LinearPencil& l, const MatrixTuple& x, Rng& rng, const ScaledTolerance& tol = {});

/// l(Y) = sum_j Re tr(C_j Y_j) with l <= a on D(n) and equality exactly on the face.
struct ExposingFunctional {
  std::vector<HermitianMatrix> coefficients;
  double level = 0.0;

  double operator()(const MatrixTuple& y) const;
  /// a - l(Y) = sum_v v* L(Y) v >= 0 on D(n).
  double gap(const MatrixTuple& y) const { return level - (*this)(y); }
};

struct FunctionalCheck {
  std::size_t face_samples = 0;
  std::size_t non_face_samples = 0;
  double max_face_gap = 0.0;
  double min_non_face_gap = 0.0;
};

/// Builds the functional; with verify_samples > 0 also samples members of D(n) and throws
/// VerificationFailed if a face sample misses equality or a non-face sample reaches it.
ExposingFunctional exposed_face_functional(const LinearPencil& l, std::size_t n, const FaceDescriptor& f,
                                           const ScaledTolerance& tol = {}, std::size_t verify_samples = 500,
                                           unsigned long long seed = 1, FunctionalCheck* check = nullptr);

}  // namespace mcs
