#pragma once

#include <optional>
#include <vector>

#include "mcs/feasibility.hpp"
#include "mcs/hermitian.hpp"

namespace mcs {

struct CombinationTerm {
  MatrixTuple point;  ///< level n_i
  CMatrix gamma;      ///< n_i x n
};

/// sum_i gamma_i* X^i gamma_i with sum_i gamma_i* gamma_i = I_n.
struct MatrixConvexCombination {
  std::vector<CombinationTerm> terms;
  std::size_t target_level = 0;

  /// ||sum gamma_i* gamma_i - I||_F.
  double partition_error() const;
  /// Every gamma_i has rank n_i.
  bool proper() const;
};

/// Throws PartitionOfUnityViolated beyond 1e-10.
MatrixTuple apply_combination(const MatrixConvexCombination& c);

/// alpha* X alpha for a contraction alpha (r x n); throws NotContraction.
MatrixTuple compress(const MatrixTuple& x, const CMatrix& alpha);

/// (gamma* gamma, gamma* A gamma) with source reduced to the range of gamma.
struct GammaPoint {
  HermitianMatrix gram;
  MatrixTuple image;
  std::size_t source_level = 0;
};

/// Throws ZeroGamma unless tr(gamma* gamma) = 1 within 1e-10.
GammaPoint gamma_point(const MatrixTuple& a, const CMatrix& gamma, const ScaledTolerance& tol = {});

/// Linearization of matrix-convex-hull membership: one PSD Choi block per generator.
/// Block i has dimension n_i * n with entry ((a,p),(b,q)) equal to Phi_i(E_ab)_pq.
struct ChoiSystem {
  AffinePSDProblem problem;
  std::vector<std::size_t> generator_levels;
  std::size_t target_level = 0;
};

ChoiSystem build_choi_system(const std::vector<MatrixTuple>& generators, const MatrixTuple& x, double tol);

/// Phi(Z) for the map with the given Choi matrix (input level m, output level n).
CMatrix apply_choi(const HermitianMatrix& choi, const CMatrix& z, std::size_t n);

/// Kraus factors gamma_k (m x n) with Phi(Z) = sum_k gamma_k* Z gamma_k, from a PSD Choi matrix.
std::vector<CMatrix> kraus_from_choi(const HermitianMatrix& choi, std::size_t m, std::size_t n);

enum class HullVerdict { Member, NotMemberHeuristic, Undecided };
const char* to_string(HullVerdict v);

struct HullResult {
  HullVerdict verdict = HullVerdict::Undecided;
  /// Member only: PSD Choi blocks and the normalized explicit combination.
  std::vector<HermitianMatrix> choi;
  std::optional<MatrixConvexCombination> combination;
  /// Max coordinate error of the re-expanded combination.
  double reconstruction_error = 0.0;
  /// NotMemberHeuristic: distance between the affine and cone iterates at the stall.
  double distance = 0.0;
  std::size_t iterations = 0;
};

struct HullOptions {
  double tol = 1e-6;
  std::size_t max_iter = 20000;
};

HullResult hull_membership(const std::vector<MatrixTuple>& generators, const MatrixTuple& x,
                           const HullOptions& opts = {});

}  // namespace mcs
