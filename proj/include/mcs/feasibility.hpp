#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <utility>
#include <vector>

#include "mcs/hermitian.hpp"

namespace mcs {

enum class BlockKind { Psd, Free };

/// Find Hermitian blocks X_b (PSD or unconstrained) with sum_b Re tr(C_rb X_b) = t_r for every row r.
/// Internally each block is a real vector in the orthonormal coordinates of to_real.
class AffinePSDProblem {
 public:
  AffinePSDProblem() = default;
  explicit AffinePSDProblem(std::vector<std::size_t> block_dims, std::vector<BlockKind> kinds = {});

  /// Row sum_b Re tr(G_b X_b) = target; G_b need not be Hermitian.
  void add_row(const std::vector<std::pair<std::size_t, CMatrix>>& terms, double target);
  /// Row in real coordinates over the whole variable.
  void add_real_row(const RVector& coefficients, double target);

  std::size_t block_count() const { return dims_.size(); }
  std::size_t block_dim(std::size_t b) const { return dims_[b]; }
  BlockKind block_kind(std::size_t b) const { return kinds_[b]; }
  std::size_t variable_dim() const { return static_cast<std::size_t>(offsets_.back()); }
  Eigen::Index offset(std::size_t b) const { return offsets_[b]; }
  std::size_t row_count() const { return targets_.size(); }
  RMatrix row_matrix() const;
  RVector targets() const;
  /// Tolerance used for both residuals: tol.effective(1 + max |target|).
  double effective_tol() const;

  std::vector<HermitianMatrix> unpack(const RVector& x) const;
  RVector pack(const std::vector<HermitianMatrix>& blocks) const;

  ScaledTolerance tol{};

 private:
  std::vector<std::size_t> dims_;
  std::vector<BlockKind> kinds_;
  std::vector<Eigen::Index> offsets_{0};
  std::vector<RVector> rows_;
  std::vector<double> targets_;
};

/// Minimum-norm projection onto the affine rows, prepared once per problem.
class AffineProjector {
 public:
  /// Drops dependent rows; throws InconsistentRows when their targets disagree.
  explicit AffineProjector(const AffinePSDProblem& p);

  RVector project(const RVector& x) const;
  std::size_t dropped_rows() const { return dropped_; }

 private:
  RMatrix q_;
  RVector c_;
  std::size_t dropped_ = 0;
};

/// Frobenius-nearest PSD matrix (negative eigenvalues clipped).
HermitianMatrix project_psd(const HermitianMatrix& m);
RVector project_affine(const AffinePSDProblem& p, const RVector& x);

enum class SolveStatus { Feasible, StalledInfeasibleHeuristic, IterationCap };
const char* to_string(SolveStatus s);

struct SolveReport {
  SolveStatus status = SolveStatus::IterationCap;
  std::vector<HermitianMatrix> point;
  double affine_residual = 0.0;
  double psd_violation = 0.0;
  /// Distance between the affine and cone iterates at exit.
  double gap = 0.0;
  std::size_t iterations = 0;
  std::size_t dropped_rows = 0;
};

enum class ProjectionMethod { Dykstra, Alternating };

struct SolveOptions {
  std::size_t max_iter = 20000;
  ProjectionMethod method = ProjectionMethod::Dykstra;
  std::size_t stall_window = 500;
  double stall_displacement = 1e-12;
  /// Optional starting point; zero when empty.
  RVector start;
  /// Optional CSV trace: iteration, affine residual, PSD violation.
  std::ostream* trace = nullptr;
  /// Called with the affine iterate after every iteration.
  std::function<void(const RVector&)> observer;
};

SolveReport solve_feasibility(const AffinePSDProblem& p, const SolveOptions& opts = {});

struct RawCheck {
  double affine_residual;
  double psd_violation;
};

/// Residuals of a point against the raw rows and block constraints, independent of the solver.
RawCheck check_point(const AffinePSDProblem& p, const std::vector<HermitianMatrix>& blocks);

}  // namespace mcs
