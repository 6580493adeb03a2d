#pragma once

#include <utility>
#include <vector>

#include "mcs/hermitian.hpp"

namespace mcs {

/// L(x) = A0 + sum_i A_i x_i with k x k Hermitian coefficients.
class LinearPencil {
 public:
  LinearPencil() = default;
  LinearPencil(HermitianMatrix a0, std::vector<HermitianMatrix> a);

  std::size_t k() const { return a0_.dim(); }
  std::size_t g() const { return a_.size(); }
  const HermitianMatrix& a0() const { return a0_; }
  const HermitianMatrix& a(std::size_t i) const { return a_[i]; }
  const std::vector<HermitianMatrix>& coefficients() const { return a_; }
  bool is_monic() const;

 private:
  HermitianMatrix a0_;
  std::vector<HermitianMatrix> a_;
};

/// A0 (x) I_n + sum_i A_i (x) X_i, coefficient factor on the left.
HermitianMatrix evaluate(const LinearPencil& l, const MatrixTuple& x);
/// The homogeneous part sum_i A_i (x) Y_i.
HermitianMatrix evaluate_linear(const LinearPencil& l, const MatrixTuple& y);

enum class Membership { Interior, Boundary, Outside };
const char* to_string(Membership m);

struct MembershipReport {
  Membership verdict;
  double margin;  ///< lambda_min of L(X)
  std::size_t kernel_dim;
};

MembershipReport membership(const LinearPencil& l, const MatrixTuple& x, const ScaledTolerance& tol = {});
bool is_member(const LinearPencil& l, const MatrixTuple& x, const ScaledTolerance& tol = {});

struct MonicRecord {
  MatrixTuple shift;      ///< the interior point v
  HermitianMatrix scale;  ///< L(v)^{-1/2}
};

/// L'(x) = S L(x + v) S with S = L(v)^{-1/2}; throws NotInterior.
std::pair<LinearPencil, MonicRecord> monicize(const LinearPencil& l, const MatrixTuple& v,
                                              const ScaledTolerance& tol = {});

struct BoundaryOptions {
  double horizon = 1e6;
  std::size_t max_steps = 200;
};

/// base + t* direction with t* the exit time from D(n); throws NotInterior or RayUnbounded.
MatrixTuple boundary_sample(const LinearPencil& l, std::size_t n, const MatrixTuple& direction,
                            const MatrixTuple& base, const ScaledTolerance& tol = {},
                            const BoundaryOptions& opts = {});

/// Largest t <= horizon with base + t direction in D(n); infinity when the ray never leaves.
double max_step(const LinearPencil& l, const MatrixTuple& direction, const MatrixTuple& base,
                const ScaledTolerance& tol = {}, const BoundaryOptions& opts = {});

/// Interior point of D(1), found by feasibility search when 0 is not interior.
/// Throws NotInterior when D(1) appears to have empty interior.
MatrixTuple find_interior_point(const LinearPencil& l, const ScaledTolerance& tol = {});

}  // namespace mcs
