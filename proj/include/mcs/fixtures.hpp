#pragma once

#include <array>
#include <vector>

#include "mcs/pencil.hpp"

namespace mcs::fixtures {

/// diag(x - a, b - x): the matrix interval [a I, b I].
LinearPencil interval(double a = 0.0, double b = 1.0);

/// Direct sum of diag(1 - x_i, 1 + x_i): the free cube [-1, 1]^g.
LinearPencil cube(std::size_t g = 2);

/// [[1 + x1, x2], [x2, 1 - x1]]: the unit disk at level 1.
LinearPencil disk();

/// diag(x1, x2, 3 - x1 - x2): the triangle with vertices (0,0), (3,0), (0,3).
LinearPencil triangle();

/// Random pencil with L(0) = I and Hermitian coefficients normalized to Frobenius norm one.
LinearPencil random_monic(std::size_t k, std::size_t g, unsigned long long seed);

/// The planar region -1 <= x1 <= 1, max(0, x1^3) <= x2 <= 1. Its origin is extreme but not exposed.
class CuspRegion {
 public:
  using Point = std::array<double, 2>;

  bool contains(const Point& p, double tol = 1e-9) const;
  /// Distance-free boundary test: some defining inequality is active within tol.
  bool on_boundary(const Point& p, double tol = 1e-9) const;
  /// Boundary point on the ray from an interior center at the given angle.
  Point boundary_point(double angle) const;
  static constexpr Point center{-0.25, 0.5};
};

/// Corners (-1,0), (-1,1), (1,1) and the cubic arc points (t, t^3), t in [0, 1].
bool classical_extreme_level(const CuspRegion& r, const CuspRegion::Point& p, double tol = 1e-9);
/// Extreme points other than the origin.
bool classical_exposed_level(const CuspRegion& r, const CuspRegion::Point& p, double tol = 1e-9);

}  // namespace mcs::fixtures
