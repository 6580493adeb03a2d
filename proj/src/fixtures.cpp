#include "mcs/fixtures.hpp"

#include <cmath>

#include "mcs/random.hpp"
#include "mcs/sampling.hpp"

namespace mcs::fixtures {

LinearPencil interval(double a, double b) {
  if (!(a < b)) throw Error(ErrorKind::Validation, "interval needs a < b");
  return LinearPencil(HermitianMatrix::diagonal({-a, b}), {HermitianMatrix::diagonal({1.0, -1.0})});
}

LinearPencil cube(std::size_t g) {
  if (g == 0) throw Error(ErrorKind::Validation, "cube needs g >= 1");
  std::vector<HermitianMatrix> a;
  for (std::size_t i = 0; i < g; ++i) {
    std::vector<double> d(2 * g, 0.0);
    d[2 * i] = -1.0;
    d[2 * i + 1] = 1.0;
    a.push_back(HermitianMatrix::diagonal(d));
  }
  return LinearPencil(HermitianMatrix::identity(2 * g), std::move(a));
}

LinearPencil disk() {
  CMatrix a2 = CMatrix::Zero(2, 2);
  a2(0, 1) = 1.0;
  a2(1, 0) = 1.0;
  return LinearPencil(HermitianMatrix::identity(2), {HermitianMatrix::diagonal({1.0, -1.0}), HermitianMatrix(a2)});
}

LinearPencil triangle() {
  return LinearPencil(HermitianMatrix::diagonal({0.0, 0.0, 3.0}),
                      {HermitianMatrix::diagonal({1.0, 0.0, -1.0}), HermitianMatrix::diagonal({0.0, 1.0, -1.0})});
}

LinearPencil random_monic(std::size_t k, std::size_t g, unsigned long long seed) {
  Rng rng = derived_rng(seed, 0x9e7ULL);
  std::vector<HermitianMatrix> a;
  for (std::size_t i = 0; i < g; ++i) a.push_back(random_hermitian(k, rng));
  return LinearPencil(HermitianMatrix::identity(k), std::move(a));
}

namespace {

// Signed slacks of the defining inequalities; all nonnegative inside.
std::array<double, 5> slacks(const CuspRegion::Point& p) {
  const double x = p[0];
  const double y = p[1];
  return {x + 1.0, 1.0 - x, 1.0 - y, y, y - x * x * x};
}

}  // namespace

bool CuspRegion::contains(const Point& p, double tol) const {
  const auto s = slacks(p);
  // The cubic constraint applies only for x1 >= 0; for x1 < 0 it is implied by x2 >= 0.
  return s[0] >= -tol && s[1] >= -tol && s[2] >= -tol && s[3] >= -tol && (p[0] < 0.0 || s[4] >= -tol);
}

bool CuspRegion::on_boundary(const Point& p, double tol) const {
  if (!contains(p, tol)) return false;
  const auto s = slacks(p);
  return std::abs(s[0]) <= tol || std::abs(s[1]) <= tol || std::abs(s[2]) <= tol || std::abs(s[3]) <= tol ||
         (p[0] >= 0.0 && std::abs(s[4]) <= tol);
}

CuspRegion::Point CuspRegion::boundary_point(double angle) const {
  const double dx = std::cos(angle);
  const double dy = std::sin(angle);
  double lo = 0.0;
  double hi = 4.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (contains({center[0] + mid * dx, center[1] + mid * dy}, 0.0)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {center[0] + lo * dx, center[1] + lo * dy};
}

bool classical_extreme_level(const CuspRegion& r, const CuspRegion::Point& p, double tol) {
  if (!r.on_boundary(p, tol)) return false;
  const auto near = [&](double x, double y) { return std::hypot(p[0] - x, p[1] - y) <= tol; };
  if (near(-1.0, 0.0) || near(-1.0, 1.0) || near(1.0, 1.0)) return true;
  return p[0] >= -tol && p[0] <= 1.0 + tol && std::abs(p[1] - p[0] * p[0] * p[0]) <= tol;
}

bool classical_exposed_level(const CuspRegion& r, const CuspRegion::Point& p, double tol) {
  return classical_extreme_level(r, p, tol) && std::hypot(p[0], p[1]) > tol;
}

}  // namespace mcs::fixtures
