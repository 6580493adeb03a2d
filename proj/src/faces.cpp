#include "mcs/faces.hpp"

#include <cmath>
#include <limits>

#include "mcs/sampling.hpp"

namespace mcs {

namespace {

// (A (x) B) v for v of length k n, via the reshape V(p, q) = v(p n + q): result A V B^T.
CVector kron_apply(const CMatrix& a, const CMatrix& b, const CVector& v) {
  const Eigen::Index k = a.rows();
  const Eigen::Index n = b.rows();
  CMatrix vm(k, n);
  for (Eigen::Index p = 0; p < k; ++p)
    for (Eigen::Index q = 0; q < n; ++q) vm(p, q) = v(p * n + q);
  const CMatrix w = a * vm * b.transpose();
  CVector out(k * n);
  for (Eigen::Index p = 0; p < k; ++p)
    for (Eigen::Index q = 0; q < n; ++q) out(p * n + q) = w(p, q);
  return out;
}

CMatrix reshape_kernel(const CVector& v, Eigen::Index k, Eigen::Index n) {
  CMatrix vm(k, n);
  for (Eigen::Index p = 0; p < k; ++p)
    for (Eigen::Index q = 0; q < n; ++q) vm(p, q) = v(p * n + q);
  return vm;
}

MatrixTuple direction_from(const RMatrix& basis, Rng& rng, std::size_t n, std::size_t g) {
  std::normal_distribution<double> normal;
  RVector c(basis.cols());
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = normal(rng);
  RVector d = basis * c;
  if (d.norm() > 0.0) d /= d.norm();
  return tuple_from_real(d, n, g);
}

// Largest t with the compression of L(y + t d) to the range of L(y) still PSD; infinity past
// the horizon. Face directions keep the kernel block of L at zero, so only the range can block.
double face_step(const LinearPencil& l, const FaceDescriptor& f, const MatrixTuple& y, const MatrixTuple& d) {
  const EigenDecomposition e = eig_hermitian(evaluate(l, y));
  const CMatrix range = e.vectors.rightCols(e.vectors.cols() - f.kernel.cols());
  if (range.cols() == 0) return std::numeric_limits<double>::infinity();
  auto inside = [&](double t) {
    return min_eigenvalue(evaluate(l, y + d * t).congruence(range)) >= 0.0;
  };
  const BoundaryOptions opts;
  double lo = 0.0;
  double hi = 1.0;
  while (inside(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > opts.horizon) return std::numeric_limits<double>::infinity();
  }
  for (std::size_t step = 0; step < opts.max_steps && hi - lo > 1e-15 * hi; ++step) {
    const double mid = 0.5 * (lo + hi);
    (inside(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

FaceDescriptor face_of(const LinearPencil& l, std::size_t n, const MatrixTuple& x, const ScaledTolerance& tol) {
  if (x.level() != n) throw Error(ErrorKind::ArityMismatch, "point level differs from the face level");
  const HermitianMatrix lx = evaluate(l, x);
  if (is_psd(lx, tol).verdict == PsdVerdict::Indefinite) {
    throw Error(ErrorKind::PreconditionViolated, "face_of needs a member of D(n)");
  }
  FaceDescriptor f;
  f.level = n;
  f.generator = x;
  f.kernel = kernel_basis(lx, tol);
  const auto d = f.kernel.cols();
  const auto kn = static_cast<Eigen::Index>(l.k() * n);
  const auto nn = static_cast<Eigen::Index>(n * n);
  const auto g = static_cast<Eigen::Index>(l.g());
  f.affine_system = RMatrix::Zero(2 * kn * d, g * nn);
  for (Eigen::Index i = 0; i < g; ++i) {
    for (Eigen::Index e = 0; e < nn; ++e) {
      const HermitianMatrix b = hermitian_from_real(RVector::Unit(nn, e), n);
      for (Eigen::Index c = 0; c < d; ++c) {
        const CVector w = kron_apply(l.a(static_cast<std::size_t>(i)).matrix(), b.matrix(), f.kernel.col(c));
        f.affine_system.col(i * nn + e).segment(2 * kn * c, kn) = w.real();
        f.affine_system.col(i * nn + e).segment(2 * kn * c + kn, kn) = w.imag();
      }
    }
  }
  f.directions = real_nullspace(f.affine_system, tol);
  return f;
}

double face_residual(const LinearPencil& l, const FaceDescriptor& f, const MatrixTuple& y) {
  if (f.kernel.cols() == 0) return 0.0;
  return (evaluate(l, y).matrix() * f.kernel).colwise().norm().maxCoeff();
}

bool in_face(const LinearPencil& l, const FaceDescriptor& f, const MatrixTuple& y, const ScaledTolerance& tol) {
  const HermitianMatrix ly = evaluate(l, y);
  const double scale = spectral_norm(ly);
  if (min_eigenvalue(ly) < -tol.effective(scale) * 10.0) return false;
  return face_residual(l, f, y) <= 10.0 * tol.effective(scale);
}

MatrixTuple sample_face_point(const LinearPencil& l, const FaceDescriptor& f, Rng& rng, std::size_t steps) {
  MatrixTuple y = f.generator;
  if (f.dimension() == 0) return y;
  for (std::size_t s = 0; s < steps; ++s) {
    const MatrixTuple d = direction_from(f.directions, rng, f.level, l.g());
    double up = face_step(l, f, y, d);
    double down = face_step(l, f, y, d * -1.0);
    if (!std::isfinite(up)) up = 1.0;
    if (!std::isfinite(down)) down = 1.0;
    y = y + d * uniform(rng, -down, up);
  }
  return y;
}

MatrixTuple descend_to_extreme(const LinearPencil& l, const MatrixTuple& x, Rng& rng, const ScaledTolerance& tol) {
  MatrixTuple y = x;
  const std::size_t cap = l.g() * x.level() * x.level() + 2;
  for (std::size_t it = 0; it < cap; ++it) {
    const FaceDescriptor f = face_of(l, x.level(), y, tol);
    if (f.dimension() == 0) return y;
    const MatrixTuple d = direction_from(f.directions, rng, f.level, l.g());
    double t = face_step(l, f, y, d);
    if (!std::isfinite(t)) {
      t = face_step(l, f, y, d * -1.0);
      if (!std::isfinite(t)) throw Error(ErrorKind::RayUnbounded, "face contains a line");
      y = y - d * t;
    } else {
      y = y + d * t;
    }
  }
  throw SolverError("face descent did not reach a point face", 0.0);
}

double ExposingFunctional::operator()(const MatrixTuple& y) const {
  if (y.g() != coefficients.size()) throw Error(ErrorKind::ArityMismatch, "functional arity mismatch");
  double s = 0.0;
  for (std::size_t j = 0; j < coefficients.size(); ++j) {
    s += (coefficients[j].matrix() * y[j].matrix()).trace().real();
  }
  return s;
}

ExposingFunctional exposed_face_functional(const LinearPencil& l, std::size_t n, const FaceDescriptor& f,
                                           const ScaledTolerance& tol, std::size_t verify_samples,
                                           unsigned long long seed, FunctionalCheck* check) {
  if (f.level != n) throw Error(ErrorKind::ArityMismatch, "face level differs from n");
  const auto k = static_cast<Eigen::Index>(l.k());
  const auto nn = static_cast<Eigen::Index>(n);
  ExposingFunctional fn;
  fn.coefficients.assign(l.g(), HermitianMatrix::zero(n));
  for (Eigen::Index c = 0; c < f.kernel.cols(); ++c) {
    const CMatrix v = reshape_kernel(f.kernel.col(c), k, nn);
    // v* (A (x) Y) v = tr((V* A V) Y^T), so the coefficient of Y is (V* A V)^T.
    for (std::size_t j = 0; j < l.g(); ++j) {
      fn.coefficients[j] = fn.coefficients[j] -
                           HermitianMatrix::symmetrized((v.adjoint() * l.a(j).matrix() * v).transpose());
    }
    fn.level += (v.adjoint() * l.a0().matrix() * v).trace().real();
  }
  if (verify_samples == 0) return fn;

  FunctionalCheck local;
  FunctionalCheck& out = check != nullptr ? *check : local;
  out = FunctionalCheck{};
  out.min_non_face_gap = std::numeric_limits<double>::infinity();
  const double eq_tol = 10.0 * tol.effective(spectral_norm(evaluate(l, f.generator)));
  Rng rng = derived_rng(seed, 0xfaceULL);

  auto fail = [](const std::string& what) { throw Error(ErrorKind::VerificationFailed, what); };
  const std::size_t face_count = std::max<std::size_t>(1, verify_samples / 10);
  for (std::size_t s = 0; s < face_count; ++s) {
    const MatrixTuple y = s == 0 ? f.generator : sample_face_point(l, f, rng);
    const double gap = fn.gap(y);
    out.max_face_gap = std::max(out.max_face_gap, std::abs(gap));
    ++out.face_samples;
    if (std::abs(gap) > eq_tol) fail("face sample misses equality by " + std::to_string(gap));
  }
  MatrixTuple base;
  try {
    base = ampliate(find_interior_point(l, tol), n);
  } catch (const Error&) {
    return fn;  // flat level set: only face samples can be drawn
  }
  // Non-face samples: interior points, and boundary points whose face residual r gives
  // gap >= r^2 / ||L(Y)|| by Cauchy-Schwarz; only those with r >= 1e-2 are used.
  for (std::size_t s = 0; s < verify_samples; ++s) {
    std::optional<MatrixTuple> y;
    if (s % 2 == 0) {
      y = random_interior_point(l, base, rng, 0.05, 0.95, tol);
    } else {
      y = random_boundary_point(l, base, rng, tol);
      if (y && face_residual(l, f, *y) < 1e-2) continue;
    }
    if (!y) continue;
    const double gap = fn.gap(*y);
    if (gap < -eq_tol) fail("functional exceeds its level on a member by " + std::to_string(-gap));
    if (f.kernel.cols() > 0) {
      ++out.non_face_samples;
      out.min_non_face_gap = std::min(out.min_non_face_gap, gap);
      if (gap <= eq_tol) fail("non-face member reaches the exposing level");
    }
  }
  return fn;
}

}  // namespace mcs
