#include "mcs/pencil.hpp"

#include <cmath>
#include <limits>

#include "mcs/feasibility.hpp"

namespace mcs {

const char* to_string(Membership m) {
  switch (m) {
    case Membership::Interior: return "Interior";
    case Membership::Boundary: return "Boundary";
    case Membership::Outside: return "Outside";
  }
  return "Unknown";
}

LinearPencil::LinearPencil(HermitianMatrix a0, std::vector<HermitianMatrix> a)
    : a0_(std::move(a0)), a_(std::move(a)) {
  if (a_.empty()) throw Error(ErrorKind::Validation, "pencil needs at least one variable");
  for (const auto& c : a_) {
    if (c.dim() != a0_.dim()) throw Error(ErrorKind::Validation, "pencil coefficients differ in size");
  }
}

bool LinearPencil::is_monic() const {
  return (a0_.matrix() - CMatrix::Identity(a0_.matrix().rows(), a0_.matrix().cols())).norm() <= 1e-12;
}

namespace {

void check_arity(const LinearPencil& l, const MatrixTuple& x) {
  if (x.g() != l.g()) {
    throw Error(ErrorKind::ArityMismatch,
                "point has " + std::to_string(x.g()) + " coordinates, pencil has " + std::to_string(l.g()));
  }
}

void add_kron(CMatrix& out, const CMatrix& a, const CMatrix& x) {
  const Eigen::Index n = x.rows();
  for (Eigen::Index p = 0; p < a.rows(); ++p) {
    for (Eigen::Index q = 0; q < a.cols(); ++q) {
      if (a(p, q) != Complex(0.0)) out.block(p * n, q * n, n, n) += a(p, q) * x;
    }
  }
}

}  // namespace

HermitianMatrix evaluate_linear(const LinearPencil& l, const MatrixTuple& y) {
  check_arity(l, y);
  const auto kn = static_cast<Eigen::Index>(l.k() * y.level());
  CMatrix out = CMatrix::Zero(kn, kn);
  for (std::size_t i = 0; i < l.g(); ++i) add_kron(out, l.a(i).matrix(), y[i].matrix());
  return HermitianMatrix::symmetrized(out);
}

HermitianMatrix evaluate(const LinearPencil& l, const MatrixTuple& x) {
  check_arity(l, x);
  const auto n = static_cast<Eigen::Index>(x.level());
  const auto kn = static_cast<Eigen::Index>(l.k()) * n;
  CMatrix out = CMatrix::Zero(kn, kn);
  add_kron(out, l.a0().matrix(), CMatrix::Identity(n, n));
  for (std::size_t i = 0; i < l.g(); ++i) add_kron(out, l.a(i).matrix(), x[i].matrix());
  return HermitianMatrix::symmetrized(out);
}

MembershipReport membership(const LinearPencil& l, const MatrixTuple& x, const ScaledTolerance& tol) {
  const HermitianMatrix m = evaluate(l, x);
  const PsdReport psd = is_psd(m, tol);
  MembershipReport r{Membership::Outside, psd.min_eigenvalue, 0};
  if (psd.verdict == PsdVerdict::PositiveDefinite) {
    r.verdict = Membership::Interior;
  } else if (psd.verdict == PsdVerdict::PositiveSemidefiniteSingular) {
    r.verdict = Membership::Boundary;
  }
  if (r.verdict != Membership::Interior) r.kernel_dim = static_cast<std::size_t>(kernel_basis(m, tol).cols());
  return r;
}

bool is_member(const LinearPencil& l, const MatrixTuple& x, const ScaledTolerance& tol) {
  return is_psd(evaluate(l, x), tol).verdict != PsdVerdict::Indefinite;
}

std::pair<LinearPencil, MonicRecord> monicize(const LinearPencil& l, const MatrixTuple& v,
                                              const ScaledTolerance& tol) {
  if (v.level() != 1) throw Error(ErrorKind::Validation, "monic normalization expects a level-1 point");
  const HermitianMatrix lv = evaluate(l, v);
  if (is_psd(lv, tol).verdict != PsdVerdict::PositiveDefinite) {
    throw Error(ErrorKind::NotInterior, "normalization point is not interior");
  }
  const HermitianMatrix s = inverse_sqrt(lv);
  std::vector<HermitianMatrix> a;
  for (const auto& c : l.coefficients()) a.push_back(c.congruence(s.matrix()));
  return {LinearPencil(HermitianMatrix::identity(l.k()), std::move(a)), MonicRecord{v, s}};
}

namespace {

double margin_at(const LinearPencil& l, const MatrixTuple& base, const MatrixTuple& dir, double t) {
  return min_eigenvalue(evaluate(l, base + dir * t));
}

double point_tol(const MatrixTuple& x) { return 1e-9 * (1.0 + x.norm()); }

}  // namespace

double max_step(const LinearPencil& l, const MatrixTuple& direction, const MatrixTuple& base,
                const ScaledTolerance& tol, const BoundaryOptions& opts) {
  check_arity(l, base);
  if (direction.level() != base.level() || direction.g() != base.g()) {
    throw Error(ErrorKind::ArityMismatch, "direction and base differ in shape");
  }
  const double slack = tol.effective(spectral_norm(evaluate(l, base)));
  auto inside = [&](double t) { return margin_at(l, base, direction, t) >= -slack; };
  if (!inside(0.0)) throw Error(ErrorKind::PreconditionViolated, "line search base is outside the set");
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

MatrixTuple boundary_sample(const LinearPencil& l, std::size_t n, const MatrixTuple& direction,
                            const MatrixTuple& base, const ScaledTolerance& tol, const BoundaryOptions& opts) {
  check_arity(l, base);
  if (base.level() != n || direction.level() != n || direction.g() != base.g()) {
    throw Error(ErrorKind::ArityMismatch, "base and direction must be level-n tuples");
  }
  if (direction.norm() == 0.0) throw Error(ErrorKind::Validation, "direction must be nonzero");
  if (is_psd(evaluate(l, base), tol).verdict != PsdVerdict::PositiveDefinite) {
    throw Error(ErrorKind::NotInterior, "boundary sampling base is not interior");
  }
  double lo = 0.0;
  double hi = 1.0;
  for (;;) {
    const double f = margin_at(l, base, direction, hi);
    if (f < 0.0) break;
    lo = hi;
    hi *= 2.0;
    if (hi > opts.horizon) throw Error(ErrorKind::RayUnbounded, "ray stays inside up to the horizon");
  }
  // Bisect to the resolution of t; lo stays feasible.
  for (std::size_t step = 0; step < opts.max_steps && hi - lo > 4e-16 * hi; ++step) {
    const double mid = 0.5 * (lo + hi);
    (margin_at(l, base, direction, mid) >= 0.0 ? lo : hi) = mid;
  }
  MatrixTuple x = base + direction * lo;
  const double f = min_eigenvalue(evaluate(l, x));
  if (std::abs(f) > point_tol(x)) {
    throw SolverError("boundary bisection ended away from the boundary", f);
  }
  return x;
}

MatrixTuple find_interior_point(const LinearPencil& l, const ScaledTolerance& tol) {
  const MatrixTuple origin = MatrixTuple::zero(1, l.g());
  if (is_psd(evaluate(l, origin), tol).verdict == PsdVerdict::PositiveDefinite) return origin;
  // Variables: x in R^g as g free 1x1 blocks, slack S = L(x) - eps I as a PSD k x k block.
  const std::size_t k = l.k();
  const std::size_t g = l.g();
  for (double eps : {1.0, 1e-2, 1e-4}) {
    std::vector<std::size_t> dims(g, 1);
    dims.push_back(k);
    std::vector<BlockKind> kinds(g, BlockKind::Free);
    kinds.push_back(BlockKind::Psd);
    AffinePSDProblem p(dims, kinds);
    const auto kk = static_cast<Eigen::Index>(k);
    for (Eigen::Index a = 0; a < kk; ++a) {
      for (Eigen::Index b = a; b < kk; ++b) {
        for (int part = 0; part < (a == b ? 1 : 2); ++part) {
          // Entry (a,b) of S - sum_i A_i x_i equals (A0)_ab - eps delta_ab.
          const Complex w = part == 0 ? Complex(1.0) : Complex(0.0, -1.0);
          CMatrix e = CMatrix::Zero(kk, kk);
          e(b, a) = w;
          std::vector<std::pair<std::size_t, CMatrix>> terms;
          terms.emplace_back(g, e);
          for (std::size_t i = 0; i < g; ++i) {
            terms.emplace_back(i, CMatrix::Constant(1, 1, -w * l.a(i).matrix()(a, b)));
          }
          const Complex rhs = w * (l.a0().matrix()(a, b) - (a == b ? eps : 0.0));
          p.add_row(terms, rhs.real());
        }
      }
    }
    SolveOptions opts;
    opts.max_iter = 5000;
    const SolveReport r = solve_feasibility(p, opts);
    if (r.status != SolveStatus::Feasible) continue;
    std::vector<double> x;
    for (std::size_t i = 0; i < g; ++i) x.push_back(r.point[i](0, 0).real());
    MatrixTuple v = MatrixTuple::scalars(x);
    if (is_psd(evaluate(l, v), tol).verdict == PsdVerdict::PositiveDefinite) return v;
  }
  throw Error(ErrorKind::NotInterior, "no interior point found; the level-1 set appears flat or empty");
}

}  // namespace mcs
