#include "mcs/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace mcs {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Feasible: return "Feasible";
    case SolveStatus::StalledInfeasibleHeuristic: return "StalledInfeasibleHeuristic";
    case SolveStatus::IterationCap: return "IterationCap";
  }
  return "Unknown";
}

AffinePSDProblem::AffinePSDProblem(std::vector<std::size_t> block_dims, std::vector<BlockKind> kinds)
    : dims_(std::move(block_dims)), kinds_(std::move(kinds)) {
  if (kinds_.empty()) kinds_.assign(dims_.size(), BlockKind::Psd);
  if (kinds_.size() != dims_.size()) throw Error(ErrorKind::Validation, "block kinds and dims differ in count");
  for (std::size_t d : dims_) {
    if (d == 0) throw Error(ErrorKind::Validation, "block dimension must be positive");
    offsets_.push_back(offsets_.back() + static_cast<Eigen::Index>(d * d));
  }
}

void AffinePSDProblem::add_row(const std::vector<std::pair<std::size_t, CMatrix>>& terms, double target) {
  RVector row = RVector::Zero(offsets_.back());
  for (const auto& [b, g] : terms) {
    if (b >= dims_.size() || static_cast<std::size_t>(g.rows()) != dims_[b] || g.rows() != g.cols()) {
      throw Error(ErrorKind::ArityMismatch, "row coefficient does not match its block");
    }
    // Re tr(G X) = <(G + G*)/2, X> for Hermitian X.
    const Eigen::Index d = static_cast<Eigen::Index>(dims_[b] * dims_[b]);
    row.segment(offsets_[b], d) += to_real(HermitianMatrix::symmetrized(g));
  }
  add_real_row(row, target);
}

void AffinePSDProblem::add_real_row(const RVector& coefficients, double target) {
  if (coefficients.size() != offsets_.back()) throw Error(ErrorKind::ArityMismatch, "row length mismatch");
  if (!std::isfinite(target) || !coefficients.allFinite()) throw Error(ErrorKind::Validation, "row is not finite");
  rows_.push_back(coefficients);
  targets_.push_back(target);
}

RMatrix AffinePSDProblem::row_matrix() const {
  RMatrix a(static_cast<Eigen::Index>(rows_.size()), offsets_.back());
  for (std::size_t r = 0; r < rows_.size(); ++r) a.row(static_cast<Eigen::Index>(r)) = rows_[r].transpose();
  return a;
}

RVector AffinePSDProblem::targets() const {
  return Eigen::Map<const RVector>(targets_.data(), static_cast<Eigen::Index>(targets_.size()));
}

double AffinePSDProblem::effective_tol() const {
  double m = 0.0;
  for (double t : targets_) m = std::max(m, std::abs(t));
  return tol.effective(1.0 + m);
}

std::vector<HermitianMatrix> AffinePSDProblem::unpack(const RVector& x) const {
  std::vector<HermitianMatrix> out;
  for (std::size_t b = 0; b < dims_.size(); ++b) {
    out.push_back(hermitian_from_real(x.segment(offsets_[b], offsets_[b + 1] - offsets_[b]), dims_[b]));
  }
  return out;
}

RVector AffinePSDProblem::pack(const std::vector<HermitianMatrix>& blocks) const {
  if (blocks.size() != dims_.size()) throw Error(ErrorKind::ArityMismatch, "block count mismatch");
  RVector x(offsets_.back());
  for (std::size_t b = 0; b < dims_.size(); ++b) {
    if (blocks[b].dim() != dims_[b]) throw Error(ErrorKind::ArityMismatch, "block size mismatch");
    x.segment(offsets_[b], offsets_[b + 1] - offsets_[b]) = to_real(blocks[b]);
  }
  return x;
}

// ---------------------------------------------------------------------------

AffineProjector::AffineProjector(const AffinePSDProblem& p) {
  const Eigen::Index n = static_cast<Eigen::Index>(p.variable_dim());
  const Eigen::Index m = static_cast<Eigen::Index>(p.row_count());
  if (m == 0) {
    q_ = RMatrix::Zero(n, 0);
    c_ = RVector::Zero(0);
    return;
  }
  const RMatrix a = p.row_matrix();
  const RVector b = p.targets();
  Eigen::ColPivHouseholderQR<RMatrix> pivoted(a.transpose());
  pivoted.setThreshold(1e-10);
  const Eigen::Index r = pivoted.rank();
  const auto perm = pivoted.colsPermutation().indices();
  RMatrix ai(r, n);
  RVector bi(r);
  for (Eigen::Index i = 0; i < r; ++i) {
    ai.row(i) = a.row(perm(i));
    bi(i) = b(perm(i));
  }
  Eigen::HouseholderQR<RMatrix> qr(ai.transpose());
  q_ = qr.householderQ() * RMatrix::Identity(n, r);
  const RMatrix rr = qr.matrixQR().topLeftCorner(r, r).triangularView<Eigen::Upper>();
  c_ = rr.transpose().triangularView<Eigen::Lower>().solve(bi);
  const RVector xp = q_ * c_;
  for (Eigen::Index i = r; i < m; ++i) {
    const Eigen::Index row = perm(i);
    const double residual = std::abs(a.row(row).dot(xp) - b(row));
    if (residual > 1e-9 * (1.0 + std::abs(b(row)) + a.row(row).norm() * xp.norm())) {
      throw Error(ErrorKind::InconsistentRows, "dependent row conflicts with the others by " + std::to_string(residual));
    }
  }
  dropped_ = static_cast<std::size_t>(m - r);
}

RVector AffineProjector::project(const RVector& x) const {
  if (q_.cols() == 0) return x;
  return x - q_ * (q_.transpose() * x - c_);
}

HermitianMatrix project_psd(const HermitianMatrix& m) {
  return spectral_function(m, [](double x) { return x > 0.0 ? x : 0.0; });
}

RVector project_affine(const AffinePSDProblem& p, const RVector& x) {
  return AffineProjector(p).project(x);
}

namespace {

struct ConeStep {
  RVector point;
  double violation;  ///< max over PSD blocks of -lambda_min(input), clipped at 0
};

ConeStep project_cone(const AffinePSDProblem& p, const RVector& x) {
  ConeStep out{x, 0.0};
  for (std::size_t b = 0; b < p.block_count(); ++b) {
    if (p.block_kind(b) == BlockKind::Free) continue;
    const Eigen::Index off = p.offset(b);
    const std::size_t d = p.block_dim(b);
    if (d == 1) {
      out.violation = std::max(out.violation, -x(off));
      out.point(off) = std::max(0.0, x(off));
      continue;
    }
    const Eigen::Index len = static_cast<Eigen::Index>(d * d);
    const EigenDecomposition e = eig_hermitian(hermitian_from_real(x.segment(off, len), d));
    out.violation = std::max(out.violation, -e.values(0));
    CMatrix scaled = e.vectors;
    for (Eigen::Index j = 0; j < scaled.cols(); ++j) scaled.col(j) *= std::max(0.0, e.values(j));
    out.point.segment(off, len) = to_real(HermitianMatrix::symmetrized(scaled * e.vectors.adjoint()));
  }
  return out;
}

double psd_violation(const AffinePSDProblem& p, const RVector& x) {
  double v = 0.0;
  for (std::size_t b = 0; b < p.block_count(); ++b) {
    if (p.block_kind(b) == BlockKind::Free) continue;
    const Eigen::Index off = p.offset(b);
    const std::size_t d = p.block_dim(b);
    if (d == 1) {
      v = std::max(v, -x(off));
    } else {
      const Eigen::Index len = static_cast<Eigen::Index>(d * d);
      v = std::max(v, -min_eigenvalue(hermitian_from_real(x.segment(off, len), d)));
    }
  }
  return v;
}

}  // namespace

RawCheck check_point(const AffinePSDProblem& p, const std::vector<HermitianMatrix>& blocks) {
  const RVector x = p.pack(blocks);
  double residual = 0.0;
  if (p.row_count() > 0) residual = (p.row_matrix() * x - p.targets()).cwiseAbs().maxCoeff();
  return {residual, psd_violation(p, x)};
}

SolveReport solve_feasibility(const AffinePSDProblem& p, const SolveOptions& opts) {
  const AffineProjector projector(p);
  const double tol = p.effective_tol();
  const Eigen::Index n = static_cast<Eigen::Index>(p.variable_dim());
  RVector x = opts.start.size() == n ? opts.start : RVector::Zero(n);
  RVector correction = RVector::Zero(n);
  const bool dykstra = opts.method == ProjectionMethod::Dykstra;

  SolveReport report;
  report.dropped_rows = projector.dropped_rows();
  std::size_t stalled = 0;
  if (opts.trace != nullptr) *opts.trace << "iteration,affine_residual,psd_violation\n";

  for (std::size_t it = 1; it <= opts.max_iter; ++it) {
    const RVector y = projector.project(x);
    if (opts.observer) opts.observer(y);
    const ConeStep step = project_cone(p, dykstra ? RVector(y + correction) : y);
    const double violation = dykstra ? psd_violation(p, y) : step.violation;
    if (opts.trace != nullptr) {
      double residual = 0.0;
      if (p.row_count() > 0) residual = (p.row_matrix() * y - p.targets()).cwiseAbs().maxCoeff();
      *opts.trace << it << ',' << residual << ',' << violation << '\n';
    }
    report.iterations = it;
    report.psd_violation = violation;
    report.gap = (step.point - y).norm();
    if (violation <= tol) {
      report.point = p.unpack(y);
      const RawCheck raw = check_point(p, report.point);
      report.affine_residual = raw.affine_residual;
      report.psd_violation = raw.psd_violation;
      if (raw.affine_residual <= tol && raw.psd_violation <= tol) {
        report.status = SolveStatus::Feasible;
        return report;
      }
    }
    if (dykstra) correction = y + correction - step.point;
    const double displacement = (step.point - x).norm();
    x = step.point;
    if (displacement < opts.stall_displacement * std::max(1.0, x.norm()) && violation > 100.0 * tol) {
      if (++stalled >= opts.stall_window) {
        report.status = SolveStatus::StalledInfeasibleHeuristic;
        report.point = p.unpack(y);
        return report;
      }
    } else {
      stalled = 0;
    }
  }
  const RVector y = projector.project(x);
  report.point = p.unpack(y);
  report.status = SolveStatus::IterationCap;
  return report;
}

}  // namespace mcs
