#include "mcs/convexity.hpp"

#include <cmath>
#include <limits>

namespace mcs {

const char* to_string(HullVerdict v) {
  switch (v) {
    case HullVerdict::Member: return "Member";
    case HullVerdict::NotMemberHeuristic: return "NotMemberHeuristic";
    case HullVerdict::Undecided: return "Undecided";
  }
  return "Unknown";
}

double MatrixConvexCombination::partition_error() const {
  const auto n = static_cast<Eigen::Index>(target_level);
  CMatrix s = -CMatrix::Identity(n, n);
  for (const auto& t : terms) s += t.gamma.adjoint() * t.gamma;
  return s.norm();
}

bool MatrixConvexCombination::proper() const {
  for (const auto& t : terms) {
    Eigen::JacobiSVD<CMatrix> svd(t.gamma);
    const RVector s = svd.singularValues();
    const Eigen::Index r = t.gamma.rows();
    if (r > t.gamma.cols() || s(r - 1) <= 1e-10 * std::max(1.0, s(0))) return false;
  }
  return true;
}

MatrixTuple apply_combination(const MatrixConvexCombination& c) {
  if (c.terms.empty()) throw Error(ErrorKind::Validation, "combination has no terms");
  const auto n = static_cast<Eigen::Index>(c.target_level);
  for (const auto& t : c.terms) {
    if (static_cast<std::size_t>(t.gamma.rows()) != t.point.level() || t.gamma.cols() != n) {
      throw Error(ErrorKind::ArityMismatch, "gamma shape does not match its point and the target level");
    }
    if (t.point.g() != c.terms.front().point.g()) throw Error(ErrorKind::ArityMismatch, "terms differ in arity");
  }
  const double err = c.partition_error();
  if (err > 1e-10) {
    throw Error(ErrorKind::PartitionOfUnityViolated, "sum gamma* gamma differs from I by " + std::to_string(err));
  }
  const std::size_t g = c.terms.front().point.g();
  std::vector<CMatrix> acc(g, CMatrix::Zero(n, n));
  for (const auto& t : c.terms) {
    for (std::size_t j = 0; j < g; ++j) acc[j] += t.gamma.adjoint() * t.point[j].matrix() * t.gamma;
  }
  std::vector<HermitianMatrix> coords;
  for (const auto& m : acc) coords.push_back(HermitianMatrix::symmetrized(m));
  return MatrixTuple(std::move(coords));
}

MatrixTuple compress(const MatrixTuple& x, const CMatrix& alpha) {
  if (static_cast<std::size_t>(alpha.rows()) != x.level()) {
    throw Error(ErrorKind::ArityMismatch, "contraction row count differs from the tuple level");
  }
  Eigen::JacobiSVD<CMatrix> svd(alpha);
  if (svd.singularValues().size() > 0 && svd.singularValues()(0) > 1.0 + 1e-12) {
    throw Error(ErrorKind::NotContraction, "compression matrix has norm above one");
  }
  return x.congruence(alpha);
}

GammaPoint gamma_point(const MatrixTuple& a, const CMatrix& gamma, const ScaledTolerance& tol) {
  if (static_cast<std::size_t>(gamma.rows()) != a.level()) {
    throw Error(ErrorKind::ArityMismatch, "gamma row count differs from the source level");
  }
  const double tr = gamma.squaredNorm();
  if (tr == 0.0) throw Error(ErrorKind::ZeroGamma, "gamma is zero");
  if (std::abs(tr - 1.0) > 1e-10) {
    throw Error(ErrorKind::ZeroGamma, "tr(gamma* gamma) = " + std::to_string(tr) + " is not 1");
  }
  Eigen::JacobiSVD<CMatrix> svd(gamma, Eigen::ComputeFullU);
  const RVector s = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > tol.effective(s(0))) ++rank;
  const CMatrix range = svd.matrixU().leftCols(rank);
  const MatrixTuple reduced = a.congruence(range);
  const CMatrix g = range.adjoint() * gamma;
  return {HermitianMatrix::symmetrized(g.adjoint() * g), reduced.congruence(g), static_cast<std::size_t>(rank)};
}

CMatrix apply_choi(const HermitianMatrix& choi, const CMatrix& z, std::size_t n) {
  const Eigen::Index m = z.rows();
  const auto nn = static_cast<Eigen::Index>(n);
  CMatrix out = CMatrix::Zero(nn, nn);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b)
      if (z(a, b) != Complex(0.0)) out += z(a, b) * choi.matrix().block(a * nn, b * nn, nn, nn);
  return out;
}

std::vector<CMatrix> kraus_from_choi(const HermitianMatrix& choi, std::size_t m, std::size_t n) {
  const EigenDecomposition e = eig_hermitian(choi);
  const double top = std::max(0.0, e.values(e.values.size() - 1));
  std::vector<CMatrix> out;
  const auto mm = static_cast<Eigen::Index>(m);
  const auto nn = static_cast<Eigen::Index>(n);
  for (Eigen::Index k = e.values.size() - 1; k >= 0; --k) {
    if (e.values(k) <= 1e-14 * top || e.values(k) <= 0.0) break;
    const CVector v = std::sqrt(e.values(k)) * e.vectors.col(k);
    // Kraus operator K (n x m) with K(p, a) = v(a n + p); gamma = K*.
    CMatrix kraus(nn, mm);
    for (Eigen::Index a = 0; a < mm; ++a)
      for (Eigen::Index p = 0; p < nn; ++p) kraus(p, a) = v(a * nn + p);
    out.push_back(kraus.adjoint());
  }
  return out;
}

namespace {

// Rows for sum_i Phi_i(Z_i) = target, one real equation per real coordinate of the target.
void add_map_rows(AffinePSDProblem& p, const std::vector<CMatrix>& inputs, const CMatrix& target, std::size_t n) {
  const auto nn = static_cast<Eigen::Index>(n);
  for (Eigen::Index pp = 0; pp < nn; ++pp) {
    for (Eigen::Index q = pp; q < nn; ++q) {
      for (int part = 0; part < (pp == q ? 1 : 2); ++part) {
        const Complex w = part == 0 ? Complex(1.0) : Complex(0.0, -1.0);
        std::vector<std::pair<std::size_t, CMatrix>> terms;
        for (std::size_t i = 0; i < inputs.size(); ++i) {
          const CMatrix& z = inputs[i];
          const Eigen::Index m = z.rows();
          // tr(G C) = sum_ab Z_ab C((a,p),(b,q)) with G((b,q),(a,pp)) = Z_ab.
          CMatrix gm = CMatrix::Zero(m * nn, m * nn);
          for (Eigen::Index a = 0; a < m; ++a)
            for (Eigen::Index b = 0; b < m; ++b) gm(b * nn + q, a * nn + pp) = w * z(a, b);
          terms.emplace_back(i, gm);
        }
        p.add_row(terms, (w * target(pp, q)).real());
      }
    }
  }
}

}  // namespace

ChoiSystem build_choi_system(const std::vector<MatrixTuple>& generators, const MatrixTuple& x, double tol) {
  if (generators.empty()) throw Error(ErrorKind::Validation, "hull membership needs generators");
  const std::size_t n = x.level();
  std::vector<std::size_t> dims;
  std::vector<std::size_t> levels;
  for (const auto& gen : generators) {
    if (gen.g() != x.g()) throw Error(ErrorKind::ArityMismatch, "generator arity differs from the point");
    levels.push_back(gen.level());
    dims.push_back(gen.level() * n);
  }
  ChoiSystem sys{AffinePSDProblem(dims), levels, n};
  sys.problem.tol = ScaledTolerance{tol, 0.0};
  for (std::size_t j = 0; j < x.g(); ++j) {
    std::vector<CMatrix> inputs;
    for (const auto& gen : generators) inputs.push_back(gen[j].matrix());
    add_map_rows(sys.problem, inputs, x[j].matrix(), n);
  }
  std::vector<CMatrix> units;
  for (std::size_t l : levels) units.push_back(CMatrix::Identity(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(l)));
  add_map_rows(sys.problem, units, CMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)), n);
  return sys;
}

HullResult hull_membership(const std::vector<MatrixTuple>& generators, const MatrixTuple& x, const HullOptions& opts) {
  const ChoiSystem sys = build_choi_system(generators, x, opts.tol);
  SolveOptions so;
  so.max_iter = opts.max_iter;
  HullResult out;
  SolveReport rep;
  try {
    rep = solve_feasibility(sys.problem, so);
  } catch (const Error& e) {
    // The affine constraints alone exclude x.
    if (e.kind() != ErrorKind::InconsistentRows) throw;
    out.verdict = HullVerdict::NotMemberHeuristic;
    out.distance = std::numeric_limits<double>::infinity();
    return out;
  }
  out.iterations = rep.iterations;
  if (rep.status == SolveStatus::StalledInfeasibleHeuristic) {
    out.verdict = HullVerdict::NotMemberHeuristic;
    out.distance = rep.gap;
    return out;
  }
  if (rep.status == SolveStatus::IterationCap) return out;

  const std::size_t n = x.level();
  const auto nn = static_cast<Eigen::Index>(n);
  MatrixConvexCombination comb;
  comb.target_level = n;
  CMatrix unit = CMatrix::Zero(nn, nn);
  for (std::size_t i = 0; i < generators.size(); ++i) {
    out.choi.push_back(project_psd(rep.point[i]));
    unit += apply_choi(out.choi.back(), CMatrix::Identity(static_cast<Eigen::Index>(sys.generator_levels[i]),
                                                          static_cast<Eigen::Index>(sys.generator_levels[i])), n);
    for (CMatrix& gamma : kraus_from_choi(out.choi.back(), sys.generator_levels[i], n)) {
      comb.terms.push_back({generators[i], gamma});
    }
  }
  if (comb.terms.empty() || (unit - CMatrix::Identity(nn, nn)).norm() > 10.0 * opts.tol) return out;
  CMatrix s = CMatrix::Zero(nn, nn);
  for (const auto& t : comb.terms) s += t.gamma.adjoint() * t.gamma;
  const HermitianMatrix fix = inverse_sqrt(HermitianMatrix::symmetrized(s));
  for (auto& t : comb.terms) t.gamma = t.gamma * fix.matrix();
  const MatrixTuple rebuilt = apply_combination(comb);
  out.reconstruction_error = max_distance(rebuilt, x);
  if (out.reconstruction_error > 10.0 * opts.tol) return out;
  out.verdict = HullVerdict::Member;
  out.combination = std::move(comb);
  return out;
}

}  // namespace mcs
