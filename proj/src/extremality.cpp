#include "mcs/extremality.hpp"

#include <cmath>
#include <limits>

#include "mcs/feasibility.hpp"

namespace mcs {

const char* to_string(ExtremeVerdict v) {
  switch (v) {
    case ExtremeVerdict::Yes: return "Yes";
    case ExtremeVerdict::No: return "No";
    case ExtremeVerdict::Inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

const char* to_string(LocusVerdict v) {
  switch (v) {
    case LocusVerdict::Confirmed: return "Confirmed";
    case LocusVerdict::CounterexampleFound: return "CounterexampleFound";
    case LocusVerdict::SampleExhausted: return "SampleExhausted";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// Classical tests and irreducibility

bool classical_extreme_level(const LinearPencil& l, std::size_t n, const MatrixTuple& x, const ScaledTolerance& tol) {
  return face_of(l, n, x, tol).dimension() == 0;
}

bool classical_exposed_level(const LinearPencil& l, std::size_t n, const MatrixTuple& x, const ScaledTolerance& tol) {
  const FaceDescriptor f = face_of(l, n, x, tol);
  if (f.kernel.cols() == 0) throw Error(ErrorKind::PreconditionViolated, "exposedness test needs a boundary point");
  return f.dimension() == 0;
}

namespace {

RMatrix commutant_basis(const MatrixTuple& x, const ScaledTolerance& tol) {
  const auto n = static_cast<Eigen::Index>(x.level());
  const auto nn = n * n;
  const auto g = static_cast<Eigen::Index>(x.g());
  RMatrix system(2 * nn * g, nn);
  for (Eigen::Index e = 0; e < nn; ++e) {
    const CMatrix s = hermitian_from_real(RVector::Unit(nn, e), x.level()).matrix();
    for (Eigen::Index i = 0; i < g; ++i) {
      const CMatrix& xi = x[static_cast<std::size_t>(i)].matrix();
      const CMatrix c = s * xi - xi * s;
      for (Eigen::Index p = 0; p < nn; ++p) {
        system(2 * nn * i + p, e) = c(p % n, p / n).real();
        system(2 * nn * i + nn + p, e) = c(p % n, p / n).imag();
      }
    }
  }
  return real_nullspace(system, tol);
}

}  // namespace

bool irreducible(const MatrixTuple& x, const ScaledTolerance& tol) {
  if (x.level() == 1) return true;
  return commutant_basis(x, tol).cols() == 1;
}

std::optional<MatrixConvexCombination> reducing_decomposition(const MatrixTuple& x, const ScaledTolerance& tol) {
  if (x.level() == 1) return std::nullopt;
  const RMatrix basis = commutant_basis(x, tol);
  if (basis.cols() <= 1) return std::nullopt;
  const std::size_t n = x.level();
  // A generic commutant element, made traceless; its eigenspaces reduce X.
  Rng rng(0xc0ffeeULL);
  std::normal_distribution<double> normal;
  RVector c(basis.cols());
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = normal(rng);
  HermitianMatrix s = hermitian_from_real(basis * c, n);
  s = s - HermitianMatrix::identity(n) * (s.matrix().trace().real() / static_cast<double>(n));
  const EigenDecomposition e = eig_hermitian(s);
  const double spread = e.values(e.values.size() - 1) - e.values(0);
  if (spread <= 0.0) return std::nullopt;
  // Split at the largest eigenvalue gap.
  Eigen::Index cut = 1;
  double best = -1.0;
  for (Eigen::Index i = 1; i < e.values.size(); ++i) {
    if (e.values(i) - e.values(i - 1) > best) {
      best = e.values(i) - e.values(i - 1);
      cut = i;
    }
  }
  const auto nn = static_cast<Eigen::Index>(n);
  const CMatrix p = e.vectors.leftCols(cut);
  const CMatrix q = e.vectors.rightCols(nn - cut);
  MatrixConvexCombination comb;
  comb.target_level = n;
  comb.terms.push_back({x.congruence(p), p.adjoint()});
  comb.terms.push_back({x.congruence(q), q.adjoint()});
  if (max_distance(apply_combination(comb), x) > 1e-6 * (1.0 + x.norm())) return std::nullopt;
  return comb;
}

// ---------------------------------------------------------------------------
// Definitional oracle

namespace {

using Terms = std::vector<std::pair<std::size_t, CMatrix>>;

// Rows Re(w E_PQ) = Re(w rhs_PQ) for a Hermitian-valued linear expression E of size d,
// one per real coordinate (P <= Q, w = 1 and w = -i off the diagonal).
template <class TermFn, class RhsFn>
void add_hermitian_rows(AffinePSDProblem& p, Eigen::Index d, TermFn terms, RhsFn rhs) {
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = a; b < d; ++b) {
      for (int part = 0; part < (a == b ? 1 : 2); ++part) {
        const Complex w = part == 0 ? Complex(1.0) : Complex(0.0, -1.0);
        p.add_row(terms(a, b, w), (w * rhs(a, b)).real());
      }
    }
  }
}

CMatrix unit(Eigen::Index d, Eigen::Index r, Eigen::Index c, Complex v) {
  CMatrix m = CMatrix::Zero(d, d);
  m(r, c) = v;
  return m;
}

// Searches Y with X +- s Y in D(n) and <Y, R> = 1; the feasibility of this system is the
// definition of X lying inside a segment of D(n).
std::optional<MatrixConvexCombination> two_sided_search(const LinearPencil& l, const MatrixTuple& x,
                                                        const ScaledTolerance& tol, const ExtremeOptions& opts,
                                                        Rng& rng) {
  const std::size_t n = x.level();
  const std::size_t g = l.g();
  const auto nn = static_cast<Eigen::Index>(n);
  const auto kn = static_cast<Eigen::Index>(l.k() * n);
  const HermitianMatrix lx = evaluate(l, x);
  const double scale = 1.0 + x.norm();
  // Segment directions through X annihilate ker L(X); iterates are projected there before the
  // exact line-search check, since the solver only approaches the lower-dimensional feasible set.
  std::optional<RMatrix> directions;
  try {
    directions = face_of(l, n, x, tol).directions;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::AmbiguousRank) throw;
  }
  if (directions && directions->cols() == 0) directions.reset();
  for (double step : {1e-2, 1e-3, 2e-4}) {
    const double s = step * scale;
    for (std::size_t attempt = 0; attempt < opts.oracle_restarts; ++attempt) {
      std::vector<std::size_t> dims(g, n);
      std::vector<BlockKind> kinds(g, BlockKind::Free);
      dims.push_back(l.k() * n);
      dims.push_back(l.k() * n);
      kinds.push_back(BlockKind::Psd);
      kinds.push_back(BlockKind::Psd);
      AffinePSDProblem p(dims, kinds);
      for (int sign : {1, -1}) {
        const std::size_t slack = sign > 0 ? g : g + 1;
        add_hermitian_rows(
            p, kn,
            [&](Eigen::Index r, Eigen::Index c, Complex w) {
              Terms t;
              t.emplace_back(slack, unit(kn, c, r, w));
              // Entry (r, c) of A_i (x) Y_i is (A_i)(r/n, c/n) (Y_i)(r%n, c%n) = tr(E_{c%n, r%n} Y_i) (A_i)(...).
              for (std::size_t i = 0; i < g; ++i) {
                const Complex ai = l.a(i).matrix()(r / nn, c / nn);
                if (ai == Complex(0.0)) continue;
                t.emplace_back(i, unit(nn, c % nn, r % nn, -static_cast<double>(sign) * s * w * ai));
              }
              return t;
            },
            [&](Eigen::Index r, Eigen::Index c) { return lx.matrix()(r, c); });
      }
      const MatrixTuple r = random_tuple(n, g, rng);
      RVector norm_row = RVector::Zero(static_cast<Eigen::Index>(p.variable_dim()));
      for (std::size_t i = 0; i < g; ++i) {
        norm_row.segment(p.offset(i), nn * nn) = to_real(r[i]) / std::sqrt(static_cast<double>(g));
      }
      p.add_real_row(norm_row, 1.0);
      p.tol = tol.scaled(1e3);
      SolveOptions so;
      so.max_iter = opts.oracle_max_iter;
      const SolveReport rep = solve_feasibility(p, so);
      if (rep.status == SolveStatus::StalledInfeasibleHeuristic) continue;
      std::vector<HermitianMatrix> ys(rep.point.begin(), rep.point.begin() + static_cast<std::ptrdiff_t>(g));
      MatrixTuple y(ys);
      if (directions) {
        const RVector yv = to_real(y);
        y = tuple_from_real(*directions * (directions->transpose() * yv), n, g);
      }
      if (y.norm() == 0.0) continue;
      double up = max_step(l, y, x, tol);
      double down = max_step(l, y * -1.0, x, tol);
      if (!std::isfinite(up)) up = 1.0;
      if (!std::isfinite(down)) down = 1.0;
      const double t = std::min(up, down);
      if (t * y.norm() < 1e-4 * scale) continue;
      const MatrixTuple plus = x + y * t;
      const MatrixTuple minus = x - y * t;
      if (!is_member(l, plus, tol) || !is_member(l, minus, tol)) continue;
      if (unitarily_equivalent(plus, x, tol) || unitarily_equivalent(minus, x, tol)) continue;
      MatrixConvexCombination comb;
      comb.target_level = n;
      const CMatrix half = CMatrix::Identity(nn, nn) / std::sqrt(2.0);
      comb.terms.push_back({plus, half});
      comb.terms.push_back({minus, half});
      return comb;
    }
  }
  return std::nullopt;
}

// For pairwise commuting coordinates: the joint eigenbasis splits X into level-1 points.
std::optional<MatrixConvexCombination> commuting_split(const MatrixTuple& x, const ScaledTolerance& tol, Rng& rng) {
  const std::size_t n = x.level();
  if (n < 2) return std::nullopt;
  const double scale = 1.0 + x.norm();
  for (std::size_t i = 0; i < x.g(); ++i)
    for (std::size_t j = i + 1; j < x.g(); ++j)
      if ((x[i].matrix() * x[j].matrix() - x[j].matrix() * x[i].matrix()).norm() > tol.effective(scale * scale) * 10.0)
        return std::nullopt;
  for (int attempt = 0; attempt < 4; ++attempt) {
    HermitianMatrix h = HermitianMatrix::zero(n);
    for (std::size_t i = 0; i < x.g(); ++i) h = h + x[i] * uniform(rng, -1.0, 1.0);
    const EigenDecomposition e = eig_hermitian(h);
    MatrixConvexCombination comb;
    comb.target_level = n;
    bool diagonal = true;
    for (Eigen::Index q = 0; q < static_cast<Eigen::Index>(n) && diagonal; ++q) {
      const CMatrix v = e.vectors.col(q);
      const MatrixTuple point = x.congruence(v);
      for (std::size_t i = 0; i < x.g(); ++i) {
        const CVector r = x[i].matrix() * v - v * point[i].matrix()(0, 0);
        if (r.norm() > tol.effective(scale) * 100.0) diagonal = false;
      }
      comb.terms.push_back({point, v.adjoint()});
    }
    if (diagonal) return comb;
  }
  return std::nullopt;
}

}  // namespace

ExtremeReport matrix_extreme(const LinearPencil& l, const MatrixTuple& x, const ScaledTolerance& tol,
                             const ExtremeOptions& opts) {
  if (!is_member(l, x, tol)) throw Error(ErrorKind::PreconditionViolated, "matrix_extreme needs a member");
  const std::size_t n = x.level();
  ExtremeReport rep;
  rep.irreducible = irreducible(x, tol);
  const FaceDescriptor face = face_of(l, n, x, tol);
  rep.euclidean_extreme = face.dimension() == 0;
  const bool primary = rep.irreducible && rep.euclidean_extreme;

  try {
    if (!rep.irreducible) {
      rep.witness = reducing_decomposition(x, tol);
    } else if (!rep.euclidean_extreme) {
      Rng rng = derived_rng(opts.seed, 1);
      for (int attempt = 0; attempt < 4 && !rep.witness; ++attempt) {
        std::normal_distribution<double> normal;
        RVector w(face.directions.cols());
        for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = normal(rng);
        const MatrixTuple d = tuple_from_real(face.directions * w, n, l.g());
        if (d.norm() == 0.0) continue;
        double t = std::min(max_step(l, d, x, tol), max_step(l, d * -1.0, x, tol));
        if (!std::isfinite(t)) t = 1.0;
        if (t <= 0.0) continue;
        const MatrixTuple plus = x + d * t;
        const MatrixTuple minus = x - d * t;
        if (unitarily_equivalent(plus, x, tol) || unitarily_equivalent(minus, x, tol)) continue;
        MatrixConvexCombination comb;
        comb.target_level = n;
        const CMatrix half = CMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) / std::sqrt(2.0);
        comb.terms.push_back({plus, half});
        comb.terms.push_back({minus, half});
        rep.witness = comb;
      }
    }

    if (n <= opts.oracle_max_level) {
      rep.oracle_run = true;
      Rng rng = derived_rng(opts.seed, 2);
      std::optional<MatrixConvexCombination> found = commuting_split(x, tol, rng);
      if (!found) found = two_sided_search(l, x, tol, opts, rng);
      rep.oracle_decomposable = found.has_value();
      rep.oracle_witness = std::move(found);
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Inconclusive) throw;
    rep.verdict = ExtremeVerdict::Inconclusive;
    rep.note = "unitary equivalence undecided while checking a decomposition";
    return rep;
  }

  if (rep.oracle_run && rep.oracle_decomposable == primary) {
    rep.verdict = ExtremeVerdict::Inconclusive;
    rep.note = primary ? "oracle found a decomposition of a point the criterion calls extreme"
                       : "criterion rejects the point but the oracle found no decomposition";
    return rep;
  }
  rep.verdict = primary ? ExtremeVerdict::Yes : ExtremeVerdict::No;
  return rep;
}

// ---------------------------------------------------------------------------
// Exposing pairs

CMatrix kernel_components(const CVector& x, std::size_t n) {
  const auto nn = static_cast<Eigen::Index>(n);
  CMatrix c(nn, nn);
  for (Eigen::Index a = 0; a < nn; ++a)
    for (Eigen::Index q = 0; q < nn; ++q) c(a, q) = x(a * nn + q);
  return c;
}

std::size_t component_rank(const CMatrix& c) {
  Eigen::JacobiSVD<CMatrix> svd(c);
  const RVector s = svd.singularValues();
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > 1e-8 * s(0)) ++r;
  return r;
}

LinearPencil ExposingPair::as_pencil() const {
  std::vector<HermitianMatrix> a;
  for (const auto& p : phi) a.push_back(-p);
  return LinearPencil(alpha, std::move(a));
}

HermitianMatrix ExposingPair::evaluate(const MatrixTuple& b) const { return mcs::evaluate(as_pencil(), b); }

namespace {

// Isometry (n x r) onto the span of the point-side components of a kernel vector.
CMatrix component_span(const CMatrix& c) {
  Eigen::JacobiSVD<CMatrix> svd(c, Eigen::ComputeFullV);
  const std::size_t r = component_rank(c);
  return svd.matrixV().leftCols(static_cast<Eigen::Index>(r)).conjugate();
}

struct PairMargin {
  double min_eig;
  double tol;
};

PairMargin pair_margin(const LinearPencil& p, const MatrixTuple& b, const ScaledTolerance& tol) {
  const EigenDecomposition e = eig_hermitian(evaluate(p, b));
  const double norm = std::max(std::abs(e.values(0)), std::abs(e.values(e.values.size() - 1)));
  return {e.values(0), tol.effective(norm)};
}

}  // namespace

ExposureReport verify_exposing_pair(const LinearPencil& l, const MatrixTuple& a, const ExposingPair& pair,
                                    const ScaledTolerance& tol, const ExposureOptions& opts) {
  if (pair.n() != a.level()) throw Error(ErrorKind::ArityMismatch, "pair level differs from the point level");
  if (pair.g() != l.g() || a.g() != l.g()) throw Error(ErrorKind::ArityMismatch, "pair arity differs from the pencil");
  const std::size_t n = a.level();
  const LinearPencil p = pair.as_pencil();
  ExposureReport rep;
  rep.r_max = opts.r_max == 0 ? 2 * n : opts.r_max;
  rep.min_margin_below_n = std::numeric_limits<double>::infinity();

  auto counterexample = [&](const MatrixTuple& b, const std::string& why) {
    rep.singular_locus_matches = LocusVerdict::CounterexampleFound;
    rep.counterexample = b;
    rep.counterexample_reason = why;
    return rep;
  };

  // Structure at A.
  const HermitianMatrix pa = evaluate(p, a);
  const PsdReport at_a = is_psd(pa, tol);
  if (at_a.verdict == PsdVerdict::Indefinite) {
    rep.psd_holds = false;
    return counterexample(a, "pair is not positive semidefinite at A");
  }
  if (at_a.verdict == PsdVerdict::PositiveDefinite) return counterexample(a, "A is not singular for the pair");
  CMatrix kernel;
  try {
    kernel = kernel_basis(pa, tol);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::AmbiguousRank) throw;
    rep.counterexample_reason = "kernel at A has no spectral gap";
    return rep;
  }
  rep.kernel_dim_at_a = static_cast<std::size_t>(kernel.cols());
  CVector deficient;
  if (kernel.cols() >= 1) {
    const CMatrix c0 = kernel_components(kernel.col(0), n);
    rep.kernel_components_rank = component_rank(c0);
    if (rep.kernel_components_rank < n) {
      deficient = kernel.col(0);
    } else if (kernel.cols() >= 2) {
      // lambda M + N is singular for lambda = -mu, mu an eigenvalue of M^-1 N.
      const CMatrix c1 = kernel_components(kernel.col(1), n);
      Eigen::ComplexEigenSolver<CMatrix> ces(c0.inverse() * c1);
      deficient = -ces.eigenvalues()(0) * kernel.col(0) + kernel.col(1);
    }
  }
  if (deficient.size() > 0) {
    const CMatrix span = component_span(kernel_components(deficient, n));
    const MatrixTuple b = a.congruence(span);
    const PairMargin m = pair_margin(p, b, tol);
    if (m.min_eig <= m.tol) {
      rep.strict_below_n = false;
      return counterexample(b, "compression of A to its kernel components is singular below level n");
    }
  }

  // Dominance on samples, strictness below n, and the singular locus at n.
  std::optional<SampleBank> local;
  SampleBank* bank = opts.bank;
  if (bank == nullptr) {
    local.emplace(l, opts.budget, opts.seed, tol);
    bank = &*local;
  }
  for (std::size_t r = 1; r <= rep.r_max; ++r) {
    rep.psd_checked_levels.push_back(r);
    for (const auto* set : {&bank->boundary(r), &bank->interior(r)}) {
      for (const MatrixTuple& b : *set) {
        ++rep.samples_checked;
        const PairMargin m = pair_margin(p, b, tol);
        if (m.min_eig < -m.tol) {
          rep.psd_holds = false;
          return counterexample(b, "pair fails positivity on a member of D");
        }
        if (r < n) {
          rep.min_margin_below_n = std::min(rep.min_margin_below_n, m.min_eig);
          if (m.min_eig <= m.tol) {
            rep.strict_below_n = false;
            return counterexample(b, "pair is singular on a member below level n");
          }
        } else if (r == n && m.min_eig <= m.tol) {
          try {
            if (!unitarily_equivalent(b, a, tol)) return counterexample(b, "singular member not unitarily equivalent to A");
          } catch (const Error& e) {
            if (e.kind() != ErrorKind::Inconclusive) throw;
            ++rep.unresolved_equivalences;
          }
        }
      }
    }
  }

  Rng rng = derived_rng(opts.seed, 0xa11ULL);
  for (std::size_t c = 0; c < opts.conjugates; ++c) {
    const MatrixTuple b = a.congruence(random_unitary(n, rng));
    ++rep.samples_checked;
    const PairMargin m = pair_margin(p, b, tol);
    if (m.min_eig > m.tol || m.min_eig < -m.tol) return counterexample(b, "unitary conjugate of A is not singular");
  }
  const FaceDescriptor face = face_of(l, n, a, tol);
  if (face.dimension() > 0) {
    for (std::size_t s = 0; s < opts.face_samples; ++s) {
      const MatrixTuple b = sample_face_point(l, face, rng);
      ++rep.samples_checked;
      const PairMargin m = pair_margin(p, b, tol);
      if (m.min_eig < -m.tol) {
        rep.psd_holds = false;
        return counterexample(b, "pair fails positivity on the face of A");
      }
      if (m.min_eig <= m.tol) {
        try {
          if (!unitarily_equivalent(b, a, tol)) return counterexample(b, "singular face point not unitarily equivalent to A");
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::Inconclusive) throw;
          ++rep.unresolved_equivalences;
        }
      }
    }
  }

  if (rep.kernel_dim_at_a == 1 && rep.kernel_components_rank == n && rep.unresolved_equivalences == 0) {
    rep.singular_locus_matches = LocusVerdict::Confirmed;
  } else {
    rep.singular_locus_matches = LocusVerdict::SampleExhausted;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Pair search

namespace {

ExposingPair normalized(ExposingPair pair) {
  double s = pair.alpha.matrix().trace().real();
  if (s <= 1e-12) {
    s = pair.alpha.frobenius_norm();
    for (const auto& p : pair.phi) s = std::hypot(s, p.frobenius_norm());
  }
  if (s <= 0.0) return pair;
  pair.alpha = pair.alpha * (1.0 / s);
  for (auto& p : pair.phi) p = p * (1.0 / s);
  return pair;
}

// alpha (x) I - Phi(B) = sum_t V_t* L(B) V_t for kernel vectors w_t = vec(V_t) of L(A).
ExposingPair compression_pair(const LinearPencil& l, const CMatrix& vectors, std::size_t n) {
  const auto k = static_cast<Eigen::Index>(l.k());
  const auto nn = static_cast<Eigen::Index>(n);
  CMatrix alpha = CMatrix::Zero(nn, nn);
  std::vector<CMatrix> phi(l.g(), CMatrix::Zero(nn, nn));
  for (Eigen::Index t = 0; t < vectors.cols(); ++t) {
    CMatrix v(k, nn);
    for (Eigen::Index p = 0; p < k; ++p)
      for (Eigen::Index q = 0; q < nn; ++q) v(p, q) = vectors(p * nn + q, t);
    alpha += v.adjoint() * l.a0().matrix() * v;
    for (std::size_t j = 0; j < l.g(); ++j) phi[j] -= v.adjoint() * l.a(j).matrix() * v;
  }
  ExposingPair pair;
  pair.alpha = HermitianMatrix::symmetrized(alpha);
  for (const auto& m : phi) pair.phi.push_back(HermitianMatrix::symmetrized(m));
  return normalized(pair);
}

struct Constraint {
  MatrixTuple point;
  double margin;
};

// Sample-constrained search for (alpha, Phi) with (alpha (x) I - Phi(A)) vec(I) = 0 and tr(alpha) = 1.
std::optional<ExposingPair> feasibility_pair(const LinearPencil& l, const MatrixTuple& a,
                                             const std::vector<Constraint>& constraints, const ScaledTolerance& tol,
                                             std::size_t max_iter) {
  const std::size_t n = a.level();
  const std::size_t g = l.g();
  const auto nn = static_cast<Eigen::Index>(n);
  std::vector<std::size_t> dims(g + 1, n);
  std::vector<BlockKind> kinds(g + 1, BlockKind::Free);
  for (const auto& c : constraints) {
    dims.push_back(n * c.point.level());
    kinds.push_back(BlockKind::Psd);
  }
  AffinePSDProblem p(dims, kinds);
  p.tol = tol;
  for (std::size_t s = 0; s < constraints.size(); ++s) {
    const MatrixTuple& b = constraints[s].point;
    const auto r = static_cast<Eigen::Index>(b.level());
    const double eps = constraints[s].margin;
    const std::size_t slack = g + 1 + s;
    // S - alpha (x) I_r + Phi_r(B) = -eps I, with index (a, i) -> a r + i.
    add_hermitian_rows(
        p, nn * r,
        [&](Eigen::Index row, Eigen::Index col, Complex w) {
          Terms t;
          t.emplace_back(slack, unit(nn * r, col, row, w));
          const Eigen::Index ar = row / r, ir = row % r, bc = col / r, ic = col % r;
          if (ir == ic) t.emplace_back(0, unit(nn, bc, ar, -w));
          for (std::size_t j = 0; j < g; ++j) {
            const Complex bj = b[j].matrix()(ir, ic);
            if (bj != Complex(0.0)) t.emplace_back(1 + j, unit(nn, bc, ar, w * bj));
          }
          return t;
        },
        [&](Eigen::Index row, Eigen::Index col) { return Complex(row == col ? -eps : 0.0); });
  }
  // alpha - sum_j Phi_j A_j^T = 0 entrywise.
  for (Eigen::Index ar = 0; ar < nn; ++ar) {
    for (Eigen::Index i = 0; i < nn; ++i) {
      for (const Complex w : {Complex(1.0), Complex(0.0, -1.0)}) {
        Terms t;
        t.emplace_back(0, unit(nn, i, ar, w));
        for (std::size_t j = 0; j < g; ++j) {
          CMatrix gm = CMatrix::Zero(nn, nn);
          for (Eigen::Index b = 0; b < nn; ++b) gm(b, ar) = -w * a[j].matrix()(i, b);
          t.emplace_back(1 + j, gm);
        }
        p.add_row(t, 0.0);
      }
    }
  }
  p.add_row({{0, CMatrix::Identity(nn, nn)}}, 1.0);
  SolveOptions so;
  so.max_iter = max_iter;
  SolveReport rep;
  try {
    rep = solve_feasibility(p, so);
  } catch (const Error& e) {
    // The kernel equations and the trace normalization admit no pair.
    if (e.kind() != ErrorKind::InconsistentRows) throw;
    return std::nullopt;
  }
  if (rep.status != SolveStatus::Feasible) return std::nullopt;
  ExposingPair pair;
  pair.alpha = rep.point[0];
  for (std::size_t j = 0; j < g; ++j) pair.phi.push_back(rep.point[1 + j]);
  return pair;
}

}  // namespace

PairSearchResult search_exposing_pair(const LinearPencil& l, const MatrixTuple& a, const ScaledTolerance& tol,
                                      const PairSearchOptions& opts) {
  const std::size_t n = a.level();
  if (opts.check_preconditions) {
    if (matrix_extreme(l, a, tol).verdict != ExtremeVerdict::Yes) {
      throw Error(ErrorKind::PreconditionViolated, "pair search needs a matrix extreme point");
    }
    if (!classical_exposed_level(l, n, a, tol)) {
      throw Error(ErrorKind::PreconditionViolated, "pair search needs a classically exposed point");
    }
  }
  ExposureOptions vopts = opts.verify;
  std::optional<SampleBank> local;
  if (vopts.bank == nullptr) {
    local.emplace(l, vopts.budget, vopts.seed, tol);
    vopts.bank = &*local;
  }
  PairSearchResult result;
  auto attempt = [&](const ExposingPair& pair, const char* method) {
    ++result.candidates_tried;
    result.report = verify_exposing_pair(l, a, pair, tol, vopts);
    if (result.report.confirmed()) {
      result.found = true;
      result.pair = pair;
      result.method = method;
    }
    return result.found;
  };

  const HermitianMatrix la = evaluate(l, a);
  if (is_psd(la, tol).verdict != PsdVerdict::PositiveSemidefiniteSingular) return result;
  const CMatrix kernel = kernel_basis(la, tol);
  if (attempt(compression_pair(l, kernel, n), "kernel compression")) return result;
  Rng rng = derived_rng(vopts.seed, 0x5ea7ULL);
  for (std::size_t r = 1; r < opts.restarts; ++r) {
    const CMatrix mix = gaussian_matrix(static_cast<std::size_t>(kernel.cols()), static_cast<std::size_t>(kernel.cols()), rng);
    if (attempt(compression_pair(l, kernel * mix, n), "weighted kernel compression")) return result;
  }

  // Cutting-plane rounds: every counterexample becomes a constraint of the next solve.
  std::vector<Constraint> constraints;
  for (std::size_t r = 1; r <= n; ++r) {
    const auto& samples = vopts.bank->boundary(r);
    for (std::size_t s = 0; s < std::min(opts.feasibility_samples, samples.size()); ++s) {
      constraints.push_back({samples[s], r < n ? 1e-3 : 0.0});
    }
  }
  for (std::size_t round = 0; round < opts.feasibility_rounds; ++round) {
    const auto pair = feasibility_pair(l, a, constraints, tol, opts.feasibility_iter);
    if (!pair) break;
    if (attempt(normalized(*pair), "sample-constrained feasibility")) return result;
    if (!result.report.counterexample) break;
    const MatrixTuple& b = *result.report.counterexample;
    const bool dominance = !result.report.psd_holds;
    if (b.level() > 2 * n) break;
    constraints.push_back({b, dominance ? 0.0 : 1e-3});
  }
  return result;
}

// ---------------------------------------------------------------------------
// Coverage

CoverReport exposed_hull_cover(const LinearPencil& l, const ScaledTolerance& tol, const CoverOptions& opts) {
  CoverReport rep;
  Rng rng = derived_rng(opts.seed, 0xc0feULL);
  std::optional<MatrixTuple> base;
  try {
    base = find_interior_point(l, tol);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotInterior) throw;
  }

  if (!base) {
    // Flat level set: covered only when it is a single point.
    const MatrixTuple origin = MatrixTuple::zero(1, l.g());
    if (!is_member(l, origin, tol) || face_of(l, 1, origin, tol).dimension() != 0) {
      rep.degenerate = true;
      rep.bounded = false;
      return rep;
    }
    rep.degenerate = true;
    rep.generators.push_back(origin);
    base = origin;
  } else {
    std::vector<MatrixTuple> probes;
    for (std::size_t j = 0; j < l.g(); ++j) {
      std::vector<double> e(l.g(), 0.0);
      e[j] = 1.0;
      probes.push_back(MatrixTuple::scalars(e));
      probes.push_back(MatrixTuple::scalars(e) * -1.0);
    }
    for (int i = 0; i < 16; ++i) probes.push_back(random_tuple(1, l.g(), rng));
    for (const auto& d : probes) {
      if (!std::isfinite(max_step(l, d, *base, tol))) {
        rep.bounded = false;
        return rep;
      }
    }
    auto known = [&](const MatrixTuple& x) {
      for (const auto& y : rep.generators) {
        if (y.level() == x.level() && max_distance(x, y) <= 1e-6 * (1.0 + x.norm())) return true;
      }
      return false;
    };
    for (std::size_t h = 0; h < opts.harvest; ++h) {
      const auto b = random_boundary_point(l, *base, rng, tol);
      if (!b) continue;
      const MatrixTuple x = descend_to_extreme(l, *b, rng, tol);
      if (!known(x) && classical_exposed_level(l, 1, x, tol)) rep.generators.push_back(x);
    }
    PairSearchOptions so;
    so.verify.seed = opts.seed;
    for (std::size_t n = 2; n <= opts.harvest_max_level; ++n) {
      const MatrixTuple bn = ampliate(*base, n);
      for (std::size_t h = 0; h < opts.harvest; ++h) {
        const auto b = random_boundary_point(l, bn, rng, tol);
        if (!b) continue;
        const MatrixTuple x = descend_to_extreme(l, *b, rng, tol);
        if (matrix_extreme(l, x, tol).verdict != ExtremeVerdict::Yes) continue;
        if (search_exposing_pair(l, x, tol, so).found) rep.generators.push_back(x);
      }
    }
  }

  for (std::size_t s = 0; s < opts.samples; ++s) {
    const std::size_t n = opts.levels[s % opts.levels.size()];
    const MatrixTuple bn = ampliate(*base, n);
    std::optional<MatrixTuple> x;
    if (rep.degenerate) {
      x = bn;
    } else if (s % 2 == 0) {
      x = random_boundary_point(l, bn, rng, tol);
    } else {
      x = random_interior_point(l, bn, rng, 0.0, 1.0, tol);
    }
    if (!x) continue;
    ++rep.samples;
    HullOptions ho;
    ho.tol = opts.hull_tol;
    const HullResult hr = hull_membership(rep.generators, *x, ho);
    if (hr.verdict == HullVerdict::Member) ++rep.covered;
    if (hr.verdict == HullVerdict::Undecided) ++rep.undecided;
  }
  return rep;
}

}  // namespace mcs
