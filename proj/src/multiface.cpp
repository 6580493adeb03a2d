#include "mcs/matrix_faces.hpp"

#include <cmath>
#include <limits>

#include "mcs/feasibility.hpp"
#include "mcs/sampling.hpp"

namespace mcs {

const char* to_string(FaceType t) {
  switch (t) {
    case FaceType::Face: return "face";
    case FaceType::CStarFace: return "cstar_face";
    case FaceType::WeakFace: return "weak_face";
  }
  return "unknown";
}

FaceType parse_face_type(const std::string& s) {
  if (s == "face") return FaceType::Face;
  if (s == "cstar_face") return FaceType::CStarFace;
  if (s == "weak_face" || s == "weak") return FaceType::WeakFace;
  throw Error(ErrorKind::Validation, "unknown face type '" + s + "'");
}

const char* to_string(Falsification f) {
  return f == Falsification::NoCounterexample ? "NoCounterexample" : "Counterexample";
}

const char* to_string(MultifaceType t) {
  return t == MultifaceType::Multiface ? "multiface" : "convex_multiface";
}

MultifaceType parse_multiface_type(const std::string& s) {
  if (s == "multiface") return MultifaceType::Multiface;
  if (s == "convex_multiface") return MultifaceType::ConvexMultiface;
  throw Error(ErrorKind::Validation, "unknown multiface type '" + s + "'");
}

FaceDescriptor singleton_face(const LinearPencil& l, const MatrixTuple& x, const ScaledTolerance& tol) {
  if (!is_member(l, x, tol)) throw Error(ErrorKind::PreconditionViolated, "singleton face needs a member");
  FaceDescriptor f;
  f.level = x.level();
  f.generator = x;
  f.kernel = kernel_basis(evaluate(l, x), tol);
  f.directions = RMatrix::Zero(static_cast<Eigen::Index>(l.g() * x.level() * x.level()), 0);
  return f;
}

bool face_contains(const LinearPencil& l, const FaceDescriptor& f, const MatrixTuple& y, double slack) {
  if (y.level() != f.level) return false;
  if (min_eigenvalue(evaluate(l, y)) < -slack) return false;
  const RVector d = to_real(y - f.generator);
  const RVector off = d - f.directions * (f.directions.transpose() * d);
  return off.norm() <= slack;
}

namespace {

double min_singular(const CMatrix& gamma) {
  Eigen::JacobiSVD<CMatrix> svd(gamma);
  const RVector s = svd.singularValues();
  if (gamma.rows() > gamma.cols()) return 0.0;
  return s(s.size() - 1);
}

double min_singular(const MatrixConvexCombination& c) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& t : c.terms) m = std::min(m, min_singular(t.gamma));
  return m;
}

CMatrix half_identity(std::size_t n) {
  const auto nn = static_cast<Eigen::Index>(n);
  return CMatrix::Identity(nn, nn) / std::sqrt(2.0);
}

// Shifts the points by the minimum-norm correction making sum gamma* A gamma equal the target.
bool correct_to_target(MatrixConvexCombination& c, const MatrixTuple& target) {
  const std::size_t n = target.level();
  const std::size_t g = target.g();
  const auto out_dim = static_cast<Eigen::Index>(g * n * n);
  Eigen::Index in_dim = 0;
  for (const auto& t : c.terms) in_dim += static_cast<Eigen::Index>(g * t.point.level() * t.point.level());
  RMatrix m(out_dim, in_dim);
  Eigen::Index col = 0;
  for (const auto& t : c.terms) {
    const std::size_t r = t.point.level();
    const auto rr = static_cast<Eigen::Index>(r * r);
    for (std::size_t j = 0; j < g; ++j) {
      for (Eigen::Index e = 0; e < rr; ++e) {
        const HermitianMatrix img = hermitian_from_real(RVector::Unit(rr, e), r).congruence(t.gamma);
        m.col(col).setZero();
        m.col(col).segment(static_cast<Eigen::Index>(j * n * n), static_cast<Eigen::Index>(n * n)) = to_real(img);
        ++col;
      }
    }
  }
  const RVector rhs = to_real(target) - to_real(apply_combination(c));
  const RVector delta = m.completeOrthogonalDecomposition().solve(rhs);
  if ((m * delta - rhs).norm() > 1e-9 * (1.0 + rhs.norm() + to_real(target).norm())) return false;
  Eigen::Index pos = 0;
  for (auto& t : c.terms) {
    const std::size_t r = t.point.level();
    const auto len = static_cast<Eigen::Index>(g * r * r);
    t.point = t.point + tuple_from_real(delta.segment(pos, len), r, g);
    pos += len;
  }
  return true;
}

bool components_in_d(const LinearPencil& l, const MatrixConvexCombination& c, const ScaledTolerance& tol) {
  for (const auto& t : c.terms) {
    const HermitianMatrix lx = evaluate(l, t.point);
    if (min_eigenvalue(lx) < -tol.effective(spectral_norm(lx))) return false;
  }
  return true;
}

// Structured and random proper combinations reproducing a target, shared by the face and
// multiface falsifiers.
class ProposalSource {
 public:
  ProposalSource(const LinearPencil& l, const ScaledTolerance& tol, unsigned long long seed)
      : l_(l), tol_(tol), rng_(derived_rng(seed, 0xfa15ULL)) {
    try {
      bank_.emplace(l, 32, seed, tol);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotInterior) throw;
    }
  }

  Rng& rng() { return rng_; }

  void set_target(const MatrixTuple& t) {
    target_ = t;
    try {
      reduction_ = reducing_decomposition(t, tol_);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::AmbiguousRank) throw;
      reduction_.reset();
    }
    directions_ = face_of(l_, t.level(), t, tol_).directions;
  }

  /// Proposal of the given kind (0 reduction, 1 conjugation, 2 midpoint, otherwise random);
  /// falls back to a random proposal when the structured kind does not apply.
  std::optional<MatrixConvexCombination> propose(int kind, std::size_t min_level) {
    const std::size_t n = target_.level();
    if (kind == 0 && reduction_ && min_level < n) return reduction_;
    if (kind == 1) {
      const CMatrix u = random_unitary(n, rng_);
      MatrixConvexCombination c;
      c.target_level = n;
      c.terms.push_back({target_.congruence(u.adjoint()), u});
      return c;
    }
    if (kind == 2 && directions_.cols() > 0) {
      std::normal_distribution<double> normal;
      RVector w(directions_.cols());
      for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = normal(rng_);
      const MatrixTuple d = tuple_from_real(directions_ * w.normalized(), n, l_.g());
      double t = std::min(max_step(l_, d, target_, tol_), max_step(l_, d * -1.0, target_, tol_));
      if (!std::isfinite(t)) t = 1.0;
      t *= uniform(rng_, 0.2, 1.0);
      if (t > 1e-9) {
        MatrixConvexCombination c;
        c.target_level = n;
        c.terms.push_back({target_ + d * t, half_identity(n)});
        c.terms.push_back({target_ - d * t, half_identity(n)});
        return c;
      }
    }
    return random_proposal(min_level);
  }

 private:
  std::optional<MatrixConvexCombination> random_proposal(std::size_t min_level) {
    if (!bank_) return std::nullopt;
    const std::size_t n = target_.level();
    const std::size_t m = 1 + uniform_index(rng_, 3);
    std::vector<std::size_t> levels;
    std::size_t total = 0;
    for (std::size_t i = 0; i < m || total < n; ++i) {
      levels.push_back(min_level + uniform_index(rng_, n - min_level + 1));
      total += levels.back();
    }
    const std::vector<CMatrix> gammas = random_partition_of_unity(levels, n, rng_);
    MatrixConvexCombination c;
    c.target_level = n;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      const auto& pool = uniform(rng_) < 0.5 ? bank_->boundary(levels[i]) : bank_->interior(levels[i]);
      if (pool.empty()) return std::nullopt;
      c.terms.push_back({pool[uniform_index(rng_, pool.size())], gammas[i]});
    }
    if (min_singular(c) < 0.05) return std::nullopt;
    if (!correct_to_target(c, target_)) return std::nullopt;
    return c;
  }

  const LinearPencil& l_;
  ScaledTolerance tol_;
  Rng rng_;
  std::optional<SampleBank> bank_;
  MatrixTuple target_;
  std::optional<MatrixConvexCombination> reduction_;
  RMatrix directions_;
};

}  // namespace

// ---------------------------------------------------------------------------
// Fixed-level matrix faces

FaceVerifyReport matrix_face_verify(const LinearPencil& l, const FaceDescriptor& f, FaceType type,
                                    const ScaledTolerance& tol, const FaceVerifyOptions& opts) {
  const std::size_t n = f.level;
  FaceVerifyReport rep;
  rep.budget = opts.budget;
  ProposalSource source(l, tol, opts.seed);
  Rng& rng = source.rng();
  const std::size_t min_level = type == FaceType::CStarFace ? n : 1;
  MatrixTuple target;

  auto fail = [&](MatrixConvexCombination c, const std::string& why) {
    rep.verdict = Falsification::Counterexample;
    rep.counterexample = std::move(c);
    rep.reason = why;
    return rep;
  };

  for (std::size_t b = 0; b < opts.budget; ++b) {
    if (b % 16 == 0) {
      target = sample_face_point(l, f, rng);
      source.set_target(target);
    }
    ++rep.proposals;
    const double scale = 1.0 + target.norm();

    if (type == FaceType::CStarFace && b % 8 == 7) {
      // C*-convexity: square combinations of points of F stay in F.
      const std::vector<CMatrix> gammas = random_partition_of_unity({n, n}, n, rng);
      MatrixConvexCombination c;
      c.target_level = n;
      c.terms.push_back({target, gammas[0]});
      c.terms.push_back({sample_face_point(l, f, rng), gammas[1]});
      const double slack = 10.0 * tol.effective(scale);
      if (!face_contains(l, f, apply_combination(c), slack)) return fail(c, "F is not C*-convex");
      continue;
    }

    auto proposal = source.propose(static_cast<int>(b % 4), min_level);
    if (!proposal || !components_in_d(l, *proposal, tol)) continue;
    const double sigma = min_singular(*proposal);
    if (sigma <= 0.0) continue;
    const double slack = 10.0 * tol.effective(scale) / (sigma * sigma);
    if (!face_contains(l, f, apply_combination(*proposal), slack)) continue;
    ++rep.accepted;

    for (const auto& t : proposal->terms) {
      if (t.point.level() != n) return fail(*proposal, "proper combination landing in F has a component below level n");
      if (face_contains(l, f, t.point, slack)) continue;
      if (type != FaceType::WeakFace) return fail(*proposal, "component of a proper combination lies outside F");
      if (f.dimension() > 0) {
        ++rep.unresolved;
        continue;
      }
      try {
        if (!unitarily_equivalent(t.point, f.generator, tol.scaled(10.0 / (sigma * sigma)))) {
          return fail(*proposal, "component is not unitarily equivalent to a point of F");
        }
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Inconclusive) throw;
        ++rep.unresolved;
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Matrix exposed faces

ExposedFaceReport matrix_exposed_face_verify(const LinearPencil& l, const FaceDescriptor& f, const ExposingPair& pair,
                                             FaceType type, const ScaledTolerance& tol,
                                             const ExposedFaceOptions& opts) {
  if (pair.n() != f.level) throw Error(ErrorKind::ArityMismatch, "pair level differs from the face level");
  if (pair.g() != l.g()) throw Error(ErrorKind::ArityMismatch, "pair arity differs from the pencil");
  const std::size_t n = f.level;
  const LinearPencil p = pair.as_pencil();
  ExposedFaceReport rep;
  rep.r_max = opts.r_max == 0 ? 2 * n : opts.r_max;
  Rng rng = derived_rng(opts.seed, 0xe4f0ULL);

  auto counterexample = [&](const MatrixTuple& b, const std::string& why) {
    rep.singular_locus_matches = LocusVerdict::CounterexampleFound;
    rep.counterexample = b;
    rep.counterexample_reason = why;
    return rep;
  };
  auto margin = [&](const MatrixTuple& b) {
    const HermitianMatrix m = evaluate(p, b);
    return std::make_pair(min_eigenvalue(m), tol.effective(spectral_norm(m)));
  };

  // F lies in the singular locus, and the common kernel over F.
  std::vector<MatrixTuple> face_points{f.generator};
  for (std::size_t s = 0; s < opts.face_samples; ++s) face_points.push_back(sample_face_point(l, f, rng));
  CMatrix stacked(0, static_cast<Eigen::Index>(n * n));
  for (const auto& a : face_points) {
    ++rep.samples_checked;
    const auto [lam, t] = margin(a);
    if (lam < -t) {
      rep.dominance_holds = false;
      return counterexample(a, "pair fails positivity on a point of F");
    }
    if (lam > t) return counterexample(a, "point of F is not singular for the pair");
    const CMatrix m = evaluate(p, a).matrix();
    CMatrix next(stacked.rows() + m.rows(), m.cols());
    next << stacked, m;
    stacked = next;
  }
  try {
    const CMatrix joint = complex_nullspace(stacked, tol);
    rep.joint_kernel_dim = static_cast<std::size_t>(joint.cols());
    if (joint.cols() > 0) rep.joint_kernel_components_rank = component_rank(kernel_components(joint.col(0), n));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::AmbiguousRank) throw;
    ++rep.unresolved;
  }

  auto in_orbit = [&](const MatrixTuple& b, double slack) -> std::optional<bool> {
    if (face_contains(l, f, b, slack)) return true;
    if (type != FaceType::WeakFace) return false;
    if (f.dimension() > 0) return std::nullopt;
    try {
      return unitarily_equivalent(b, f.generator, tol);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Inconclusive) throw;
      return std::nullopt;
    }
  };

  SampleBank bank(l, opts.budget, opts.seed, tol);
  for (std::size_t r = 1; r <= rep.r_max; ++r) {
    for (const auto* set : {&bank.boundary(r), &bank.interior(r)}) {
      for (const MatrixTuple& b : *set) {
        ++rep.samples_checked;
        const auto [lam, t] = margin(b);
        if (lam < -t) {
          rep.dominance_holds = false;
          return counterexample(b, "pair fails positivity on a member of D");
        }
        if (r < n && lam <= t) {
          rep.strict_below_n = false;
          return counterexample(b, "pair is singular on a member below level n");
        }
        if (r == n && lam <= t) {
          const auto inside = in_orbit(b, 100.0 * tol.effective(1.0 + b.norm()));
          if (!inside) {
            ++rep.unresolved;
          } else if (!*inside) {
            return counterexample(b, "singular member lies outside F");
          }
        }
      }
    }
  }
  // Unitary conjugates of F are singular, so for the face type they must lie in F.
  for (std::size_t c = 0; c < opts.conjugates; ++c) {
    const MatrixTuple b = f.generator.congruence(random_unitary(n, rng));
    ++rep.samples_checked;
    const auto inside = in_orbit(b, 100.0 * tol.effective(1.0 + b.norm()));
    if (!inside) {
      ++rep.unresolved;
    } else if (!*inside) {
      return counterexample(b, "singular unitary conjugate of F lies outside F");
    }
  }

  if (rep.joint_kernel_dim == 1 && rep.joint_kernel_components_rank == n && rep.unresolved == 0) {
    rep.singular_locus_matches = LocusVerdict::Confirmed;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Multifaces

namespace {

bool lp_hull(const std::vector<RVector>& points, const RVector& y, double tol) {
  if (points.empty()) return false;
  const std::size_t m = points.size();
  AffinePSDProblem p(std::vector<std::size_t>(m, 1));
  p.tol = ScaledTolerance{tol, 0.0};
  for (Eigen::Index d = 0; d < y.size(); ++d) {
    RVector row(static_cast<Eigen::Index>(m));
    for (std::size_t s = 0; s < m; ++s) row(static_cast<Eigen::Index>(s)) = points[s](d);
    p.add_real_row(row, y(d));
  }
  p.add_real_row(RVector::Ones(static_cast<Eigen::Index>(m)), 1.0);
  SolveReport rep;
  try {
    rep = solve_feasibility(p);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InconsistentRows) throw;
    return false;
  }
  if (rep.status != SolveStatus::Feasible) return false;
  RVector rebuilt = RVector::Zero(y.size());
  for (std::size_t s = 0; s < m; ++s) rebuilt += std::max(0.0, rep.point[s](0, 0).real()) * points[s];
  return (rebuilt - y).norm() <= 10.0 * tol * (1.0 + y.norm());
}

}  // namespace

bool in_convex_hull(const std::vector<MatrixTuple>& points, const MatrixTuple& y, double tol) {
  std::vector<RVector> pts;
  for (const auto& x : points) {
    if (x.level() != y.level() || x.g() != y.g()) throw Error(ErrorKind::ArityMismatch, "hull points differ in shape");
    pts.push_back(to_real(x));
  }
  return lp_hull(pts, to_real(y), tol);
}

MultifaceCandidate MultifaceCandidate::generated(std::vector<MatrixTuple> generators) {
  if (generators.empty()) throw Error(ErrorKind::Validation, "multiface needs generators");
  MultifaceCandidate c;
  c.kind = Kind::Generated;
  c.generators = std::move(generators);
  return c;
}

MultifaceCandidate MultifaceCandidate::explicit_levels(std::map<std::size_t, std::vector<MatrixTuple>> points) {
  MultifaceCandidate c;
  c.kind = Kind::Explicit;
  for (const auto& [level, pts] : points) {
    for (const auto& x : pts) {
      if (x.level() != level) throw Error(ErrorKind::ArityMismatch, "explicit multiface point at the wrong level");
    }
  }
  c.points = std::move(points);
  return c;
}

std::vector<std::size_t> MultifaceCandidate::levels(std::size_t max_level) const {
  std::vector<std::size_t> out;
  for (std::size_t n = 1; n <= max_level; ++n) {
    if (kind == Kind::Generated) {
      out.push_back(n);
    } else {
      auto it = points.find(n);
      if (it != points.end() && !it->second.empty()) out.push_back(n);
    }
  }
  return out;
}

bool MultifaceCandidate::contains(const MatrixTuple& y, double tol) const {
  if (kind == Kind::Generated) {
    HullOptions ho;
    ho.tol = tol;
    return hull_membership(generators, y, ho).verdict == HullVerdict::Member;
  }
  auto it = points.find(y.level());
  if (it == points.end() || it->second.empty()) return false;
  return in_convex_hull(it->second, y, tol);
}

std::optional<MatrixTuple> MultifaceCandidate::sample(std::size_t n, Rng& rng) const {
  if (kind == Kind::Generated) {
    const std::size_t m = 1 + uniform_index(rng, std::min<std::size_t>(3, generators.size() + 1));
    std::vector<std::size_t> picks;
    std::vector<std::size_t> levels;
    std::size_t total = 0;
    for (std::size_t i = 0; i < m || total < n; ++i) {
      picks.push_back(uniform_index(rng, generators.size()));
      levels.push_back(generators[picks.back()].level());
      total += levels.back();
    }
    const std::vector<CMatrix> gammas = random_partition_of_unity(levels, n, rng);
    MatrixConvexCombination c;
    c.target_level = n;
    for (std::size_t i = 0; i < picks.size(); ++i) c.terms.push_back({generators[picks[i]], gammas[i]});
    return apply_combination(c);
  }
  auto it = points.find(n);
  if (it == points.end() || it->second.empty()) return std::nullopt;
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w;
  double total = 0.0;
  for (std::size_t i = 0; i < it->second.size(); ++i) {
    w.push_back(expo(rng));
    total += w.back();
  }
  MatrixTuple y = it->second.front() * (w[0] / total);
  for (std::size_t i = 1; i < it->second.size(); ++i) y = y + it->second[i] * (w[i] / total);
  return y;
}

MultifaceReport multiface_verify(const LinearPencil& l, const MultifaceCandidate& f, MultifaceType type,
                                 const ScaledTolerance& tol, const MultifaceOptions& opts) {
  MultifaceReport rep;
  rep.budget = opts.budget;
  const std::vector<std::size_t> levels = f.levels(opts.max_level);
  if (levels.empty()) return rep;
  ProposalSource source(l, tol, opts.seed);
  Rng& rng = source.rng();
  constexpr double member_tol = 1e-6;

  auto fail = [&](MatrixConvexCombination c, const std::string& why) {
    rep.verdict = Falsification::Counterexample;
    rep.counterexample = std::move(c);
    rep.reason = why;
  };

  // Heredity: points extreme in F must be matrix extreme in D.
  std::vector<MatrixTuple> candidates;
  if (f.kind == MultifaceCandidate::Kind::Generated) {
    for (std::size_t i = 0; i < f.generators.size(); ++i) {
      std::vector<MatrixTuple> others;
      for (std::size_t j = 0; j < f.generators.size(); ++j)
        if (j != i) others.push_back(f.generators[j]);
      HullOptions ho;
      ho.tol = member_tol;
      if (!others.empty() && hull_membership(others, f.generators[i], ho).verdict == HullVerdict::Member) continue;
      candidates.push_back(f.generators[i]);
    }
  } else {
    for (const auto& [level, pts] : f.points) {
      for (std::size_t i = 0; i < pts.size(); ++i) {
        std::vector<MatrixTuple> others;
        for (std::size_t j = 0; j < pts.size(); ++j)
          if (j != i) others.push_back(pts[j]);
        if (!others.empty() && in_convex_hull(others, pts[i], member_tol)) continue;
        candidates.push_back(pts[i]);
      }
    }
  }
  for (const auto& x : candidates) {
    if (!irreducible(x, tol) || !is_member(l, x, tol)) continue;
    ++rep.heredity_checked;
    const ExtremeReport er = matrix_extreme(l, x, tol);
    if (er.verdict == ExtremeVerdict::Yes) continue;
    ++rep.heredity_failures;
    if (rep.verdict == Falsification::NoCounterexample && er.witness) {
      fail(*er.witness, "point extreme in F is not matrix extreme in D");
    }
  }
  if (rep.verdict == Falsification::Counterexample) return rep;

  MatrixTuple target;
  for (std::size_t b = 0; b < opts.budget; ++b) {
    const std::size_t n = levels[(b / 8) % levels.size()];
    if (b % 8 == 0) {
      const auto t = f.sample(n, rng);
      if (!t) continue;
      target = *t;
      source.set_target(target);
    }
    ++rep.proposals;
    if (type == MultifaceType::ConvexMultiface && b % 8 == 7) {
      // Matrix convexity: combinations of members of F across levels stay in F.
      const std::size_t m1 = levels[uniform_index(rng, levels.size())];
      const auto other = f.sample(m1, rng);
      if (!other) continue;
      const std::vector<CMatrix> gammas = random_partition_of_unity({target.level(), m1}, target.level(), rng);
      MatrixConvexCombination c;
      c.target_level = target.level();
      c.terms.push_back({target, gammas[0]});
      c.terms.push_back({*other, gammas[1]});
      if (!f.contains(apply_combination(c), member_tol)) {
        fail(c, "F is not matrix convex");
        return rep;
      }
      continue;
    }
    auto proposal = source.propose(static_cast<int>(b % 4), 1);
    if (!proposal || !components_in_d(l, *proposal, tol)) continue;
    ++rep.accepted;
    for (const auto& t : proposal->terms) {
      if (!f.contains(t.point, member_tol)) {
        fail(*proposal, "component of a proper combination landing in F lies outside F");
        return rep;
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Polytope vertices

bool positively_generated_kernel(const std::vector<RVector>& vertices, const RVector& x) {
  std::size_t index = vertices.size();
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i].size() != x.size()) throw Error(ErrorKind::ArityMismatch, "vertex dimension mismatch");
    if ((vertices[i] - x).norm() <= 1e-9 * (1.0 + x.norm())) index = i;
  }
  if (index == vertices.size()) throw Error(ErrorKind::NotVertex, "point is not among the vertices");
  std::vector<RVector> others;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (i != index) others.push_back(vertices[i]);
  if (lp_hull(others, x, 1e-9)) throw Error(ErrorKind::NotVertex, "point lies in the hull of the other vertices");

  const auto d = x.size();
  const auto m = static_cast<Eigen::Index>(others.size());
  for (Eigen::Index j = 0; j < d; ++j) {
    // Variables: c (free, f1(y) = c.(y - x)), then s_v = f1(v) >= 0 and t_v = f1(v) - f_j(v) >= 0.
    std::vector<std::size_t> dims(static_cast<std::size_t>(d + 2 * m), 1);
    std::vector<BlockKind> kinds(static_cast<std::size_t>(d), BlockKind::Free);
    kinds.resize(dims.size(), BlockKind::Psd);
    AffinePSDProblem p(dims, kinds);
    p.tol = ScaledTolerance{1e-9, 0.0};
    for (Eigen::Index v = 0; v < m; ++v) {
      const RVector diff = others[static_cast<std::size_t>(v)] - x;
      RVector row = RVector::Zero(d + 2 * m);
      row.head(d) = -diff;
      row(d + v) = 1.0;
      p.add_real_row(row, 0.0);
      RVector row2 = RVector::Zero(d + 2 * m);
      row2.head(d) = -diff;
      row2(d + m + v) = 1.0;
      p.add_real_row(row2, -diff(j));
    }
    if (solve_feasibility(p).status != SolveStatus::Feasible) return false;
  }
  return true;
}

}  // namespace mcs
