// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "mcs/convexity.hpp"
#include "mcs/extremality.hpp"
#include "mcs/faces.hpp"
#include "mcs/feasibility.hpp"
#include "mcs/fixtures.hpp"
#include "mcs/matrix_faces.hpp"
#include "mcs/sampling.hpp"
#include "support.hpp"

using namespace mcs;

namespace {

// Pinned thresholds.
constexpr double kHullTol = 1e-6;
constexpr double kFaceGapMax = 1e-8;
constexpr double kNonFaceGapMin = 1e-6;
constexpr double kDouglasTol = 1e-8;
constexpr double kDouglasCondition = 1e6;
constexpr double kCuspTol = 1e-9;
constexpr double kInterval1Seconds = 60.0;
constexpr double kCrossValidationSeconds = 600.0;
constexpr double kFaceSeconds = 300.0;
constexpr std::size_t kFaceBudget = 10000;
constexpr std::size_t kMultifaceBudget = 10000;
constexpr std::size_t kStallIterations = 20000;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass;
  std::string detail;
};

// Exposure reports confirmed during criteria 1 and 2, checked for kernel structure in criterion 3.
std::vector<std::pair<ExposureReport, std::size_t>> g_confirmed;

void record(const PairSearchResult& s, std::size_t n) {
  if (s.found && s.report.confirmed()) g_confirmed.emplace_back(s.report, n);
}


MatrixTuple reflections() {
  CMatrix sx(2, 2);
  sx << 0.0, 1.0, 1.0, 0.0;
  return MatrixTuple(std::vector<HermitianMatrix>{HermitianMatrix::diagonal({1.0, -1.0}), HermitianMatrix(sx)});
}

Outcome interval_suite() {
  const auto t0 = Clock::now();
  const LinearPencil l = fixtures::interval();
  std::size_t wrong = 0;
  for (double e : {0.0, 1.0}) {
    const MatrixTuple x = MatrixTuple::scalars({e});
    if (matrix_extreme(l, x).verdict != ExtremeVerdict::Yes) ++wrong;
    record(search_exposing_pair(l, x), 1);
  }
  Rng rng = derived_rng(1001, 1);
  for (int i = 1; i < 50; ++i) {
    if (matrix_extreme(l, MatrixTuple::scalars({uniform(rng, 1e-3, 1.0 - 1e-3)})).verdict != ExtremeVerdict::No) ++wrong;
  }
  std::size_t members = 0;
  for (std::size_t n = 2; n <= 3; ++n) {
    const MatrixTuple base = ampliate(MatrixTuple::scalars({0.5}), n);
    Rng r = derived_rng(1001, n);
    for (int i = 0; i < 250; ++i) {
      const auto x = i % 2 == 0 ? random_boundary_point(l, base, r) : random_interior_point(l, base, r);
      if (!x) continue;
      ++members;
      if (matrix_extreme(l, *x).verdict != ExtremeVerdict::No) ++wrong;
    }
  }
  CoverOptions co;
  co.hull_tol = kHullTol;
  const CoverReport cover = exposed_hull_cover(l, {}, co);
  bool endpoints = cover.generators.size() == 2;
  for (const auto& gen : cover.generators) {
    const double v = gen[0](0, 0).real();
    endpoints = endpoints && (std::abs(v) <= 1e-8 || std::abs(v - 1.0) <= 1e-8);
  }
  const double secs = seconds_since(t0);
  const bool pass = wrong == 0 && members == 500 && cover.coverage() == 1.0 && endpoints && secs < kInterval1Seconds;
  char buf[256];
  std::snprintf(buf, sizeof buf, "wrong verdicts %zu, level 2-3 members %zu, coverage %.4f by %zu generators, %.1f s",
                wrong, members, cover.coverage(), cover.generators.size(), secs);
  return {pass, buf};
}

Outcome cross_validation() {
  const auto t0 = Clock::now();
  std::size_t total = 0, discrepancies = 0, inconclusive = 0, yes = 0;
  for (int which = 0; which < 2; ++which) {
    const LinearPencil l = which == 0 ? fixtures::interval() : fixtures::cube(2);
    for (std::size_t n = 1; n <= 2; ++n) {
      Rng rng = derived_rng(2002 + which, n);
      const MatrixTuple base = ampliate(find_interior_point(l), n);
      for (int i = 0; i < 50; ++i) {
        const auto b = random_boundary_point(l, base, rng);
        if (!b) continue;
        // Half the sample is pushed to point faces so both outcomes are exercised.
        const MatrixTuple x = i % 2 == 0 ? descend_to_extreme(l, *b, rng) : *b;
        const ExtremeReport er = matrix_extreme(l, x);
        if (er.verdict == ExtremeVerdict::Inconclusive) ++inconclusive;
        const bool expected = er.verdict == ExtremeVerdict::Yes && classical_exposed_level(l, n, x);
        PairSearchOptions so;
        so.check_preconditions = false;
        const PairSearchResult s = search_exposing_pair(l, x, {}, so);
        record(s, n);
        ++total;
        yes += expected;
        if (s.found != expected) ++discrepancies;
      }
    }
  }
  const double secs = seconds_since(t0);
  char buf[256];
  std::snprintf(buf, sizeof buf, "%zu points (%zu exposed), %zu discrepancies, %zu inconclusive, %.1f s", total, yes,
                discrepancies, inconclusive, secs);
  return {total == 200 && discrepancies == 0 && inconclusive == 0 && secs < kCrossValidationSeconds, buf};
}

Outcome pair_structure() {
  std::size_t violations = 0;
  for (const auto& [r, n] : g_confirmed) {
    if (r.kernel_dim_at_a != 1 || r.kernel_components_rank != n) ++violations;
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "%zu confirmed reports, %zu violations", g_confirmed.size(), violations);
  return {!g_confirmed.empty() && violations == 0, buf};
}

Outcome spectrahedron_faces() {
  const auto t0 = Clock::now();
  double worst_face = 0.0;
  double worst_non_face = std::numeric_limits<double>::infinity();
  std::size_t faces = 0, non_face_total = 0, short_faces = 0;
  for (unsigned long long p = 0; p < 50; ++p) {
    const std::size_t k = 2 + p % 3;
    const std::size_t g = 1 + (p / 3) % 3;
    const LinearPencil l = fixtures::random_monic(k, g, 4000 + p);
    Rng rng = derived_rng(4004, p);
    const MatrixTuple base = MatrixTuple::zero(1, g);
    for (int i = 0; i < 20; ++i) {
      const auto x = random_boundary_point(l, base, rng);
      if (!x) continue;
      const FaceDescriptor f = face_of(l, 1, *x);
      const ExposingFunctional fn = exposed_face_functional(l, 1, f, {}, 0);
      ++faces;
      // Reference gap: sum over kernel columns of v* L(Y) v, from an explicit evaluation.
      auto ref_gap = [&](const MatrixTuple& y) {
        return (f.kernel.adjoint() * test::reference_evaluate(l, y) * f.kernel).trace().real();
      };
      for (int s = 0; s < 10; ++s) {
        const MatrixTuple y = s == 0 ? *x : sample_face_point(l, f, rng);
        worst_face = std::max({worst_face, std::abs(fn.gap(y)), std::abs(ref_gap(y))});
      }
      std::size_t non_face = 0;
      for (int attempt = 0; attempt < 2000 && non_face < 500; ++attempt) {
        std::optional<MatrixTuple> y;
        if (attempt % 2 == 0) {
          y = random_interior_point(l, base, rng);
        } else {
          y = random_boundary_point(l, base, rng);
          if (y && face_residual(l, f, *y) < 1e-2) continue;
        }
        if (!y) continue;
        ++non_face;
        worst_non_face = std::min({worst_non_face, fn.gap(*y), ref_gap(*y)});
      }
      non_face_total += non_face;
      if (non_face < 500) ++short_faces;
    }
  }
  const double secs = seconds_since(t0);
  char buf[256];
  std::snprintf(buf, sizeof buf, "%zu faces, max face gap %.2e, min non-face gap %.2e over %zu samples, %.1f s", faces,
                worst_face, worst_non_face, non_face_total, secs);
  return {faces == 1000 && short_faces == 0 && worst_face <= kFaceGapMax && worst_non_face >= kNonFaceGapMin &&
              secs < kFaceSeconds,
          buf};
}

Outcome cusp_region() {
  using fixtures::CuspRegion;
  const CuspRegion region;
  std::vector<CuspRegion::Point> boundary;
  for (int i = 0; i < 720; ++i) boundary.push_back(region.boundary_point(2.0 * std::numbers::pi * i / 720.0));
  // Reference exposure: a supporting line touching the region only at p.
  auto exposed_by = [&](const CuspRegion::Point& p, double nx, double ny) {
    const double level = nx * p[0] + ny * p[1];
    for (const auto& q : boundary) {
      const double v = nx * q[0] + ny * q[1];
      if (v > level + kCuspTol) return false;
      const double d = std::hypot(q[0] - p[0], q[1] - p[1]);
      if (d > 1e-3 && v > level - 1e-12) return false;
    }
    return true;
  };
  bool ok = fixtures::classical_extreme_level(region, {0.0, 0.0}) &&
            !fixtures::classical_exposed_level(region, {0.0, 0.0});
  // The only supporting line at the origin is x2 = 0, and it touches a whole edge.
  std::size_t on_edge = 0;
  for (const auto& q : boundary) {
    ok = ok && q[1] >= -kCuspTol;
    if (std::abs(q[1]) <= kCuspTol && q[0] < -1e-3) ++on_edge;
  }
  ok = ok && on_edge > 0;
  std::size_t inconsistent = 0, arc = 0;
  for (const auto& p : boundary) {
    const bool extreme = fixtures::classical_extreme_level(region, p);
    const bool exposed = fixtures::classical_exposed_level(region, p);
    const bool on_arc = p[0] > 1e-9 && p[0] < 1.0 - 1e-9 && std::abs(p[1] - p[0] * p[0] * p[0]) <= kCuspTol;
    bool want_exposed = false;
    if (on_arc) {
      ++arc;
      want_exposed = exposed_by(p, 3.0 * p[0] * p[0], -1.0);
    } else if (std::abs(p[0] + 1.0) <= kCuspTol && std::abs(p[1]) <= kCuspTol) {
      want_exposed = exposed_by(p, -1.0, -1.0);
    } else if (std::abs(p[0] + 1.0) <= kCuspTol && std::abs(p[1] - 1.0) <= kCuspTol) {
      want_exposed = exposed_by(p, -1.0, 1.0);
    } else if (std::abs(p[0] - 1.0) <= kCuspTol && std::abs(p[1] - 1.0) <= kCuspTol) {
      want_exposed = exposed_by(p, 1.0, 1.0);
    }
    if (exposed != want_exposed || extreme != (want_exposed || (p[0] == 0.0 && p[1] == 0.0))) ++inconsistent;
  }
  ok = ok && arc > 0 && inconsistent == 0;
  char buf[160];
  std::snprintf(buf, sizeof buf, "origin extreme and not exposed; %zu boundary samples, %zu on the arc, %zu inconsistent",
                boundary.size(), arc, inconsistent);
  return {ok, buf};
}

Outcome face_interplay() {
  const LinearPencil interval = fixtures::interval();
  const LinearPencil cube = fixtures::cube(2);
  std::vector<std::pair<const LinearPencil*, MatrixTuple>> cases{
      {&interval, MatrixTuple::scalars({0.0})},     {&interval, MatrixTuple::scalars({1.0})},
      {&interval, MatrixTuple::scalars({0.5})},     {&cube, MatrixTuple::scalars({1.0, 1.0})},
      {&cube, MatrixTuple::scalars({-1.0, 1.0})},   {&cube, MatrixTuple::scalars({1.0, 0.25})},
      {&cube, reflections()},
  };
  Rng rng = derived_rng(6006, 0);
  for (int i = 0; i < 3; ++i) {
    const auto b = random_boundary_point(cube, MatrixTuple::zero(2, 2), rng);
    if (b) cases.emplace_back(&cube, descend_to_extreme(cube, *b, rng));
  }
  std::size_t disagreements = 0, pairs = 0;
  for (const auto& [l, x] : cases) {
    const std::size_t n = x.level();
    const FaceType type = n == 1 ? FaceType::Face : FaceType::WeakFace;
    const FaceDescriptor f = singleton_face(*l, x);
    FaceVerifyOptions fo;
    fo.budget = kFaceBudget;
    const bool face = matrix_face_verify(*l, f, type, {}, fo).verdict == Falsification::NoCounterexample;
    PairSearchOptions so;
    so.check_preconditions = false;
    const PairSearchResult s = search_exposing_pair(*l, x, {}, so);
    bool confirmed = false;
    if (s.found) {
      ++pairs;
      confirmed = matrix_exposed_face_verify(*l, f, *s.pair, type).confirmed();
    }
    if (confirmed && !face) ++disagreements;
    if (face && classical_exposed_level(*l, n, x) && !confirmed) ++disagreements;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu singleton faces, %zu confirmed pairs, %zu disagreements at budget %zu",
                cases.size(), pairs, disagreements, kFaceBudget);
  return {disagreements == 0 && pairs > 0, buf};
}

Outcome multifaces() {
  const LinearPencil l = fixtures::interval();
  MultifaceOptions o;
  o.budget = kMultifaceBudget;
  const MultifaceReport zero =
      multiface_verify(l, MultifaceCandidate::generated({MatrixTuple::scalars({0.0})}), MultifaceType::Multiface, {}, o);
  const MultifaceReport half =
      multiface_verify(l, MultifaceCandidate::generated({MatrixTuple::scalars({0.5})}), MultifaceType::Multiface, {}, o);
  const bool pass = zero.verdict == Falsification::NoCounterexample && zero.heredity_checked > 0 &&
                    zero.heredity_failures == 0 && half.verdict == Falsification::Counterexample;
  char buf[200];
  std::snprintf(buf, sizeof buf, "mconv{0}: %s, %zu proposals, heredity %zu/%zu; mconv{0.5}: %s",
                to_string(zero.verdict), zero.proposals, zero.heredity_checked - zero.heredity_failures,
                zero.heredity_checked, to_string(half.verdict));
  return {pass, buf};
}

Outcome simplex_check() {
  auto v = [](std::initializer_list<double> c) {
    RVector r(static_cast<Eigen::Index>(c.size()));
    Eigen::Index i = 0;
    for (double x : c) r(i++) = x;
    return r;
  };
  const std::vector<RVector> triangle{v({0, 0}), v({3, 0}), v({0, 3})};
  const std::vector<RVector> simplex{v({0, 0, 0}), v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1})};
  std::size_t ok = 0;
  for (const auto& x : triangle) ok += positively_generated_kernel(triangle, x);
  for (const auto& x : simplex) ok += positively_generated_kernel(simplex, x);
  bool rejected = false;
  try {
    positively_generated_kernel(triangle, v({1, 1}));
  } catch (const Error& e) {
    rejected = e.kind() == ErrorKind::NotVertex;
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "%zu/7 vertices positively generated, non-vertex %s", ok,
                rejected ? "rejected with NotVertex" : "not rejected");
  return {ok == 7 && rejected, buf};
}

Outcome solver_soundness() {
  Rng rng = derived_rng(9009, 0);
  std::size_t feasible = 0, bad = 0;
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<std::size_t> dims{1 + uniform_index(rng, 3), 1 + uniform_index(rng, 3)};
    AffinePSDProblem p(dims);
    std::vector<HermitianMatrix> planted;
    for (std::size_t d : dims) {
      const CMatrix g = gaussian_matrix(d, d, rng);
      planted.push_back(HermitianMatrix::symmetrized(g * g.adjoint()));
    }
    std::vector<std::vector<CMatrix>> rows;
    std::vector<double> targets;
    for (int r = 0; r < 3; ++r) {
      std::vector<std::pair<std::size_t, CMatrix>> terms;
      double t = 0.0;
      rows.emplace_back();
      for (std::size_t b = 0; b < dims.size(); ++b) {
        const CMatrix c = gaussian_matrix(dims[b], dims[b], rng);
        t += (c * planted[b].matrix()).trace().real();
        terms.emplace_back(b, c);
        rows.back().push_back(c);
      }
      p.add_row(terms, t);
      targets.push_back(t);
    }
    const SolveReport s = solve_feasibility(p);
    if (s.status != SolveStatus::Feasible) continue;
    ++feasible;
    const double tol = p.effective_tol();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      double v = 0.0;
      for (std::size_t b = 0; b < dims.size(); ++b) v += (rows[r][b] * s.point[b].matrix()).trace().real();
      if (std::abs(v - targets[r]) > tol) ++bad;
    }
    for (const auto& x : s.point)
      if (test::reference_min_eigenvalue(x.matrix()) < -tol) ++bad;
  }
  AffinePSDProblem scalar({1});
  scalar.add_row({{0, CMatrix::Constant(1, 1, 1.0)}}, -1.0);
  SolveOptions so;
  so.max_iter = kStallIterations;
  const SolveReport stall = solve_feasibility(scalar, so);
  const bool stalled = stall.status == SolveStatus::StalledInfeasibleHeuristic && stall.iterations <= kStallIterations;
  char buf[200];
  std::snprintf(buf, sizeof buf, "%zu feasible reports, %zu raw violations; x = -1 instance: %s after %zu iterations",
                feasible, bad, to_string(stall.status), stall.iterations);
  return {feasible > 0 && bad == 0 && stalled, buf};
}

Outcome douglas() {
  Rng rng = derived_rng(10010, 0);
  std::size_t recovered = 0, attempts = 0;
  double worst = 0.0;
  while (attempts < 1000) {
    const std::size_t r = 1 + uniform_index(rng, 4);
    const std::size_t n = r + uniform_index(rng, 3);
    const CMatrix delta = gaussian_matrix(r, n, rng);
    const RVector s = Eigen::JacobiSVD<CMatrix>(delta).singularValues();
    if (s(0) * s(0) / (s(static_cast<Eigen::Index>(r) - 1) * s(static_cast<Eigen::Index>(r) - 1)) >= kDouglasCondition)
      continue;
    ++attempts;
    const CMatrix u = random_unitary(r, rng);
    try {
      const double err = (douglas_unitary(u * delta, delta) - u).norm();
      worst = std::max(worst, err);
      if (err <= kDouglasTol) ++recovered;
    } catch (const Error&) {
    }
  }
  std::size_t mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t r = 1 + uniform_index(rng, 4);
    const std::size_t n = r + uniform_index(rng, 3);
    const CMatrix delta = gaussian_matrix(r, n, rng);
    CMatrix gamma = random_unitary(r, rng) * delta;
    gamma += 1e-4 * gaussian_matrix(r, n, rng);
    try {
      douglas_unitary(gamma, delta);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::GramMismatch) ++mismatches;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu/1000 round trips within %.0e (worst %.1e), %zu/1000 GramMismatch", recovered,
                kDouglasTol, worst, mismatches);
  return {recovered == 1000 && mismatches == 1000, buf};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"matrix interval suite", interval_suite},
      {"exposing pair cross-validation", cross_validation},
      {"exposing pair structure", pair_structure},
      {"spectrahedron faces are exposed", spectrahedron_faces},
      {"cusp region fixture", cusp_region},
      {"face and exposed face agreement", face_interplay},
      {"multiface and heredity", multifaces},
      {"simplex order-ideal check", simplex_check},
      {"solver soundness", solver_soundness},
      {"douglas factorization", douglas},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
