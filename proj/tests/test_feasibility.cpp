#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mcs/feasibility.hpp"
#include "support.hpp"

using namespace mcs;

namespace {

struct Instance {
  AffinePSDProblem problem;
  std::vector<std::vector<std::pair<std::size_t, CMatrix>>> rows;
  std::vector<double> targets;
  std::vector<HermitianMatrix> planted;
};

// Rows drawn at random with targets taken from a planted PSD point, so the instance is feasible.
Instance planted_instance(Rng& rng, std::vector<std::size_t> dims, std::size_t row_count) {
  Instance in;
  in.problem = AffinePSDProblem(dims);
  for (std::size_t d : dims) {
    const CMatrix g = gaussian_matrix(d, d, rng);
    in.planted.push_back(HermitianMatrix::symmetrized(g * g.adjoint() / static_cast<double>(d)));
  }
  for (std::size_t r = 0; r < row_count; ++r) {
    std::vector<std::pair<std::size_t, CMatrix>> terms;
    double target = 0.0;
    for (std::size_t b = 0; b < dims.size(); ++b) {
      const CMatrix c = gaussian_matrix(dims[b], dims[b], rng);
      target += (c * in.planted[b].matrix()).trace().real();
      terms.emplace_back(b, c);
    }
    in.problem.add_row(terms, target);
    in.rows.push_back(terms);
    in.targets.push_back(target);
  }
  return in;
}

// Raw residual from the original row data, without the solver's packed representation.
double raw_residual(const Instance& in, const std::vector<HermitianMatrix>& x) {
  double worst = 0.0;
  for (std::size_t r = 0; r < in.rows.size(); ++r) {
    double s = 0.0;
    for (const auto& [b, c] : in.rows[r]) s += (c * x[b].matrix()).trace().real();
    worst = std::max(worst, std::abs(s - in.targets[r]));
  }
  return worst;
}

}  // namespace

TEST_SUITE("feasibility") {

TEST_CASE("feasible reports re-verify against the raw constraints") {
  Rng rng(301);
  std::size_t feasible = 0;
  for (int rep = 0; rep < 12; ++rep) {
    const Instance in = planted_instance(rng, {1 + uniform_index(rng, 3), 1 + uniform_index(rng, 3)}, 3);
    const SolveReport rep_ = solve_feasibility(in.problem);
    if (rep_.status != SolveStatus::Feasible) continue;
    ++feasible;
    const double tol = in.problem.effective_tol();
    CHECK(raw_residual(in, rep_.point) <= tol);
    for (const auto& x : rep_.point) CHECK(test::reference_min_eigenvalue(x.matrix()) >= -tol);
  }
  CHECK(feasible >= 10);
}

TEST_CASE("alternating projections approach a planted point monotonically") {
  Rng rng(302);
  const Instance in = planted_instance(rng, {3}, 2);
  const RVector planted = in.problem.pack(in.planted);
  SolveOptions o;
  o.method = ProjectionMethod::Alternating;
  o.max_iter = 400;
  double last = std::numeric_limits<double>::infinity();
  bool monotone = true;
  // The cone step separates consecutive affine iterates; distances to any feasible point shrink.
  o.observer = [&](const RVector& y) {
    const double d = (y - planted).norm();
    if (d > last + 1e-12) monotone = false;
    last = d;
  };
  solve_feasibility(in.problem, o);
  CHECK(monotone);
}

TEST_CASE("infeasible scalar instance stalls") {
  AffinePSDProblem p({1});
  p.add_row({{0, CMatrix::Constant(1, 1, 1.0)}}, -1.0);
  SolveOptions o;
  o.max_iter = 20000;
  const SolveReport r = solve_feasibility(p, o);
  CHECK(r.status == SolveStatus::StalledInfeasibleHeuristic);
  CHECK(r.iterations <= 20000);
}

TEST_CASE("free blocks are not projected") {
  AffinePSDProblem p({1, 2}, {BlockKind::Free, BlockKind::Psd});
  p.add_row({{0, CMatrix::Constant(1, 1, 1.0)}}, -3.0);
  p.add_row({{1, CMatrix::Identity(2, 2)}}, 1.0);
  const SolveReport r = solve_feasibility(p);
  REQUIRE(r.status == SolveStatus::Feasible);
  CHECK(r.point[0](0, 0).real() == doctest::Approx(-3.0).epsilon(1e-8));
  CHECK(r.point[1].matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("contradictory rows are rejected") {
  AffinePSDProblem p({1});
  p.add_row({{0, CMatrix::Constant(1, 1, 1.0)}}, 1.0);
  p.add_row({{0, CMatrix::Constant(1, 1, 2.0)}}, 3.0);
  try {
    solve_feasibility(p);
    FAIL("expected InconsistentRows");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InconsistentRows);
  }
  AffinePSDProblem q({1});
  q.add_row({{0, CMatrix::Constant(1, 1, 1.0)}}, 1.0);
  q.add_row({{0, CMatrix::Constant(1, 1, 2.0)}}, 2.0);
  CHECK(AffineProjector(q).dropped_rows() == 1);
}

TEST_CASE("trace output has one line per iteration") {
  AffinePSDProblem p({2});
  p.add_row({{0, CMatrix::Identity(2, 2)}}, 1.0);
  std::ostringstream trace;
  SolveOptions o;
  o.trace = &trace;
  const SolveReport r = solve_feasibility(p, o);
  const std::string s = trace.str();
  CHECK(static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')) == r.iterations + 1);
}

}  // TEST_SUITE
