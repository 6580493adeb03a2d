#include <doctest.h>

#include <cmath>

#include "mcs/convexity.hpp"
#include "mcs/fixtures.hpp"
#include "mcs/sampling.hpp"
#include "support.hpp"

using namespace mcs;

namespace {

// Choi matrix of Z -> sum_k g_k* Z g_k, block (a, b) equal to the image of E_ab.
HermitianMatrix reference_choi(const std::vector<CMatrix>& kraus, std::size_t m, std::size_t n) {
  const auto mm = static_cast<Eigen::Index>(m);
  const auto nn = static_cast<Eigen::Index>(n);
  CMatrix c = CMatrix::Zero(mm * nn, mm * nn);
  for (Eigen::Index a = 0; a < mm; ++a) {
    for (Eigen::Index b = 0; b < mm; ++b) {
      CMatrix e = CMatrix::Zero(mm, mm);
      e(a, b) = 1.0;
      for (const CMatrix& g : kraus) c.block(a * nn, b * nn, nn, nn) += g.adjoint() * e * g;
    }
  }
  return HermitianMatrix::symmetrized(c);
}

}  // namespace

TEST_SUITE("convexity") {

TEST_CASE("combination and compression validation") {
  MatrixConvexCombination c;
  c.target_level = 1;
  c.terms.push_back({MatrixTuple::scalars({1.0}), CMatrix::Constant(1, 1, 0.5)});
  try {
    apply_combination(c);
    FAIL("expected PartitionOfUnityViolated");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PartitionOfUnityViolated);
  }
  try {
    compress(MatrixTuple::scalars({1.0}), CMatrix::Constant(1, 1, 2.0));
    FAIL("expected NotContraction");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotContraction);
  }
  try {
    gamma_point(MatrixTuple::scalars({1.0}), CMatrix::Zero(1, 1));
    FAIL("expected ZeroGamma");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroGamma);
  }
}

TEST_CASE("direct sum through coordinate projections") {
  const MatrixTuple a = MatrixTuple::scalars({0.25});
  const MatrixTuple b = MatrixTuple::scalars({0.75});
  MatrixConvexCombination c;
  c.target_level = 2;
  CMatrix p0 = CMatrix::Zero(1, 2);
  CMatrix p1 = CMatrix::Zero(1, 2);
  p0(0, 0) = 1.0;
  p1(0, 1) = 1.0;
  c.terms.push_back({a, p0});
  c.terms.push_back({b, p1});
  CHECK(c.proper());
  CHECK(c.partition_error() <= 1e-15);
  CHECK(max_distance(apply_combination(c), direct_sum(a, b)) <= 1e-15);
}

TEST_CASE("kraus factors reproduce the map of a choi matrix") {
  Rng rng(401);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t m = 1 + uniform_index(rng, 3);
    const std::size_t n = 1 + uniform_index(rng, 3);
    std::vector<CMatrix> kraus;
    for (std::size_t k = 0; k < 1 + uniform_index(rng, 3); ++k) kraus.push_back(gaussian_matrix(m, n, rng));
    const HermitianMatrix choi = reference_choi(kraus, m, n);
    const auto back = kraus_from_choi(choi, m, n);
    for (int t = 0; t < 3; ++t) {
      const CMatrix z = gaussian_matrix(m, m, rng);
      CMatrix want = CMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
      for (const CMatrix& g : kraus) want += g.adjoint() * z * g;
      CMatrix got = CMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
      for (const CMatrix& g : back) got += g.adjoint() * z * g;
      CHECK((got - want).norm() <= 1e-9 * (1.0 + want.norm()));
      CHECK((apply_choi(choi, z, n) - want).norm() <= 1e-9 * (1.0 + want.norm()));
    }
  }
}

TEST_CASE("interval members lie in the matrix convex hull of the endpoints") {
  const LinearPencil l = fixtures::interval();
  const std::vector<MatrixTuple> gens{MatrixTuple::scalars({0.0}), MatrixTuple::scalars({1.0})};
  Rng rng(402);
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    const MatrixTuple base = ampliate(MatrixTuple::scalars({0.5}), n);
    for (int rep = 0; rep < 66; ++rep) {
      const auto x = rep % 2 == 0 ? random_boundary_point(l, base, rng) : random_interior_point(l, base, rng);
      REQUIRE(x.has_value());
      const HullResult h = hull_membership(gens, *x);
      CHECK(h.verdict == HullVerdict::Member);
      if (h.verdict != HullVerdict::Member) continue;
      REQUIRE(h.combination.has_value());
      CHECK(h.combination->partition_error() <= 1e-10);
      CHECK(max_distance(apply_combination(*h.combination), *x) <= 1e-5);
      for (const auto& c : h.choi) CHECK(test::reference_min_eigenvalue(c.matrix()) >= -1e-9);
      ++checked;
    }
  }
  CHECK(checked == 198);
}

TEST_CASE("points outside the set are not hull members") {
  const std::vector<MatrixTuple> gens{MatrixTuple::scalars({0.0}), MatrixTuple::scalars({1.0})};
  CHECK(hull_membership(gens, MatrixTuple::scalars({1.5})).verdict == HullVerdict::NotMemberHeuristic);
  const MatrixTuple x(std::vector<HermitianMatrix>{HermitianMatrix::diagonal({0.5, -0.25})});
  CHECK(hull_membership(gens, x).verdict != HullVerdict::Member);
}

TEST_CASE("gamma points combine convexly through direct sums") {
  Rng rng(403);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t m = 1 + uniform_index(rng, 3);
    const std::size_t n = 1 + uniform_index(rng, 3);
    const MatrixTuple a = random_tuple(m, 2, rng);
    CMatrix g = gaussian_matrix(m, n, rng);
    CMatrix d = gaussian_matrix(m, n, rng);
    g /= g.norm();
    d /= d.norm();
    const double t = uniform(rng);
    const GammaPoint p = gamma_point(a, g);
    const GammaPoint q = gamma_point(a, d);
    CMatrix stacked(2 * static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
    stacked << std::sqrt(t) * g, std::sqrt(1.0 - t) * d;
    const GammaPoint r = gamma_point(direct_sum(a, a), stacked);
    CHECK((r.gram.matrix() - (t * p.gram.matrix() + (1.0 - t) * q.gram.matrix())).norm() <= 1e-10);
    CHECK(max_distance(r.image, p.image * t + q.image * (1.0 - t)) <= 1e-10);
  }
}

TEST_CASE("compressions of members of a monic set are members") {
  Rng rng(404);
  const LinearPencil l = fixtures::random_monic(3, 3, 21);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t r = 1 + uniform_index(rng, 3);
    const auto x = random_boundary_point(l, MatrixTuple::zero(r, 3), rng);
    REQUIRE(x.has_value());
    const CMatrix alpha = test::random_contraction(r, 1 + uniform_index(rng, 3), rng);
    CHECK(is_member(l, compress(*x, alpha)));
  }
}

TEST_CASE("choi system rejects mismatched arity") {
  CHECK_THROWS_AS(build_choi_system({MatrixTuple::scalars({0.0, 1.0})}, MatrixTuple::scalars({0.0}), 1e-6), Error);
}

}  // TEST_SUITE
