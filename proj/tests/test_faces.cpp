#include <doctest.h>

#include "mcs/faces.hpp"
#include "mcs/fixtures.hpp"
#include "mcs/sampling.hpp"
#include "support.hpp"

using namespace mcs;

TEST_SUITE("faces") {

TEST_CASE("faces of the square at level one") {
  const LinearPencil l = fixtures::cube(2);
  CHECK(face_of(l, 1, MatrixTuple::scalars({1.0, 1.0})).dimension() == 0);
  CHECK(face_of(l, 1, MatrixTuple::scalars({1.0, 0.3})).dimension() == 1);
  const FaceDescriptor inside = face_of(l, 1, MatrixTuple::scalars({0.2, 0.3}));
  CHECK(inside.kernel.cols() == 0);
  CHECK(inside.dimension() == 2);
  CHECK_THROWS_AS(face_of(l, 1, MatrixTuple::scalars({2.0, 0.0})), Error);
}

TEST_CASE("face dimension of a level-two cube point") {
  // X_1 = diag(1, 0.2) pins the first column of X_1; the face moves only (X_1)_22 and all of X_2.
  const LinearPencil l = fixtures::cube(2);
  const MatrixTuple x(std::vector<HermitianMatrix>{HermitianMatrix::diagonal({1.0, 0.2}), HermitianMatrix::zero(2)});
  CHECK(face_of(l, 2, x).dimension() == 5);
}

TEST_CASE("faces are recovered from their relative interior samples") {
  Rng rng(501);
  for (unsigned long long seed = 1; seed <= 6; ++seed) {
    const LinearPencil l = fixtures::random_monic(4, 3, seed);
    for (std::size_t n = 1; n <= 2; ++n) {
      const auto x = random_boundary_point(l, MatrixTuple::zero(n, 3), rng);
      REQUIRE(x.has_value());
      const FaceDescriptor f = face_of(l, n, *x);
      for (int rep = 0; rep < 3; ++rep) {
        const MatrixTuple y = sample_face_point(l, f, rng);
        CHECK(in_face(l, f, y));
        const FaceDescriptor g = face_of(l, n, y);
        CHECK(test::subspace_distance(f.kernel, g.kernel) <= 1e-8);
      }
    }
  }
}

TEST_CASE("exposing functionals separate faces on random spectrahedra") {
  Rng rng(502);
  for (unsigned long long seed = 10; seed < 14; ++seed) {
    const LinearPencil l = fixtures::random_monic(3, 2, seed);
    const auto x = random_boundary_point(l, MatrixTuple::zero(1, 2), rng);
    REQUIRE(x.has_value());
    const FaceDescriptor f = face_of(l, 1, *x);
    FunctionalCheck check;
    const ExposingFunctional fn = exposed_face_functional(l, 1, f, {}, 1000, seed, &check);
    CHECK(check.max_face_gap <= 1e-8);
    CHECK(check.non_face_samples > 0);
    CHECK(check.min_non_face_gap > 0.0);
    // The gap equals the sum of v* L(Y) v over kernel columns.
    const MatrixTuple y = MatrixTuple::scalars({0.1, -0.2});
    const CMatrix ly = test::reference_evaluate(l, y);
    double want = 0.0;
    for (Eigen::Index c = 0; c < f.kernel.cols(); ++c) want += (f.kernel.col(c).adjoint() * ly * f.kernel.col(c))(0, 0).real();
    CHECK(fn.gap(y) == doctest::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("descent ends at a point face") {
  Rng rng(503);
  const LinearPencil l = fixtures::cube(2);
  for (std::size_t n = 1; n <= 2; ++n) {
    for (int rep = 0; rep < 5; ++rep) {
      const auto x = random_boundary_point(l, MatrixTuple::zero(n, 2), rng);
      REQUIRE(x.has_value());
      const MatrixTuple e = descend_to_extreme(l, *x, rng);
      CHECK(is_member(l, e));
      CHECK(face_of(l, n, e).dimension() == 0);
    }
  }
}

TEST_CASE("descent on a set containing a line fails") {
  const LinearPencil slab(HermitianMatrix::diagonal({1.0, 1.0}),
                          {HermitianMatrix::diagonal({1.0, -1.0}), HermitianMatrix::zero(2)});
  Rng rng(504);
  try {
    descend_to_extreme(slab, MatrixTuple::scalars({1.0, 0.0}), rng);
    FAIL("expected RayUnbounded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RayUnbounded);
  }
}

}  // TEST_SUITE
