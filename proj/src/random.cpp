#include "mcs/random.hpp"

#include <cmath>

namespace mcs {

CMatrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> normal;
  CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = Complex(normal(rng), normal(rng));
  return m;
}

HermitianMatrix random_hermitian(std::size_t n, Rng& rng, double scale) {
  const CMatrix g = gaussian_matrix(n, n, rng);
  const CMatrix h = 0.5 * (g + g.adjoint());
  return HermitianMatrix::symmetrized(h * (scale / h.norm()));
}

CMatrix random_unitary(std::size_t n, Rng& rng) {
  const CMatrix g = gaussian_matrix(n, n, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

MatrixTuple random_tuple(std::size_t n, std::size_t g, Rng& rng, double scale) {
  std::vector<HermitianMatrix> c;
  for (std::size_t i = 0; i < g; ++i) c.push_back(random_hermitian(n, rng, scale));
  return MatrixTuple(std::move(c));
}

std::vector<CMatrix> random_partition_of_unity(const std::vector<std::size_t>& levels, std::size_t n, Rng& rng) {
  std::size_t total = 0;
  for (std::size_t l : levels) total += l;
  if (total < n) throw Error(ErrorKind::Validation, "partition of unity needs levels summing to at least n");
  std::vector<CMatrix> gs;
  CMatrix s = CMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t l : levels) {
    gs.push_back(gaussian_matrix(l, n, rng));
    s += gs.back().adjoint() * gs.back();
  }
  const HermitianMatrix is = inverse_sqrt(HermitianMatrix::symmetrized(s));
  for (auto& g : gs) g = g * is.matrix();
  return gs;
}

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::size_t uniform_index(Rng& rng, std::size_t count) {
  return std::uniform_int_distribution<std::size_t>(0, count - 1)(rng);
}

}  // namespace mcs
