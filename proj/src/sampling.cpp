#include "mcs/sampling.hpp"

#include <cmath>

namespace mcs {

Rng derived_rng(unsigned long long seed, unsigned long long stream) {
  std::seed_seq seq{static_cast<unsigned>(seed), static_cast<unsigned>(seed >> 32), static_cast<unsigned>(stream),
                    static_cast<unsigned>(stream >> 32), 0x6d63u};
  return Rng(seq);
}

std::optional<MatrixTuple> random_boundary_point(const LinearPencil& l, const MatrixTuple& base, Rng& rng,
                                                 const ScaledTolerance& tol, std::size_t attempts) {
  for (std::size_t a = 0; a < attempts; ++a) {
    const MatrixTuple dir = random_tuple(base.level(), base.g(), rng);
    try {
      return boundary_sample(l, base.level(), dir, base, tol);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::RayUnbounded) throw;
    }
  }
  return std::nullopt;
}

std::optional<MatrixTuple> random_interior_point(const LinearPencil& l, const MatrixTuple& base, Rng& rng,
                                                 double lo, double hi, const ScaledTolerance& tol,
                                                 std::size_t attempts) {
  for (std::size_t a = 0; a < attempts; ++a) {
    const MatrixTuple dir = random_tuple(base.level(), base.g(), rng);
    const double u = uniform(rng, lo, hi);
    const double t = max_step(l, dir, base, tol);
    if (!std::isfinite(t)) continue;
    return base + dir * (u * t);
  }
  return std::nullopt;
}

SampleBank::SampleBank(LinearPencil l, std::size_t per_level, unsigned long long seed, ScaledTolerance tol)
    : l_(std::move(l)), per_level_(per_level), seed_(seed), tol_(tol), base_(find_interior_point(l_, tol)) {}

void SampleBank::fill(std::size_t n) {
  if (boundary_.count(n) != 0) return;
  Rng rng = derived_rng(seed_, n);
  const MatrixTuple base = ampliate(base_, n);
  auto& b = boundary_[n];
  auto& in = interior_[n];
  const std::size_t interior_count = std::max<std::size_t>(1, per_level_ / 4);
  for (std::size_t i = 0; i < per_level_; ++i) {
    if (auto x = random_boundary_point(l_, base, rng, tol_)) b.push_back(std::move(*x));
  }
  for (std::size_t i = 0; i < interior_count; ++i) {
    if (auto x = random_interior_point(l_, base, rng, 0.05, 0.95, tol_)) in.push_back(std::move(*x));
  }
}

const std::vector<MatrixTuple>& SampleBank::boundary(std::size_t n) {
  fill(n);
  return boundary_.at(n);
}

const std::vector<MatrixTuple>& SampleBank::interior(std::size_t n) {
  fill(n);
  return interior_.at(n);
}

}  // namespace mcs
