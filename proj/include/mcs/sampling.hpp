#pragma once

#include <map>
#include <optional>
#include <vector>

#include "mcs/pencil.hpp"
#include "mcs/random.hpp"

namespace mcs {

/// Boundary point along a random ray from base; nullopt when every attempt is unbounded.
std::optional<MatrixTuple> random_boundary_point(const LinearPencil& l, const MatrixTuple& base, Rng& rng,
                                                 const ScaledTolerance& tol = {}, std::size_t attempts = 8);

/// Point base + u t* D with u uniform in [lo, hi] along a random bounded ray.
std::optional<MatrixTuple> random_interior_point(const LinearPencil& l, const MatrixTuple& base, Rng& rng,
                                                 double lo = 0.05, double hi = 0.95,
                                                 const ScaledTolerance& tol = {}, std::size_t attempts = 8);

/// Seeded boundary and interior members of D(n), generated lazily per level.
/// Level streams are independent of the order in which levels are requested.
class SampleBank {
 public:
  SampleBank(LinearPencil l, std::size_t per_level, unsigned long long seed, ScaledTolerance tol = {});

  const std::vector<MatrixTuple>& boundary(std::size_t n);
  const std::vector<MatrixTuple>& interior(std::size_t n);
  const MatrixTuple& base_point() const { return base_; }
  const LinearPencil& pencil() const { return l_; }
  std::size_t per_level() const { return per_level_; }
  unsigned long long seed() const { return seed_; }

 private:
  void fill(std::size_t n);

  LinearPencil l_;
  std::size_t per_level_;
  unsigned long long seed_;
  ScaledTolerance tol_;
  MatrixTuple base_;
  std::map<std::size_t, std::vector<MatrixTuple>> boundary_;
  std::map<std::size_t, std::vector<MatrixTuple>> interior_;
};

/// Independent generator seeded from (seed, stream).
Rng derived_rng(unsigned long long seed, unsigned long long stream);

}  // namespace mcs
