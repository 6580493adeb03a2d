#pragma once

#include <cstdint>
#include <random>

#include "mcs/hermitian.hpp"

namespace mcs {

using Rng = std::mt19937_64;

/// Entries with independent standard normal real and imaginary parts.
CMatrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng);
HermitianMatrix random_hermitian(std::size_t n, Rng& rng, double scale = 1.0);
/// Haar-distributed unitary.
CMatrix random_unitary(std::size_t n, Rng& rng);
/// Random g-tuple of Hermitian n x n matrices with Frobenius-normalized coordinates times scale.
MatrixTuple random_tuple(std::size_t n, std::size_t g, Rng& rng, double scale = 1.0);
/// Factors gamma_i (levels[i] x n) with sum gamma_i* gamma_i = I; surjective with probability one.
/// The levels must sum to at least n.
std::vector<CMatrix> random_partition_of_unity(const std::vector<std::size_t>& levels, std::size_t n, Rng& rng);
double uniform(Rng& rng, double lo = 0.0, double hi = 1.0);
std::size_t uniform_index(Rng& rng, std::size_t count);

}  // namespace mcs
