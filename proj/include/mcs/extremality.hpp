#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mcs/convexity.hpp"
#include "mcs/faces.hpp"
#include "mcs/pencil.hpp"
#include "mcs/sampling.hpp"

namespace mcs {

/// True iff the face of D(n) through X is a single point; X must lie on the boundary.
bool classical_exposed_level(const LinearPencil& l, std::size_t n, const MatrixTuple& x,
                             const ScaledTolerance& tol = {});

/// True iff no nonzero Y has (sum A_i (x) Y_i) v = 0 for all v in ker L(X).
bool classical_extreme_level(const LinearPencil& l, std::size_t n, const MatrixTuple& x,
                             const ScaledTolerance& tol = {});

/// True iff the Hermitian joint commutant of X is one-dimensional.
bool irreducible(const MatrixTuple& x, const ScaledTolerance& tol = {});

/// Direct-sum decomposition of a reducible X as a proper combination; nullopt if irreducible.
std::optional<MatrixConvexCombination> reducing_decomposition(const MatrixTuple& x, const ScaledTolerance& tol = {});

enum class ExtremeVerdict { Yes, No, Inconclusive };
const char* to_string(ExtremeVerdict v);

struct ExtremeReport {
  ExtremeVerdict verdict = ExtremeVerdict::Inconclusive;
  bool irreducible = false;
  bool euclidean_extreme = false;
  /// Proper combination reproducing X with no component unitarily equivalent to X.
  std::optional<MatrixConvexCombination> witness;
  bool oracle_run = false;
  /// The oracle found a decomposition (meaningful only when oracle_run).
  bool oracle_decomposable = false;
  std::optional<MatrixConvexCombination> oracle_witness;
  std::string note;
};

struct ExtremeOptions {
  /// Levels up to this run the definitional oracle.
  std::size_t oracle_max_level = 2;
  /// Normalizations tried per step size in the two-sided direction search.
  std::size_t oracle_restarts = 2;
  std::size_t oracle_max_iter = 4000;
  unsigned long long seed = 7;
};

/// Primary test irreducible and Euclidean extreme, cross-checked by the definitional oracle.
ExtremeReport matrix_extreme(const LinearPencil& l, const MatrixTuple& x, const ScaledTolerance& tol = {},
                             const ExtremeOptions& opts = {});

/// alpha (x) I_r - Phi_r(B) with Phi_r(B) = sum_j Phi_j (x) B_j.
struct ExposingPair {
  std::vector<HermitianMatrix> phi;
  HermitianMatrix alpha;

  std::size_t n() const { return alpha.dim(); }
  std::size_t g() const { return phi.size(); }
  /// The pencil with A0 = alpha and A_j = -Phi_j, whose value at B is alpha (x) I - Phi(B).
  LinearPencil as_pencil() const;
  HermitianMatrix evaluate(const MatrixTuple& b) const;
};

/// Component matrix C(a, q) = x(a n + q) of a vector in C^n (x) C^n.
CMatrix kernel_components(const CVector& x, std::size_t n);
/// Rank at a 1e-8 relative singular-value threshold.
std::size_t component_rank(const CMatrix& c);

enum class LocusVerdict { Confirmed, CounterexampleFound, SampleExhausted };
const char* to_string(LocusVerdict v);

struct ExposureReport {
  std::vector<std::size_t> psd_checked_levels;
  bool psd_holds = true;
  bool strict_below_n = true;
  LocusVerdict singular_locus_matches = LocusVerdict::SampleExhausted;
  std::optional<MatrixTuple> counterexample;
  std::string counterexample_reason;
  std::size_t kernel_dim_at_a = 0;
  std::size_t kernel_components_rank = 0;
  std::size_t r_max = 0;
  std::size_t samples_checked = 0;
  std::size_t unresolved_equivalences = 0;
  /// Smallest lambda_min of the pair over samples below level n.
  double min_margin_below_n = 0.0;

  bool confirmed() const { return singular_locus_matches == LocusVerdict::Confirmed; }
};

struct ExposureOptions {
  std::size_t budget = 48;
  /// 0 selects 2n.
  std::size_t r_max = 0;
  unsigned long long seed = 11;
  std::size_t conjugates = 4;
  std::size_t face_samples = 8;
  /// Reused across calls on the same pencil; a private bank is built when null.
  SampleBank* bank = nullptr;
};

ExposureReport verify_exposing_pair(const LinearPencil& l, const MatrixTuple& a, const ExposingPair& pair,
                                    const ScaledTolerance& tol = {}, const ExposureOptions& opts = {});

struct PairSearchOptions {
  std::size_t restarts = 16;
  /// Cutting-plane rounds of the sample-constrained feasibility search.
  std::size_t feasibility_rounds = 4;
  std::size_t feasibility_samples = 6;
  std::size_t feasibility_iter = 4000;
  bool check_preconditions = true;
  ExposureOptions verify{};
};

struct PairSearchResult {
  bool found = false;
  std::optional<ExposingPair> pair;
  ExposureReport report;
  std::size_t candidates_tried = 0;
  std::string method;
};

/// Only verified pairs are returned; throws PreconditionViolated when checks are enabled and
/// X is not matrix extreme or not classically exposed.
PairSearchResult search_exposing_pair(const LinearPencil& l, const MatrixTuple& a, const ScaledTolerance& tol = {},
                                      const PairSearchOptions& opts = {});

struct CoverReport {
  std::vector<MatrixTuple> generators;
  std::size_t samples = 0;
  std::size_t covered = 0;
  std::size_t undecided = 0;
  bool bounded = true;
  bool degenerate = false;
  double coverage() const { return samples == 0 ? 1.0 : static_cast<double>(covered) / static_cast<double>(samples); }
};

struct CoverOptions {
  std::vector<std::size_t> levels{1, 2, 3};
  std::size_t samples = 100;
  unsigned long long seed = 3;
  double hull_tol = 1e-6;
  /// Boundary rays harvested per level for extreme points.
  std::size_t harvest = 16;
  /// Levels above 1 searched for matrix exposed points.
  std::size_t harvest_max_level = 1;
};

CoverReport exposed_hull_cover(const LinearPencil& l, const ScaledTolerance& tol = {}, const CoverOptions& opts = {});

}  // namespace mcs
