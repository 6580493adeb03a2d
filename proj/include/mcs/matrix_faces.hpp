#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mcs/convexity.hpp"
#include "mcs/extremality.hpp"
#include "mcs/faces.hpp"

namespace mcs {

/// Face descriptor of {X} alone: kernel of L(X), no directions.
FaceDescriptor singleton_face(const LinearPencil& l, const MatrixTuple& x, const ScaledTolerance& tol = {});

/// Y in D(n) and Y - X in the direction span of F, both within slack.
bool face_contains(const LinearPencil& l, const FaceDescriptor& f, const MatrixTuple& y, double slack);

enum class FaceType { Face, CStarFace, WeakFace };
const char* to_string(FaceType t);
/// Accepts "face", "cstar_face", "weak_face".
FaceType parse_face_type(const std::string& s);

enum class Falsification { NoCounterexample, Counterexample };
const char* to_string(Falsification f);

struct FaceVerifyReport {
  Falsification verdict = Falsification::NoCounterexample;
  std::optional<MatrixConvexCombination> counterexample;
  std::string reason;
  std::size_t budget = 0;
  std::size_t proposals = 0;
  /// Proposals whose components all lie in D and whose combination lies in F.
  std::size_t accepted = 0;
  /// Accepted proposals whose conclusion could not be decided.
  std::size_t unresolved = 0;
};

struct FaceVerifyOptions {
  std::size_t budget = 1000;
  unsigned long long seed = 5;
};

/// Bounded falsification of the matrix face property of F for the given type.
FaceVerifyReport matrix_face_verify(const LinearPencil& l, const FaceDescriptor& f, FaceType type,
                                    const ScaledTolerance& tol = {}, const FaceVerifyOptions& opts = {});

struct ExposedFaceReport {
  bool dominance_holds = true;
  bool strict_below_n = true;
  LocusVerdict singular_locus_matches = LocusVerdict::SampleExhausted;
  std::optional<MatrixTuple> counterexample;
  std::string counterexample_reason;
  /// Dimension of the common kernel of the pair over sampled points of F.
  std::size_t joint_kernel_dim = 0;
  std::size_t joint_kernel_components_rank = 0;
  std::size_t r_max = 0;
  std::size_t samples_checked = 0;
  std::size_t unresolved = 0;

  bool confirmed() const { return singular_locus_matches == LocusVerdict::Confirmed; }
};

struct ExposedFaceOptions {
  std::size_t budget = 48;
  /// 0 selects 2n.
  std::size_t r_max = 0;
  std::size_t face_samples = 8;
  std::size_t conjugates = 4;
  unsigned long long seed = 13;
};

/// Checks dominance up to r_max, strictness below n, that the sampled singular locus at
/// level n is F (its unitary orbit for the weak type), and the common kernel structure.
ExposedFaceReport matrix_exposed_face_verify(const LinearPencil& l, const FaceDescriptor& f, const ExposingPair& pair,
                                             FaceType type, const ScaledTolerance& tol = {},
                                             const ExposedFaceOptions& opts = {});

/// A levelwise convex subset of D: either mconv of generators, or at each listed level the
/// convex hull of explicit points (levels not listed are empty).
struct MultifaceCandidate {
  enum class Kind { Generated, Explicit };
  Kind kind = Kind::Generated;
  std::vector<MatrixTuple> generators;
  std::map<std::size_t, std::vector<MatrixTuple>> points;

  static MultifaceCandidate generated(std::vector<MatrixTuple> generators);
  static MultifaceCandidate explicit_levels(std::map<std::size_t, std::vector<MatrixTuple>> points);
  /// Levels with members among 1..max_level.
  std::vector<std::size_t> levels(std::size_t max_level) const;
  bool contains(const MatrixTuple& y, double tol = 1e-6) const;
  /// Random member at level n; nullopt when that level is empty.
  std::optional<MatrixTuple> sample(std::size_t n, Rng& rng) const;
};

enum class MultifaceType { Multiface, ConvexMultiface };
const char* to_string(MultifaceType t);
MultifaceType parse_multiface_type(const std::string& s);

struct MultifaceReport {
  Falsification verdict = Falsification::NoCounterexample;
  std::optional<MatrixConvexCombination> counterexample;
  std::string reason;
  std::size_t budget = 0;
  std::size_t proposals = 0;
  std::size_t accepted = 0;
  /// Points extreme in F that were run through matrix_extreme in D.
  std::size_t heredity_checked = 0;
  std::size_t heredity_failures = 0;
};

struct MultifaceOptions {
  std::size_t budget = 1000;
  std::size_t max_level = 3;
  unsigned long long seed = 17;
};

MultifaceReport multiface_verify(const LinearPencil& l, const MultifaceCandidate& f, MultifaceType type,
                                 const ScaledTolerance& tol = {}, const MultifaceOptions& opts = {});

/// For a vertex X of conv(vertices): every coordinate function f_j(y) = (y - X)_j splits as
/// f1 - f2 with affine f1, f2 nonnegative on the vertices and zero at X. Throws NotVertex.
bool positively_generated_kernel(const std::vector<RVector>& vertices, const RVector& x);

/// Convex hull membership of a point among finitely many tuples of one level.
bool in_convex_hull(const std::vector<MatrixTuple>& points, const MatrixTuple& y, double tol = 1e-6);

}  // namespace mcs
