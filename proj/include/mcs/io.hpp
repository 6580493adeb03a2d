#pragma once

#include <string>

#include <json.hpp>

#include "mcs/convexity.hpp"
#include "mcs/extremality.hpp"
#include "mcs/faces.hpp"
#include "mcs/matrix_faces.hpp"
#include "mcs/pencil.hpp"

namespace mcs::io {

using Json = nlohmann::ordered_json;

/// Matrices are arrays of rows of {"re": f, "im": f}.
Json to_json(const CMatrix& m);
Json to_json(const HermitianMatrix& m);
CMatrix cmatrix_from_json(const Json& j);
/// Validates squareness and Hermitian symmetry.
HermitianMatrix hermitian_from_json(const Json& j);

/// {"k", "g", "A0", "A"}.
Json to_json(const LinearPencil& l);
LinearPencil pencil_from_json(const Json& j);

/// {"level", "g", "X"}.
Json to_json(const MatrixTuple& x);
MatrixTuple point_from_json(const Json& j);

/// {"n", "g", "Phi", "alpha"}.
Json to_json(const ExposingPair& p);
ExposingPair pair_from_json(const Json& j);

/// {"target_level", "terms": [{"point", "gamma"}]}.
Json to_json(const MatrixConvexCombination& c);

Json to_json(const MembershipReport& r);
Json to_json(const ExtremeReport& r);
Json to_json(const ExposureReport& r);
Json to_json(const PairSearchResult& r);
Json to_json(const HullResult& r);
Json to_json(const FaceDescriptor& f);
Json to_json(const ExposingFunctional& f, const FunctionalCheck& c);
Json to_json(const FaceVerifyReport& r);
Json to_json(const ExposedFaceReport& r);
Json to_json(const MultifaceReport& r);
Json to_json(const CoverReport& r);
Json to_json(const GammaPoint& g);

/// Parses a JSON file; throws Validation on I/O or syntax errors.
Json load_file(const std::string& path);
/// Writes via a temporary file in the same directory and a rename.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace mcs::io
