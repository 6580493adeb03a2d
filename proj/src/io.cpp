#include "mcs/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace mcs::io {

namespace {

Json require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::Validation, std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t require_size(const Json& j, const char* key) {
  const Json v = require(j, key);
  if (!v.is_number_integer() || v.get<long long>() <= 0) {
    throw Error(ErrorKind::Validation, std::string("field '") + key + "' must be a positive integer");
  }
  return v.get<std::size_t>();
}

std::vector<HermitianMatrix> hermitian_list(const Json& j, std::size_t count, std::size_t dim, const char* what) {
  if (!j.is_array() || j.size() != count) {
    throw Error(ErrorKind::ArityMismatch, std::string(what) + " must list " + std::to_string(count) + " matrices");
  }
  std::vector<HermitianMatrix> out;
  for (const auto& m : j) {
    out.push_back(hermitian_from_json(m));
    if (out.back().dim() != dim) throw Error(ErrorKind::ArityMismatch, std::string(what) + " has a matrix of wrong size");
  }
  return out;
}

Json tuple_list(const MatrixTuple& x) {
  Json a = Json::array();
  for (const auto& c : x.coords()) a.push_back(to_json(c));
  return a;
}

}  // namespace

Json to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({{"re", m(i, j).real()}, {"im", m(i, j).imag()}});
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const HermitianMatrix& m) { return to_json(m.matrix()); }

CMatrix cmatrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::Validation, "matrix must be a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().is_array() ? j.front().size() : 0);
  if (cols == 0) throw Error(ErrorKind::Validation, "matrix rows must be nonempty arrays");
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw Error(ErrorKind::Validation, "matrix rows differ in length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Json& e = row[static_cast<std::size_t>(c)];
      if (e.is_number()) {
        m(r, c) = Complex(e.get<double>(), 0.0);
      } else if (e.is_object() && e.contains("re") && e.at("re").is_number()) {
        const double im = e.contains("im") ? e.at("im").get<double>() : 0.0;
        m(r, c) = Complex(e.at("re").get<double>(), im);
      } else {
        throw Error(ErrorKind::Validation, "matrix entry must be a number or {\"re\", \"im\"}");
      }
    }
  }
  return m;
}

HermitianMatrix hermitian_from_json(const Json& j) { return HermitianMatrix(cmatrix_from_json(j)); }

Json to_json(const LinearPencil& l) {
  Json a = Json::array();
  for (const auto& m : l.coefficients()) a.push_back(to_json(m));
  return {{"k", l.k()}, {"g", l.g()}, {"A0", to_json(l.a0())}, {"A", a}};
}

LinearPencil pencil_from_json(const Json& j) {
  const std::size_t k = require_size(j, "k");
  const std::size_t g = require_size(j, "g");
  HermitianMatrix a0 = hermitian_from_json(require(j, "A0"));
  if (a0.dim() != k) throw Error(ErrorKind::ArityMismatch, "A0 size differs from k");
  return LinearPencil(std::move(a0), hermitian_list(require(j, "A"), g, k, "A"));
}

Json to_json(const MatrixTuple& x) { return {{"level", x.level()}, {"g", x.g()}, {"X", tuple_list(x)}}; }

MatrixTuple point_from_json(const Json& j) {
  const std::size_t n = require_size(j, "level");
  const std::size_t g = require_size(j, "g");
  return MatrixTuple(hermitian_list(require(j, "X"), g, n, "X"));
}

Json to_json(const ExposingPair& p) {
  Json phi = Json::array();
  for (const auto& m : p.phi) phi.push_back(to_json(m));
  return {{"n", p.n()}, {"g", p.g()}, {"Phi", phi}, {"alpha", to_json(p.alpha)}};
}

ExposingPair pair_from_json(const Json& j) {
  const std::size_t n = require_size(j, "n");
  const std::size_t g = require_size(j, "g");
  ExposingPair p;
  p.alpha = hermitian_from_json(require(j, "alpha"));
  if (p.alpha.dim() != n) throw Error(ErrorKind::ArityMismatch, "alpha size differs from n");
  p.phi = hermitian_list(require(j, "Phi"), g, n, "Phi");
  return p;
}

Json to_json(const MatrixConvexCombination& c) {
  Json terms = Json::array();
  for (const auto& t : c.terms) terms.push_back({{"point", to_json(t.point)}, {"gamma", to_json(t.gamma)}});
  return {{"target_level", c.target_level}, {"partition_error", c.partition_error()}, {"proper", c.proper()},
          {"terms", terms}};
}

Json to_json(const MembershipReport& r) {
  return {{"verdict", to_string(r.verdict)}, {"margin", r.margin}, {"kernel_dim", r.kernel_dim}};
}

Json to_json(const ExtremeReport& r) {
  Json j{{"verdict", to_string(r.verdict)},
         {"irreducible", r.irreducible},
         {"euclidean_extreme", r.euclidean_extreme},
         {"oracle_run", r.oracle_run},
         {"oracle_decomposable", r.oracle_decomposable}};
  j["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
  j["oracle_witness"] = r.oracle_witness ? to_json(*r.oracle_witness) : Json(nullptr);
  j["note"] = r.note;
  return j;
}

Json to_json(const ExposureReport& r) {
  Json j{{"singular_locus_matches", to_string(r.singular_locus_matches)},
         {"psd_checked_levels", r.psd_checked_levels},
         {"psd_holds", r.psd_holds},
         {"strict_below_n", r.strict_below_n},
         {"kernel_dim_at_A", r.kernel_dim_at_a},
         {"kernel_components_rank", r.kernel_components_rank},
         {"r_max", r.r_max},
         {"level_cap_note", "positivity checked on sampled levels up to r_max only"},
         {"samples_checked", r.samples_checked},
         {"unresolved_equivalences", r.unresolved_equivalences},
         {"min_margin_below_n", r.min_margin_below_n}};
  j["counterexample"] = r.counterexample ? to_json(*r.counterexample) : Json(nullptr);
  j["counterexample_reason"] = r.counterexample_reason;
  return j;
}

Json to_json(const PairSearchResult& r) {
  Json j{{"verdict", r.found ? "Found" : "NotFound"}, {"method", r.method}, {"candidates_tried", r.candidates_tried}};
  j["pair"] = r.pair ? to_json(*r.pair) : Json(nullptr);
  j["report"] = to_json(r.report);
  return j;
}

Json to_json(const HullResult& r) {
  Json j{{"verdict", to_string(r.verdict)},
         {"reconstruction_error", r.reconstruction_error},
         {"distance", r.distance},
         {"iterations", r.iterations}};
  Json choi = Json::array();
  for (const auto& c : r.choi) choi.push_back(to_json(c));
  j["choi"] = choi;
  j["combination"] = r.combination ? to_json(*r.combination) : Json(nullptr);
  return j;
}

Json to_json(const FaceDescriptor& f) {
  Json dirs = Json::array();
  for (Eigen::Index c = 0; c < f.directions.cols(); ++c) {
    dirs.push_back(to_json(tuple_from_real(f.directions.col(c), f.level, f.generator.g())));
  }
  return {{"level", f.level},        {"dimension", f.dimension()}, {"kernel_dim", f.kernel.cols()},
          {"kernel", to_json(f.kernel)}, {"generator", to_json(f.generator)}, {"directions", dirs}};
}

Json to_json(const ExposingFunctional& f, const FunctionalCheck& c) {
  Json coeffs = Json::array();
  for (const auto& m : f.coefficients) coeffs.push_back(to_json(m));
  return {{"coefficients", coeffs},
          {"level", f.level},
          {"face_samples", c.face_samples},
          {"non_face_samples", c.non_face_samples},
          {"max_face_gap", c.max_face_gap},
          {"min_non_face_gap", c.min_non_face_gap}};
}

Json to_json(const FaceVerifyReport& r) {
  Json j{{"verdict", to_string(r.verdict)}, {"reason", r.reason},     {"budget", r.budget},
         {"proposals", r.proposals},       {"accepted", r.accepted}, {"unresolved", r.unresolved}};
  j["counterexample"] = r.counterexample ? to_json(*r.counterexample) : Json(nullptr);
  return j;
}

Json to_json(const ExposedFaceReport& r) {
  Json j{{"singular_locus_matches", to_string(r.singular_locus_matches)},
         {"dominance_holds", r.dominance_holds},
         {"strict_below_n", r.strict_below_n},
         {"joint_kernel_dim", r.joint_kernel_dim},
         {"joint_kernel_components_rank", r.joint_kernel_components_rank},
         {"r_max", r.r_max},
         {"samples_checked", r.samples_checked},
         {"unresolved", r.unresolved}};
  j["counterexample"] = r.counterexample ? to_json(*r.counterexample) : Json(nullptr);
  j["counterexample_reason"] = r.counterexample_reason;
  return j;
}

Json to_json(const MultifaceReport& r) {
  Json j{{"verdict", to_string(r.verdict)},
         {"reason", r.reason},
         {"budget", r.budget},
         {"proposals", r.proposals},
         {"accepted", r.accepted},
         {"heredity_checked", r.heredity_checked},
         {"heredity_failures", r.heredity_failures}};
  j["counterexample"] = r.counterexample ? to_json(*r.counterexample) : Json(nullptr);
  return j;
}

Json to_json(const CoverReport& r) {
  Json gens = Json::array();
  for (const auto& x : r.generators) gens.push_back(to_json(x));
  return {{"coverage", r.coverage()}, {"samples", r.samples},   {"covered", r.covered}, {"undecided", r.undecided},
          {"bounded", r.bounded},     {"degenerate", r.degenerate}, {"generators", gens}};
}

Json to_json(const GammaPoint& g) {
  return {{"gram", to_json(g.gram)}, {"image", to_json(g.image)}, {"source_level", g.source_level}};
}

Json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Validation, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Validation, "malformed JSON in '" + path + "': " + e.what());
  }
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Validation, "cannot write '" + tmp + "'");
    out << content;
    if (!out) throw Error(ErrorKind::Validation, "write to '" + tmp + "' failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error(ErrorKind::Validation, "cannot rename '" + tmp + "' to '" + path + "'");
  }
}

}  // namespace mcs::io
