// Batch front end over the library: JSON in, JSON or CSV out.
// Exit codes: 0 analysis produced (counterexamples included), 2 invalid input or failed
// precondition, 3 solver cap or non-convergence.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mcs/convexity.hpp"
#include "mcs/extremality.hpp"
#include "mcs/faces.hpp"
#include "mcs/fixtures.hpp"
#include "mcs/io.hpp"
#include "mcs/matrix_faces.hpp"
#include "mcs/sampling.hpp"

using mcs::io::Json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;
constexpr std::size_t kPlotSamples = 720;

struct Args {
  std::string pencil;
  std::string fixture;
  std::string point;
  std::string pair;
  std::string generators;
  std::string gamma;
  std::string type;
  std::string out;
  double tol_abs = 1e-9;
  double tol_rel = 1e-9;
  unsigned long long seed = 1;
  std::size_t budget = 0;
  std::size_t r_max = 0;
  std::size_t level = 1;
  std::vector<std::size_t> levels;

  mcs::ScaledTolerance tol() const { return {tol_abs, tol_rel}; }
};

mcs::LinearPencil fixture_pencil(const std::string& name) {
  if (name == "interval") return mcs::fixtures::interval();
  if (name == "cube") return mcs::fixtures::cube(2);
  if (name == "disk") return mcs::fixtures::disk();
  if (name == "triangle") return mcs::fixtures::triangle();
  throw mcs::Error(mcs::ErrorKind::Validation, "unknown fixture '" + name + "'");
}

mcs::LinearPencil load_pencil(const Args& a) {
  if (!a.pencil.empty()) return mcs::io::pencil_from_json(mcs::io::load_file(a.pencil));
  if (!a.fixture.empty()) return fixture_pencil(a.fixture);
  throw mcs::Error(mcs::ErrorKind::Validation, "--pencil or --fixture is required");
}

const std::string& required(const std::string& path, const char* flag) {
  if (path.empty()) throw mcs::Error(mcs::ErrorKind::Validation, std::string(flag) + " is required");
  return path;
}

mcs::MatrixTuple load_point(const Args& a) {
  return mcs::io::point_from_json(mcs::io::load_file(required(a.point, "--point")));
}

std::vector<mcs::MatrixTuple> point_list(const Json& j) {
  if (!j.is_array()) throw mcs::Error(mcs::ErrorKind::Validation, "expected an array of points");
  std::vector<mcs::MatrixTuple> out;
  for (const auto& p : j) out.push_back(mcs::io::point_from_json(p));
  return out;
}

// An array of points is a generator list; {"levels": {"n": [points]}} lists explicit levels.
mcs::MultifaceCandidate load_candidate(const Args& a) {
  const Json j = mcs::io::load_file(required(a.generators, "--generators"));
  if (j.is_array()) return mcs::MultifaceCandidate::generated(point_list(j));
  if (!j.is_object() || !j.contains("levels") || !j["levels"].is_object()) {
    throw mcs::Error(mcs::ErrorKind::Validation, "generators file must be an array or {\"levels\": {...}}");
  }
  std::map<std::size_t, std::vector<mcs::MatrixTuple>> levels;
  for (const auto& [key, value] : j["levels"].items()) {
    std::size_t n = 0;
    try {
      n = std::stoul(key);
    } catch (const std::exception&) {
      throw mcs::Error(mcs::ErrorKind::Validation, "level key '" + key + "' is not a number");
    }
    levels[n] = point_list(value);
  }
  return mcs::MultifaceCandidate::explicit_levels(std::move(levels));
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string plot_csv(const Args& a) {
  std::ostringstream csv;
  csv << "angle,x1,x2\n";
  if (a.fixture == "cusp") {
    const mcs::fixtures::CuspRegion region;
    for (std::size_t i = 0; i < kPlotSamples; ++i) {
      const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / kPlotSamples;
      const auto p = region.boundary_point(t);
      csv << format_double(t) << ',' << format_double(p[0]) << ',' << format_double(p[1]) << '\n';
    }
    return csv.str();
  }
  const mcs::LinearPencil l = load_pencil(a);
  if (l.g() != 2) throw mcs::Error(mcs::ErrorKind::Validation, "plot-data needs a pencil with g = 2");
  const mcs::MatrixTuple base = mcs::find_interior_point(l, a.tol());
  for (std::size_t i = 0; i < kPlotSamples; ++i) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / kPlotSamples;
    const mcs::MatrixTuple d(std::vector<mcs::HermitianMatrix>{mcs::HermitianMatrix::scalar(std::cos(t)),
                                                               mcs::HermitianMatrix::scalar(std::sin(t))});
    csv << format_double(t) << ',';
    try {
      const mcs::MatrixTuple b = mcs::boundary_sample(l, 1, d, base, a.tol());
      csv << format_double(b[0].matrix()(0, 0).real()) << ',' << format_double(b[1].matrix()(0, 0).real());
    } catch (const mcs::Error& e) {
      if (e.kind() != mcs::ErrorKind::RayUnbounded) throw;
      csv << "inf,inf";
    }
    csv << '\n';
  }
  return csv.str();
}

Json run(const std::string& cmd, const Args& a, std::string* text) {
  const mcs::ScaledTolerance tol = a.tol();
  if (cmd == "plot-data") {
    *text = plot_csv(a);
    return {};
  }
  if (cmd == "hull") {
    mcs::HullOptions o;
    if (a.budget > 0) o.max_iter = a.budget;
    const auto gens = point_list(mcs::io::load_file(required(a.generators, "--generators")));
    return mcs::io::to_json(mcs::hull_membership(gens, load_point(a), o));
  }
  if (cmd == "gamma") {
    const mcs::CMatrix g = mcs::io::cmatrix_from_json(mcs::io::load_file(required(a.gamma, "--gamma")));
    return mcs::io::to_json(mcs::gamma_point(load_point(a), g, tol));
  }

  const mcs::LinearPencil l = load_pencil(a);
  if (cmd == "eval") {
    const mcs::MatrixTuple x = load_point(a);
    const mcs::HermitianMatrix lx = mcs::evaluate(l, x);
    return {{"value", mcs::io::to_json(lx)}, {"lambda_min", mcs::min_eigenvalue(lx)}};
  }
  if (cmd == "member") return mcs::io::to_json(mcs::membership(l, load_point(a), tol));
  if (cmd == "face") {
    const mcs::MatrixTuple x = load_point(a);
    const mcs::FaceDescriptor f = mcs::face_of(l, x.level(), x, tol);
    Json j{{"face", mcs::io::to_json(f)}};
    mcs::FunctionalCheck check;
    const auto fn = mcs::exposed_face_functional(l, x.level(), f, tol, a.budget > 0 ? a.budget : 500, a.seed, &check);
    j["functional"] = mcs::io::to_json(fn, check);
    if (!a.type.empty()) {
      const mcs::FaceType type = mcs::parse_face_type(a.type);
      if (!a.pair.empty()) {
        mcs::ExposedFaceOptions o;
        o.seed = a.seed;
        o.r_max = a.r_max;
        const auto pair = mcs::io::pair_from_json(mcs::io::load_file(a.pair));
        j["exposed_face"] = mcs::io::to_json(mcs::matrix_exposed_face_verify(l, f, pair, type, tol, o));
      } else {
        mcs::FaceVerifyOptions o;
        o.seed = a.seed;
        if (a.budget > 0) o.budget = a.budget;
        j["matrix_face"] = mcs::io::to_json(mcs::matrix_face_verify(l, f, type, tol, o));
      }
    }
    return j;
  }
  if (cmd == "extreme") {
    mcs::ExtremeOptions o;
    o.seed = a.seed;
    return mcs::io::to_json(mcs::matrix_extreme(l, load_point(a), tol, o));
  }
  if (cmd == "exposed") {
    mcs::ExposureOptions o;
    o.seed = a.seed;
    o.r_max = a.r_max;
    if (a.budget > 0) o.budget = a.budget;
    const auto pair = mcs::io::pair_from_json(mcs::io::load_file(required(a.pair, "--pair")));
    return mcs::io::to_json(mcs::verify_exposing_pair(l, load_point(a), pair, tol, o));
  }
  if (cmd == "search-pair") {
    mcs::PairSearchOptions o;
    o.verify.seed = a.seed;
    o.verify.r_max = a.r_max;
    if (a.budget > 0) o.restarts = a.budget;
    return mcs::io::to_json(mcs::search_exposing_pair(l, load_point(a), tol, o));
  }
  if (cmd == "sample-boundary") {
    mcs::Rng rng = mcs::derived_rng(a.seed, a.level);
    const mcs::MatrixTuple base = mcs::ampliate(mcs::find_interior_point(l, tol), a.level);
    Json points = Json::array();
    const std::size_t count = a.budget > 0 ? a.budget : 10;
    for (std::size_t i = 0; i < count; ++i) {
      if (auto b = mcs::random_boundary_point(l, base, rng, tol)) points.push_back(mcs::io::to_json(*b));
    }
    return {{"level", a.level}, {"points", points}};
  }
  if (cmd == "multiface") {
    mcs::MultifaceOptions o;
    o.seed = a.seed;
    if (a.budget > 0) o.budget = a.budget;
    if (!a.levels.empty()) o.max_level = *std::max_element(a.levels.begin(), a.levels.end());
    const mcs::MultifaceType type =
        a.type.empty() ? mcs::MultifaceType::Multiface : mcs::parse_multiface_type(a.type);
    return mcs::io::to_json(mcs::multiface_verify(l, load_candidate(a), type, tol, o));
  }
  if (cmd == "cover") {
    mcs::CoverOptions o;
    o.seed = a.seed;
    if (!a.levels.empty()) o.levels = a.levels;
    if (a.budget > 0) o.samples = a.budget;
    return mcs::io::to_json(mcs::exposed_hull_cover(l, tol, o));
  }
  throw mcs::Error(mcs::ErrorKind::Validation, "unknown subcommand '" + cmd + "'");
}

int fail(int code, const std::string& kind, const std::string& message) {
  const Json err{{"error", {{"kind", kind}, {"message", message}}}};
  std::cerr << err.dump() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Facial and extremal structure of free spectrahedra.\n"
               "Inputs: pencil {k, g, A0, A}, point {level, g, X}, pair {n, g, Phi, alpha};\n"
               "matrices are arrays of rows of {re, im} or plain numbers.\n"
               "plot-data writes CSV with columns angle,x1,x2: 720 rays from an interior point,\n"
               "angle in radians, inf for unbounded rays."};
  app.require_subcommand(1);
  Args a;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"eval", "L(X) and its smallest eigenvalue"},
      {"member", "membership verdict and margin"},
      {"face", "face through X, its exposing functional; --type runs the matrix face verifier"},
      {"extreme", "matrix extreme point test"},
      {"exposed", "verify an exposing pair at X"},
      {"search-pair", "search and verify an exposing pair at X"},
      {"hull", "matrix convex hull membership of X"},
      {"gamma", "the point (gamma* gamma, gamma* X gamma)"},
      {"sample-boundary", "seeded boundary points at --level"},
      {"multiface", "multiface falsification over --generators"},
      {"cover", "exposed-point hull coverage"},
      {"plot-data", "CSV boundary polyline of a g = 2 pencil or --fixture cusp"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--pencil", a.pencil, "pencil JSON file");
    sub->add_option("--fixture", a.fixture, "interval, cube, disk, triangle or cusp");
    sub->add_option("--point", a.point, "point JSON file");
    sub->add_option("--pair", a.pair, "exposing pair JSON file");
    sub->add_option("--generators", a.generators, "array of points, or {\"levels\": {n: [points]}}");
    sub->add_option("--gamma", a.gamma, "matrix JSON file");
    sub->add_option("--type", a.type, "face, cstar_face, weak_face; multiface, convex_multiface");
    sub->add_option("--tol-abs", a.tol_abs, "absolute tolerance");
    sub->add_option("--tol-rel", a.tol_rel, "relative tolerance");
    sub->add_option("--seed", a.seed, "seed for all randomness");
    sub->add_option("--budget", a.budget, "samples, proposals, restarts or iterations; 0 keeps the default");
    sub->add_option("--levels", a.levels, "comma-separated levels")->delimiter(',');
    sub->add_option("--level", a.level, "level for sample-boundary");
    sub->add_option("--r-max", a.r_max, "level cap for dominance checks; 0 selects 2n");
    sub->add_option("--out", a.out, "output file, written atomically; stdout when absent");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(kExitValidation, "Usage", e.what());
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    std::string text;
    const Json report = run(cmd, a, &text);
    if (text.empty()) text = report.dump(2) + "\n";
    if (a.out.empty()) {
      std::cout << text;
    } else {
      mcs::io::write_atomic(a.out, text);
    }
    return 0;
  } catch (const mcs::Error& e) {
    const bool solver = e.kind() == mcs::ErrorKind::IterationCap || e.kind() == mcs::ErrorKind::SolverNonConvergence;
    return fail(solver ? kExitSolver : kExitValidation, mcs::to_string(e.kind()), e.what());
  } catch (const std::exception& e) {
    return fail(kExitValidation, "Validation", e.what());
  }
}
