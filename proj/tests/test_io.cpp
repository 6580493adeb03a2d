#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "mcs/fixtures.hpp"
#include "mcs/io.hpp"
#include "support.hpp"

using namespace mcs;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "mcs_cli_tests";
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

std::string read(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Run {
  int code;
  std::string err;
};

Run cli(const std::string& args) {
  const fs::path err = scratch() / "stderr.txt";
  const std::string cmd = std::string(MCS_CLI_PATH) + " " + args + " > /dev/null 2> " + err.string();
  const int status = std::system(cmd.c_str());
  return {WEXITSTATUS(status), read(err)};
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("pencil, point and pair round trip") {
  Rng rng(801);
  const LinearPencil l = fixtures::random_monic(3, 2, 4);
  const LinearPencil l2 = io::pencil_from_json(io::to_json(l));
  CHECK((l2.a(1).matrix() - l.a(1).matrix()).norm() == 0.0);
  const MatrixTuple x = random_tuple(2, 2, rng);
  CHECK(max_distance(io::point_from_json(io::to_json(x)), x) == 0.0);
  ExposingPair p;
  p.alpha = random_hermitian(2, rng);
  p.phi = {random_hermitian(2, rng)};
  const ExposingPair p2 = io::pair_from_json(io::to_json(p));
  CHECK((p2.alpha.matrix() - p.alpha.matrix()).norm() == 0.0);
}

TEST_CASE("plain numbers are accepted as real entries") {
  const auto j = io::Json::parse(R"({"level":1,"g":2,"X":[[[0.5]],[[-1]]]})");
  const MatrixTuple x = io::point_from_json(j);
  CHECK(x[1](0, 0).real() == -1.0);
}

TEST_CASE("invalid inputs raise validation errors") {
  CHECK_THROWS_AS(io::point_from_json(io::Json::parse(R"({"level":1,"g":2,"X":[[[0.5]]]})")), Error);
  CHECK_THROWS_AS(io::hermitian_from_json(io::Json::parse(R"([[1, 2], [0, 1]])")), Error);
  CHECK_THROWS_AS(io::pencil_from_json(io::Json::parse(R"({"k":2})")), Error);
  const fs::path bad = scratch() / "bad.json";
  write(bad, "{not json");
  try {
    io::load_file(bad.string());
    FAIL("expected Validation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Validation);
  }
}

}  // TEST_SUITE

TEST_SUITE("cli") {

TEST_CASE("member reports the margin") {
  const fs::path pt = scratch() / "half.json";
  const fs::path out = scratch() / "member.json";
  write(pt, R"({"level":1,"g":1,"X":[[[0.5]]]})");
  REQUIRE(cli("member --fixture interval --point " + pt.string() + " --out " + out.string()).code == 0);
  const auto j = io::load_file(out.string());
  CHECK(j["verdict"] == "Interior");
  CHECK(j["margin"].get<double>() == doctest::Approx(0.5));
}

TEST_CASE("errors exit nonzero with an error object") {
  const Run unknown = cli("frobnicate");
  CHECK(unknown.code == 2);
  CHECK(io::Json::parse(unknown.err).contains("error"));
  const fs::path bad = scratch() / "bad_point.json";
  write(bad, "[1, 2");
  const Run malformed = cli("member --fixture interval --point " + bad.string());
  CHECK(malformed.code == 2);
  const auto j = io::Json::parse(malformed.err);
  CHECK(j["error"]["kind"] == "Validation");
  CHECK(cli("member --fixture interval").code == 2);
}

TEST_CASE("counterexample verdicts exit zero") {
  const fs::path pt = scratch() / "one.json";
  const fs::path pair = scratch() / "zero_pair.json";
  const fs::path out = scratch() / "exposed.json";
  write(pt, R"({"level":1,"g":1,"X":[[[1]]]})");
  write(pair, R"({"n":1,"g":1,"Phi":[[[0]]],"alpha":[[0]]})");
  REQUIRE(cli("exposed --fixture interval --point " + pt.string() + " --pair " + pair.string() + " --out " +
              out.string())
              .code == 0);
  CHECK(io::load_file(out.string())["singular_locus_matches"] == "CounterexampleFound");
}

TEST_CASE("repeated runs with a seed are byte identical") {
  const fs::path a = scratch() / "cover_a.json";
  const fs::path b = scratch() / "cover_b.json";
  const std::string args = "cover --fixture cube --levels 1,2 --budget 20 --seed 42 --out ";
  REQUIRE(cli(args + a.string()).code == 0);
  REQUIRE(cli(args + b.string()).code == 0);
  CHECK(std::hash<std::string>{}(read(a)) == std::hash<std::string>{}(read(b)));
  CHECK(read(a) == read(b));
  const fs::path c = scratch() / "sample_a.json";
  const fs::path d = scratch() / "sample_b.json";
  REQUIRE(cli("sample-boundary --fixture disk --level 2 --budget 5 --seed 3 --out " + c.string()).code == 0);
  REQUIRE(cli("sample-boundary --fixture disk --level 2 --budget 5 --seed 3 --out " + d.string()).code == 0);
  CHECK(read(c) == read(d));
}

TEST_CASE("plot data traces the boundary") {
  const fs::path out = scratch() / "disk.csv";
  REQUIRE(cli("plot-data --fixture disk --out " + out.string()).code == 0);
  std::ifstream in(out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "angle,x1,x2");
  const LinearPencil l = fixtures::disk();
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    double t = 0.0, x1 = 0.0, x2 = 0.0;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &x1, &x2) == 3);
    // Independent per-angle bisection on the smallest eigenvalue.
    double lo = 0.0, hi = 4.0;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      const MatrixTuple y = MatrixTuple::scalars({mid * std::cos(t), mid * std::sin(t)});
      (test::reference_min_eigenvalue(test::reference_evaluate(l, y)) >= 0.0 ? lo : hi) = mid;
    }
    CHECK(std::hypot(x1, x2) == doctest::Approx(lo).epsilon(1e-8));
    ++rows;
  }
  CHECK(rows == 720);
  const fs::path fig = scratch() / "cusp.csv";
  REQUIRE(cli("plot-data --fixture cusp --out " + fig.string()).code == 0);
  CHECK(std::count(std::istreambuf_iterator<char>(std::ifstream(fig).rdbuf()), {}, '\n') == 721);
}

}  // TEST_SUITE
