#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = qcval::cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

class Workspace {
 public:
  Workspace() : dir_(fs::temp_directory_path() / ("qcval_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(dir_);
  }
  ~Workspace() { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  fs::path dir_;
};

std::vector<std::string> data_rows(const std::string& csv) {
  std::vector<std::string> rows;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') rows.push_back(line);
  return rows;
}

std::vector<std::string> split(const std::string& row) {
  std::vector<std::string> out;
  std::istringstream in(row);
  std::string cell;
  while (std::getline(in, cell, ',')) out.push_back(cell);
  return out;
}

const char* kSimple = R"({"kind": "simple", "levels": [1, 2], "bodies": [
  {"shape": "box", "lower": [0, 0], "upper": [1, 1]},
  {"shape": "box", "lower": [0, 0], "upper": [0.5, 0.5]}]})";

}  // namespace

TEST_CASE("volumes of the unit cube") {
  Workspace ws;
  const std::string cube = ws.write("cube.json", R"({"kind": "body", "shape": "box", "lower": [0, 0, 0], "upper": [1, 1, 1]})");
  const Result r = run({"--seed", "3", "--samples", "20000", "volumes", cube});
  REQUIRE(r.status == 0);
  CHECK(r.out.find("# seed=3") != std::string::npos);
  CHECK(r.out.find("# samples=20000") != std::string::npos);
  const auto rows = data_rows(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "method,V0,V1,V2,V3");
  CHECK(rows[1] == "exact,1,3,3,1");
  CHECK(split(rows[2])[0] == "mc");
  CHECK(split(rows[3])[0] == "mc_se");
}

TEST_CASE("evaluate agrees in both forms") {
  Workspace ws;
  const std::string val = ws.write("phi.json", R"({"kind": "valuation", "form": "phi", "delta": 0,
      "components": [{"k": 2, "power": 1}]})");
  const std::string f = ws.write("f.json", kSimple);
  // phi = t has no cutoff; the lenient conversion still applies.
  const std::string val2 = ws.write("phi2.json", R"({"form": "phi", "delta": 0,
      "components": [{"k": 2, "table": [[0, 0], [5, 5]]}]})");
  const Result r = run({"evaluate", val2, f});
  REQUIRE(r.status == 0);
  const auto rows = data_rows(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == "phi,phi_method,nu,nu_method");
  const auto cells = split(rows[1]);
  CHECK(std::stod(cells[0]) == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(cells[1] == "exact");
  CHECK(std::stod(cells[2]) == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(cells[3] == "exact");

  CHECK(r.out.find("# well_defined=false") != std::string::npos);

  // A power phi has no nu-form; the phi column is still reported.
  const Result p = run({"evaluate", val, f});
  REQUIRE(p.status == 0);
  CHECK(p.out.find("# not convertible") != std::string::npos);
  const auto prow = split(data_rows(p.out)[1]);
  CHECK(std::stod(prow[0]) == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(prow[1] == "exact");
  CHECK(prow[2].empty());
}

TEST_CASE("measure lists the atoms") {
  Workspace ws;
  const std::string f = ws.write("f.json", kSimple);
  const Result r = run({"measure", f, "--k", "2"});
  REQUIRE(r.status == 0);
  const auto rows = data_rows(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[1] == "1,0.75,exact");
  CHECK(rows[2] == "2,0.25,exact");
}

TEST_CASE("planted fixtures fail the check suite") {
  const Result bad = run({"check", "--planted", "non-valuation", "--pairs", "12", "--motions", "3"});
  CHECK(bad.status == 1);
  const auto doc = nlohmann::json::parse(bad.out);
  CHECK(doc["passed"] == false);
  CHECK_FALSE(doc["reports"][0]["witnesses"].empty());

  const Result moved = run({"check", "--planted", "non-invariant", "--pairs", "4", "--motions", "5"});
  CHECK(moved.status == 1);
}

TEST_CASE("an admissible valuation passes the check suite") {
  Workspace ws;
  const std::string val = ws.write("v.json", R"({"form": "nu", "delta": 0.25,
      "components": [{"k": 0, "atoms": [[0.5, 1]]}, {"k": 1, "density": {"knots": [0.25, 2], "values": [1, 0]}}]})");
  const Result r = run({"check", val, "--pairs", "12", "--motions", "5"});
  CHECK(r.status == 0);
  CHECK(nlohmann::json::parse(r.out)["passed"] == true);
}

TEST_CASE("input errors exit with status 2") {
  Workspace ws;
  const std::string broken = ws.write("broken.json", R"({"shape": "ball", "center": [0, 0]})");
  const Result r = run({"volumes", broken});
  CHECK(r.status == 2);
  CHECK(r.err.find("$.radius") != std::string::npos);
  CHECK(run({"volumes", ws.path("missing.json")}).status == 2);
  CHECK(run({"volumes"}).status == 2);
  CHECK(run({"frobnicate"}).status == 2);
  CHECK(run({"--seed", "x", "volumes", broken}).status == 2);
  CHECK(run({"fit", "--mode", "bogus", broken}).status == 2);
}

TEST_CASE("identical seeds give identical output") {
  Workspace ws;
  const std::string disk = ws.write("disk.json", R"({"shape": "ball", "center": [0, 0], "radius": 1})");
  const std::string a = ws.path("a.csv"), b = ws.path("b.csv");
  REQUIRE(run({"--seed", "7", "--samples", "5000", "--out", a, "volumes", disk}).status == 0);
  REQUIRE(run({"--seed", "7", "--samples", "5000", "--out", b, "volumes", disk}).status == 0);
  auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  CHECK(slurp(a) == slurp(b));
  CHECK_FALSE(slurp(a).empty());
  REQUIRE(run({"--seed", "8", "--samples", "5000", "--out", b, "volumes", disk}).status == 0);
  CHECK(slurp(a) != slurp(b));
}

TEST_CASE("fit, counterexample, convert and layercake run") {
  Workspace ws;
  const std::string nu = ws.write("nu.json", R"({"form": "nu", "delta": 0.5,
      "components": [{"k": 2, "density": {"knots": [0.5, 1], "values": [1, 0]}}]})");
  const Result psi = run({"fit", nu, "--mode", "psi", "--dimension", "2", "--grid", "0,0.75,2"});
  REQUIRE(psi.status == 0);
  const auto rows = data_rows(psi.out);
  REQUIRE(rows.size() == 4);
  CHECK(std::stod(split(rows[2])[3]) == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(std::stod(split(rows[3])[3]) == doctest::Approx(0.5).epsilon(1e-9));

  const Result had = run({"fit", nu, "--t", "2", "--dimension", "2"});
  REQUIRE(had.status == 0);
  CHECK(std::stod(split(data_rows(had.out)[3])[1]) == doctest::Approx(0.5).epsilon(1e-9));

  const Result ce = run({"counterexample", "--dimension", "2", "--depth", "5"});
  REQUIRE(ce.status == 0);
  CHECK(ce.out.find("# mu(f)=3.14159") != std::string::npos);
  CHECK(data_rows(ce.out).size() == 6);

  const Result conv = run({"convert", nu});
  REQUIRE(conv.status == 0);
  CHECK(nlohmann::json::parse(conv.out)["form"] == "phi");

  const std::string phi = ws.write("phi.json", R"({"truncated_linear": {"delta": 0.25, "slope": 1}})");
  const std::string f = ws.write("f.json", kSimple);
  const Result lc = run({"--samples", "20000", "layercake", phi, f});
  REQUIRE(lc.status == 0);
  const auto cells = split(data_rows(lc.out)[1]);
  // int phi(f) = 0.75 * 0.75 + 0.25 * 1.75.
  CHECK(std::stod(cells[2]) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(std::stod(cells[4])) < 4.0);
}
