#include "commands.hpp"
#include "dlq/io.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace dlq;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run dlq_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string &name) {
  const auto p = fs::temp_directory_path() / ("dlq-cli-test-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Table parse_csv(const std::string &text, const fs::path &dir) {
  const auto f = dir / "stdout.csv";
  std::ofstream(f, std::ios::binary) << text;
  return read_table(f);
}

} // namespace

TEST_CASE("spectrum to standard output") {
  const auto dir = scratch("spectrum");
  const auto r = dlq_run({"spectrum", "--mass", "0", "--length", "1", "--count", "3"});
  REQUIRE(r.code == 0);
  const auto t = parse_csv(r.out, dir);
  CHECK(t.columns == std::vector<std::string>{"I", "P_I", "Omega_I", "Delta_I", "residual"});
  REQUIRE(t.rows.size() == 3);
  const double pi = std::numbers::pi;
  CHECK(t.rows[0][1] == doctest::Approx(pi / 2).epsilon(1e-15));
  CHECK(t.rows[1][1] == doctest::Approx(3 * pi / 2).epsilon(1e-15));
  CHECK(t.rows[2][1] == doctest::Approx(5 * pi / 2).epsilon(1e-15));
}

TEST_CASE("spectrum to a file") {
  const auto dir = scratch("spectrum-file");
  const auto r = dlq_run({"spectrum", "--mass", "1", "--count", "1", "--out",
                          (dir / "s.csv").string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  const auto t = read_table(dir / "s.csv");
  CHECK(std::abs(t.rows[0][1] - 2.028757838) < 1e-9);
  CHECK(t.rows[0][4] < 1e-12);
}

TEST_CASE("usage errors exit with code 1") {
  auto r = dlq_run({"spectrum", "--count", "3"});
  CHECK(r.code == 1);
  CHECK(r.err.find("--mass") != std::string::npos);
  CHECK(dlq_run({"figure", "6"}).code == 1);
  CHECK(dlq_run({"figure", "0"}).code == 1);
  CHECK(dlq_run({}).code == 1);
  CHECK(dlq_run({"diagnose", "--check", "nonsense"}).code == 1);
  CHECK(dlq_run({"figure", "5", "--split", "1.5", "--out-dir",
                 scratch("bad-split").string()})
            .code == 1);
  CHECK(dlq_run({"--help"}).code == 0);
}

TEST_CASE("write failures exit with code 3") {
  const auto r = dlq_run({"spectrum", "--mass", "1", "--count", "2", "--out",
                          "/proc/nonexistent/dir/s.csv"});
  CHECK(r.code == 3);
}

TEST_CASE("config file and flag precedence") {
  const auto dir = scratch("config");
  std::ofstream(dir / "c.json") << R"({"n_local": 4, "n_global": 50, "mass_times_R": 2.0})";
  CHECK(dlq_run({"figure", "5", "--config", (dir / "c.json").string(), "--mass", "0.5",
                 "--out-dir", (dir / "out").string()})
            .code == 0);
  const auto m = read_manifest(dir / "out" / "manifest.json");
  CHECK(m.config.n_local == 4);
  CHECK(m.config.n_global == 50);
  CHECK(m.config.mass_times_R == 0.5);
  CHECK(m.config.split_fraction == doctest::Approx(1.0 / std::numbers::pi));

  std::ofstream(dir / "bad.json") << R"({"mass": 1})";
  CHECK(dlq_run({"figure", "5", "--config", (dir / "bad.json").string(), "--out-dir",
                 (dir / "out2").string()})
            .code == 1);
}

TEST_CASE("figure 1: density spreads and its front tracks the light cone") {
  const auto dir = scratch("fig1");
  REQUIRE(dlq_run({"figure", "1", "--out-dir", dir.string()}).code == 0);
  const auto front = read_table(dir / "fig1_front.csv");
  REQUIRE(front.rows.size() == 3);
  for (const auto &row : front.rows) {
    CHECK(std::abs(row[2] - row[1]) < 0.03);
    CHECK(std::abs(row[3] - row[1]) < 0.03);
    CHECK(row[4] < 10.0 * row[6]);
  }
  const auto density = read_table(dir / "fig1_density.csv");
  CHECK(density.rows.size() == 801);
  CHECK(density.columns.size() == 7);
}

TEST_CASE("figure 2: reconstruction errors shrink") {
  const auto dir = scratch("fig2");
  REQUIRE(dlq_run({"figure", "2", "--out-dir", dir.string()}).code == 0);
  const auto errors = read_table(dir / "fig2_errors.csv");
  REQUIRE(errors.rows.size() == 3);
  CHECK(errors.rows[1][1] < errors.rows[0][1]);
  CHECK(errors.rows[2][1] < errors.rows[1][1]);
  CHECK(errors.rows[2][1] < 0.02);
  CHECK(read_table(dir / "fig2_components.csv").columns.size() == 9);
}

TEST_CASE("figure 3 writes both panels and a manifest with matching hashes") {
  const auto dir = scratch("fig3");
  const auto r = dlq_run({"figure", "3", "--out-dir", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(fs::exists(dir / "fig3a_spectra.csv"));
  CHECK(fs::exists(dir / "fig3b_spectra.csv"));
  const auto m = read_manifest(dir / "manifest.json");
  REQUIRE(m.files.size() == 2);
  for (const auto &f : m.files)
    CHECK(f.sha256 == sha256_file(dir / f.path));
  for (const auto &row : read_table(dir / "fig3b_spectra.csv").rows) {
    CHECK(row[4] >= 0.0);
    CHECK(row[4] <= 1.0);
  }
}

TEST_CASE("figure 4 flags no inverted entries for the default spectra") {
  const auto dir = scratch("fig4");
  REQUIRE(dlq_run({"figure", "4", "--out-dir", dir.string(), "--n-local", "10"}).code == 0);
  const auto t = read_table(dir / "fig4_temperature.csv");
  CHECK(t.rows.size() == 50);
  for (const auto &row : t.rows)
    CHECK(row[7] == 0.0);
}

TEST_CASE("figure 5 correlations are bounded and deterministic") {
  const auto a = scratch("fig5a"), b = scratch("fig5b");
  REQUIRE(dlq_run({"figure", "5", "--n-local", "10", "--out-dir", a.string()}).code == 0);
  REQUIRE(dlq_run({"figure", "5", "--n-local", "10", "--out-dir", b.string()}).code == 0);
  CHECK(slurp(a / "fig5_correlations.csv") == slurp(b / "fig5_correlations.csv"));
  for (const auto &row : read_table(a / "fig5_correlations.csv").rows) {
    CHECK(row[6] <= 1.0);
    CHECK(row[7] <= 1.0);
  }
}

TEST_CASE("diagnostics on defaults") {
  const auto dir = scratch("diagnose");
  const auto cache = (dir / "cache").string();
  SUBCASE("conditions") {
    const auto r = dlq_run({"diagnose", "--check", "conditions", "--cache-dir", cache});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["passed"] == true);
    CHECK(j["results"]["cond1_max_err"].get<double>() < 1e-3);
  }
  SUBCASE("inequivalence") {
    const auto path = dir / "ineq.json";
    const auto r = dlq_run({"diagnose", "--check", "inequivalence", "--out", path.string()});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(slurp(path));
    CHECK(j["results"]["diagonal_path_non_vanishing"] == true);
    CHECK(j["results"]["quadratic_path_vanishing"] == true);
    CHECK(j["results"]["hilbert_schmidt"]["diverges"] == true);
  }
  SUBCASE("energy") {
    const auto r = dlq_run({"diagnose", "--check", "energy"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    for (const auto &mode : j["results"]["modes"])
      CHECK(mode["diverges"] == true);
  }
  SUBCASE("convergence") {
    CHECK(dlq_run({"diagnose", "--check", "convergence"}).code == 0);
  }
  SUBCASE("a failed property exits with code 2") {
    // too few global modes for the unitarity threshold
    const auto r = dlq_run({"diagnose", "--check", "conditions", "--n-global", "20"});
    CHECK(r.code == 2);
    CHECK(nlohmann::json::parse(r.out)["passed"] == false);
  }
}
