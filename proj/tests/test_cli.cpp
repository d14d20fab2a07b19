#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "tunnelkit/cli.hpp"

using tunnelkit::cli_main;
namespace fs = std::filesystem;

namespace {

int run(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"tunnelkit"};
  argv.insert(argv.end(), args.begin(), args.end());
  return cli_main(static_cast<int>(argv.size()), argv.data());
}

fs::path fresh_dir(const char* tag) {
  fs::path p = fs::temp_directory_path() / (std::string("tunnelkit_test_") + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json load_json(const fs::path& p) {
  return nlohmann::json::parse(slurp(p));
}

}  // namespace

TEST_CASE("closed report with the reference preset") {
  auto dir = fresh_dir("closed");
  CHECK(run({"--paper", "--out", dir.string().c_str(), "closed"}) == 0);
  auto rep = load_json(dir / "closed.json");
  CHECK(rep["units"] == "SI");
  CHECK(rep["Lambda0"].get<double>() == doctest::Approx(12.376).epsilon(5e-4));
  CHECK(rep["a_q"].get<double>() == doctest::Approx(68.306).epsilon(1e-3));
  CHECK(rep["k_gs"].get<double>() == doctest::Approx(0.1152).epsilon(5e-3));
  CHECK(rep["Lambda"].get<double>() == doctest::Approx(8.459).epsilon(2e-3));
  CHECK(rep["T_esc_instanton"].get<double>() ==
        doctest::Approx(72.345e-3).epsilon(2e-3));
  CHECK(rep["T_esc_wkb"].get<double>() ==
        doctest::Approx(70.869e-3).epsilon(3e-3));
  fs::remove_all(dir);
}

TEST_CASE("suppression sweep is reproducible across thread counts") {
  auto dir1 = fresh_dir("sup1");
  auto dir3 = fresh_dir("sup3");
  setenv("TUNNELKIT_THREADS", "1", 1);
  CHECK(run({"--out", dir1.string().c_str(), "suppression", "--dmin", "1e-2",
             "--dmax", "1e2", "--points", "17"}) == 0);
  setenv("TUNNELKIT_THREADS", "3", 1);
  CHECK(run({"--out", dir3.string().c_str(), "suppression", "--dmin", "1e-2",
             "--dmax", "1e2", "--points", "17"}) == 0);
  unsetenv("TUNNELKIT_THREADS");
  std::string a = slurp(dir1 / "suppression.csv");
  std::string b = slurp(dir3 / "suppression.csv");
  CHECK(!a.empty());
  CHECK(a == b);
  // header comment, column names, then one line per point
  CHECK(std::count(a.begin(), a.end(), '\n') == 2 + 17);
  fs::remove_all(dir1);
  fs::remove_all(dir3);
}

TEST_CASE("evolve run on a small grid emits the decay table and fit") {
  auto dir = fresh_dir("evolve");
  fs::path cfg = dir / "cfg.json";
  {
    std::ofstream out(cfg);
    out << R"({"grid": {"half_width": 8, "points": 201},
               "time": {"t_max": 3, "samples": 13, "fit_min": 1, "fit_max": 3},
               "evolution": {"D": 0.5}})";
  }
  CHECK(run({"--config", cfg.string().c_str(), "--out", dir.string().c_str(),
             "evolve"}) == 0);
  auto rep = load_json(dir / "evolve.json");
  CHECK(rep["D"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rep["fitted_rate"].get<double>() > 0.0);
  CHECK(rep["predicted_rate"].get<double>() > 0.0);
  CHECK(rep["rate_ratio"].get<double>() > 0.0);
  std::string csv = slurp(dir / "evolve.csv");
  CHECK(csv.rfind("# columns: t [hbar/eps], rho2 [1], N [1], meanE [eps]\n",
                  0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2 + 13);
  // first sample is the normalization point
  CHECK(csv.find("\n0,") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("junction subcommands against the preset") {
  auto dir = fresh_dir("junction");
  CHECK(run({"--paper", "--out", dir.string().c_str(), "junction",
             "predict"}) == 0);
  auto pred = load_json(dir / "predict.json");
  CHECK(pred["regime"] == "large_d");
  CHECK(pred["T_esc"].get<double>() == doctest::Approx(14.255e-3).epsilon(0.01));
  CHECK(pred["junction"]["s"].get<double>() ==
        doctest::Approx(24.710 / 24.873).epsilon(1e-9));

  CHECK(run({"--paper", "--out", dir.string().c_str(), "junction",
             "invert"}) == 0);
  auto inv = load_json(dir / "invert.json");
  CHECK(inv["critical_current"].get<double>() ==
        doctest::Approx(24.789e-6).epsilon(1e-3));
  CHECK(inv["s"].get<double>() == doctest::Approx(0.9968).epsilon(5e-4));
  fs::remove_all(dir);
}

TEST_CASE("configuration errors exit with status 2") {
  auto dir = fresh_dir("cfgerr");
  fs::path bad = dir / "bad.json";
  {
    std::ofstream out(bad);
    out << R"({"modell": {}})";
  }
  CHECK(run({"--config", bad.string().c_str(), "--out", dir.string().c_str(),
             "closed"}) == 2);
  fs::path okcfg = dir / "ok.json";
  {
    std::ofstream out(okcfg);
    out << R"({"units": "natural"})";
  }
  // preset and explicit config are mutually exclusive
  CHECK(run({"--paper", "--config", okcfg.string().c_str(), "--out",
             dir.string().c_str(), "closed"}) == 2);
  // closed needs some potential definition
  CHECK(run({"--config", okcfg.string().c_str(), "--out",
             dir.string().c_str(), "closed"}) == 2);
  // junction invert without a junction block
  CHECK(run({"--config", okcfg.string().c_str(), "--out",
             dir.string().c_str(), "junction", "invert"}) == 2);
  // malformed JSON
  fs::path broken = dir / "broken.json";
  {
    std::ofstream out(broken);
    out << "{\"units\": ";
  }
  CHECK(run({"--config", broken.string().c_str(), "--out",
             dir.string().c_str(), "closed"}) == 2);
  // missing subcommand is a usage error
  CHECK(run({"--paper"}) == 2);
  fs::remove_all(dir);
}

TEST_CASE("library-level failures exit with status 3") {
  auto dir = fresh_dir("numerr");
  fs::path cfg = dir / "over.json";
  {
    std::ofstream out(cfg);
    // bias above the critical current: no metastable well
    out << R"({"junction": {"bias_current": 25.0e-6,
                             "critical_current": 24.873e-6,
                             "capacitance": 4.28e-12,
                             "resistance": 9.3}})";
  }
  CHECK(run({"--config", cfg.string().c_str(), "--out", dir.string().c_str(),
             "junction", "predict"}) == 3);
  fs::remove_all(dir);
}

TEST_CASE("help exits cleanly") {
  CHECK(run({"--help"}) == 0);
}
