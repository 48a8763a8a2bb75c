#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string binary_path() {
    const char* p = std::getenv("REVGAS_BIN");
    REQUIRE_MESSAGE(p != nullptr, "REVGAS_BIN must point at the revgas binary");
    return p;
}

int run(const std::string& args) {
    std::string cmd = binary_path() + " " + args + " >/dev/null 2>/dev/null";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

fs::path write_config(const fs::path& dir, const std::string& name) {
    fs::create_directories(dir);
    fs::path p = dir / name;
    std::ofstream f(p);
    f << R"({
      "n_particles": 20,
      "box": {"width": 1.0, "height": 1.0},
      "initial_region": {"x0": 0.0, "y0": 0.0, "x1": 0.5, "y1": 0.5},
      "particle_radius": 0.006,
      "repulsion_strength": 5.0,
      "cutoff": 0.018,
      "dt": 0.0009765625,
      "steps": 200,
      "seed": 3
    })";
    return p;
}

} // namespace

TEST_CASE("expand writes series and summary and exits 0") {
    fs::path dir = fs::temp_directory_path() / "revgas_cli_expand";
    fs::remove_all(dir);
    fs::path cfg = write_config(dir, "c.json");
    int rc = run("expand --config " + cfg.string() + " --out " + (dir / "out").string());
    CHECK(rc == 0);
    CHECK(fs::exists(dir / "out" / "series.csv"));
    CHECK(fs::exists(dir / "out" / "summary.json"));
    std::string csv = slurp(dir / "out" / "series.csv");
    CHECK(csv.rfind("step,entropy_macro,entropy_volume,return_fraction,divergence,energy\n", 0) == 0);
}

TEST_CASE("unknown subcommand exits with the usage code") {
    CHECK(run("frobnicate") == 2);
    CHECK(run("expand --no-such-flag") == 2);
}

TEST_CASE("config errors exit with the config code") {
    fs::path dir = fs::temp_directory_path() / "revgas_cli_badcfg";
    fs::remove_all(dir);
    fs::create_directories(dir);
    fs::path bad = dir / "bad.json";
    std::ofstream(bad) << R"({"n_particles": 0})";
    CHECK(run("expand --config " + bad.string() + " --out " + dir.string()) == 3);
    CHECK(run("expand --config " + (dir / "missing.json").string() + " --out " + dir.string()) == 3);
}

TEST_CASE("runtime errors exit with the runtime code") {
    fs::path dir = fs::temp_directory_path() / "revgas_cli_runtime";
    fs::remove_all(dir);
    fs::path cfg = write_config(dir, "c.json");
    // kick scheduled outside [0, 2 * reversal_step]
    int rc = run("loschmidt --config " + cfg.string() + " --reversal-step 10 --epsilon 1e-6 " +
                 "--kick-step 1000 --out " + (dir / "out").string());
    CHECK(rc == 4);
}

TEST_CASE("identical inputs give byte-identical outputs") {
    fs::path dir = fs::temp_directory_path() / "revgas_cli_det";
    fs::remove_all(dir);
    fs::path cfg = write_config(dir, "c.json");
    std::string base = "loschmidt --config " + cfg.string() +
                       " --reversal-step 100 --epsilon 0 --seed 9 --out ";
    REQUIRE(run(base + (dir / "a").string()) == 0);
    REQUIRE(run(base + (dir / "b").string()) == 0);
    CHECK(slurp(dir / "a" / "series.csv") == slurp(dir / "b" / "series.csv"));
    CHECK(slurp(dir / "a" / "summary.json") == slurp(dir / "b" / "summary.json"));
    CHECK(!slurp(dir / "a" / "series.csv").empty());
}
