#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"

#include "intfield/config.hpp"
#include "intfield/experiment.hpp"
#include "intfield/io.hpp"

using namespace intfield;
namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::temp_directory_path() / "intfield_test_cli";

int run(const std::string& args) {
    const std::string cmd = std::string(INTFIELD_CLI) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path write_file(const std::string& name, const std::string& text) {
    fs::create_directories(kWork);
    const fs::path p = kWork / name;
    std::ofstream(p) << text;
    return p;
}

std::vector<std::vector<double>> read_csv(const fs::path& p, std::vector<std::string>* header = nullptr) {
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    if (header) {
        std::stringstream hs(line);
        std::string h;
        while (std::getline(hs, h, ',')) header->push_back(h);
    }
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::stringstream ls(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

const char* kSmallRun = R"([model]
kind = sine-gordon
mass = 1
beta = 1

[grid]
x_min = -20
x_max = 20
n_cells = 400
t_end = 4

[geometry]
kind = line

[initial]
kind = soliton
velocity = 0.3
x0 = -2

[output]
probes = 0, 5
sample_every = 4
snapshot_every = 40
snapshot_stride = 8
)";

}  // namespace

TEST_CASE("config parsing") {
    const Config c = Config::parse_string("# comment\n[grid]\nn_cells = 64\n; comment line\nx_min=-2\n[model]\nkind = sine-gordon\n");
    CHECK(c.get_int("grid", "n_cells") == 64);
    CHECK(c.get_double("grid", "x_min") == -2.0);
    CHECK(c.get("model", "kind") == "sine-gordon");
    CHECK_THROWS_AS((void)c.get("model", "mass"), ConfigError);
    CHECK_THROWS_AS(Config::parse_string("orphan = 1\n"), ConfigError);
    CHECK_THROWS_AS(Config::parse_string("[a]\nx = 1\nx = 2\n"), ConfigError);
    CHECK_THROWS_AS(parse_double("1.5x", "k"), ConfigError);
    CHECK_THROWS_AS(parse_int("2.5", "k"), ConfigError);
    CHECK(parse_list("1, 2,3", "k") == std::vector<double>{1, 2, 3});
    CHECK(parse_list("", "k").empty());

    const Config r = c.resolved_against(simulate_schema());
    CHECK(r.get("geometry", "kind") == "line");
    CHECK(r.get("grid", "n_cells") == "64");
    CHECK_THROWS_AS((void)Config::parse_string("[grid]\nnodes = 3\n").resolved_against(simulate_schema()), ConfigError);
    CHECK_THROWS_AS((void)Config::parse_string("[extras]\nx = 3\n").resolved_against(simulate_schema()), ConfigError);
    // canonical text parses back to the same document
    CHECK(Config::parse_string(r.to_ini()).to_ini() == r.to_ini());
    CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("atomic writes leave no temporaries") {
    fs::remove_all(kWork / "atomic");
    fs::create_directories(kWork / "atomic");
    write_atomic((kWork / "atomic" / "a.txt").string(), "first");
    write_atomic((kWork / "atomic" / "a.txt").string(), "second");
    CHECK(slurp(kWork / "atomic" / "a.txt") == "second");
    CHECK(std::distance(fs::directory_iterator(kWork / "atomic"), fs::directory_iterator{}) == 1);
    CHECK(to_csv({"a", "b"}, {{1.0, 1.0 / 3}}) == "a,b\n1,0.33333333333333331\n");
}

TEST_CASE("derive-boundary reports b_i^2 = 4 for A_2") {
    const fs::path out = kWork / "derive";
    fs::remove_all(out);
    REQUIRE(run("derive-boundary --family A --rank 2 --out " + out.string()) == 0);
    const auto j = nlohmann::json::parse(slurp(out / "boundary.json"));
    CHECK(j["sign_choices"] == 8);
    CHECK(j["routes_agree"] == true);
    for (int i = 0; i < 3; ++i) CHECK(j["relations"][i] == "b_" + std::to_string(i) + "^2 = 4");
    CHECK(fs::exists(out / "run.manifest"));
    CHECK(run("derive-boundary --family D --rank 4 --route matrix --out " + (kWork / "derive_d4").string()) == 1);
    CHECK(run("derive-boundary --family Q --rank 4 --out " + (kWork / "derive_q").string()) == 1);
}

TEST_CASE("spectrum with a Neumann-Neumann config") {
    const fs::path cfg = write_file("nn.ini", "[spectrum]\nmass = 1\nL = 5\nn = 6\n");
    const fs::path out = kWork / "spectrum";
    fs::remove_all(out);
    REQUIRE(run("spectrum --config " + cfg.string() + " --out " + out.string()) == 0);
    std::vector<std::string> header;
    const auto rows = read_csv(out / "spectrum.csv", &header);
    CHECK(header == std::vector<std::string>{"n", "k_n", "omega_n"});
    REQUIRE(rows.size() == 6);
    for (const auto& r : rows) CHECK(std::abs(r[1] - r[0] * std::numbers::pi / 10) < 1e-10);
    // flags override the file, and the manifest re-runs
    REQUIRE(run("spectrum --config " + cfg.string() + " --lambda-plus 0.5 --out " + out.string()) == 0);
    const std::string first = slurp(out / "spectrum.csv");
    REQUIRE(run("spectrum --config " + (out / "run.manifest").string() + " --out " + (kWork / "spectrum2").string()) == 0);
    CHECK(slurp(kWork / "spectrum2" / "spectrum.csv") == first);
}

TEST_CASE("malformed config: exit 1 and no output") {
    const fs::path cfg = write_file("bad.ini", std::string(kSmallRun) + "[grid]\n");
    const fs::path cfg2 = write_file("typo.ini", "[grid]\nn_cels = 20\n");
    const fs::path cfg3 = write_file("value.ini", "[grid]\nn_cells = twenty\n");
    const fs::path cfg4 = write_file("physics.ini", "[initial]\nkind = soliton\nvelocity = 1.2\n[model]\nkind = sine-gordon\n");
    for (const auto& c : {cfg, cfg2, cfg3, cfg4}) {
        const fs::path out = kWork / ("bad_" + c.stem().string());
        fs::remove_all(out);
        CHECK(run("simulate --config " + c.string() + " --out " + out.string()) == 1);
        CHECK_FALSE(fs::exists(out));
    }
    CHECK(run("simulate --config " + (kWork / "missing.ini").string()) == 1);
    CHECK(run("no-such-command") == 1);
}

TEST_CASE("determinism and manifest round trip") {
    const fs::path cfg = write_file("small.ini", kSmallRun);
    const fs::path a = kWork / "run_a", b = kWork / "run_b", c = kWork / "run_c";
    for (const auto& d : {a, b, c}) fs::remove_all(d);
    REQUIRE(run("simulate --config " + cfg.string() + " --out " + a.string()) == 0);
    REQUIRE(run("simulate --config " + cfg.string() + " --out " + b.string()) == 0);
    CHECK(slurp(a / "timeseries.csv") == slurp(b / "timeseries.csv"));
    CHECK(slurp(a / "snapshots_phi.csv") == slurp(b / "snapshots_phi.csv"));
    REQUIRE(run("simulate --config " + (a / "run.manifest").string() + " --out " + c.string()) == 0);
    CHECK(slurp(a / "timeseries.csv") == slurp(c / "timeseries.csv"));
    CHECK(slurp(a / "run.manifest") == slurp(c / "run.manifest"));

    std::vector<std::string> header;
    const auto rows = read_csv(a / "timeseries.csv", &header);
    CHECK(header == std::vector<std::string>{"t", "E", "P", "U", "P_plus_U", "Q_topological", "probe_1", "probe_2"});
    CHECK(rows.back()[0] == doctest::Approx(4.0));
    CHECK(rows.front()[5] == doctest::Approx(1.0));
    // the manifest echoes defaults that were never written in the input
    const Config m = Config::parse_file((a / "run.manifest").string());
    CHECK(m.get("geometry", "sponge_fraction") == "0.1");
}

TEST_CASE("vacuum config gives an all-zero series") {
    const fs::path cfg = write_file("vac.ini", "[grid]\nn_cells = 400\nt_end = 2\n[output]\nprobes = -3, 0, 3\n");
    const fs::path out = kWork / "vacuum";
    fs::remove_all(out);
    REQUIRE(run("simulate --config " + cfg.string() + " --out " + out.string()) == 0);
    const auto rows = read_csv(out / "timeseries.csv");
    REQUIRE(rows.size() > 10);
    for (const auto& r : rows)
        for (std::size_t i = 1; i < r.size(); ++i) CHECK(r[i] == 0.0);
}

TEST_CASE("sweeps fan out over independent runs") {
    const fs::path cfg = write_file("small.ini", kSmallRun);
    const fs::path out = kWork / "sweep";
    fs::remove_all(out);
    REQUIRE(run("simulate --config " + cfg.string() + " --sweep initial.velocity=0,0.3,0.6 --jobs 3 --out " + out.string()) == 0);
    for (int i = 0; i < 3; ++i) {
        const fs::path d = out / ("sweep_00" + std::to_string(i));
        REQUIRE(fs::exists(d / "timeseries.csv"));
        // each sweep member matches a stand-alone run of its own manifest
        const fs::path again = kWork / ("sweep_again_" + std::to_string(i));
        fs::remove_all(again);
        REQUIRE(run("simulate --config " + (d / "run.manifest").string() + " --out " + again.string()) == 0);
        CHECK(slurp(d / "timeseries.csv") == slurp(again / "timeseries.csv"));
    }
    CHECK(Config::parse_file((out / "sweep_002" / "run.manifest").string()).get("initial", "velocity") == "0.6");
    CHECK(run("simulate --config " + cfg.string() + " --sweep initial.velocity=0,1.5 --out " + (kWork / "sweep_bad").string()) == 1);
    CHECK_FALSE(fs::exists(kWork / "sweep_bad"));
}

TEST_CASE("numerical failure: exit 2 with a state dump") {
    const fs::path cfg = write_file("blowup.ini", "[grid]\nn_cells = 64\nt_end = 1\n[initial]\nkind = gaussian\namplitude = inf\n");
    const fs::path out = kWork / "blowup";
    fs::remove_all(out);
    CHECK(run("simulate --config " + cfg.string() + " --out " + out.string()) == 2);
    CHECK(fs::exists(out / "step_failure.txt"));
    CHECK_FALSE(fs::exists(out / "timeseries.csv"));
}

TEST_CASE("reflect and lax-check reports") {
    const fs::path out = kWork / "reflect";
    REQUIRE(run("reflect --kind free --k-re 1.5 --lambda 0.7 --out " + out.string()) == 0);
    auto j = nlohmann::json::parse(slurp(out / "reflect.json"));
    CHECK(j["modulus"].get<double>() == doctest::Approx(1.0));
    CHECK(std::atan2(j["value"]["im"].get<double>(), j["value"]["re"].get<double>()) == doctest::Approx(-2 * std::atan(0.7 / 1.5)));
    REQUIRE(run("reflect --kind free --k-re 0 --k-im 0.4 --lambda -0.4 --out " + out.string()) == 0);
    j = nlohmann::json::parse(slurp(out / "reflect.json"));
    CHECK(j["pole_flag"] == true);
    CHECK(run("reflect --kind sinh-gordon --theta-re 0.3 --a0 0.2 --b0 0.1 --out " + out.string()) == 1);

    const fs::path lk = kWork / "lax";
    REQUIRE(run("lax-check --a1-k-samples 50 --out " + lk.string()) == 0);
    j = nlohmann::json::parse(slurp(lk / "lax_check.json"));
    CHECK(j["a1_k_matrix"]["max_residual"].get<double>() < 1e-10);
    const fs::path cfg = write_file("toda.ini", "[model]\nkind = sinh-gordon\nmass = 1\nbeta = 0.8\n[grid]\nx_min = 0\nx_max = 20\n"
                                                "n_cells = 200\nt_end = 3\n[geometry]\nkind = periodic\n[initial]\nkind = fourier\n"
                                                "modes = 0.5\n[lax-check]\nlambda = 0.7, 1.3\n");
    REQUIRE(run("lax-check --config " + cfg.string() + " --out " + lk.string()) == 0);
    j = nlohmann::json::parse(slurp(lk / "lax_check.json"));
    for (const auto& r : j["refinement"]) CHECK(r["residual_ratio"].get<double>() == doctest::Approx(4.0).epsilon(0.25));
}
