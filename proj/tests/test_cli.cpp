#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "singweyl/io.hpp"

#ifndef SINGWEYL_CLI
#error "SINGWEYL_CLI must point at the built command-line binary"
#endif

namespace fs = std::filesystem;
using nlohmann::json;
using Catch::Approx;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("singweyl_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
};

int run(const std::string& args, const fs::path& dir) {
    std::string cmd = "cd " + dir.string() + " && " + std::string(SINGWEYL_CLI) + " " + args +
                      " > cli_stdout.txt 2> cli_stderr.txt";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("mfun writes the requested grid and exact closed values") {
    TempDir td;
    REQUIRE(run("mfun --model bessel:l=0 --zgrid points:-4:0 --out m.csv", td.path) == 0);
    singweyl::CsvTable t = singweyl::csv_read((td.path / "m.csv").string());
    REQUIRE(t.header == std::vector<std::string>{"re_z", "im_z", "re_M", "im_M"});
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0][2] == Approx(-2.0).epsilon(1e-10));
    CHECK(std::abs(t.rows[0][3]) < 1e-12);

    REQUIRE(run("mfun --model bessel:l=1 --zgrid ray:pi/2,1,100,7 --out r.csv", td.path) == 0);
    singweyl::CsvTable r = singweyl::csv_read((td.path / "r.csv").string());
    CHECK(r.rows.size() == 7);
}

TEST_CASE("config file values apply and command-line flags override them") {
    TempDir td;
    {
        std::ofstream cfg(td.path / "cfg.txt");
        cfg << "model=bessel:l=1\ncount=2\n";
    }
    REQUIRE(run("eig --config cfg.txt --out e.csv", td.path) == 0);
    singweyl::CsvTable t = singweyl::csv_read((td.path / "e.csv").string());
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0][1] == Approx(20.1907285564).epsilon(1e-9));

    REQUIRE(run("eig --config cfg.txt --count 3 --out e3.csv", td.path) == 0);
    CHECK(singweyl::csv_read((td.path / "e3.csv").string()).rows.size() == 3);
}

TEST_CASE("configuration errors exit with code 2") {
    TempDir td;
    CHECK(run("eig --no-such-flag", td.path) == 2);
    CHECK(run("nosuchcommand", td.path) == 2);
    {
        std::ofstream cfg(td.path / "bad.txt");
        cfg << "bogus_key=1\n";
    }
    CHECK(run("eig --config bad.txt", td.path) == 2);
    CHECK(run("eig --config missing.txt", td.path) == 2);
}

TEST_CASE("precondition violations exit with code 4") {
    TempDir td;
    // measure requires a model with a closed-form m-function
    CHECK(run("measure --model bessel+coulomb:l=1,q1=1", td.path) == 4);
    // unknown model families are rejected before any computation
    CHECK(run("mfun --model nosuchmodel:l=1", td.path) == 4);
}

TEST_CASE("measure output matches the free density and validates its schema") {
    TempDir td;
    REQUIRE(run("measure --model bessel:l=0 --window 0.5,8 --points 6 --out meas.csv", td.path) == 0);
    singweyl::CsvTable t = singweyl::csv_read((td.path / "meas.csv").string());
    REQUIRE(t.rows.size() == 6);
    CHECK(t.rows[0][1] == Approx(std::sqrt(0.5) / singweyl::pi).epsilon(1e-6));
    json j = json::parse(slurp(td.path / "meas.json"));
    for (const char* key : {"model", "window", "atoms", "flagged_indices"}) CHECK(j.contains(key));
}

TEST_CASE("nevanlinna output is deterministic for a fixed seed") {
    TempDir td;
    REQUIRE(run("nevanlinna --model bessel:l=1 --seed 42 --out a.json", td.path) == 0);
    REQUIRE(run("nevanlinna --model bessel:l=1 --seed 42 --out b.json", td.path) == 0);
    CHECK(slurp(td.path / "a.json") == slurp(td.path / "b.json"));
    json j = json::parse(slurp(td.path / "a.json"));
    for (const char* key : {"kappa_kernel", "kappa_growth", "k_minimal", "seed"}) CHECK(j.contains(key));
    CHECK(j["kappa_kernel"].get<int>() == 1);
}

TEST_CASE("bm compares two presets and reports a verdict") {
    TempDir td;
    REQUIRE(run("bm --model bessel:l=1 --model1 bessel+coulomb:l=1,q1=1 --out bm.json", td.path) == 0);
    json j = json::parse(slurp(td.path / "bm.json"));
    for (const char* key : {"verdict", "threshold", "rays"}) CHECK(j.contains(key));
    CHECK(j["verdict"].get<std::string>() == "inconsistent");
}

TEST_CASE("atomic CSV writes round-trip through the reader") {
    TempDir td;
    std::vector<std::string> header = {"a", "b"};
    std::vector<std::vector<double>> rows = {{1.0, 2.5}, {-3.0, 1e-9}};
    singweyl::csv_write((td.path / "t.csv").string(), header, rows);
    singweyl::CsvTable t = singweyl::csv_read((td.path / "t.csv").string());
    CHECK(t.header == header);
    CHECK(t.rows == rows);
    CHECK_THROWS(singweyl::csv_write((td.path / "bad.csv").string(), header, {{1.0}}));
}
