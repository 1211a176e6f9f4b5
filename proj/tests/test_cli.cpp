// test_cli.cpp — End-to-end runs of the qtherm executable: exit codes, summaries and CSV output

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

const std::string kBinary = QTHERM_CLI_PATH;
const fs::path kConfigs = QTHERM_CONFIG_DIR;

struct Run {
    int code;
    std::string out;
    std::string err;
};

fs::path scratch() {
    static const fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / ("qtherm_cli_" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Run run(const std::string& args) {
    const fs::path out = scratch() / "stdout.txt", err = scratch() / "stderr.txt";
    const std::string cmd = kBinary + " " + args + " >" + out.string() + " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

std::string config(const char* name) { return "--config " + (kConfigs / name).string(); }

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ',')) fields.push_back(f);
        if (!line.empty() && line.back() == ',') fields.emplace_back();
        rows.push_back(fields);
    }
    return rows;
}

fs::path write_config(const std::string& name, const std::string& text) {
    const fs::path p = scratch() / name;
    std::ofstream(p) << text;
    return p;
}

} // namespace

TEST_CASE("sweep reproduces the valve crossing and is deterministic across thread counts") {
    const Run serial = run("sweep " + config("valve.json"));
    REQUIRE(serial.code == 0);
    const auto rows = parse_csv(serial.out);
    REQUIRE(rows.size() == 402);
    CHECK(rows[0][0] == "Tw");
    CHECK(rows[0].size() == 11);
    int crossings = 0;
    for (std::size_t i = 2; i < rows.size(); ++i) {
        const double a = std::stod(rows[i - 1][2]), b = std::stod(rows[i][2]);
        if ((a < 0) != (b < 0)) {
            ++crossings;
            CHECK(std::stod(rows[i - 1][0]) < 3.47);
            CHECK(std::stod(rows[i][0]) > 3.37);
        }
    }
    CHECK(crossings == 1);
    CHECK(serial.err.find("sweep: 401 points") != std::string::npos);

    const Run parallel = run("sweep " + config("valve.json") + " --threads 4");
    CHECK(parallel.out == serial.out);
}

TEST_CASE("nested sweep emits the coherence surface") {
    const fs::path out = scratch() / "coherence.csv";
    const Run r = run("sweep " + config("coherence.json") + " --out " + out.string());
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(slurp(out));
    REQUIRE(rows.size() == 1 + 21 * 9);
    CHECK(std::stod(rows[1][1]) == 0.0);
    CHECK(std::stod(rows[10][1]) == doctest::Approx(0.005));
}

TEST_CASE("empty-range grid is a usage error") {
    const Run r = run("sweep " + config("valve.json") + " --grid 2,2,5");
    CHECK(r.code == 1);
    CHECK(r.err.find("start < stop") != std::string::npos);
}

TEST_CASE("valve finds the zero of the hot current") {
    const Run r = run("valve " + config("valve.json"));
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1][0] == "h");
    CHECK(std::abs(std::stod(rows[1][1]) - 3.42) < 0.05);
    CHECK(r.err.find("valve: J_h = 0 at Tw = 3.4") != std::string::npos);

    const Run cold = run("valve " + config("valve.json") + " --current c");
    REQUIRE(cold.code == 0);
    CHECK(std::abs(std::stod(parse_csv(cold.out)[1][1]) - 3.53) < 0.05);
}

TEST_CASE("valve without a sign change exits 2") {
    const Run r = run("valve " + config("valve.json") + " --bracket 1,2");
    CHECK(r.code == 2);
    CHECK(r.err.find("no working point in bracket") != std::string::npos);
}

TEST_CASE("refrigerator reports the onset and COP below Carnot") {
    const Run r = run("refrigerator " + config("valve.json"));
    REQUIRE(r.code == 0);
    CHECK(r.err.find("cooling onset") != std::string::npos);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 24);
    CHECK(rows[0].back() == "heat_function");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].back() == "refrigerator");
        CHECK(std::stod(rows[i][11]) > 0.0); // Carnot margin
    }
}

TEST_CASE("amplifier") {
    const Run r = run("amplifier " + config("valve.json"));
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 13);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(std::stod(rows[i][2]) > 1.0);
        CHECK(rows[i].back() == "amplifier");
    }
}

TEST_CASE("thermometer recovers the hidden sample temperature") {
    const Run r = run("thermometer " + config("thermometer.json"));
    REQUIRE(r.code == 0);
    CHECK(r.err.find("Tw* = 2.8, Tc = 0.7") != std::string::npos);
    const auto rows = parse_csv(r.out);
    CHECK(std::stod(rows[1][2]) == doctest::Approx(2.8).epsilon(1e-6));
    CHECK(std::stod(rows[1][3]) == doctest::Approx(0.7).epsilon(1e-6));
    CHECK(rows[1][5] == "true");

    std::string below = slurp(kConfigs / "thermometer.json");
    below.replace(below.find("0.7"), 3, "0.55");
    const Run out_of_range = run("thermometer --config " + write_config("below.json", below).string());
    CHECK(out_of_range.code == 2);
    CHECK(out_of_range.err.find("sample below measurable range") != std::string::npos);
}

TEST_CASE("dynamics from |2> keeps a non-negative spectrum") {
    const Run r = run("dynamics " + config("valve.json"));
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() > 10);
    CHECK(rows[0][19] == "min_eigenvalue");
    CHECK(std::stod(rows[1][9]) == 1.0); // re ρ22 at t = 0
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::stod(rows[i][19]) >= -1e-8);

    const Run full = run("dynamics " + config("valve.json") + " --generator full");
    CHECK(full.code == 1); // full secular needs g = 0
}

TEST_CASE("phase map classifies every point") {
    const Run r = run("phase-map " + config("phase_map.json") + " --threads 3");
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 1 + 41 * 11);
    CHECK(rows[0].size() == 14);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const std::string& heat = rows[i][12];
        CHECK((heat == "heater" || heat == "valve" || heat == "refrigerator"));
    }
    const Run again = run("phase-map " + config("phase_map.json"));
    CHECK(again.out == r.out);
}

TEST_CASE("generator dump") {
    const Run r = run("generator " + config("valve.json"));
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 10);
    CHECK(rows[1].size() == 18);
}

TEST_CASE("usage and config errors exit 1") {
    CHECK(run("sweep").code == 1);
    CHECK(run("frobnicate " + config("valve.json")).code == 1);
    CHECK(run("sweep --config /nonexistent.json").code == 1);
    const fs::path bad = write_config("bad.json", R"({"system": {"omega_a": 1, "omega_b": 0.8}, "bats": []})");
    const Run r = run("sweep --config " + bad.string());
    CHECK(r.code == 1);
    CHECK(r.err.find("unknown key 'bats'") != std::string::npos);
    CHECK(run("--help").code == 0);
}
