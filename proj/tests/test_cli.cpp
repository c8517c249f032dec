#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

const std::string kCli = DUDLEYLAB_CLI_PATH;
const std::string kData = DUDLEYLAB_TEST_DATA_DIR;

struct RunResult {
    int exit_code = -1;
    std::string output; // stdout only
};

RunResult run(const std::string& args) {
    const std::string cmd = kCli + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) res.output.append(buf, got);
    const int status = pclose(pipe);
    res.exit_code = WEXITSTATUS(status);
    return res;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("cli validate: exit codes 0, 1 and 2") {
    CHECK(run("validate " + kData + "/two_point_space.json").exit_code == 0);
    CHECK(run("validate " + kData + "/mu.json").exit_code == 0);
    CHECK(run("validate " + kData + "/f01.json").exit_code == 0);

    auto bad = run("validate " + kData + "/asym_space.json");
    CHECK(bad.exit_code == 1);
    CHECK(bad.output.find("asymmetry") != std::string::npos);

    CHECK(run("validate " + kData + "/malformed.json").exit_code == 2);
    CHECK(run("validate /nonexistent/nope.json").exit_code == 1);
}

TEST_CASE("cli dist: bl, prokhorov and tv values on the unit pair") {
    auto bl = run("dist bl " + kData + "/mu.json " + kData + "/nu.json");
    REQUIRE(bl.exit_code == 0);
    auto jb = nlohmann::json::parse(bl.output);
    CHECK(jb["metric"] == "bl");
    CHECK(jb["value"].get<double>() == 1.0);

    auto lp = run("dist prokhorov " + kData + "/mu.json " + kData + "/mix.json --crosscheck");
    REQUIRE(lp.exit_code == 0);
    auto jl = nlohmann::json::parse(lp.output);
    CHECK(jl["metric"] == "lp");
    CHECK(jl["value"].get<double>() == 0.5);
    CHECK(jl["crosscheck"]["agree"] == true);

    auto tv = run("dist tv " + kData + "/mix.json " + kData + "/mu.json --crosscheck");
    REQUIRE(tv.exit_code == 0);
    auto jt = nlohmann::json::parse(tv.output);
    CHECK(jt["value"].get<double>() == 1.0);
    CHECK(jt["crosscheck"]["agree"] == true);

    auto mismatch =
        run("dist bl " + kData + "/mu.json " + kData + "/other_space_measure.json");
    CHECK(mismatch.exit_code == 1);
}

TEST_CASE("cli dist: witness and coupling payloads") {
    auto r = run("dist bl " + kData + "/mu.json " + kData + "/nu.json --witness --coupling");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.output);
    REQUIRE(j.contains("witness"));
    REQUIRE(j.contains("coupling"));
    const double f0 = j["witness"][0].get<double>();
    const double f1 = j["witness"][1].get<double>();
    CHECK(f0 - f1 == 1.0); // attains the optimum
    CHECK(j["coupling"][0][1].get<double>() == 1.0);
}

TEST_CASE("cli coupling subcommand") {
    auto bl = run("coupling bl " + kData + "/mix.json " + kData + "/mu.json");
    REQUIRE(bl.exit_code == 0);
    CHECK(nlohmann::json::parse(bl.output)["value"].get<double>() == 0.5);

    auto st = run("coupling strassen " + kData + "/mix.json " + kData + "/mu.json --epsilon 0");
    REQUIRE(st.exit_code == 0);
    CHECK(nlohmann::json::parse(st.output)["overflow"].get<double>() == 0.5);

    CHECK(run("coupling strassen " + kData + "/mix.json " + kData + "/mu.json").exit_code == 1);
}

TEST_CASE("cli coupling prokhorov reports value, threshold and tail") {
    auto r = run("coupling prokhorov " + kData + "/mix.json " + kData + "/mu.json");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.output);
    CHECK(j["metric"] == "lp");
    CHECK(j["value"].get<double>() == 0.5);
    CHECK(j["threshold"].get<double>() == 0.5);
    CHECK(j["tail"].get<double>() <= j["threshold"].get<double>() + 1e-12);
}

TEST_CASE("cli dist prokhorov --crosscheck refuses oversized spaces loudly") {
    // The subset oracle is capped at 16 points; crosscheck on a larger
    // space is a capacity error, not a silent skip.
    const std::string big = "/tmp/dl_big_measure.json";
    {
        std::ofstream out(big);
        out << R"({"space": {"points": [)";
        for (int i = 0; i < 17; ++i) out << (i ? "," : "") << i;
        out << R"(], "metric": {"type": "real_line"}}, "mass": [1)";
        for (int i = 1; i < 17; ++i) out << ",0";
        out << R"(], "kind": "prob"})";
    }
    CHECK(run("dist prokhorov " + big + " " + big).exit_code == 0);
    CHECK(run("dist prokhorov " + big + " " + big + " --crosscheck").exit_code == 1);
    std::remove(big.c_str());
}

TEST_CASE("cli validate reports triangle witnesses") {
    const std::string path = "/tmp/dl_triangle_space.json";
    {
        std::ofstream out(path);
        out << R"({"points": ["a", "b", "c"],
                   "metric": {"type": "matrix",
                              "d": [[0, 1, 3], [1, 0, 1], [3, 1, 0]]}})";
    }
    auto r = run("validate " + path);
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("triangle violation") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("cli regularize matches the worked example") {
    auto r = run("regularize " + kData + "/f01.json --epsilon 0.1");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.output);
    CHECK(j["n"].get<int>() == 2);
    CHECK(j["g"][0].get<double>() == -0.1);
    CHECK(j["g"][1].get<double>() == 0.9);
    CHECK(j["checks"]["lower_ok"] == true);
    CHECK(j["checks"]["upper_ok"] == true);
    CHECK(j["checks"]["scale_ok"] == true);

    auto c = run("regularize " + kData + "/f_const3.json --epsilon 0.5");
    REQUIRE(c.exit_code == 0);
    auto cj = nlohmann::json::parse(c.output);
    for (int i = 0; i < 3; ++i) CHECK(cj["g"][i].get<double>() == 2.5);

    CHECK(run("regularize " + kData + "/f01.json --epsilon -1").exit_code == 1);
    CHECK(run("regularize " + kData + "/f01.json --epsilon 0").exit_code == 1);
}

TEST_CASE("cli demo escape: CSV columns and the 1/j law") {
    const std::string csv = "/tmp/dudleylab_test_escape.csv";
    auto r = run("demo escape --horizon 5 --out " + csv);
    REQUIRE(r.exit_code == 0);
    const std::string content = slurp(csv);
    std::istringstream lines(content);
    std::string line;
    bool header_seen = false;
    int row = 0;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            CHECK(line == "j,bl,prokhorov,ubweak_gap,cbweak_gap,coupling_tail,verdict");
            header_seen = true;
            continue;
        }
        ++row;
        std::istringstream cells(line);
        std::string cell;
        std::getline(cells, cell, ',');
        CHECK(std::stoi(cell) == row);
        std::getline(cells, cell, ',');
        CHECK(std::fabs(std::stod(cell) - 1.0 / row) < 1e-12);
        std::getline(cells, cell, ','); // prokhorov
        std::getline(cells, cell, ','); // ubweak_gap
        std::getline(cells, cell, ','); // cbweak_gap
        CHECK(std::stod(cell) == 1.0);
    }
    CHECK(row == 5);
    std::remove(csv.c_str());
}

TEST_CASE("cli demo equivalence summary at the default horizon") {
    const std::string csv = "/tmp/dudleylab_test_eq.csv";
    auto r = run("demo equivalence --out " + csv);
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.find("all surrogates agree: approximates") != std::string::npos);
    std::remove(csv.c_str());
}

TEST_CASE("cli demo a1/a2 run and report") {
    auto a1 = run("demo a1 --horizon 9 --seed 5 --samples 200 --out /tmp/dl_a1.csv --json");
    REQUIRE(a1.exit_code == 0);
    CHECK(a1.output.find("markov_bound=holds") != std::string::npos);

    auto a2 = run("demo a2 --horizon 3 --out /tmp/dl_a2.csv --json");
    REQUIRE(a2.exit_code == 0);
    CHECK(a2.output.find("contraction=holds") != std::string::npos);
    CHECK(a2.output.find("max_ratio=0.5") != std::string::npos);
    std::remove("/tmp/dl_a1.csv");
    std::remove("/tmp/dl_a2.csv");
}

TEST_CASE("cli determinism: identical bytes for identical seeds") {
    const std::string csv = "/tmp/dl_det.csv";
    auto r1 = run("demo a1 --horizon 8 --seed 99 --samples 300 --out " + csv + " --json");
    const std::string file1 = slurp(csv);
    auto r2 = run("demo a1 --horizon 8 --seed 99 --samples 300 --out " + csv + " --json");
    REQUIRE(r1.exit_code == 0);
    REQUIRE(r2.exit_code == 0);
    CHECK(r1.output == r2.output);
    CHECK(file1 == slurp(csv));

    // Env fallback equals the explicit flag.
    auto direct = run("demo a1 --horizon 8 --seed 123 --samples 100 --out " + csv + " --json");
    auto viaenv = [&] {
        const std::string cmd = "DUDLEYLAB_SEED=123 " + kCli + " demo a1 --horizon 8 " +
                                "--samples 100 --out " + csv + " --json 2>/dev/null";
        FILE* pipe = popen(cmd.c_str(), "r");
        REQUIRE(pipe != nullptr);
        std::string out;
        char buf[4096];
        std::size_t got;
        while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
        pclose(pipe);
        return out;
    }();
    CHECK(viaenv == direct.output);
    std::remove(csv.c_str());
}

TEST_CASE("cli dist is deterministic across runs") {
    auto a = run("dist bl " + kData + "/mix.json " + kData + "/nu.json --witness --coupling");
    auto b = run("dist bl " + kData + "/mix.json " + kData + "/nu.json --witness --coupling");
    CHECK(a.output == b.output);
}
