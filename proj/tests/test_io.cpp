#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "dudleylab/io.hpp"
#include "support/generators.hpp"

using namespace dudleylab;

TEST_CASE("space JSON: real_line and matrix round-trips") {
    auto line = space_from_json(Json::parse(
        R"({"points": [0, 1, 2.5], "metric": {"type": "real_line"}})"));
    CHECK(line->size() == 3);
    CHECK(line->dist(0, 2) == 2.5);
    CHECK(line->has_coords());
    auto line2 = space_from_json(space_to_json(*line));
    CHECK(spaces_equal(*line, *line2));

    auto mat = space_from_json(Json::parse(
        R"({"points": ["a", "b"], "metric": {"type": "matrix", "d": [[0, 1], [1, 0]]}})"));
    CHECK(mat->label(1) == "b");
    CHECK_FALSE(mat->has_coords());
    auto mat2 = space_from_json(space_to_json(*mat));
    CHECK(spaces_equal(*mat, *mat2));
}

TEST_CASE("space JSON: schema errors vs invariant errors") {
    CHECK_THROWS_AS(space_from_json(Json::parse(R"({"points": [0, 1]})")), SchemaError);
    CHECK_THROWS_AS(space_from_json(Json::parse(
                        R"({"points": [0], "metric": {"type": "banana"}})")),
                    SchemaError);
    CHECK_THROWS_AS(space_from_json(Json::parse(
                        R"({"points": ["a"], "metric": {"type": "matrix"}})")),
                    SchemaError);
    // Well-formed JSON whose matrix breaks the axioms: a domain error.
    CHECK_THROWS_AS(space_from_json(Json::parse(
                        R"({"points": ["a", "b"],
                            "metric": {"type": "matrix", "d": [[0, 1], [2, 0]]}})")),
                    InputError);
    // Duplicate real points: a domain error.
    CHECK_THROWS_AS(space_from_json(Json::parse(
                        R"({"points": [1, 1], "metric": {"type": "real_line"}})")),
                    InputError);
}

TEST_CASE("file-loaded matrices get 1e-12 of triangle slack") {
    // d(0,2) overshoots the triangle bound by 5e-13: fine from a file.
    auto j = Json::parse(
        R"({"points": ["a", "b", "c"],
            "metric": {"type": "matrix",
                       "d": [[0, 1, 2.0000000000005e0], [1, 0, 1], [2.0000000000005e0, 1, 0]]}})");
    j["metric"]["d"][0][2] = 2.0 + 5e-13;
    j["metric"]["d"][2][0] = 2.0 + 5e-13;
    CHECK(space_from_json(j)->size() == 3);
    // But 1e-9 of overshoot is rejected.
    j["metric"]["d"][0][2] = 2.0 + 1e-9;
    j["metric"]["d"][2][0] = 2.0 + 1e-9;
    CHECK_THROWS_AS(space_from_json(j), InputError);
}

TEST_CASE("measure JSON: prob and signed kinds") {
    auto pj = Json::parse(
        R"({"space": {"points": [0, 1], "metric": {"type": "real_line"}},
            "mass": [0.25, 0.75], "kind": "prob"})");
    auto pm = measure_from_json(pj);
    REQUIRE(pm.prob.has_value());
    CHECK((*pm.prob)[1] == 0.75);

    auto sj = Json::parse(
        R"({"space": {"points": [0, 1], "metric": {"type": "real_line"}},
            "mass": [1.0, -1.0], "kind": "signed"})");
    auto sm = measure_from_json(sj);
    CHECK_FALSE(sm.prob.has_value());
    CHECK(total_variation_norm(sm.measure) == 2.0);

    auto missing_kind = Json::parse(
        R"({"space": {"points": [0, 1], "metric": {"type": "real_line"}}, "mass": [1, 0]})");
    CHECK_THROWS_AS(measure_from_json(missing_kind), SchemaError);

    auto bad_mass = Json::parse(
        R"({"space": {"points": [0, 1], "metric": {"type": "real_line"}},
            "mass": [0.2, 0.2], "kind": "prob"})");
    CHECK_THROWS_AS(measure_from_json(bad_mass), InputError);

    // Round trip.
    auto back = measure_from_json(measure_to_json(pm.measure, true));
    CHECK(back.measure.mass() == pm.measure.mass());
}

TEST_CASE("function JSON round-trip") {
    auto fj = Json::parse(
        R"({"space": {"points": [0, 1], "metric": {"type": "real_line"}}, "values": [0, 1]})");
    auto f = function_from_json(fj);
    CHECK(f[1] == 1.0);
    auto f2 = function_from_json(function_to_json(f));
    CHECK(f2.values() == f.values());
    CHECK_THROWS_AS(function_from_json(Json::parse(R"({"values": [1]})")), SchemaError);
}

TEST_CASE("measure files may reference a space file by path") {
    const std::string dir = DUDLEYLAB_TEST_DATA_DIR;
    std::ifstream in(dir + "/mu_ref.json");
    REQUIRE(in);
    auto m = measure_from_json(Json::parse(in), dir);
    REQUIRE(m.prob.has_value());
    CHECK(m.measure.size() == 2);
    CHECK((*m.prob)[0] == 1.0);
}

TEST_CASE("equivalence CSV has exactly the documented columns") {
    auto table = equivalence_suite(gen_escape_pair(9));
    std::ostringstream out;
    write_equivalence_csv(out, table, {"demo=escape", "horizon=9"});
    std::istringstream lines(out.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line == "# demo=escape");
    std::getline(lines, line);
    CHECK(line == "# horizon=9");
    std::getline(lines, line);
    CHECK(line == "j,bl,prokhorov,ubweak_gap,cbweak_gap,coupling_tail,verdict");
    int rows = 0;
    while (std::getline(lines, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 9);
}

TEST_CASE("verdict and report JSON carry the mode and verdict names") {
    auto v = make_verdict(VerdictMode::Prokhorov, {0.5, 0.4, 0.3, 0.2}, {1.0, 0.9, 0.8, 0.7});
    auto j = verdict_to_json(v);
    CHECK(j["mode"] == "prokhorov");
    CHECK(j["verdict"] == "approximates");

    auto rep = cb_weak_counterexample(3);
    auto cj = cb_weak_report_to_json(rep);
    CHECK(cj["cbweak_verdict"] == "fails");
    CHECK(cj["bl_verdict"] == "approximates");
}
