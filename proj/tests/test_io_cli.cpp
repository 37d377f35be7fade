#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "mirrorfib/commands.hpp"
#include "mirrorfib/json_io.hpp"
#include "mirrorfib/report.hpp"

using namespace mirrorfib;
using Catch::Matchers::ContainsSubstring;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "mirrorfib_io_tests";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string write_file(const std::string& name, const std::string& content) {
    fs::path p = scratch_dir() / name;
    std::ofstream out(p);
    out << content;
    out.close();
    return p.string();
}

const char* kRank1Cy3 = R"({
  "label": "rank 1",
  "rank": 1,
  "cubic": [{"i": 0, "j": 0, "k": 0, "value": 6}],
  "c2": [12]
})";

}  // namespace

TEST_CASE("json rational scalars") {
    CHECK(io::rat_from_json(io::json(5)) == Rat(5));
    CHECK(io::rat_from_json(io::json("3/4")) == rat_of(3, 4));
    CHECK_THROWS_AS(io::rat_from_json(io::json(1.5)), std::invalid_argument);
    CHECK_THROWS_AS(io::rat_from_json(io::json::object()), std::invalid_argument);
    CHECK_THROWS_AS(io::rat_from_json(io::json("1.5")), std::invalid_argument);
}

TEST_CASE("matrix loading") {
    io::json good = io::json::parse(R"({"rows":2,"cols":2,"entries":[[1,"1/2"],["-3",4]]})");
    QMat m = io::matrix_from_json(good);
    CHECK(m.at(0, 1) == rat_of(1, 2));
    CHECK(m.at(1, 0) == Rat(-3));

    CHECK_THROWS_WITH(io::matrix_from_json(io::json::parse(R"({"cols":2,"entries":[]})")),
                      ContainsSubstring("rows"));
    CHECK_THROWS_AS(
        io::matrix_from_json(io::json::parse(R"({"rows":2,"cols":2,"entries":[[1,2],[3]]})")),
        std::invalid_argument);
    CHECK_THROWS_AS(
        io::matrix_from_json(io::json::parse(R"({"rows":1,"cols":1,"entries":[[1.5]]})")),
        std::invalid_argument);
    CHECK_THROWS_AS(
        io::matrix_from_json(io::json::parse(R"({"rows":-1,"cols":1,"entries":[]})")),
        std::invalid_argument);
}

TEST_CASE("matrix family loading accepts both shapes") {
    auto bare = io::json::parse(R"([{"rows":1,"cols":1,"entries":[[2]]}])");
    auto wrapped = io::json::parse(R"({"matrices":[{"rows":1,"cols":1,"entries":[[2]]}]})");
    CHECK(io::matrices_from_json(bare).size() == 1);
    CHECK(io::matrices_from_json(wrapped) == io::matrices_from_json(bare));
    CHECK_THROWS_WITH(io::matrices_from_json(io::json(3)), ContainsSubstring("matrices"));
}

TEST_CASE("k3 model loading") {
    auto good = io::json::parse(R"({"label":"demo","gram":[[-2,1],[1,-2]]})");
    k3::Model m = io::k3_from_json(good);
    CHECK(m.t() == 2);
    CHECK(m.label() == "demo");
    CHECK(m.gram().at(0, 1) == Rat(1));
    CHECK_THROWS_WITH(io::k3_from_json(io::json::object()), ContainsSubstring("gram"));
    CHECK_THROWS_AS(io::k3_from_json(io::json::parse(R"({"gram":[[1,2]]})")),
                    std::invalid_argument);
}

TEST_CASE("cy3 datum loading") {
    cy3::Datum d = io::cy3_from_json(io::json::parse(kRank1Cy3));
    CHECK(d.rank() == 1);
    CHECK(d.c(0, 0, 0) == Rat(6));
    CHECK(d.c2() == std::vector<Rat>{Rat(12)});
    CHECK(d.label() == "rank 1");

    // Consistent duplicates across permuted indices are fine.
    auto dup = io::json::parse(R"({
      "rank": 2,
      "cubic": [{"i":0,"j":0,"k":1,"value":3},{"i":1,"j":0,"k":0,"value":3}],
      "c2": [0, 0]
    })");
    CHECK(io::cy3_from_json(dup).c(0, 1, 0) == Rat(3));

    auto clash = io::json::parse(R"({
      "rank": 2,
      "cubic": [{"i":0,"j":0,"k":1,"value":3},{"i":1,"j":0,"k":0,"value":4}],
      "c2": [0, 0]
    })");
    CHECK_THROWS_WITH(io::cy3_from_json(clash),
                      ContainsSubstring("inconsistent duplicate cubic entry at (0,0,1)"));

    CHECK_THROWS_WITH(io::cy3_from_json(io::json::parse(
                          R"({"rank":1,"cubic":[{"i":0,"j":0,"k":1,"value":1}],"c2":[0]})")),
                      ContainsSubstring("out of range"));
    CHECK_THROWS_WITH(
        io::cy3_from_json(io::json::parse(R"({"rank":1,"cubic":[],"c2":[0,0]})")),
        ContainsSubstring("c2"));
    CHECK_THROWS_WITH(io::cy3_from_json(io::json::parse(R"({"rank":0,"cubic":[],"c2":[]})")),
                      ContainsSubstring("rank"));
    CHECK_THROWS_WITH(io::cy3_from_json(io::json::parse(R"({"rank":1,"c2":[0]})")),
                      ContainsSubstring("cubic"));
}

TEST_CASE("file loading surfaces open and parse failures") {
    CHECK_THROWS_WITH(io::load_json_file((scratch_dir() / "no_such_file.json").string()),
                      ContainsSubstring("cannot open"));
    std::string bad = write_file("bad.json", "{not json");
    CHECK_THROWS_WITH(io::load_json_file(bad), ContainsSubstring("invalid JSON"));
    std::string fine = write_file("fine.json", "{\"x\": 1}");
    CHECK(io::load_json_file(fine)["x"] == 1);
}

TEST_CASE("comma lists of rationals") {
    auto v = cmd::parse_rat_list("1, 2/3 ,-4");
    CHECK(v == std::vector<Rat>{Rat(1), rat_of(2, 3), Rat(-4)});
    CHECK(cmd::parse_rat_list("7").size() == 1);
    CHECK_THROWS_WITH(cmd::parse_rat_list("1,,2"), ContainsSubstring("empty entry"));
    CHECK_THROWS_AS(cmd::parse_rat_list(""), std::invalid_argument);
    CHECK_THROWS_AS(cmd::parse_rat_list("1,abc"), std::invalid_argument);
}

TEST_CASE("report serialization shape") {
    report::Report rep;
    rep.command = "demo";
    rep.checks.push_back({"first", true, report::ordered_json{{"k", 1}}});
    rep.checks.push_back({"second", false, report::ordered_json::object()});
    CHECK_FALSE(rep.pass());
    auto j = rep.to_json();
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"command", "pass", "checks", "version"});
    CHECK(j["pass"] == false);
    CHECK(j["version"] == "0.1.0");
    CHECK(j["checks"].size() == 2);
    CHECK(j["checks"][0]["name"] == "first");
    std::string human = rep.human();
    CHECK_THAT(human, ContainsSubstring("[PASS] first"));
    CHECK_THAT(human, ContainsSubstring("[FAIL] second"));
    CHECK_THAT(human, ContainsSubstring("overall: FAIL"));
}

TEST_CASE("float witnesses round-trip exactly") {
    for (double v : {0.5, 1e-9, 3.141592653589793, -2.2250738585072014e-308, 123456.789})
        CHECK(std::stod(report::jfloat(v)) == v);
}

TEST_CASE("cy3 suite over a file-backed datum") {
    std::string path = write_file("cy3_r1.json", kRank1Cy3);
    cmd::RunConfig cfg;
    cfg.input_path = path;
    cfg.trials = 20;
    cfg.seed = 7;
    auto rep = cmd::run_check_cy3(cfg);
    CHECK(rep.command == "check-cy3");
    CHECK(rep.pass());
    // Identical configuration gives byte-identical serialized reports.
    auto again = cmd::run_check_cy3(cfg);
    CHECK(rep.to_json().dump(2) == again.to_json().dump(2));
    // A different seed still passes but reruns fresh trials.
    cfg.seed = 8;
    CHECK(cmd::run_check_cy3(cfg).pass());

    cmd::RunConfig empty;
    CHECK_THROWS_WITH(cmd::run_check_cy3(empty), ContainsSubstring("--input"));
}

TEST_CASE("quintic-style datum passes the cy3 suite") {
    std::string path = write_file("cy3_quintic.json", R"({
      "label": "quintic-like",
      "rank": 1,
      "cubic": [{"i":0,"j":0,"k":0,"value":5}],
      "c2": [50]
    })");
    cmd::RunConfig cfg;
    cfg.input_path = path;
    cfg.trials = 10;
    CHECK(cmd::run_check_cy3(cfg).pass());

    cfg.d = {Rat(1)};
    auto chi = cmd::run_chi(cfg);
    CHECK(chi.pass());
    CHECK(chi.checks[0].witness["chi"] == "5");
}

TEST_CASE("chi command validates its inputs") {
    std::string path = write_file("cy3_r1b.json", kRank1Cy3);
    cmd::RunConfig cfg;
    cfg.input_path = path;
    CHECK_THROWS_WITH(cmd::run_chi(cfg), ContainsSubstring("--d"));
    cfg.d = {Rat(1)};
    auto rep = cmd::run_chi(cfg);
    CHECK(rep.pass());
    CHECK(rep.checks[0].witness["chi"] == "2");
    cmd::RunConfig noinput;
    noinput.d = {Rat(1)};
    CHECK_THROWS_WITH(cmd::run_chi(noinput), ContainsSubstring("--input"));
}

TEST_CASE("weights command on a matrix family file") {
    std::string path = write_file("w.json", R"({
      "matrices": [{"rows":2,"cols":2,"entries":[[1,1],[0,1]]}]
    })");
    cmd::RunConfig cfg;
    cfg.input_path = path;
    auto rep = cmd::run_weights(cfg);
    CHECK(rep.command == "weights");
    CHECK(rep.pass());
    cfg.weights = {Rat(3)};
    CHECK(cmd::run_weights(cfg).pass());
    std::string bad = write_file("w_bad.json", R"({
      "matrices": [{"rows":1,"cols":1,"entries":[[2]]}]
    })");
    cfg.input_path = bad;
    cfg.weights.clear();
    CHECK_FALSE(cmd::run_weights(cfg).pass());  // not unipotent
}

TEST_CASE("k3 suite over a file-backed model") {
    std::string path = write_file("k3.json", R"({"label":"demo","gram":[[-2]]})");
    cmd::RunConfig cfg;
    cfg.input_path = path;
    cfg.trials = 25;
    auto rep = cmd::run_check_k3(cfg);
    CHECK(rep.command == "check-k3");
    CHECK(rep.pass());
    CHECK(rep.to_json().dump() == cmd::run_check_k3(cfg).to_json().dump());
}

TEST_CASE("slag commands") {
    cmd::RunConfig cfg;
    cfg.n = 2;
    cfg.samples = 25;
    CHECK(cmd::run_slag_verify(cfg).pass());

    cmd::RunConfig fib;
    fib.d = {Rat(0), rat_of(7, 10)};
    auto frep = cmd::run_slag_fiber(fib);
    CHECK(frep.pass());
    CHECK(frep.checks[0].witness["z"].size() == 2);
    cmd::RunConfig short_d;
    short_d.d = {Rat(1)};
    CHECK_THROWS_AS(cmd::run_slag_fiber(short_d), std::invalid_argument);

    cmd::RunConfig disc;
    disc.d = {Rat(0), Rat(-1), Rat(0)};
    auto drep = cmd::run_slag_discriminant(disc);
    CHECK(drep.pass());
    CHECK(drep.checks[0].witness["branches"].dump() == "[[1,2]]");
    CHECK(drep.checks[0].witness["l"] == 2);

    cmd::RunConfig mono;
    mono.n = 3;
    auto mrep = cmd::run_slag_monodromy(mono);
    CHECK(mrep.pass());
    CHECK(mrep.checks.size() == 3);  // classical + unipotency + fixed difference
    mono.n = 5;
    CHECK(cmd::run_slag_monodromy(mono).checks.size() == 2);

    cmd::RunConfig simp;
    simp.n = 4;
    auto srep = cmd::run_slag_simplicity(simp);
    CHECK(srep.pass());
    CHECK(srep.checks[0].witness["computed"] == srep.checks[0].witness["expected"]);
}

TEST_CASE("torus duality sweep command") {
    cmd::RunConfig cfg;
    cfg.n = 3;
    auto rep = cmd::run_torus(cfg);
    CHECK(rep.pass());
    CHECK(rep.checks[0].name == "duality_diagram_exact");
    cfg.n = 1;
    CHECK_THROWS_AS(cmd::run_torus(cfg), std::invalid_argument);
    cfg.n = 11;
    CHECK_THROWS_AS(cmd::run_torus(cfg), std::invalid_argument);
}

TEST_CASE("second-page table command") {
    cmd::RunConfig cfg;
    cfg.d = {Rat(1), Rat(101)};
    auto rep = cmd::run_leray_table(cfg);
    CHECK(rep.pass());
    CHECK(rep.checks[0].witness["b3"] == 204);
    CHECK(rep.checks[0].witness["mirror_b3"] == 4);
    cfg.d = {Rat(1)};
    CHECK_THROWS_AS(cmd::run_leray_table(cfg), std::invalid_argument);
    cfg.d = {rat_of(1, 2), Rat(3)};
    CHECK_THROWS_AS(cmd::run_leray_table(cfg), std::invalid_argument);
}
