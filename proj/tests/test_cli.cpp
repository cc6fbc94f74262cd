#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "fusionkit/cli.hpp"

namespace {

struct RunResult {
    int code = 0;
    std::string out, err;
};

RunResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    RunResult r;
    r.code = fusionkit::cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::filesystem::path temp_dir(const std::string& tag) {
    auto p = std::filesystem::temp_directory_path() / ("fusionkit_cli_" + tag);
    std::filesystem::remove_all(p);
    return p;
}

} // namespace

TEST_CASE("decompose prints sorted term lists") {
    const RunResult r = run_cli({"decompose", "--algebra", "A2", "--lhs", "2,1", "--rhs", "2,1"});
    CHECK(r.code == 0);
    CHECK(r.out == "(2,1) x (2,1) = 1(4,2) + 1(5,0) + 1(2,3) + 2(3,1) + 1(0,4) + 2(1,2) + 1(2,0) + 1(0,1)\n");
    CHECK(r.err.empty());

    const RunResult rc = run_cli({"decompose", "--algebra", "A2", "--lhs", "2,1", "--rhs", "2,1",
                                  "--conjugate-rhs"});
    CHECK(rc.code == 0);
    CHECK(rc.out == "(2,1) x (1,2) = 1(3,3) + 1(4,1) + 1(1,4) + 2(2,2) + 1(3,0) + 1(0,3) + 2(1,1) + 1(0,0)\n");

    const RunResult rj = run_cli({"decompose", "--algebra", "A2", "--lhs", "1,0", "--rhs", "0,1",
                                  "--format", "json"});
    CHECK(rj.code == 0);
    const auto j = nlohmann::json::parse(rj.out);
    CHECK(j["context"]["kind"] == "tensor");
    CHECK(j["context"]["algebra"] == "A2");
    REQUIRE(j["terms"].size() == 2);
    CHECK(j["terms"][0]["weight"] == nlohmann::json::array({1, 1}));
    CHECK(j["terms"][0]["mult"] == 1);
}

TEST_CASE("fuse folds into the alcove and stabilizes at large level") {
    const RunResult r4 = run_cli({"fuse", "--algebra", "A2", "--level", "4", "--lhs", "2,1", "--rhs", "2,1"});
    CHECK(r4.code == 0);
    CHECK(r4.out == "(2,1) * (2,1) = 1(3,1) + 1(0,4) + 2(1,2) + 1(2,0) + 1(0,1)\n");

    const RunResult big = run_cli({"fuse", "--algebra", "A2", "--level", "100", "--lhs", "2,1", "--rhs", "2,1"});
    const RunResult tensor = run_cli({"decompose", "--algebra", "A2", "--lhs", "2,1", "--rhs", "2,1"});
    CHECK(big.code == 0);
    CHECK(big.out.substr(big.out.find('=')) == tensor.out.substr(tensor.out.find('=')));

    const auto j = nlohmann::json::parse(
        run_cli({"fuse", "--algebra", "A2", "--level", "1", "--lhs", "1,0", "--rhs", "1,0", "--format", "json"})
            .out);
    CHECK(j["context"]["kind"] == "fusion");
    CHECK(j["context"]["level"] == 1);
    REQUIRE(j["terms"].size() == 1);
    CHECK(j["terms"][0]["weight"] == nlohmann::json::array({0, 1}));
}

TEST_CASE("moments subcommand summarizes one product") {
    const RunResult r = run_cli({"moments", "--algebra", "A2", "--lhs", "2,1", "--rhs", "2,1"});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "context: tensor(A2)\n"
          "product: (2,1) x (2,1)\n"
          "moments: m0=8 m1=10 m2=14 m3=22\n"
          "signature: 1^6 2^2\n");

    const auto j = nlohmann::json::parse(
        run_cli({"moments", "--algebra", "A2", "--lhs", "2,1", "--rhs", "2,1", "--format", "json"}).out);
    CHECK(j["moments"] == nlohmann::json::array({8, 10, 14, 22}));
    CHECK(j["signature"] == "1^6 2^2");

    const RunResult grp = run_cli({"moments", "--table", "f21", "--lhs", "3", "--rhs", "3", "--r-max", "2"});
    CHECK(grp.code == 0);
    CHECK_THAT(grp.out, Catch::Matchers::ContainsSubstring("context: group(F21)"));
    CHECK_THAT(grp.out, Catch::Matchers::ContainsSubstring("moments: m0=2 m1=3 m2=5"));
    CHECK_THAT(grp.out, Catch::Matchers::ContainsSubstring("signature: 1^1 2^1"));

    const RunResult fus = run_cli({"moments", "--algebra", "A2", "--level", "4", "--lhs", "2,1", "--rhs", "2,1"});
    CHECK_THAT(fus.out, Catch::Matchers::ContainsSubstring("context: fusion(A2,k=4)"));
    CHECK_THAT(fus.out, Catch::Matchers::ContainsSubstring("moments: m0=5 m1=6 m2=8"));
}

TEST_CASE("compare subcommand reports conjugation columns") {
    const RunResult r = run_cli({"compare", "--algebra", "A4", "--lhs", "1,1,1,0", "--rhs", "1,1,0,1"});
    CHECK(r.code == 0);
    CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("moments: m0=24 m1=45 m2=111"));
    CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("conjugate moments: m0=25 m1=45 m2=111"));
    CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("signature: 1^12 2^6 3^3 4^3"));
    CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("conjugate signature: 1^15 2^3 3^4 4^3"));
    CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("prop2 (m1 equal): yes"));
    CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("m0 equal: no"));

    // The flag conjugates mu first, so the two columns swap.
    const RunResult rc =
        run_cli({"compare", "--algebra", "A4", "--lhs", "1,1,1,0", "--rhs", "1,1,0,1", "--conjugate-rhs"});
    CHECK_THAT(rc.out, Catch::Matchers::ContainsSubstring("mu: (1,0,1,1)"));
    CHECK_THAT(rc.out, Catch::Matchers::ContainsSubstring("moments: m0=25 m1=45 m2=111"));
    CHECK_THAT(rc.out, Catch::Matchers::ContainsSubstring("conjugate moments: m0=24 m1=45 m2=111"));

    const RunResult grp = run_cli({"compare", "--table", "f21", "--lhs", "3", "--rhs", "3"});
    CHECK(grp.code == 0);
    CHECK_THAT(grp.out, Catch::Matchers::ContainsSubstring("prop1 (m2 equal): yes"));
    CHECK_THAT(grp.out, Catch::Matchers::ContainsSubstring("prop2 (m1 equal): no"));
    CHECK_THAT(grp.out, Catch::Matchers::ContainsSubstring("property P (multisets equal): no"));

    const auto j = nlohmann::json::parse(
        run_cli({"compare", "--algebra", "A2", "--lhs", "2,1", "--rhs", "2,1", "--format", "json"}).out);
    CHECK(j["prop1_holds"] == true);
    CHECK(j["property_P_holds"] == true);
    CHECK(j["signature"] == "1^6 2^2");
}

TEST_CASE("verify distinguishes pass from fail through exit codes") {
    const RunResult pass = run_cli({"verify", "--prop", "2", "--algebra", "A2", "--bound", "4"});
    CHECK(pass.code == 0);
    CHECK_THAT(pass.out, Catch::Matchers::ContainsSubstring("result: PASS (0 violations)"));
    CHECK_THAT(pass.err, Catch::Matchers::ContainsSubstring("scan: prop 2 on tensor(A2), bound 4"));
    CHECK_THAT(pass.err, Catch::Matchers::ContainsSubstring("scan: done, 39 classes / 180 pairs"));
    CHECK(pass.out.find("scan:") == std::string::npos);

    const RunResult fail = run_cli({"verify", "--prop", "2", "--table", "f21"});
    CHECK(fail.code == 2);
    CHECK_THAT(fail.out, Catch::Matchers::ContainsSubstring("result: FAIL (4 violations)"));
    CHECK_THAT(fail.out, Catch::Matchers::ContainsSubstring("violation: lambda=(3) mu=(3)"));

    const RunResult p6 = run_cli({"verify", "--prop", "6", "--algebra", "A2", "--level", "2"});
    CHECK(p6.code == 0);
    CHECK_THAT(p6.out, Catch::Matchers::ContainsSubstring("prop 6 on fusion(A2,k=2)"));

    const auto j = nlohmann::json::parse(
        run_cli({"verify", "--prop", "2", "--table", "f21", "--format", "json"}).out);
    CHECK(j["passed"] == false);
    REQUIRE(j["violations"].size() == 4);
    CHECK(j["violations"][0]["lambda"] == nlohmann::json::array({3}));
}

TEST_CASE("scan lists witnesses in canonical order") {
    const RunResult r = run_cli({"scan", "--prop", "3", "--algebra", "A3", "--bound", "5"});
    CHECK(r.code == 2);
    CHECK(r.out ==
          "lambda=(2,2,1) mu=(2,2,1)\n"
          "lambda=(2,2,1) mu=(1,2,2)\n"
          "lambda=(1,2,2) mu=(2,2,1)\n"
          "lambda=(1,2,2) mu=(1,2,2)\n");

    const RunResult trunc =
        run_cli({"scan", "--prop", "3", "--algebra", "A3", "--bound", "5", "--stop-after", "2"});
    CHECK(trunc.code == 2);
    CHECK(trunc.out == "lambda=(2,2,1) mu=(2,2,1)\nlambda=(2,2,1) mu=(1,2,2)\n");

    const RunResult none = run_cli({"scan", "--prop", "2", "--algebra", "A2", "--bound", "4"});
    CHECK(none.code == 0);
    CHECK(none.out == "none\n");

    const auto j = nlohmann::json::parse(
        run_cli({"scan", "--prop", "2", "--table", "f21", "--format", "json", "--stop-after", "2"}).out);
    REQUIRE(j["witnesses"].size() == 2);
    CHECK(j["witnesses"][1]["mu"] == nlohmann::json::array({4}));
}

TEST_CASE("smatrix prints deterministic rows") {
    const RunResult r = run_cli({"smatrix", "--algebra", "A1", "--level", "2"});
    CHECK(r.code == 0);
    CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("S matrix for fusion(A1,k=2), 3 weights\n"));
    CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("(0): [0.5,0]"));
    CHECK(r.out == run_cli({"smatrix", "--algebra", "A1", "--level", "2"}).out);

    const auto j = nlohmann::json::parse(
        run_cli({"smatrix", "--algebra", "A2", "--level", "1", "--format", "json"}).out);
    CHECK(j["algebra"] == "A2");
    CHECK(j["level"] == 1);
    REQUIRE(j["index"].size() == 3);
    CHECK(j["entries"].size() == 3);
    const double re = j["entries"][0][0][0].get<double>();
    CHECK(std::abs(re - 1.0 / std::sqrt(3.0)) < 1e-12);

    CHECK(run_cli({"smatrix", "--algebra", "E8", "--level", "1"}).code == 1);
}

TEST_CASE("graph emits dot for algebras and groups") {
    WeightSystemCache cache;
    RootData a1 = build_algebra({'A', 1});
    const RunResult r = run_cli({"graph", "--algebra", "A1", "--weight", "1", "--bound", "1"});
    CHECK(r.code == 0);
    CHECK(r.out == tensor_graph(a1, {1}, 1, cache));

    const CharacterTable z3 = cyclic_table(3);
    const RunResult g = run_cli({"graph", "--table", "z3", "--weight", "1"});
    CHECK(g.code == 0);
    CHECK(g.out == group_graph(z3, 1));

    CHECK(run_cli({"graph", "--algebra", "A1", "--weight", "1", "--format", "json"}).code == 1);
    CHECK(run_cli({"graph", "--algebra", "A1", "--weight", "1,2"}).code == 1);
    CHECK(run_cli({"graph", "--table", "z3", "--weight", "7"}).code == 1);
}

TEST_CASE("group inspects and exports character tables") {
    const RunResult r = run_cli({"group", "--table", "q8"});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "table Q8 (order 8, 5 classes)\n"
          "class sizes: 1 1 2 2 2\n"
          "irrep 0: dim 1, conjugate 0, fs +1\n"
          "irrep 1: dim 1, conjugate 1, fs +1\n"
          "irrep 2: dim 1, conjugate 2, fs +1\n"
          "irrep 3: dim 1, conjugate 3, fs +1\n"
          "irrep 4: dim 2, conjugate 4, fs -1\n");

    const auto dir = temp_dir("export");
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "q8.json").string();
    const RunResult ex = run_cli({"group", "--table", "q8", "--export", path});
    CHECK(ex.code == 0);
    CHECK_THAT(ex.err, Catch::Matchers::ContainsSubstring("wrote " + path));
    std::ifstream in(path, std::ios::binary);
    std::stringstream content;
    content << in.rdbuf();
    CHECK(content.str() == to_json(q8_table()) + "\n");

    const RunResult loaded = run_cli({"group", "--table", path, "--format", "json"});
    CHECK(loaded.code == 0);
    CHECK(loaded.out == to_json(q8_table()) + "\n");
    std::filesystem::remove_all(dir);

    CHECK(run_cli({"group", "--table", "nosuchgroup"}).code == 1);
}

TEST_CASE("bundled table files match the built-in constructions") {
    const std::vector<std::pair<std::string, CharacterTable>> expected{{"z3", cyclic_table(3)},
                                                                       {"s3", s3_table()},
                                                                       {"q8", q8_table()},
                                                                       {"f21", f3m_table(7)},
                                                                       {"f39", f3m_table(13)}};
    for (const auto& [name, table] : expected) {
        const std::string path = "data/tables/" + name + ".json";
        INFO(path);
        REQUIRE(std::filesystem::exists(path));
        const CharacterTable loaded = load_table_file(path);
        CHECK(to_json(loaded) == to_json(table));
    }
}

TEST_CASE("table1 subcommand renders the verdict matrix") {
    WeightSystemCache cache;
    const RunResult r = run_cli({"table1"});
    CHECK(r.code == 0);
    CHECK(r.out == table_one_report(TableOneBudget{}, cache).text());
    CHECK_THAT(r.err, Catch::Matchers::ContainsSubstring("table1: budget"));
    CHECK_THAT(r.err, Catch::Matchers::ContainsSubstring("table1: done"));
    CHECK(r.out.find("table1:") == std::string::npos);

    TableOneBudget small;
    small.a2_tensor_bound = 2;
    const RunResult rs = run_cli({"table1", "--a2-bound", "2"});
    CHECK(rs.out == table_one_report(small, cache).text());

    const auto j = nlohmann::json::parse(run_cli({"table1", "--format", "json"}).out);
    CHECK(j["cells"][0][0]["holds"] == true);
    CHECK(j["cells"][3][4]["holds"] == false);
}

TEST_CASE("usage errors name the offending flag") {
    const RunResult rank = run_cli({"decompose", "--algebra", "A2", "--lhs", "1,0,0", "--rhs", "0,1"});
    CHECK(rank.code == 1);
    CHECK_THAT(rank.err, Catch::Matchers::ContainsSubstring("--lhs: expected 2 labels for A2, got 3"));

    const RunResult parse = run_cli({"decompose", "--algebra", "A2", "--lhs", "1,0", "--rhs", "0,x"});
    CHECK(parse.code == 1);
    CHECK_THAT(parse.err, Catch::Matchers::ContainsSubstring("--rhs: expected comma-separated integers"));

    CHECK(run_cli({"decompose", "--algebra", "Z9", "--lhs", "1", "--rhs", "1"}).code == 1);
    CHECK(run_cli({"decompose", "--algebra", "A2", "--lhs", "1,0", "--rhs", "0,1", "--format", "yaml"}).code == 1);
    CHECK(run_cli({"decompose", "--algebra", "A2", "--lhs", "1,0"}).code == 1);
    CHECK(run_cli({"verify", "--prop", "9", "--algebra", "A2"}).code == 1);
    CHECK(run_cli({"verify", "--prop", "2", "--table", "f21", "--algebra", "A2"}).code == 1);
    CHECK(run_cli({"moments", "--lhs", "1", "--rhs", "1"}).code == 1);
    CHECK(run_cli({"frobnicate"}).code == 1);
    CHECK(run_cli({}).code == 1);
    CHECK(run_cli({"decompose", "--algebra", "A2", "--lhs", "-1,0", "--rhs", "0,1"}).code == 1);

    const RunResult help = run_cli({"--help"});
    CHECK(help.code == 0);
    CHECK_THAT(help.out, Catch::Matchers::ContainsSubstring("decompose"));
    CHECK_THAT(help.out, Catch::Matchers::ContainsSubstring("table1"));
}

TEST_CASE("cache directory and thread flags leave output unchanged") {
    const auto dir = temp_dir("cache");
    const RunResult cached = run_cli({"moments", "--algebra", "A2", "--lhs", "2,1", "--rhs", "2,1", "--cache",
                                      dir.string()});
    CHECK(cached.code == 0);
    CHECK(std::filesystem::exists(dir / "A2_2_1.fkws"));
    const RunResult plain = run_cli({"moments", "--algebra", "A2", "--lhs", "2,1", "--rhs", "2,1"});
    CHECK(cached.out == plain.out);
    const RunResult reread = run_cli({"moments", "--algebra", "A2", "--lhs", "2,1", "--rhs", "2,1", "--cache",
                                      dir.string()});
    CHECK(reread.out == plain.out);

    // The environment variable wins over the flag.
    const auto envdir = temp_dir("cache_env");
    setenv("FUSIONKIT_CACHE", envdir.string().c_str(), 1);
    const auto flagdir = temp_dir("cache_flag");
    const RunResult env = run_cli({"moments", "--algebra", "A2", "--lhs", "2,1", "--rhs", "2,1", "--cache",
                                   flagdir.string()});
    unsetenv("FUSIONKIT_CACHE");
    CHECK(env.code == 0);
    CHECK(std::filesystem::exists(envdir / "A2_2_1.fkws"));
    CHECK_FALSE(std::filesystem::exists(flagdir));
    std::filesystem::remove_all(dir);
    std::filesystem::remove_all(envdir);

    const RunResult t1 = run_cli({"scan", "--prop", "3", "--algebra", "A3", "--bound", "4", "--threads", "1"});
    const RunResult t4 = run_cli({"scan", "--prop", "3", "--algebra", "A3", "--bound", "4", "--threads", "4"});
    CHECK(t1.out == t4.out);
    CHECK(t1.code == t4.code);
    set_worker_threads(1);

    CHECK(run_cli({"moments", "--algebra", "A2", "--lhs", "2,1", "--rhs", "2,1", "--threads", "0"}).code == 1);
}
