#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ag/json_io.hpp"

using namespace ag;
namespace fs = std::filesystem;

namespace {
std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args, const fs::path& out) {
    std::string cmd = "./ag " + args + " > " + out.string() + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

fs::path tmp_file(const std::string& name) { return fs::temp_directory_path() / name; }
}

TEST_CASE("morphism json round trip") {
    auto R = make_ring({"x", "y"});
    auto phi = make_morphism(R, {parse_polynomial("x", R), parse_polynomial("x*y", R)});
    auto j = morphism_json(phi);
    CHECK(j["source_vars"] == OrderedJson::array({"x", "y"}));
    CHECK(j["components"][1] == "x*y");
    auto back = morphism_from_json(j);
    CHECK(back.source->same(*R));
    CHECK(back.components[1] == phi.components[1]);
    CHECK(dump_json(morphism_json(back)) == dump_json(j));
}

TEST_CASE("ideal json drops zero generators") {
    auto R = make_ring({"x", "y"});
    auto I = make_ideal(R, {parse_polynomial("x^2 - y", R), poly_zero(R)});
    auto j = ideal_json(I);
    REQUIRE(j["generators"].size() == 1);
    auto back = ideal_from_json(j);
    CHECK(ideal_equal(back, I));
}

TEST_CASE("qt report key order is pinned") {
    QTReport rep;
    rep.fiber = {Rational(0), Rational(1, 2)};
    rep.fiber_dimension = 3;
    rep.source_dimension = 2;
    rep.verdict = "NOT_QT_AT_FIBER";
    auto j = qt_report_json(rep);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"fiber", "fiber_dimension", "source_dimension", "verdict"});
    CHECK(j["fiber"][1] == "1/2");
}

TEST_CASE("stratified morphism bundle round trip") {
    auto R = make_ring({"x", "y"});
    auto sm = functorial_stratify(make_morphism(R, {parse_polynomial("x*y", R)}));
    auto j = stratified_morphism_json(sm);
    auto back = stratified_morphism_from_json(j);
    CHECK(back.alpha == sm.alpha);
    CHECK(back.source.poset.elements == sm.source.poset.elements);
    for (const auto& lab : sm.source.poset.elements) {
        CHECK(ideal_equal(back.source.pieces.at(lab).closed, sm.source.pieces.at(lab).closed));
        CHECK(ideal_equal(back.source.pieces.at(lab).excluded, sm.source.pieces.at(lab).excluded));
    }
    CHECK(dump_json(stratified_morphism_json(back)) == dump_json(j));
}

TEST_CASE("strat datum json lists pieces in poset order") {
    auto R = make_ring({"x"});
    std::map<std::string, Piece> pieces;
    pieces["b"] = Piece{make_ideal(R, {parse_polynomial("x", R)}), make_ideal(R, {poly_const(R, 1)})};
    pieces["a"] = Piece{make_ideal(R, {}), make_ideal(R, {parse_polynomial("x", R)})};
    auto D = make_strat_datum(R, chain_poset({"a", "b"}), pieces);
    auto j = strat_json(D);
    std::vector<std::string> keys;
    for (auto it = j["pieces"].begin(); it != j["pieces"].end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"a", "b"});
    auto back = strat_from_json(j);
    CHECK(back.poset.less_eq("b", "a"));
}

TEST_CASE("measure json sorts cosets lexicographically") {
    auto mu = make_measure(make_window(2, 2, 2));
    add_mass(mu, {3, 1}, Rational(1, 3));
    add_mass(mu, {0, 2}, Rational(2, 3));
    auto j = measure_json(mu);
    std::vector<std::string> keys;
    for (auto it = j["values"].begin(); it != j["values"].end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"0,2", "3,1"});
    auto back = measure_from_json(j);
    CHECK(back.win.same_group(mu.win));
    CHECK(back.values == mu.values);
}

TEST_CASE("fourier json flags rational entries") {
    auto mu = make_measure(make_window(2, 1, 1));
    add_mass(mu, {1}, Rational(1, 2));
    auto j = fourier_json(fourier(mu));
    CHECK(j["zeta_order"] == 2);
    REQUIRE(j["values"].size() == 2);
    CHECK(j["values"][0]["b"][0] == "0");
    CHECK(j["values"][1]["b"][0] == "1/2");
    CHECK(j["values"][1]["rational"] == "-1/2");
    // empty measure still serializes an object, not null
    auto z = make_measure(make_window(2, 1, 1));
    auto mz = measure_json(z);
    CHECK(mz["values"].is_object());
    CHECK(mz["values"].empty());
}

TEST_CASE("validation and audit json shapes") {
    auto R = make_ring({"x", "y"});
    auto sm = functorial_stratify(make_morphism(R, {parse_polynomial("x*y", R)}));
    auto v = validation_json(validate_stratification(sm.source));
    CHECK(v["ok"] == true);
    CHECK(v["disjoint"]["issues"].is_array());
    auto a = audit_json(coarse_and_vertical_audit(sm, {Rational(0)}));
    CHECK(a["strongThom"] == true);
    CHECK(a["strata"].is_array());
    CHECK(a["strata"][0].contains("label"));
}

TEST_CASE("dump is stable and newline terminated") {
    auto R = make_ring({"x"});
    auto j = ideal_json(make_ideal(R, {parse_polynomial("x^2", R)}));
    auto s = dump_json(j);
    CHECK(s.back() == '\n');
    CHECK(dump_json(ideal_json(ideal_from_json(j))) == s);
}

TEST_CASE("cli qtcheck golden output") {
    REQUIRE(fs::exists("ag"));
    auto in = tmp_file("cli_4lines.json");
    {
        auto R = make_ring({"x", "y", "z"});
        auto phi = make_morphism(R, {parse_polynomial("x*y*(x+y)*(x+y*z)", R)});
        write_json_file(in.string(), morphism_json(phi));
    }
    auto out = tmp_file("cli_qt_out.json");
    int rc = run_cli("qtcheck " + in.string() + " --fiber 0", out);
    CHECK(rc == 0);
    auto j = OrderedJson::parse(slurp(out));
    CHECK(j["fiber_dimension"] == 4);
    CHECK(j["source_dimension"] == 3);
    CHECK(j["verdict"] == "NOT_QT_AT_FIBER");
}

TEST_CASE("cli runs are byte identical") {
    REQUIRE(fs::exists("ag"));
    auto in = tmp_file("cli_blow.json");
    {
        auto R = make_ring({"x", "y"});
        write_json_file(in.string(),
                        morphism_json(make_morphism(R, {parse_polynomial("x", R),
                                                        parse_polynomial("x*y", R)})));
    }
    auto o1 = tmp_file("cli_gb_1.json");
    auto o2 = tmp_file("cli_gb_2.json");
    CHECK(run_cli("kernel " + in.string(), o1) == 0);
    CHECK(run_cli("kernel " + in.string(), o2) == 0);
    auto s1 = slurp(o1);
    CHECK(s1 == slurp(o2));
    CHECK_FALSE(s1.empty());
}

TEST_CASE("cli push golden output") {
    REQUIRE(fs::exists("ag"));
    auto min = tmp_file("cli_ball.json");
    auto mor = tmp_file("cli_blow2.json");
    {
        write_json_file(min.string(), measure_json(haar_ball(2, 1, 2, {0, 0}, 0, 1)));
        auto R = make_ring({"x", "y"});
        write_json_file(mor.string(),
                        morphism_json(make_morphism(R, {parse_polynomial("x", R),
                                                        parse_polynomial("x*y", R)})));
    }
    auto out = tmp_file("cli_push_out.json");
    CHECK(run_cli("push " + min.string() + " " + mor.string(), out) == 0);
    auto j = OrderedJson::parse(slurp(out));
    CHECK(j["values"]["0,0"] == "1/2");
    CHECK(j["values"]["1,0"] == "1/4");
    CHECK(j["values"]["1,1"] == "1/4");
    CHECK(j["values"].size() == 3);
}

TEST_CASE("cli error exit codes") {
    REQUIRE(fs::exists("ag"));
    auto out = tmp_file("cli_err_out.json");
    CHECK(run_cli("qtcheck /nonexistent.json --fiber 0", out) == 2);

    auto in = tmp_file("cli_line.json");
    {
        auto R = make_ring({"x", "y"});
        write_json_file(in.string(), ideal_json(make_ideal(R, {parse_polynomial("x", R)})));
    }
    CHECK(run_cli("oracle-dim " + in.string() + " --primes 101,103 --oracle-budget 100", out) == 3);
    // wrong input kind: a measure where a morphism is expected
    auto m = tmp_file("cli_measure.json");
    write_json_file(m.string(), measure_json(make_measure(make_window(2, 1, 1))));
    CHECK(run_cli("qtcheck " + m.string() + " --fiber 0", out) == 2);
}

TEST_CASE("cli germrank builtin family") {
    REQUIRE(fs::exists("ag"));
    auto out = tmp_file("cli_germ_out.json");
    CHECK(run_cli("germrank --prime 2 --level 4 --count 5 --restrict 1", out) == 0);
    auto j = OrderedJson::parse(slurp(out));
    CHECK(j["rank"] == 5);
}
