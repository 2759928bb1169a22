#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>

#include "gpr/cli.hpp"
#include "gpr/parse.hpp"
#include "support/corpus.hpp"

using namespace gpr;
using nlohmann::json;

TEST_CASE("expression parsing") {
    CHECK(approx_equal(parse_expression("(s^2-4)/(s^2)"),
                       RationalFunction::make(Polynomial({Cpx(-4), Cpx(0), Cpx(1)}),
                                              Polynomial({Cpx(0), Cpx(0), Cpx(1)}))));
    CHECK(approx_equal(parse_expression("4/(7-3*s)"),
                       RationalFunction::make(Polynomial(Cpx(4)),
                                              Polynomial({Cpx(7), Cpx(-3)}))));
    CHECK(approx_equal(parse_expression("1/(1+s)"),
                       RationalFunction::make(Polynomial(Cpx(1)),
                                              Polynomial({Cpx(1), Cpx(1)}))));
    // Complex literals, powers, unary minus, whitespace.
    CHECK(approx_equal(parse_expression(" -s^3 + 2.5i * s "),
                       RationalFunction::from_polynomial(
                           Polynomial({Cpx(0), Cpx(0, 2.5), Cpx(0), Cpx(-1)}))));
    CHECK(approx_equal(parse_expression("(1+2i)*s"),
                       RationalFunction::from_polynomial(Polynomial({Cpx(0), Cpx(1, 2)}))));
    CHECK(approx_equal(parse_expression("s^-2"),
                       RationalFunction::make(Polynomial(Cpx(1)),
                                              Polynomial({Cpx(0), Cpx(0), Cpx(1)}))));
    CHECK(parse_expression("0").is_zero());
}

TEST_CASE("parse errors carry position information") {
    CHECK_THROWS_AS(parse_expression("s +"), SyntaxErrorAt);
    CHECK_THROWS_AS(parse_expression("(s"), SyntaxErrorAt);
    CHECK_THROWS_AS(parse_expression("s s"), SyntaxErrorAt);
    CHECK_THROWS_AS(parse_expression("x+1"), SyntaxErrorAt);
    CHECK_THROWS_AS(parse_expression("1/(s-s)"), SyntaxErrorAt);
    try {
        parse_expression("s + @");
    } catch (const SyntaxErrorAt& e) {
        CHECK(e.position == 4);
        CHECK(!e.expected.empty());
    }
}

TEST_CASE("structured pole-zero form") {
    RationalFunction f = parse_expression(R"({"gain": 1, "zeros": [2], "poles": [0]})");
    CHECK(approx_equal(f, parse_expression("(s-2)/s")));

    RationalFunction g = parse_expression(
        R"({"gain": {"re": 0, "im": 2}, "zeros": [{"root": "1+1i", "mult": 2}], "poles": [[0, -1]]})");
    RationalFunction expected = parse_expression("2i*(s-1-1i)^2/(s+1i)");
    CHECK(approx_equal(g, expected));

    CHECK_THROWS_AS(parse_expression("{bad json"), SyntaxErrorAt);
}

TEST_CASE("print/parse round trip") {
    testing::Rng rng(321321);
    for (int iter = 0; iter < 200; ++iter) {
        RationalFunction f = testing::random_rational(rng, 4);
        CHECK(approx_equal(parse_expression(print_expression(f)), f));
    }
    CHECK(parse_expression(print_expression(RationalFunction())).is_zero());
}

namespace {

json run_json(std::vector<std::string> args) {
    args.push_back("--json");
    CliResult result = run_cli(args);
    REQUIRE(!result.out.empty());
    return json::parse(result.out);
}

// Schema: verb, ok, error, result always present; complex values are {re, im}.
void check_schema(const json& doc) {
    REQUIRE(doc.contains("verb"));
    REQUIRE(doc.contains("ok"));
    REQUIRE(doc.contains("error"));
    REQUIRE(doc.contains("result"));
    CHECK(doc["verb"].is_string());
    CHECK(doc["ok"].is_boolean());
    if (doc["ok"].get<bool>()) {
        CHECK(doc["error"].is_null());
        CHECK(doc["result"].is_object());
    } else {
        CHECK(doc["error"].is_object());
        CHECK(doc["error"].contains("code"));
        CHECK(doc["error"].contains("message"));
    }
}

}  // namespace

TEST_CASE("classify verb") {
    CliResult human = run_cli({"classify", "(s-2)/s"});
    CHECK(human.exit_code == 0);
    CHECK(human.out.find("GP: yes") != std::string::npos);
    CHECK(human.out.find("P: no") != std::string::npos);

    json doc = run_json({"classify", "(s-2)/s"});
    check_schema(doc);
    const json& classes = doc["result"]["classes"];
    CHECK(classes["GP"]["verdict"] == true);
    CHECK(classes["P"]["verdict"] == false);
    CHECK(classes["Even"]["verdict"] == false);
    CHECK(classes["Odd"]["verdict"] == false);
    CHECK(classes["GPE"]["verdict"] == false);
    // The failed positivity test carries a witness with re/im fields.
    const json& witness = classes["P"]["witness"];
    REQUIRE(!witness.is_null());
    CHECK(witness["location"].contains("re"));
    CHECK(witness["location"].contains("im"));
}

TEST_CASE("interpolate verb and exit codes") {
    json ok = run_json({"interpolate", "--class", "gpg", "--g", "4/(7-3*s)", "1=1", "2=4"});
    check_schema(ok);
    CHECK(ok["ok"] == true);
    CHECK(ok["result"]["certificate"]["verdict"] == true);
    for (const auto& r : ok["result"]["residuals"]) CHECK(r.get<double>() <= 1e-7);

    CliResult infeasible = run_cli({"interpolate", "--class", "p", "1=1", "2=4"});
    CHECK(infeasible.exit_code == 1);
    CHECK(infeasible.err.find("negative") != std::string::npos);

    CliResult syntax = run_cli({"classify", "(s"});
    CHECK(syntax.exit_code == 2);

    CliResult badflag = run_cli({"interpolate", "--class", "nope", "1=1"});
    CHECK(badflag.exit_code == 2);
}

TEST_CASE("factor, evenodd, spectral verbs") {
    json fact = run_json({"factor", "(s^2-4)/s^2"});
    check_schema(fact);
    CHECK(fact["ok"] == true);
    CHECK(fact["result"].contains("g"));
    CHECK(fact["result"].contains("p"));
    CHECK(fact["result"]["s_o"].contains("re"));

    CliResult notgp = run_cli({"factor", "-1-s^2"});
    CHECK(notgp.exit_code == 1);

    json eo = run_json({"evenodd", "1/(1+s)"});
    check_schema(eo);
    RationalFunction even = parse_expression(eo["result"]["even"]["expr"].get<std::string>());
    CHECK(approx_equal(even, parse_expression("1/(1-s^2)")));

    json spec = run_json({"spectral", "16/(49-9*s^2)"});
    check_schema(spec);
    RationalFunction g = parse_expression(spec["result"]["g"]["expr"].get<std::string>());
    CHECK(approx_equal(g, parse_expression("4/(7-3*s)")));

    CliResult notgpe = run_cli({"spectral", "s^2"});
    CHECK(notgpe.exit_code == 1);
}

TEST_CASE("cayley, blaschke and demo verbs") {
    json cay = run_json({"cayley", "s"});
    check_schema(cay);
    RationalFunction f = parse_expression(cay["result"]["transform"]["expr"].get<std::string>());
    CHECK(approx_equal(f, parse_expression("(1-s)/(1+s)")));

    json bl = run_json({"blaschke", "1/(s-1)"});
    check_schema(bl);
    CHECK(bl["result"]["factors"].size() == 1);

    json demo = run_json({"demo-gbg", "--g", "(s-1)/(s-2)", "--eps", "0.01", "--delta", "0.01"});
    check_schema(demo);
    CHECK(demo["result"]["pole_sets_distinct"] == true);
    CHECK(demo["result"]["zero_sets_distinct"] == true);
}

TEST_CASE("problem documents and config files") {
    {
        std::ofstream out("problem_doc_test.json");
        out << R"json({"constraint": "gpg", "g": "4/(7-3*s)",
                       "nodes": [1, 2], "values": ["1", {"re": 4, "im": 0}]})json";
    }
    json doc = run_json({"interpolate", "--problem", "problem_doc_test.json"});
    check_schema(doc);
    CHECK(doc["ok"] == true);
    CHECK(doc["result"]["certificate"]["verdict"] == true);
    std::remove("problem_doc_test.json");

    {
        std::ofstream out("tol_config_test.json");
        out << R"({"nonneg_margin": 0.1})";
    }
    json loose = run_json({"--config", "tol_config_test.json", "classify", "-0.001"});
    CHECK(loose["result"]["classes"]["GP"]["verdict"] == true);
    std::remove("tol_config_test.json");

    CliResult missing = run_cli({"interpolate", "--problem", "no_such_file.json"});
    CHECK(missing.exit_code == 2);
}

TEST_CASE("tolerance configuration") {
    // Huge nonnegativity slack makes a mildly negative function pass GP.
    json strict = run_json({"classify", "-0.001+1/(1+s^2)*0"});
    CHECK(strict["result"]["classes"]["GP"]["verdict"] == false);
    // -0.001 is within a 0.1 margin.
    json loose = run_json({"--tol-nonneg", "0.1", "classify", "-0.001"});
    CHECK(loose["result"]["classes"]["GP"]["verdict"] == true);
}
