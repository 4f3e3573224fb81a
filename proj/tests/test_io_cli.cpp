// Parsers, emitters and the command-line surface. CLI runs happen in-process
// through rackq::cli::run with stringstreams standing in for the real streams,
// so exit codes and report contents are checked without spawning processes.
#include <doctest.h>

#include "rackq/cli.hpp"
#include "rackq/errors.hpp"
#include "rackq/io.hpp"
#include "rackq/rack.hpp"

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;
using rackq::FiniteRack;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
    json report() const { return json::parse(out); }
};

CliResult run_cli(const std::vector<std::string>& args, const std::string& stdin_text = "") {
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    int code = rackq::cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

const std::string kD3Json = "{\"size\":3,\"table\":[[0,2,1],[2,1,0],[1,0,2]]}";

} // namespace

TEST_SUITE("cli-io") {

TEST_CASE("rack files round-trip through both formats") {
    for (const FiniteRack& r : {rackq::dihedral_quandle(5), rackq::cyclic_rack(4),
                                rackq::product_rack(rackq::cyclic_rack(2), rackq::dihedral_quandle(3))}) {
        std::string j = rackq::emit_rack_json(r);
        std::string t = rackq::emit_rack_text(r);
        CHECK(rackq::parse_rack(j).grid() == r.grid());
        CHECK(rackq::parse_rack(t).grid() == r.grid());
        // emit is byte-stable: emit(parse(emit(r))) == emit(r)
        CHECK(rackq::emit_rack_json(rackq::parse_rack(j)) == j);
        CHECK(rackq::emit_rack_text(rackq::parse_rack(t)) == t);
    }
    CHECK(rackq::emit_rack_json(rackq::dihedral_quandle(3)) == kD3Json + "\n");
}

TEST_CASE("text format headers") {
    // the cyclic rack of size 2 is a rack but not a quandle
    FiniteRack c2 = rackq::parse_rack("RACK 2\n1 0\n1 0\n");
    CHECK_FALSE(c2.is_quandle());
    CHECK_THROWS_AS(rackq::parse_rack("QUANDLE 2\n1 0\n1 0\n"), rackq::ValidationError);
    // the quandle header on an actual quandle is fine
    CHECK(rackq::parse_rack("QUANDLE 3\n0 2 1\n2 1 0\n1 0 2\n").is_quandle());
    // comments and blank lines are ignored
    CHECK(rackq::parse_rack("# a comment\nRACK 1\n\n0\n").size() == 1);
}

TEST_CASE("malformed rack files are parse errors with positions") {
    // out-of-range entries are caught by the parser, not the axiom checker
    CHECK_THROWS_AS(rackq::parse_rack("{\"size\":3,\"table\":[[0,2,1],[2,1,0],[1,0,7]]}"),
                    rackq::ParseError);
    CHECK_THROWS_AS(rackq::parse_rack("RACK 3\n0 2 1\n2 1 0\n1 0 7\n"), rackq::ParseError);
    // shape problems
    CHECK_THROWS_AS(rackq::parse_rack("RACK 2\n1 0\n"), rackq::ParseError);          // missing row
    CHECK_THROWS_AS(rackq::parse_rack("RACK 2\n1 0 1\n0 1\n"), rackq::ParseError);   // long row
    CHECK_THROWS_AS(rackq::parse_rack("{\"size\":2,\"table\":[[0,1]]}"), rackq::ParseError);
    // bad tokens, with the line number in the message
    try {
        rackq::parse_rack("RACK 2\n1 zebra\n1 0\n");
        FAIL("expected a parse error");
    } catch (const rackq::ParseError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(rackq::parse_rack("not json at all"), rackq::ParseError);
    CHECK_THROWS_AS(rackq::parse_rack("{\"size\":2}"), rackq::ParseError);
    CHECK_THROWS_AS(rackq::parse_rack(""), rackq::ParseError);
    // axiom failures on well-formed tables are validation errors instead
    CHECK_THROWS_AS(rackq::parse_rack("RACK 2\n0 0\n1 1\n"), rackq::NotABijection);
}

TEST_CASE("cycle notation") {
    rackq::Perm p = rackq::parse_cycles("(0 1)(2 3)", 4);
    CHECK(p.images() == std::vector<int>{1, 0, 3, 2});
    CHECK(rackq::parse_cycles("()", 3).images() == std::vector<int>{0, 1, 2});
    CHECK(rackq::parse_cycles("(0 2 1)", 3).images() == std::vector<int>{2, 0, 1});
    CHECK(rackq::parse_cycles(" ( 0 1 ) ", 2).images() == std::vector<int>{1, 0});
    CHECK_THROWS_AS(rackq::parse_cycles("(0 1)(1 2)", 3), rackq::ParseError);  // repeated point
    CHECK_THROWS_AS(rackq::parse_cycles("(0 5)", 3), rackq::ParseError);       // out of range
    CHECK_THROWS_AS(rackq::parse_cycles("(0 1", 3), rackq::ParseError);        // unclosed
    CHECK_THROWS_AS(rackq::parse_cycles("0 1", 3), rackq::ParseError);         // no parens
}

TEST_CASE("group-spec files") {
    rackq::GroupSpec gs = rackq::parse_group_spec(
        "# symmetric group on three points\n"
        "PERM 3\n"
        "(0 1)\n"
        "(0 1 2)\n"
        "PAIR (0 1) : (0 1)\n");
    CHECK(gs.degree == 3);
    REQUIRE(gs.generators.size() == 2);
    CHECK(gs.generators[0].images() == std::vector<int>{1, 0, 2});
    CHECK(gs.generators[1].images() == std::vector<int>{1, 2, 0});
    REQUIRE(gs.pairs.size() == 1);
    CHECK(gs.pairs[0].s.images() == std::vector<int>{1, 0, 2});
    REQUIRE(gs.pairs[0].subgroup_gens.size() == 1);

    CHECK_THROWS_AS(rackq::parse_group_spec("(0 1)\n"), rackq::ParseError);    // no PERM header
    CHECK_THROWS_AS(rackq::parse_group_spec("PERM 3\n"), rackq::ParseError);   // no generators
    CHECK_THROWS_AS(rackq::parse_group_spec("PERM 3\n(0 1)\nPAIR (0 1)\n"),
                    rackq::ParseError);                                        // PAIR without ':'
    CHECK_THROWS_AS(rackq::parse_group_spec("PERM x\n(0 1)\n"), rackq::ParseError);
}

TEST_CASE("free-quandle element syntax") {
    using rackq::emit_fq_element;
    using rackq::parse_fq_element;

    CHECK(emit_fq_element(parse_fq_element("@x")) == "@x");
    CHECK(emit_fq_element(parse_fq_element("y^3@x")) == "y^3@x");
    CHECK(emit_fq_element(parse_fq_element("xyX@y")) == "xyX@y");
    CHECK(emit_fq_element(parse_fq_element("x^2 y^-2@x")) == "x^2Y^2@x");
    // a trailing own-generator power is stripped by canonicalization
    CHECK(emit_fq_element(parse_fq_element("x^2 y^-2@y")) == "x^2@y");
    CHECK(emit_fq_element(parse_fq_element(" y @ x ")) == "y@x");
    CHECK(emit_fq_element(parse_fq_element("yx^5@x")) == "y@x");
    CHECK(emit_fq_element(parse_fq_element("xyY X@x")) == "@x");
    CHECK(parse_fq_element("y^0@x") == rackq::fq_basepoint(0));

    CHECK_THROWS_AS(parse_fq_element("z@x"), rackq::ParseError);
    CHECK_THROWS_AS(parse_fq_element("xy"), rackq::ParseError);       // no '@'
    CHECK_THROWS_AS(parse_fq_element("x@x@y"), rackq::ParseError);    // two '@'
    CHECK_THROWS_AS(parse_fq_element("x@z"), rackq::ParseError);      // bad generator
    CHECK_THROWS_AS(parse_fq_element("x@xy"), rackq::ParseError);     // generator too long
    CHECK_THROWS_AS(parse_fq_element("x^@x"), rackq::ParseError);     // dangling '^'
    CHECK_THROWS_AS(parse_fq_element("x^99999@x"), rackq::ParseError);
}

TEST_CASE("gen emits stable bytes") {
    CliResult a = run_cli({"gen", "dihedral", "3"});
    CHECK(a.code == 0);
    CHECK(a.out == kD3Json + "\n");
    CliResult b = run_cli({"gen", "dihedral", "3"});
    CHECK(b.out == a.out);  // byte-identical across runs

    CliResult t = run_cli({"gen", "trivial", "4"});
    CHECK(t.code == 0);
    CHECK(rackq::parse_rack(t.out).grid() == rackq::trivial_rack(4).grid());

    CliResult p = run_cli({"gen", "product", "-", "-"});
    // product from files needs two paths; stdin twice is rejected as usage
    CHECK(p.code != 0);
}

TEST_CASE("reports are well-formed JSON with the fixed envelope") {
    CliResult r = run_cli({"betti", "-", "--max-degree", "2"}, kD3Json);
    REQUIRE(r.code == 0);
    json rep = r.report();
    CHECK(rep["tool"] == "rackq");
    CHECK(rep["command"] == "betti");
    CHECK(rep["size"] == 3);
    CHECK(rep["theory"] == "rack");
    CHECK(rep["pi0"] == 1);
    CHECK(rep["betti"] == json::array({1, 1}));
    CHECK(rep["expected"] == json::array({1, 1}));
    CHECK(rep["match"] == true);

    CliResult q = run_cli({"betti", "-", "--theory", "quandle", "--max-degree", "3"}, kD3Json);
    REQUIRE(q.code == 0);
    CHECK(q.report()["betti"] == json::array({1, 0, 0}));

    CliResult comp = run_cli({"components", "-"}, rackq::emit_rack_text(rackq::dihedral_quandle(4)));
    REQUIRE(comp.code == 0);
    CHECK(comp.report()["count"] == 2);

    // --timings adds a timings object
    CliResult timed = run_cli({"components", "-", "--timings"}, kD3Json);
    REQUIRE(timed.code == 0);
    CHECK(timed.report().contains("timings"));
    CHECK_FALSE(comp.report().contains("timings"));
}

TEST_CASE("exit codes follow the error taxonomy") {
    // 2: parse errors, with a diagnostic on stderr and nothing on stdout
    CliResult parse = run_cli({"verify", "-"}, "not a rack file");
    CHECK(parse.code == 2);
    CHECK(parse.out.empty());
    CHECK(parse.err.find("parse error") != std::string::npos);

    CliResult range = run_cli({"verify", "-"}, "{\"size\":3,\"table\":[[0,2,1],[2,1,0],[1,0,7]]}");
    CHECK(range.code == 2);
    CHECK(range.err.find("table entry 7") != std::string::npos);

    // 3: well-formed but invalid
    CliResult axiom = run_cli({"verify", "-"}, "{\"size\":2,\"table\":[[0,0],[1,1]]}");
    CHECK(axiom.code == 3);
    CHECK(axiom.err.find("validation error") != std::string::npos);

    // 4: resource caps
    CliResult cap = run_cli({"inn", "-", "--cap", "3"},
                            rackq::emit_rack_json(rackq::dihedral_quandle(6)));
    CHECK(cap.code == 4);
    CHECK(cap.err.find("resource limit") != std::string::npos);

    // usage problems are exit 2 as well
    CHECK(run_cli({"nosuchcommand"}).code == 2);
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"gen"}).code == 2);                 // missing required argument
    CHECK(run_cli({"betti", "-", "--theory", "frobnicate"}, kD3Json).code == 2);
}

TEST_CASE("verify reports both outcomes") {
    CliResult ok = run_cli({"verify", "-"}, "RACK 2\n1 0\n1 0\n");
    REQUIRE(ok.code == 0);
    CHECK(ok.report()["valid"] == true);
    CHECK(ok.report()["is_quandle"] == false);

    CliResult quandle = run_cli({"verify", "-"}, kD3Json);
    CHECK(quandle.report()["is_quandle"] == true);
}

TEST_CASE("quotient-check runs from stdin") {
    std::string spec =
        "PERM 3\n"
        "(0 1)\n"
        "(0 1 2)\n"
        "PAIR (0 1) : (0 1)\n";
    CliResult r = run_cli({"quotient-check", "-"}, spec);
    REQUIRE(r.code == 0);
    json rep = r.report();
    CHECK(rep["equal"] == true);
    CHECK(rep["group_order"] == 6);
    CHECK(rep["size"] == 3);
    CHECK(rep["is_quandle"] == true);

    // a well-formed spec without PAIR lines parses but cannot define a coset
    // rack, so the failure is a validation error
    CliResult bad = run_cli({"quotient-check", "-"}, "PERM 3\n(0 1)\n(0 1 2)\n");
    CHECK(bad.code == 3);
}

TEST_CASE("fq subcommands") {
    CliResult d = run_cli({"fq", "distance", "--target", "y^3@x"});
    REQUIRE(d.code == 0);
    json rep = d.report();
    CHECK(rep["lower"] == 3);
    CHECK(rep["upper"] == 3);
    CHECK(rep["exact"] == true);

    CliResult ball = run_cli({"fq", "ball", "--radius", "5", "--conjlen", "0"});
    REQUIRE(ball.code == 0);
    CHECK(ball.report()["level_sizes"] == json::array({2, 4, 12, 36, 108, 324}));
    CHECK(ball.report()["total"] == 486);

    // the global cap flag reaches nested subcommands
    CliResult capped = run_cli({"fq", "ball", "--radius", "4", "--conjlen", "2", "--cap", "100"});
    CHECK(capped.code == 4);

    CliResult bad = run_cli({"fq", "distance", "--target", "z@x"});
    CHECK(bad.code == 2);

    CliResult cross = run_cli({"fq", "distance", "--target", "@y", "--source", "@x"});
    CHECK(cross.code == 3);
}

} // TEST_SUITE
