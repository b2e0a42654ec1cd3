/*
   Copyright 2026 The mzw authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "mzw/dsl.hpp"

using namespace mzw;
using namespace mzw::dsl;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f);
    std::stringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

SessionOptions sym_opts() {
    SessionOptions o;
    o.backend = BackendKind::Symbolic;
    return o;
}

} // namespace

TEST_CASE("parsing the stated statement shapes") {
    const Program p = parse_program("let E = curve(weil=[1, 0, 2], q=2);\nlet X = E * psp(1, 2);\n");
    REQUIRE(p.stmts.size() == 2);
    CHECK(p.stmts[0].kind == Stmt::Kind::Let);
    CHECK(p.stmts[0].name == "E");
    REQUIRE(p.stmts[0].expr->kind == Expr::Kind::Call);
    CHECK(p.stmts[0].expr->name == "curve");
    REQUIRE(p.stmts[0].expr->args.size() == 2);
    CHECK(p.stmts[0].expr->args[0].key == "weil");
    CHECK(p.stmts[0].expr->args[0].list == std::vector<Rat>{Rat(1), Rat(0), Rat(2)});
    CHECK(p.stmts[1].expr->kind == Expr::Kind::Tensor);

    // * binds tighter than +
    const Program q = parse_program("let Y = unit + L * L^2;");
    REQUIRE(q.stmts[0].expr->kind == Expr::Kind::Sum);
    CHECK(q.stmts[0].expr->rhs->kind == Expr::Kind::Tensor);
}

TEST_CASE("parse errors carry locations and expectations") {
    try {
        parse_program("let E = curve(weil=[1, 0, 2], q=2)");
        FAIL("missing semicolon accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ParseError);
        CHECK(std::string(e.what()).find("line 1") != std::string::npos);
        CHECK(std::string(e.what()).find("';'") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_program("let = 3;"), Error);
    CHECK_THROWS_AS(parse_program("let B = -2;"), Error);          // negative multiplicity
    CHECK_THROWS_AS(parse_program("zeta;"), Error);                // missing name
    CHECK_THROWS_AS(parse_program("check wrong E;"), Error);       // unknown check
    CHECK_THROWS_AS(parse_program("zeta E --bogus;"), Error);      // unknown flag
    CHECK_THROWS_AS(parse_program("let A = (unit;"), Error);       // unbalanced paren
    CHECK_THROWS_AS(parse_program("count E --powers 1..;"), Error);
}

TEST_CASE("pretty-printed programs re-parse to equal ASTs") {
    const std::vector<std::string> sources{
        "let E = curve(weil=[1, 0, 2], q=2);",
        "let X = E * psp(1, 2);",
        "let Y = unit + 2 + L^-3 * (E + X);",
        "let Z = sym(ext(dual(E), 2), 3);",
        "let W = generic(\"{\\\"degrees\\\": {\\\"0\\\": [[\\\"1\\\"]]}}\");",
        "let H = L * (1 + 1 + artin(A));",
        "zeta E --order 5 --classical;",
        "check funceq E --order 9;",
        "check selfdual E --dim 2 --order 7;",
        "check selfdual E --dim 0;",
        "count E --powers 2..5;",
        "save \"state.json\";",
        "set backend sym;",
    };
    for (const std::string& src : sources) {
        const Program p1 = parse_program(src);
        REQUIRE(p1.stmts.size() == 1);
        const std::string printed = stmt_str(p1.stmts[0]);
        const Program p2 = parse_program(printed);
        REQUIRE(p2.stmts.size() == 1);
        CHECK(stmt_str(p2.stmts[0]) == printed);
        if (p1.stmts[0].kind == Stmt::Kind::Let) CHECK(expr_equal(p1.stmts[0].expr, p2.stmts[0].expr));
    }
}

TEST_CASE("golden run: frobenius fixture") {
    const RunResult res = run_program_text(slurp(testing::data_path("frob_basic.mz")));
    CHECK(res.exit_code == 0);
    CHECK(res.output == slurp(testing::data_path("frob_basic.out")));
    // byte-identical across repeated runs
    const RunResult again = run_program_text(slurp(testing::data_path("frob_basic.mz")));
    CHECK(again.output == res.output);
}

TEST_CASE("golden run: symbolic fixture") {
    SessionOptions opts = sym_opts();
    const RunResult res = run_program_text(slurp(testing::data_path("sym_basic.mz")), opts);
    CHECK(res.exit_code == 0);
    CHECK(res.output == slurp(testing::data_path("sym_basic.out")));
}

TEST_CASE("evaluation errors carry the spec error kinds") {
    // constructor precondition: constant term of a Weil polynomial is 1
    const RunResult bad = run_program_text("let bad = curve(weil=[2], q=2);");
    CHECK(bad.exit_code == 2);
    CHECK(bad.output.find("BadWeilPoly") != std::string::npos);

    const RunResult unbound = run_program_text("zeta NOPE;");
    CHECK(unbound.exit_code == 2);
    CHECK(unbound.output.find("NameError") != std::string::npos);

    const RunResult wrong_backend = run_program_text("set backend sym; let C = curve(g=1); count C --powers 1..2;");
    CHECK(wrong_backend.exit_code == 2);
    CHECK(wrong_backend.output.find("BackendError") != std::string::npos);

    const RunResult locked = run_program_text("let E = psp(1, 2); set backend sym;");
    CHECK(locked.exit_code == 2);
    CHECK(locked.output.find("BackendError") != std::string::npos);

    const RunResult selfdual = run_program_text("let E = curve(weil=[1, 0, 2], q=2); check selfdual E --dim 2;");
    CHECK(selfdual.exit_code == 2);
    CHECK(selfdual.output.find("NotSelfDual") != std::string::npos);
}

TEST_CASE("failed checks exit with code 1") {
    // an odd line has an odd-weight invertible determinant: the conjecture
    // monitor reports it and the run is marked as a failed check
    const std::string src =
        "let ODD = generic(\"{\\\"degrees\\\": {\\\"1\\\": [[\\\"1\\\"]]}}\");\n"
        "check funceq ODD;\n"
        "check c1 ODD;\n";
    const RunResult res = run_program_text(src);
    CHECK(res.exit_code == 1);
    CHECK(res.output.find("funceq ODD: HOLDS") != std::string::npos);
    CHECK(res.output.find("not applicable (chi- odd)") != std::string::npos);
    CHECK(res.output.find("ODD WEIGHT") != std::string::npos);
}

TEST_CASE("save/load round trip is byte-identical: frobenius") {
    Session s1;
    std::string out;
    for (const Stmt& st :
         parse_program("let E = curve(weil=[1, 0, 2], q=2); let X = E * psp(1, 2); let D = dual(E);").stmts)
        s1.run_stmt(st, out);
    const std::string snap1 = s1.to_json();

    Session s2;
    s2.load_json(snap1);
    CHECK(s2.to_json() == snap1);

    // loaded bindings behave like the originals
    std::string out2;
    for (const Stmt& st : parse_program("check funceq E; count X --powers 1..1;").stmts) s2.run_stmt(st, out2);
    CHECK(out2.find("funceq E: HOLDS") != std::string::npos);
}

TEST_CASE("save/load round trip is byte-identical: symbolic") {
    Session s1{sym_opts()};
    std::string out;
    for (const Stmt& st :
         parse_program("let C = curve(g=2); let A = abelian(g=1); let S = blowup(); let T = C * A;").stmts)
        s1.run_stmt(st, out);
    const std::string snap1 = s1.to_json();
    CHECK(snap1.find("\"atoms\"") != std::string::npos);
    CHECK(snap1.find("negative_gen") != std::string::npos);

    Session s2{sym_opts()};
    s2.load_json(snap1);
    CHECK(s2.to_json() == snap1);

    std::string out2;
    for (const Stmt& st : parse_program("det C; det S;").stmts) s2.run_stmt(st, out2);
    CHECK(out2.find("det C = L^-1") != std::string::npos);
    CHECK(out2.find("det S = L^5 * A") != std::string::npos);
}

TEST_CASE("save and load through the command surface") {
    const std::string path = "mzw_session_roundtrip_test.json";
    const std::string src1 = "let E = curve(weil=[1, 0, 2], q=2); save \"" + path + "\";";
    const RunResult r1 = run_program_text(src1);
    REQUIRE(r1.exit_code == 0);
    const std::string first = slurp(path);

    const std::string src2 = "load \"" + path + "\"; save \"" + path + "\"; check funceq E;";
    const RunResult r2 = run_program_text(src2);
    CHECK(r2.exit_code == 0);
    CHECK(slurp(path) == first);
    CHECK(r2.output.find("funceq E: HOLDS") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("json records are emitted per command") {
    const RunResult res = run_program_text("let E = psp(1, 2); check funceq E; det E;");
    CHECK(res.exit_code == 0);
    CHECK(res.json_records.find("\"command\":\"funceq\"") != std::string::npos);
    CHECK(res.json_records.find("\"holds\":true") != std::string::npos);
    CHECK(res.json_records.find("\"command\":\"det\"") != std::string::npos);
}
