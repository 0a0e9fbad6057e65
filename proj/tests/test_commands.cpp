// Licensed under the Apache License 2.0 (see LICENSE file).
#include <string>
#include <vector>

#include "doctest.h"
#include "qaw/commands.hpp"
#include "qaw/dsl.hpp"
#include "qaw/report.hpp"

using namespace qaw;

namespace {

const char kSource[] =
    "signature { f/1 }\n"
    "vars { x y z }\n"
    "algebra A {\n"
    "  carrier { a b };\n"
    "  op f(a) = a;\n"
    "  op f(b) = b;\n"
    "  dist a b = 1;\n"
    "}\n"
    "algebra Bad {\n"
    "  carrier { a b };\n"
    "  op f(a) = a;\n"
    "  op f(b) = b;\n"
    "  dist a b = 0;\n"
    "}\n"
    "algebra Wide {\n"
    "  carrier { a b };\n"
    "  op f(a) = a;\n"
    "  op f(b) = b;\n"
    "  dist a b = 2;\n"
    "}\n"
    "theory Chain {\n"
    "  [] |- x =[1] y;\n"
    "}\n"
    "formula H {\n"
    "  forall x y . (x =[1] y) -> f(x) =[1] f(y);\n"
    "}\n";

Workspace load() { return parse_workspace(kSource); }

Report run(Workspace& ws, std::initializer_list<std::string> args) {
  return run_command(ws, std::vector<std::string>(args));
}

std::string field(const Report& r, const std::string& key) {
  for (const auto& [k, v] : r.fields) {
    if (k == key) return v;
  }
  return "";
}

}  // namespace

TEST_CASE("check-algebra reports verdicts through the exit code") {
  Workspace ws = load();
  Report ok = run(ws, {"check-algebra", "A"});
  CHECK(ok.status == ReportStatus::Pass);
  CHECK(ok.exit_code() == 0);
  CHECK(field(ok, "verdict") == "valid");

  Report bad = run(ws, {"check-algebra", "Bad"});
  CHECK(bad.status == ReportStatus::CheckFailed);
  CHECK(bad.exit_code() == 1);
  CHECK(field(bad, "verdict") == "invalid");

  Report missing = run(ws, {"check-algebra", "Nope"});
  CHECK(missing.status == ReportStatus::InvalidInput);
  CHECK(missing.exit_code() == 2);
  CHECK_FALSE(field(missing, "error").empty());
}

TEST_CASE("derive saturates and reports the least bound") {
  Workspace ws = load();
  Report r = run(ws, {"derive", "Chain", "[x =[1] y ; y =[2] z] |- x =[3] z"});
  CHECK(r.status == ReportStatus::Pass);
  CHECK(field(r, "least-bound") == "1");

  Workspace plain = parse_workspace("signature { }\nvars { x y z }\ntheory T { }\n");
  Report tri = run(plain, {"derive", "T", "[x =[1] y ; y =[2] z] |- x =[3] z"});
  CHECK(tri.status == ReportStatus::Pass);
  CHECK(field(tri, "least-bound") == "3");
  CHECK(field(tri, "derivable") == "yes");

  Report under = run(plain, {"derive", "T", "[x =[1] y ; y =[2] z] |- x =[2] z"});
  CHECK(under.status == ReportStatus::CheckFailed);
  CHECK(field(under, "derivable") == "no");

  Report proof = run(plain, {"derive", "T", "[x =[1] y ; y =[2] z] |- x =[3] z", "--proof"});
  CHECK(proof.status == ReportStatus::Pass);
  CHECK(field(proof, "proof-check").substr(0, 2) == "ok");
}

TEST_CASE("countermodel search is the complementary refutation tool") {
  Workspace ws = parse_workspace("signature { }\nvars { x y z }\n");
  Report hit = run(ws, {"countermodel", "[x =[1] y] |- x =[1/2] y"});
  CHECK(hit.status == ReportStatus::Pass);
  CHECK(field(hit, "found") == "yes");
  CHECK_FALSE(field(hit, "algebra").empty());

  Report none = run(ws, {"countermodel", "[] |- x =[0] x"});
  CHECK(none.status == ReportStatus::CheckFailed);
  CHECK(field(none, "found") == "no");
}

TEST_CASE("constructions store their results for later commands") {
  Workspace ws = load();
  Report prod = run(ws, {"product", "A", "A", "->", "P"});
  CHECK(prod.status == ReportStatus::Pass);
  CHECK(field(prod, "stored") == "P");
  REQUIRE(ws.algebras.count("P") == 1);
  CHECK(ws.algebras.at("P").size() == 4);
  CHECK_FALSE(field(prod, "carrier-manifest").empty());

  Report sub = run(ws, {"subalgebra", "A", "{a}", "->", "S"});
  CHECK(sub.status == ReportStatus::Pass);
  CHECK(ws.algebras.at("S").size() == 1);

  Report again = run(ws, {"check-algebra", "P"});
  CHECK(again.status == ReportStatus::Pass);

  Report qfo = run(ws, {"to-qfo", "A", "->", "MA"});
  CHECK(qfo.status == ReportStatus::Pass);
  REQUIRE(ws.structures.count("MA") == 1);
  Report back = run(ws, {"to-algebra", "MA", "->", "A2"});
  CHECK(back.status == ReportStatus::Pass);
  CHECK(ws.algebras.at("A2").same_as(ws.algebras.at("A")));

  Report rp = run(ws, {"reduced-product", "MA", "MA", "--filter", "{0}", "->", "R"});
  CHECK(rp.status == ReportStatus::Pass);
  CHECK(ws.structures.at("R").size() == 2);

  Report horn = run(ws, {"eval-horn", "MA", "H"});
  CHECK(horn.status == ReportStatus::Pass);
  CHECK(field(horn, "holds") == "yes");
}

TEST_CASE("canonical models report their shape") {
  Workspace ws = load();
  Report r = run(ws, {"canonical-model", "A", "--vars", "2", "--depth", "1", "->", "M"});
  CHECK(r.status == ReportStatus::Pass);
  CHECK_FALSE(field(r, "components").empty());
  CHECK_FALSE(field(r, "gamma").empty());
  CHECK(ws.algebras.count("M") == 1);
}

TEST_CASE("homomorphism and reflexivity checks read witness maps") {
  Workspace ws = load();
  Report hom = run(ws, {"check-hom", "A", "A", "a->a", "b->b"});
  CHECK(hom.status == ReportStatus::Pass);
  CHECK(field(hom, "surjective") == "yes");
  Report broken = run(ws, {"check-hom", "A", "Wide", "a->a", "b->b"});
  CHECK(broken.status == ReportStatus::CheckFailed);
  CHECK(field(broken, "verdict") == "not a homomorphism");
  Report refl = run(ws, {"check-reflexive", "A", "A", "a->a", "b->b", "--c", "3"});
  CHECK(refl.status == ReportStatus::Pass);
  Report not_refl = run(ws, {"check-reflexive", "Wide", "A", "a->a", "b->b", "--c", "3"});
  CHECK(not_refl.status == ReportStatus::CheckFailed);
}

TEST_CASE("theory satisfaction and consistency probes") {
  Workspace ws = load();
  Report sat = run(ws, {"check-sat", "A", "Chain"});
  CHECK(sat.status == ReportStatus::Pass);

  Workspace degenerate =
      parse_workspace("signature { }\nvars { x y }\ntheory D { [] |- x =[0] y; }\n");
  Report bad = run(degenerate, {"check-consistent", "D"});
  CHECK(bad.status == ReportStatus::CheckFailed);
  Workspace fine = parse_workspace("signature { }\nvars { x y }\ntheory D { }\n");
  Report good = run(fine, {"check-consistent", "D"});
  CHECK(good.status == ReportStatus::Pass);
}

TEST_CASE("budgets cap the work and surface as exit code three") {
  Workspace ws = parse_workspace("signature { f/1 }\nvars { x y z }\ntheory T { }\n");
  Report r = run(ws, {"derive", "T", "[x =[1] y] |- f(f(f(x))) =[1] f(f(f(y)))",
                      "--term-cap", "3"});
  CHECK(r.status == ReportStatus::BudgetExceeded);
  CHECK(r.exit_code() == 3);
  CHECK_FALSE(field(r, "error").empty());
}

TEST_CASE("reports are byte-identical across repeated runs") {
  Workspace ws1 = load();
  Workspace ws2 = load();
  std::vector<std::string> args = {"derive", "Chain", "[] |- f(x) =[1] f(y)"};
  Report a = run_command(ws1, args);
  Report b = run_command(ws2, args);
  CHECK(a.text() == b.text());
  CHECK(a.json() == b.json());
  CHECK_FALSE(a.has("timing"));

  Report timed = run_command(ws1, {"derive", "Chain", "[] |- f(x) =[1] f(y)", "--timing"});
  CHECK(timed.has("timing"));
}

TEST_CASE("suite command runs a named property suite") {
  Workspace ws;
  Report r = run(ws, {"suite", "reduced-products"});
  CHECK(r.status == ReportStatus::Pass);
  CHECK(field(r, "verdict") == "all checks pass");

  Report unknown = run(ws, {"suite", "nonesuch"});
  CHECK(unknown.status == ReportStatus::InvalidInput);
}

TEST_CASE("reports render as text lines and as a json document") {
  Workspace ws = load();
  Report r = run(ws, {"check-algebra", "A"});
  std::string text = r.text();
  CHECK(text.find("command = check-algebra") != std::string::npos);
  CHECK(text.find("status = pass") != std::string::npos);
  std::string json = r.json();
  CHECK(json.find("\"command\": \"check-algebra\"") != std::string::npos);
  CHECK(json.find("\"exit_code\": 0") != std::string::npos);
  CHECK_FALSE(field(r, "inputs").empty());
}
