#include "gradedpi/gradedpi.hpp"
#include "gradedpi/report.hpp"

#include <gtest/gtest.h>

#include <fstream>

using namespace gradedpi;

namespace {

Json corpus() {
  std::ifstream in(std::string(GRADEDPI_SPECS_DIR) + "/corpus.json");
  return Json::parse(in);
}

CommandResult run(const std::string& cmd, CommandOptions opt) {
  Workspace ws;
  ws.load(corpus(), "corpus");
  CommandRunner r(ws, std::move(opt));
  return r.run(cmd);
}

std::string error_of(const Json& doc) {
  try {
    Workspace ws;
    ws.load(doc);
    ws.resolve_all();
  } catch (const SpecError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Workspace, LoadsCorpus) {
  Workspace ws;
  ws.load(corpus(), "corpus");
  ws.resolve_all();
  EXPECT_EQ(ws.algebra("UT3")->dim(), 6);
  EXPECT_EQ(ws.algebra("M2xUT2")->dim(), 7);
  EXPECT_EQ(ws.group("Z3")->order(), 3);
  EXPECT_TRUE(ws.polynomial("c4").multilinear());
  EXPECT_EQ(ws.polynomial("c4").size(), 24u);
}

TEST(Workspace, ReportsPaths) {
  EXPECT_NE(error_of(Json::parse(R"({"algebras":{"X":{"kind":"ut","group":"nope","k":2}}})"))
                .find("algebras.X.group"),
            std::string::npos);
  EXPECT_NE(error_of(Json::parse(R"({"groups":{"G":{"kind":"cyclic","n":0}}})")).find("groups.G"), std::string::npos);
  // non-associative structure constants
  const auto bad = Json::parse(R"({"groups":{"one":{"kind":"trivial"}},
    "algebras":{"A":{"kind":"explicit","group":"one","dim":2,"deg":[0,0],
      "sc":[{"i":0,"j":0,"terms":[{"k":1,"coeff":"1"}]},{"i":1,"j":0,"terms":[{"k":0,"coeff":"1"}]}]}}})");
  EXPECT_NE(error_of(bad).find("associativity"), std::string::npos);
  // a reference cycle
  const auto cyc = Json::parse(R"({"algebras":{"A":{"kind":"product","factors":["B","B"]},
    "B":{"kind":"product","factors":["A","A"]}}})");
  EXPECT_NE(error_of(cyc), "");
  EXPECT_NE(error_of(Json::parse(R"({"mystery":{}})")), "");
}

TEST(Workspace, RejectsBadCocycle) {
  const auto doc = Json::parse(R"({"groups":{"Z2":{"kind":"cyclic","n":2}},
    "cocycles":{"f":{"group":"Z2","m":2,"exponents":[[0,1],[0,0]]}}})");
  EXPECT_NE(error_of(doc).find("cocycles.f"), std::string::npos);
}

TEST(Report, GparAndCheck) {
  CommandOptions o;
  o.algebras = {"UT2"};
  const auto g = run("gpar", o);
  EXPECT_EQ(g.exit_code, 0);
  EXPECT_EQ(g.report["gpar"]["s"], "1");
  EXPECT_EQ(g.report["schema"], 1);
  o.algebras = {"M2"};
  o.poly = "commutator";
  const auto c = run("check", o);
  EXPECT_EQ(c.exit_code, 2);
  o.poly = "c4";
  o.algebras = {"UT2"};
  EXPECT_EQ(run("check", o).exit_code, 0);
}

TEST(Report, NumbersAreStrings) {
  CommandOptions o;
  o.algebras = {"UT3"};
  const auto r = run("radical", o).report;
  std::function<void(const Json&)> walk = [&](const Json& j) {
    if (j.is_object()) {
      for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "schema") walk(it.value());
    } else if (j.is_array()) {
      for (const auto& x : j) walk(x);
    } else {
      EXPECT_FALSE(j.is_number()) << j.dump();
    }
  };
  walk(r);
}

TEST(Report, DeterministicAcrossWorkers) {
  for (const std::string cmd : {"kernel", "kemer", "capelli-audit"}) {
    CommandOptions o;
    o.algebras = {"M2eg"};
    o.profile = "e,g,g";
    o.workers = 1;
    const auto a = run(cmd, o).report.dump(2);
    o.workers = 4;
    EXPECT_EQ(run(cmd, o).report.dump(2), a) << cmd;
  }
}

TEST(Report, UsageErrors) {
  CommandOptions o;
  EXPECT_THROW(run("gpar", o), UsageError);
  o.algebras = {"nope"};
  EXPECT_THROW(run("gpar", o), UsageError);
  o.algebras = {"UT2"};
  EXPECT_THROW(run("check", o), UsageError);
  EXPECT_THROW(run("frobnicate", o), UsageError);
}

TEST(Report, KemerProductCheck) {
  CommandOptions o;
  o.algebras = {"M2", "UT2"};
  const auto r = run("kemer", o);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(r.report.at("passed").get<bool>());
  EXPECT_EQ(r.report.at("product_points_str"), Json::array({"((4);0)"}));
}
