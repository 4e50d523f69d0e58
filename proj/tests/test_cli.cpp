#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fdhom/runner.hpp"

using namespace fdhom::fdh;
namespace fs = std::filesystem;

namespace {

const fs::path source_dir = FDHOM_SOURCE_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "fdhom-cli-test";
  fs::create_directories(dir);
  return dir / name;
}

fs::path write(const std::string& name, const std::string& text) {
  auto p = scratch(name);
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

struct CliResult {
  int code;
  std::string out, err;
};

CliResult cli(const std::string& args) {
  auto out = scratch("stdout.txt"), err = scratch("stderr.txt");
  std::string cmd = std::string("\"") + FDHOM_CLI + "\" " + args + " > \"" + out.string() + "\" 2> \"" + err.string() + "\"";
  int status = std::system(cmd.c_str());
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, slurp(out), slurp(err)};
}

const char* small_doc = R"(
field F3
algebra A { vertices 1 2; arrows x:1->2; }
module S = simple A 1;
task dim A;
task ext S S over A upto 2;
)";

}  // namespace

TEST(Parser, WorkedExampleRoundTrips) {
  auto doc = parse(slurp(source_dir / "fixtures/example7.fdh"));
  EXPECT_EQ(doc.field, std::optional<std::string>("F2"));
  EXPECT_EQ(doc.algebras.size(), 2u);
  EXPECT_EQ(doc.modules.size(), 12u);
  EXPECT_EQ(doc.tasks.size(), 22u);
  auto again = parse(print(doc));
  EXPECT_EQ(again, doc);
  EXPECT_EQ(print(again), print(doc));
}

TEST(Parser, EmptyDocument) {
  auto doc = parse("# nothing here\n");
  EXPECT_TRUE(doc.tasks.empty());
  auto r = run(doc);
  EXPECT_EQ(r.field, "F101");
  EXPECT_EQ(r.exit_code(), 0);
  EXPECT_EQ(r.to_json(false)["summary"]["tasks"], 0);
}

TEST(Parser, CompactAndBlockTasksAgree) {
  auto a = parse(std::string(small_doc) + "task ext { source S; target S; over A; upto 2; }\n");
  ASSERT_EQ(a.tasks.size(), 3u);
  EXPECT_EQ(a.tasks[1].command, a.tasks[2].command);
  EXPECT_EQ(a.tasks[1].params, a.tasks[2].params);
}

TEST(Parser, RelationsAndScalars) {
  auto doc = parse(R"(
algebra Q2 { vertices 1; arrows x:1->1 y:1->1; relations x*x, y*y, x*y - 2/3 y*x; }
task dim Q2;
)");
  ASSERT_EQ(doc.algebras[0].relations.size(), 3u);
  EXPECT_EQ(doc.algebras[0].relations[2].size(), 2u);
  auto r = run(doc);
  EXPECT_EQ(r.tasks[0].result["dim"], 4);
}

TEST(Parser, Errors) {
  EXPECT_THROW(parse("algebra A { vertices 1; arrows x:1->2; }"), ResolutionError);
  EXPECT_THROW(parse("algebra A { vertices 1; }\nmodule X over B { dims 1; }"), ResolutionError);
  EXPECT_THROW(parse("algebra A { vertices 1; }\nmodule X over A { dims 1; map y = [[0]]; }"), ResolutionError);
  EXPECT_THROW(parse("algebra A { vertices 1 }"), ParseError);
  EXPECT_THROW(parse("task frobnicate A;"), ParseError);
  EXPECT_THROW(parse("algebra A { vertices 1; }\nmodule S = simple A 1;\ntask ext { source S; }"), ParseError);
  EXPECT_THROW(parse("algebra A { vertices 1; }\nmodule S = simple A 1;\ntask dim { algebra A; module S; }"), ParseError);
  EXPECT_THROW(parse("algebra A { vertices 1; }\nmodule X over A⊗Aop { dims 1|2=1; }"), ResolutionError);
  try {
    parse("field F2\n\nalgebra A { vertices 1; arrows x:1->7; }\n");
    FAIL() << "expected ResolutionError";
  } catch (const ResolutionError& e) {
    EXPECT_EQ(std::string(e.what()).substr(0, 2), "3:") << e.what();
  }
  EXPECT_THROW(run(parse("field F9\n")), ParseError);
}

TEST(Runner, TaskErrorsAreReportedNotThrown) {
  auto doc = parse(slurp(source_dir / "fixtures/example7.fdh") + "module MM = tensor M M;\ntask dim { module MM; }\n");
  auto r = run(doc);
  const auto& last = r.tasks.back();
  EXPECT_EQ(last.status, "error");
  EXPECT_FALSE(last.error.empty());
  EXPECT_EQ(r.exit_code(), 1);
  EXPECT_EQ(r.count("ok"), 22);
}

TEST(Runner, UnexpectedVerdict) {
  auto r = run(parse("algebra L { vertices 1 2; arrows a:1->1 b:1->2; relations a*a, b*a; }\n"
                     "task gorenstein { algebra L; bound 4; expect pass; }\n"));
  ASSERT_EQ(r.tasks.size(), 1u);
  EXPECT_EQ(r.tasks[0].status, "unexpected");
  EXPECT_EQ(r.tasks[0].verdict, std::optional<bool>(false));
  EXPECT_EQ(r.exit_code(), 1);
}

TEST(Runner, OddCharacteristicVariant) {
  auto r = run(parse(slurp(source_dir / "fixtures/example7-f101.fdh")));
  EXPECT_EQ(r.field, "F101");
  EXPECT_EQ(r.exit_code(), 0) << r.table(false);
}

TEST(Runner, DegreeCap) {
  RunOptions opt;
  opt.cap_degree = 3;
  auto r = run(parse("field F2\nalgebra S { vertices 1; arrows c:1->1; relations c*c; }\nmodule T = simple S 1;\n"
                     "task ext T T over S;\n"),
               opt);
  EXPECT_EQ(r.tasks[0].result["dims"].size(), 4u);
}

TEST(Cli, GoldenReport) {
  auto json_path = scratch("ex7.json");
  auto res = cli("run \"" + (source_dir / "fixtures/example7.fdh").string() + "\" --json \"" + json_path.string() + "\"");
  EXPECT_EQ(res.code, 0) << res.err;
  EXPECT_NE(res.out.find("summary: 22 ok, 0 unexpected, 0 errors"), std::string::npos);
  auto got = nlohmann::json::parse(slurp(json_path));
  auto want = nlohmann::json::parse(slurp(source_dir / "fixtures/example7.golden.json"));
  EXPECT_EQ(got, want) << got.dump(2);
}

TEST(Cli, ExitCodes) {
  auto good = write("good.fdh", small_doc);
  EXPECT_EQ(cli("run \"" + good.string() + "\"").code, 0);

  auto failing = write("failing.fdh", std::string(small_doc) + "task gorenstein { algebra A; expect fail; }\n");
  auto r1 = cli("run \"" + failing.string() + "\"");
  EXPECT_EQ(r1.code, 1);
  EXPECT_NE(r1.out.find("unexpected"), std::string::npos);

  auto broken = write("broken.fdh", "field F2\nalgebra A { vertices 1 \n");
  auto r2 = cli("run \"" + broken.string() + "\"");
  EXPECT_EQ(r2.code, 2);
  EXPECT_NE(r2.err.find("broken.fdh:"), std::string::npos) << r2.err;

  auto unresolved = write("unresolved.fdh", "algebra A { vertices 1; }\ntask dim B;\n");
  EXPECT_EQ(cli("run \"" + unresolved.string() + "\"").code, 2);

  EXPECT_EQ(cli("run \"" + scratch("missing.fdh").string() + "\"").code, 2);
  EXPECT_EQ(cli("run \"" + good.string() + "\" --seed notanumber").code, 2);
}

TEST(Cli, DeterministicAndParallelAgree) {
  auto ex7 = (source_dir / "fixtures/example7.fdh").string();
  auto a = scratch("a.json"), b = scratch("b.json"), c = scratch("c.json");
  EXPECT_EQ(cli("run \"" + ex7 + "\" --seed 7 --json \"" + a.string() + "\"").code, 0);
  EXPECT_EQ(cli("run \"" + ex7 + "\" --seed 7 --json \"" + b.string() + "\"").code, 0);
  EXPECT_EQ(cli("run \"" + ex7 + "\" --seed 7 --parallel --json \"" + c.string() + "\"").code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(slurp(a), slurp(c));
}

TEST(Cli, VerboseAddsTimings) {
  auto good = write("good.fdh", small_doc);
  auto j = scratch("verbose.json");
  EXPECT_EQ(cli("run \"" + good.string() + "\" --verbose --json \"" + j.string() + "\"").code, 0);
  auto report = nlohmann::json::parse(slurp(j));
  for (const auto& t : report["tasks"]) EXPECT_TRUE(t.contains("seconds"));
}
