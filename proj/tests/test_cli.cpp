#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <string>

#include <json.hpp>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  Run r;
  std::string cmd = std::string(GLOSPAN_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json parse(const Run& r) { return nlohmann::json::parse(r.out); }

std::string temp_path(const char* name) { return std::string(::testing::TempDir()) + name; }

}  // namespace

TEST(Cli, MarksTsv) {
  auto r = run("marks C2");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "2\t0\n1\t1\n");
}

TEST(Cli, MarksJsonAndIdempotentFile) {
  auto path = temp_path("idem_c2.json");
  auto r = run("marks C2 --idempotents " + path);
  EXPECT_EQ(r.code, 0);
  auto j = parse(run("marks C2 --format json"));
  EXPECT_EQ(j["table"], nlohmann::json::parse("[[2,0],[1,1]]"));
  // e_1 = [C2/1]/2, e_C2 = 1 - [C2/1]/2 in the orbit basis
  EXPECT_EQ(j["idempotents"], nlohmann::json::parse(R"([["1/2","0"],["-1/2","1"]])"));
  FILE* f = fopen(path.c_str(), "r");
  ASSERT_NE(f, nullptr);
  std::string text;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, f)) > 0;) text.append(buf, n);
  fclose(f);
  EXPECT_EQ(nlohmann::json::parse(text)["idempotents"], j["idempotents"]);
}

TEST(Cli, SpansHom) {
  auto r = run("spans hom --from C1 --to C2 --legs full,faithful");
  EXPECT_EQ(r.code, 0);
  auto j = parse(r);
  EXPECT_EQ(j["count"], 2);
  ASSERT_EQ(j["classes"].size(), 2u);
  EXPECT_EQ(j["classes"][0]["id"], "C1->C2#0");
  EXPECT_EQ(j["classes"][1]["id"], "C1->C2#1");
  EXPECT_EQ(parse(run("spans hom --from C2 --to C1"))["count"], 0);
  EXPECT_EQ(parse(run("spans hom --from C3 --to C3"))["count"], 2);
  EXPECT_EQ(run("spans hom --from C1 --to C2 --legs full,all").code, 1);
  EXPECT_EQ(run("spans hom --from C1 --to C2 --legs full").code, 2);
}

TEST(Cli, SpansCompose) {
  // the point into C2, then C2 into C4: the point into C4
  auto j = parse(run("spans compose --from C1 --via C2 --to C4 --first 0 --second 0"));
  EXPECT_EQ(j["apex_components"], 1);
  EXPECT_EQ(j["result"], "C1->C4#0");
  EXPECT_EQ(run("spans compose --from C1 --via C2 --to C4 --first 5 --second 0").code, 2);
}

TEST(Cli, GroupInfo) {
  auto j = parse(run("group info S3"));
  EXPECT_EQ(j["order"], 6);
  EXPECT_EQ(j["conjugacy_classes"], 3);
  EXPECT_EQ(j["subgroup_classes"].size(), 4u);
  EXPECT_EQ(run("group info S5").code, 2);
  EXPECT_EQ(run("group info C64").code, 2);
}

TEST(Cli, TransferEnumerate) {
  for (auto [g, n] : {std::pair{"C1", 1}, {"C2", 2}, {"C3", 2}, {"C4", 5}}) {
    auto r = run(std::string("transfer enumerate ") + g);
    EXPECT_EQ(r.code, 0) << g;
    auto j = parse(r);
    EXPECT_EQ(j["count"], n) << g;
    EXPECT_EQ(j["indexing_count"], n) << g;
  }
}

TEST(Cli, NormsCheck) {
  EXPECT_EQ(run("norms check --choice maximal --bound 6").code, 0);
  EXPECT_EQ(run("norms check C4 --bound 6").code, 0);
  auto path = temp_path("t_c4.json");
  FILE* f = fopen(path.c_str(), "w");
  ASSERT_NE(f, nullptr);
  fputs(R"({"schema": 1, "kind": "transfer_system", "group": "C4", "pairs": [{"sub": [0, 2], "sup": [0, 1, 2, 3]}]})", f);
  fclose(f);
  auto r = run("norms check --from-transfer " + path + " --bound 6");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(parse(r)["closed"].get<bool>());
  EXPECT_EQ(run("norms check").code, 2);
  EXPECT_EQ(run("norms check --choice middling").code, 2);
  EXPECT_EQ(run("norms check --from-transfer " + temp_path("absent.json")).code, 2);
}

TEST(Cli, FunctorCheckExitCodes) {
  EXPECT_EQ(run("functor check missing.json").code, 2);
  EXPECT_EQ(run(std::string("functor check ") + GLOSPAN_DOCS + "/c2_skeleton.json").code, 0);
  auto path = temp_path("broken.json");
  FILE* f = fopen(path.c_str(), "w");
  ASSERT_NE(f, nullptr);
  fputs("{\"schema\": 1, \"skeleton\": [", f);
  fclose(f);
  EXPECT_EQ(run("functor check " + path).code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
}

TEST(Cli, FreePipedToCheck) {
  for (const char* g : {"C1", "C2", "C3"}) {
    auto r = run(std::string("functor free --group ") + g + " --skeleton C1,C2,C3 | " + GLOSPAN_CLI + " functor check -");
    EXPECT_EQ(r.code, 0) << g;
    EXPECT_TRUE(parse(r)["ok"].get<bool>()) << g;
  }
  auto r = run("functor constant --skeleton C1,C2,C3,S3 | " + std::string(GLOSPAN_CLI) + " functor check -");
  EXPECT_EQ(r.code, 0);
}

TEST(Cli, MutatedDiagramFails) {
  auto j = parse(run("functor free --group C1 --skeleton C1,C2 --degree 1"));
  // rescaling one generator is a different functor; an identity class is not
  j["inflations"]["C2->C2#0"] = nlohmann::json::parse(R"([["1","0","0"],["0","2","0"],["0","0","1"]])");
  auto path = temp_path("mutated.json");
  FILE* f = fopen(path.c_str(), "w");
  ASSERT_NE(f, nullptr);
  fputs(j.dump().c_str(), f);
  fclose(f);
  auto r = run("functor check " + path);
  EXPECT_EQ(r.code, 1);
  auto report = parse(r);
  EXPECT_FALSE(report["ok"].get<bool>());
  EXPECT_FALSE(report["violations"].empty());
  EXPECT_EQ(run("functor check " + path).out, r.out);
}

TEST(Cli, IncompleteSkeletonIsReported) {
  auto r = run("functor constant --skeleton C1,C2,S3 | " + std::string(GLOSPAN_CLI) + " functor check -");
  EXPECT_EQ(r.code, 1);
}

TEST(Cli, OutputIsDeterministic) {
  for (const char* args : {"marks S3 --format json", "spans hom --from C2 --to D8", "transfer enumerate C2xC2",
                           "functor free --group C2 --skeleton C1,C2,C4", "group info D8"}) {
    auto a = run(args), b = run(args);
    EXPECT_EQ(a.code, 0) << args;
    EXPECT_EQ(a.out, b.out) << args;
    EXPECT_FALSE(a.out.empty()) << args;
  }
}

TEST(Cli, TsvOnlyForMatrices) {
  EXPECT_EQ(run("transfer enumerate C2 --format tsv").code, 2);
  EXPECT_EQ(run("marks C3 --format tsv").out, "3\t0\n1\t1\n");
}
