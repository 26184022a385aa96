#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "cartier/global_divisors.hpp"
#include "cartier/io.hpp"

using namespace cartier;
using io::Json;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string command = env + " " + CARTIER_CLI + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buffer{};
  std::size_t got = 0;
  while ((got = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0) r.out.append(buffer.data(), got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string data(const char* name) { return std::string(CARTIER_DATA_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& contents) {
  const auto path = std::filesystem::temp_directory_path() / ("cartier_cli_" + name);
  std::ofstream(path) << contents;
  return path.string();
}

}  // namespace

TEST(Cli, RankAtFour) {
  const auto r = run("global rank --n 4");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "11\n");
  EXPECT_EQ(run("global rank --n 4 --format csv").out, "n,rank\n4,11\n");
}

TEST(Cli, StrataJson) {
  const auto r = run("strata --n 4");
  ASSERT_EQ(r.status, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["schema_version"], io::kSchemaVersion);
  EXPECT_EQ(j["typeI"].size(), 11u);
  EXPECT_EQ(j["typeII"].size(), 14u);
  EXPECT_EQ(j["typeII"][0], "1|2|3|4");
}

TEST(Cli, OutputIsByteStable) {
  EXPECT_EQ(run("global relations --n 5").out, run("global relations --n 5").out);
  EXPECT_EQ(run("tree rays --tree " + data("two_cherries.json")).out,
            run("tree rays --newick '((3,4),(1,2))'").out);
}

TEST(Cli, TreeMcsFromFile) {
  const auto r = run("tree mcs --tree " + data("two_cherries.json"));
  ASSERT_EQ(r.status, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["subsets"], Json::parse(R"(["1,2","1,5,6","2,3,4","3,4,5,6"])"));
}

TEST(Cli, TreeWeightsWithCertificate) {
  const auto file = temp_file("multisets.json", R"({"A": {"1": 1, "3": 1}, "B": {"2": 1, "6": 1}})");
  const auto r = run("tree weights --newick '((1,2),(3,4))' --multisets " + file);
  ASSERT_EQ(r.status, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["edges"]["1"]["text"], "e2+e3");
  EXPECT_TRUE(j["pairing"]["weight_sum_equal"].get<bool>());
  EXPECT_FALSE(j["pairing"]["certificate"].is_null());
}

TEST(Cli, TreeConeChecks) {
  const Json j = Json::parse(run("tree cone --newick '((1,2),(3,4))'").out);
  EXPECT_EQ(j["ray_count"], 4);
  for (const auto& [name, passed] : j["checks"].items()) EXPECT_TRUE(passed.get<bool>()) << name;
}

TEST(Cli, LocalDecision) {
  const auto yes = Json::parse(
      run("tree cartier-local --tree " + data("two_cherries.json") + " --divisor " + data("local_cartier.json")).out);
  EXPECT_TRUE(yes["cartier"].get<bool>());
  EXPECT_EQ(yes["witness"], Json::parse("[0,1,1]"));
  const auto no = Json::parse(
      run("tree cartier-local --tree " + data("two_cherries.json") + " --divisor " + data("local_not_cartier.json"))
          .out);
  EXPECT_FALSE(no["cartier"].get<bool>());
  EXPECT_TRUE(no.contains("violated_relation"));
}

TEST(Cli, GlobalDecideAndWitness) {
  const auto r = run("global decide --divisor " + data("singletons_n4.json"));
  ASSERT_EQ(r.status, 0);
  const Json j = Json::parse(r.out);
  EXPECT_FALSE(j["cartier"].get<bool>());
  EXPECT_EQ(j["violated_relation"].size(), 4u);
  EXPECT_EQ(run("global witness --divisor " + data("singletons_n4.json")).status, 2);
}

TEST(Cli, PullbackReparsesAsCartierDivisor) {
  const auto r = run("global pullback --n 5 --fij 2,4");
  ASSERT_EQ(r.status, 0);
  const DivisorVector d = io::divisor_from_json(Json::parse(r.out));
  EXPECT_TRUE(is_cartier_global(d));
  const auto file = temp_file("pullback.json", r.out);
  EXPECT_TRUE(Json::parse(run("global decide --divisor " + file).out)["cartier"].get<bool>());
  const auto w = run("global witness --divisor " + file);
  EXPECT_EQ(w.status, 0);
  EXPECT_TRUE(Json::parse(w.out)["verified"].get<bool>());
}

TEST(Cli, Crosscheck) {
  const auto r = run("global crosscheck --n 4");
  ASSERT_EQ(r.status, 0);
  EXPECT_TRUE(Json::parse(r.out)["ok"].get<bool>());
  EXPECT_EQ(run("global crosscheck --n 6").status, 2);
}

TEST(Cli, FormatsAndDot) {
  EXPECT_EQ(run("tree mcs --newick '((1,2),(3,4))' --format dot").out.rfind("digraph", 0), 0u);
  EXPECT_EQ(run("global pushpull --n 3 --format csv").out.substr(0, 6), "subset");
  EXPECT_EQ(run("global witness --n 3 --format dot").status, 2);
}

TEST(Cli, InvalidInputExitsTwo) {
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("tree bogus --newick '(1,2)'").status, 2);
  EXPECT_EQ(run("tree mcs --newick '((1,2),(3,4)'").status, 2);
  EXPECT_EQ(run("tree mcs --tree /nonexistent.json").status, 2);
  EXPECT_EQ(run("tree mcs --tree " + temp_file("bad.json", "{ not json")).status, 2);
  EXPECT_EQ(run("tree mcs --tree " + temp_file("extra.json", R"({"root":0,"vertices":[],"edges":[],"x":1})")).status,
            2);
  EXPECT_EQ(run("global decide --divisor " + temp_file("label.json", R"({"n":4,"typeI":{"1":1},"typeII":{}})")).status,
            2);
  EXPECT_EQ(run("global rank --n 6", "CARTIER_MAX_N=5").status, 2);
  EXPECT_EQ(run("global pullback --n 4").status, 2);
}

TEST(Cli, ValidateReportsFailures) {
  // Two colored vertices on one path.
  const auto file = temp_file("invalid_tree.json", R"({"root": 0,
    "vertices": [{"id": 0, "colored": false}, {"id": 1, "colored": true, "label": 1},
                 {"id": 2, "colored": true, "label": 2}],
    "edges": [[0, 1], [1, 2]]})");
  const auto r = run("tree validate --tree " + file);
  EXPECT_EQ(r.status, 2);
  const Json j = Json::parse(r.out);
  EXPECT_FALSE(j["valid"].get<bool>());
}
