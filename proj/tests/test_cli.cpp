#include "episig/cli.hpp"
#include "episig/serialize.hpp"

#include <gtest/gtest.h>

#include <chrono>
#include <filesystem>
#include <functional>
#include <sstream>

#include <unistd.h>

namespace episig {
namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("episig_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  CliResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
  }

  // Preset file with optional edits applied to the JSON.
  std::string game_file(const std::string& name, const std::function<void(Json&)>& edit = {}) {
    Json j = game_to_json(honeypot_preset());
    if (edit) edit(j);
    write_text_file(path(name), j.dump(2));
    return path(name);
  }

  fs::path dir_;
};

TEST_F(Cli, PresetThenValidate) {
  auto r = run({"preset", "honeypot", "--out", path("g.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = read_json_file(path("g.json"));
  EXPECT_EQ(j["belief_sender"]["r0"], 0.3);
  EXPECT_EQ(j["belief_receiver"]["r0"]["s0"], 0.8);
  EXPECT_EQ(j["belief_receiver"]["r1"]["s1"], 0.8);
  EXPECT_NE(j["comment"].get<std::string>().find("canonical"), std::string::npos);
  EXPECT_EQ(run({"validate", path("g.json")}).code, 0);
  EXPECT_EQ(run({"preset", "casino"}).code, kExitInvalid);
}

TEST_F(Cli, ValidateExitCodes) {
  auto r = run({"validate", game_file("c.json", [](Json& j) { j["cost"] = 0; })});
  EXPECT_EQ(r.code, kExitInvalid);
  EXPECT_NE(r.out.find("cost must be positive"), std::string::npos);

  write_text_file(path("bad.json"), "{\n  \"cost\": 0.4,\n  \"u_r\": [1, }\n");
  r = run({"validate", path("bad.json")});
  EXPECT_EQ(r.code, kExitParse);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;

  r = run({"validate", game_file("f.json", [](Json& j) { j["u_r"]["s1"]["a1"] = "x"; })});
  EXPECT_EQ(r.code, kExitParse);
  EXPECT_NE(r.err.find("u_r.s1.a1"), std::string::npos) << r.err;

  r = run({"validate", game_file("m.json", [](Json& j) { j.erase("belief_sender"); })});
  EXPECT_EQ(r.code, kExitParse);
  EXPECT_NE(r.err.find("belief_sender"), std::string::npos);

  r = run({"validate",
           game_file("s.json", [](Json& j) { j["belief_sender"]["r1"] = 0.6; })});
  EXPECT_EQ(r.code, kExitInvalid);
  EXPECT_NE(r.err.find("does not sum to 1"), std::string::npos);

  EXPECT_EQ(run({"validate", path("missing.json")}).code, kExitInvalid);
  EXPECT_EQ(run({"frobnicate"}).code, kExitInvalid);
}

TEST_F(Cli, SolveHoneypot) {
  auto r = run({"solve", game_file("g.json"), "--json", path("report.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("region A"), std::string::npos);
  Json rep = read_json_file(path("report.json"));
  EXPECT_EQ(rep["c_prime"], 0.4);
  EXPECT_EQ(rep["region"]["label"], "A");
  std::vector<std::string> kinds;
  for (const auto& f : rep["families"]) {
    kinds.push_back(f["kind"]);
    EXPECT_TRUE(f["verification"]["passed"].get<bool>());
  }
  EXPECT_EQ(kinds, (std::vector<std::string>{"PoolingM1", "BeliefIndependent", "CandidateI",
                                             "CandidateVI"}));
  EXPECT_EQ(rep["families"][1]["representative"]["sender"]["s0"]["m0"], 0.8);
}

TEST_F(Cli, SolveHighCostAndCaseE) {
  auto r = run({"solve", game_file("c1.json", [](Json& j) { j["cost"] = 1.0; }), "--json", "-"});
  ASSERT_EQ(r.code, 0);
  Json rep = parse_json_text(r.out);
  ASSERT_EQ(rep["families"].size(), 1u);
  EXPECT_EQ(rep["families"][0]["kind"], "Separating");
  EXPECT_EQ(rep["regime"], "separating-only");

  auto e = game_file("e.json", [](Json& j) {
    j["belief_sender"] = {{"r0", 0.5}, {"r1", 0.5}};
    j["cost"] = 0.5;
  });
  rep = parse_json_text(run({"solve", e, "--json", "-"}).out);
  EXPECT_EQ(rep["region"]["label"], "E");
  int flagged = 0;
  for (const auto& f : rep["families"])
    if (f["kind"].get<std::string>().rfind("Candidate", 0) == 0) flagged += f["boundary"].get<bool>();
  EXPECT_EQ(flagged, 6);
}

TEST_F(Cli, SolveOutputIsDeterministic) {
  auto g = game_file("g.json");
  EXPECT_EQ(run({"solve", g, "--json", "-"}).out, run({"solve", g, "--json", "-"}).out);
}

TEST_F(Cli, VerifyHoneypot) {
  auto start = std::chrono::steady_clock::now();
  auto r = run({"verify", game_file("g.json"), "--grid", "201"});
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_LT(secs, 10.0);

  r = run({"verify", path("g.json"), "--grid", "11"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.err.find("coarse"), std::string::npos);

  EXPECT_EQ(run({"verify", path("g.json"), "--grid", "5"}).code, kExitInvalid);
}

TEST_F(Cli, VerifyRejectsBadProfile) {
  StrategyProfile p;
  p.sender = SenderStrategy(1.0, 0.0);
  p.receiver.a0 << 1.0, 1.0, 0.0, 0.0;
  write_text_file(path("p.json"), profile_to_json(p).dump(2));
  auto r = run({"verify", game_file("g.json"), "--profile", path("p.json"), "--grid", "51"});
  EXPECT_EQ(r.code, kExitMismatch);
  EXPECT_NE(r.out.find("sender-optimality"), std::string::npos);

  // The same profile is an equilibrium once deception costs C' = 1.
  auto hi = game_file("hi.json", [](Json& j) { j["cost"] = 1.0; });
  r = run({"verify", hi, "--profile", path("p.json"), "--grid", "51"});
  EXPECT_NE(r.out.find("profile: PBE verified"), std::string::npos);
}

TEST_F(Cli, SweepBeliefs) {
  auto r = run({"sweep", game_file("g.json"), "--param", "belief_sender.r0", "--lo", "0.05", "--hi",
                "0.95", "--steps", "19", "--out", path("s.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream csv(read_text_file(path("s.csv")));
  std::string line, regions;
  std::getline(csv, line);
  EXPECT_EQ(line[0], '#');
  std::getline(csv, line);
  EXPECT_EQ(line.rfind("value,c_prime,regime,region,candidates", 0), 0u);
  while (std::getline(csv, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    if (regions.empty() || regions.back() != cells[3][0]) regions += cells[3];
    if (cells[0] == "0.4") EXPECT_EQ(cells[4], "i;ii;iii;vi");
  }
  EXPECT_EQ(regions, "ABCFI");
}

TEST_F(Cli, SweepCost) {
  auto r = run({"sweep", game_file("g.json"), "--param", "cost", "--lo", "0.1", "--hi", "1.2",
                "--steps", "12"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream csv(r.out);
  std::string line;
  int separating = 0;
  while (std::getline(csv, line)) {
    if (line[0] == '#' || line.rfind("value", 0) == 0) continue;
    double v = std::stod(line.substr(0, line.find(',')));
    bool sep = line.find("separating-only") != std::string::npos;
    EXPECT_EQ(sep, v >= 1.0 - 1e-12) << line;
    separating += sep;
  }
  EXPECT_EQ(separating, 3);
  EXPECT_EQ(run({"sweep", path("g.json"), "--param", "cost", "--lo", "0", "--hi", "1"}).code,
            kExitInvalid);
  EXPECT_EQ(run({"sweep", path("g.json"), "--param", "utility"}).code, kExitInvalid);
  EXPECT_EQ(run({"sweep", path("g.json"), "--steps", "1"}).code, kExitInvalid);
}

TEST_F(Cli, SimulateSeparating) {
  auto g = game_file("c1.json", [](Json& j) { j["cost"] = 1.0; });
  auto a = run({"simulate", g, "--family", "Separating", "--samples", "100000", "--seed", "42"});
  ASSERT_EQ(a.code, 0) << a.err;
  std::istringstream csv(a.out);
  std::string line;
  int rows = 0;
  while (std::getline(csv, line)) {
    if (line[0] == '#' || line.rfind("family", 0) == 0) continue;
    ++rows;
    EXPECT_EQ(line.back(), '0') << line;
  }
  EXPECT_EQ(rows, 6);
  auto b = run({"simulate", g, "--family", "Separating", "--samples", "100000", "--seed", "42"});
  EXPECT_EQ(a.out, b.out);
}

TEST_F(Cli, SimulateErrors) {
  auto g = game_file("g.json");
  EXPECT_EQ(run({"simulate", g, "--family", "Mystery"}).code, kExitInvalid);
  EXPECT_EQ(run({"simulate", g, "--family", "Separating"}).code, kExitInvalid);
  auto r = run({"simulate", g, "--samples", "100", "--out", path("mc.csv")});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(fs::exists(path("mc.csv")));
}

TEST_F(Cli, RoundTrip) {
  ASSERT_EQ(run({"preset", "honeypot", "--out", path("rt.json")}).code, 0);
  EXPECT_EQ(run({"validate", path("rt.json")}).code, 0);
  EXPECT_EQ(run({"solve", path("rt.json"), "--json", path("rt_report.json")}).code, 0);
  EXPECT_EQ(run({"verify", path("rt.json")}).code, 0);
}

TEST(Serialize, GameRoundTrip) {
  auto g = honeypot_preset();
  auto back = game_from_json(parse_json_text(game_to_json(g).dump()));
  EXPECT_EQ(back.sender_honest, g.sender_honest);
  EXPECT_EQ(back.receiver, g.receiver);
  EXPECT_EQ(back.belief_sender, g.belief_sender);
  EXPECT_EQ(back.belief_receiver, g.belief_receiver);
  EXPECT_EQ(back.cost, g.cost);
  EXPECT_EQ(back.label, g.label);
}

TEST(Serialize, ProfileAndBeliefsRoundTrip) {
  auto f = enumerate_pbe(honeypot_preset()).families.front();
  Json pj = profile_to_json(f.representative);
  pj["posterior"] = beliefs_to_json(f.posterior);
  auto p = profile_from_json(pj);
  auto b = beliefs_from_json(pj["posterior"]);
  EXPECT_TRUE(p.receiver.a0.isApprox(f.representative.receiver.a0, 1e-11));
  for (Message m : kMessages)
    for (ReceiverType r : kReceiverTypes) {
      EXPECT_EQ(b.at(m, r).off_path, f.posterior.at(m, r).off_path);
      EXPECT_NEAR(*b.at(m, r).s0, *f.posterior.at(m, r).s0, 1e-11);
    }
}

TEST(Serialize, TwelveDigits) {
  EXPECT_EQ(fmt12(6.0 / 7.0), "0.857142857143");
  EXPECT_EQ(round12(0.1 + 0.2), 0.3);
  EXPECT_EQ(fmt12(-0.0), "0");
}

}  // namespace
}  // namespace episig
