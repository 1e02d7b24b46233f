#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ca/session.hpp"
#include "cli.hpp"

using namespace ca;
using nlohmann::json;

namespace {

const std::string kFixtures = CA_FIXTURE_DIR;

struct Invocation {
  int status;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Invocation ca_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

Invocation ca_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  return ca_run(std::move(args));
}

std::string fixture(const std::string& name) { return kFixtures + "/" + name + ".json"; }

json sidecar(const std::string& name) {
  std::ifstream in(kFixtures + "/" + name + ".expected.json");
  return json::parse(in);
}

// Polynomial lists compared as sets of parsed polynomials.
bool same_polys(const json& a, const json& b, const PolyRing& ring) {
  auto parse = [&](const json& list) {
    std::vector<std::string> out;
    for (const auto& t : list) out.push_back(to_string(parse_poly(t.get<std::string>(), ring), ring));
    std::sort(out.begin(), out.end());
    return out;
  };
  return parse(a) == parse(b);
}

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("ca_cli_test_" + name);
  std::ofstream(path) << text;
  return path;
}

const std::vector<std::string> kCorpus{"FX1", "FX2", "FX3", "FX4", "FX5", "FX6"};

}  // namespace

TEST(Cli, InvariantsMatchSidecars) {
  for (const std::string& name : kCorpus) {
    Session s = load_session(fixture(name));
    json expected = sidecar(name);
    for (const auto& [module, entry] : expected["modules"].items()) {
      Invocation r = ca_json({"invariants", fixture(name), module});
      ASSERT_EQ(r.status, 0) << r.err;
      json got = r.doc();
      for (const auto& [key, value] : entry["invariants"].items()) {
        if (key == "ann") {
          EXPECT_TRUE(same_polys(got["ann"], value, s.ring->base())) << name << " " << module << " " << got["ann"];
        } else {
          EXPECT_EQ(got[key], value) << name << " " << module << " " << key;
        }
      }
    }
  }
}

TEST(Cli, LimitsMatchSidecars) {
  int seen = 0;
  for (const std::string& name : kCorpus) {
    json expected = sidecar(name);
    if (!expected.contains("limits")) continue;
    for (const auto& lim : expected["limits"]) {
      std::vector<std::string> args{lim["verb"], fixture(name), lim["module"], "--nmax",
                                    std::to_string(lim["nmax"].get<int>())};
      if (lim.contains("seq")) args.insert(args.end(), {"--seq", lim["seq"]});
      if (lim.contains("ideal")) args.insert(args.end(), {"--ideal", lim["ideal"]});
      Invocation r = ca_json(args);
      ASSERT_EQ(r.status, 0) << r.err;
      json rep = r.doc()["report"];
      ASSERT_EQ(rep["values"].size(), lim["normalized"].size());
      for (std::size_t n = 0; n < rep["values"].size(); ++n) {
        EXPECT_EQ(rep["values"][n]["n"], n);
        EXPECT_EQ(rep["values"][n]["raw"], lim["raw"][n]) << name << " n=" << n;
        EXPECT_EQ(rep["values"][n]["normalized"], (json{{"num", lim["normalized"][n]}, {"den", 1}})) << name;
      }
      EXPECT_EQ(rep["verdict"], lim["verdict"]);
      ++seen;
    }
  }
  EXPECT_EQ(seen, 6);
}

TEST(Cli, ChiAndEInfinityAgreeTermByTerm) {
  Invocation chi = ca_json({"chi-inf", "FX1", "M1", "--seq", "y", "--nmax", "3"});
  Invocation e = ca_json({"e-inf", "FX1", "M1", "--seq", "y", "--nmax", "3"});
  ASSERT_EQ(chi.status, 0);
  ASSERT_EQ(e.status, 0);
  EXPECT_EQ(chi.doc()["report"]["values"], e.doc()["report"]["values"]);
  EXPECT_EQ(chi.doc()["report"]["kind"], "chi");
  EXPECT_EQ(e.doc()["report"]["kind"], "e");
}

TEST(Cli, RecomputeMatchesFastPath) {
  Invocation a = ca_json({"chi-inf", "FX3", "M3", "--seq", "z"});
  Invocation b = ca_json({"chi-inf", "FX3", "M3", "--seq", "z", "--recompute", "--serial"});
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.doc()["report"], b.doc()["report"]);
}

TEST(Cli, AutoSopAndLiteralSequence) {
  Invocation a = ca_json({"e-inf", "FX2", "M2", "--auto-sop", "--nmax", "1"});
  ASSERT_EQ(a.status, 0) << a.err;
  EXPECT_EQ(a.doc()["auto_sop"], true);
  Invocation b = ca_json({"e-inf", "FX2", "M2", "--seq", "z", "--nmax", "1"});
  EXPECT_EQ(a.doc()["report"], b.doc()["report"]);
  Invocation c = ca_json({"koszul", "FX3", "M3", "--seq", "x, z"});
  ASSERT_EQ(c.status, 0) << c.err;
  EXPECT_EQ(c.doc()["sequence"], (json{"x", "z"}));
  EXPECT_TRUE(c.doc()["multiplicity"].is_null());
}

TEST(Cli, AssociativityMatchesSidecar) {
  json expected = sidecar("FX2")["assoc"];
  Invocation r = ca_json({"assoc", "FX2", "M2", "--seq", "z", "--prime", "P", "--nmax", "3"});
  ASSERT_EQ(r.status, 0) << r.err;
  json got = r.doc();
  EXPECT_EQ(got["prime_multiplicities"], expected["prime_multiplicities"]);
  ASSERT_EQ(got["rows"].size(), 4u);
  for (std::size_t n = 0; n < 4; ++n) {
    EXPECT_EQ(got["rows"][n]["engine"], expected["engine"][n]);
    EXPECT_EQ(got["rows"][n]["predicted"], expected["predicted"][n]);
    EXPECT_EQ(got["rows"][n]["equal"], true);
  }
  EXPECT_EQ(got["all_equal"], true);
}

TEST(Cli, AssociativityMismatchIsCheckFailure) {
  auto path = temp_file("assoc.json", R"({"characteristic": 2, "variables": ["x", "y", "z"], "ideal": ["x*y"],
      "modules": {"M": {"presentation": [["x+y"]]}},
      "primes": {"P": {"ideal": ["x", "y"], "lengths": [2, 4, 9]}}})");
  Invocation r = ca_json({"assoc", path.string(), "M", "--seq", "z", "--nmax", "2"});
  EXPECT_EQ(r.status, cli::kCheckFailure);
  EXPECT_EQ(r.doc()["all_equal"], false);
}

TEST(Cli, ExactnessMatchesSidecar) {
  for (const auto& [name, verdict] : sidecar("FX6")["complexes"].items()) {
    Invocation r = ca_json({"exactness", "FX6", name});
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_EQ(r.doc()["verdict"], verdict) << name;
  }
}

TEST(Cli, ResolutionOverBothRings) {
  Invocation a = ca_json({"resolution", "FX5", "M5", "--cutoff", "3"});
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.doc()["pd"], (json{{"at_least", 3}}));
  EXPECT_EQ(a.doc()["ranks"], (json{1, 1, 1, 1}));
  Invocation b = ca_json({"resolution", "FX5", "M5", "--over", "R"});
  EXPECT_EQ(b.doc()["pd"], 1);
  EXPECT_EQ(ca_json({"resolution", "FX5", "M5", "--over", "B"}).status, cli::kInputError);
}

TEST(Cli, VerifyAndRunAll) {
  Invocation v = ca_json({"verify", "FX1", "grade-conj", "M1"});
  EXPECT_EQ(v.status, 0);
  EXPECT_EQ(v.doc()["checks"][0]["status"], "pass");
  Invocation all = ca_json({"run-all", "FX5"});
  EXPECT_EQ(all.status, 0);
  Invocation empty = ca_json({"run-all", fixture("empty")});
  EXPECT_EQ(empty.status, 0);
  EXPECT_TRUE(empty.doc()["checks"].empty());
}

TEST(Cli, RunAllIsByteIdentical) {
  for (const std::string& name : kCorpus) {
    Invocation a = ca_json({"run-all", name, "--seed", "7"});
    Invocation b = ca_json({"run-all", name, "--seed", "7"});
    EXPECT_EQ(a.out, b.out) << name;
  }
}

TEST(Cli, InfoAndGb) {
  Invocation i = ca_json({"info", "FX2"});
  ASSERT_EQ(i.status, 0);
  EXPECT_EQ(i.doc()["dim_A"], 2);
  EXPECT_EQ(i.doc()["depth_A"], 2);
  Invocation g = ca_json({"gb", "FX4", "J"});
  EXPECT_EQ(g.doc()["basis"], (json{"x", "z"}));
  Invocation m = ca_json({"gb", "FX1", "M1"});
  EXPECT_EQ(m.doc()["basis"], (json{json{"x^2"}}));
  Invocation r = ca_json({"gb", "FX2"});
  EXPECT_EQ(r.doc()["basis"], (json{"x*y"}));
}

TEST(Cli, TextFormat) {
  Invocation r = ca_run({"chi-inf", "FX1", "M1", "--seq", "y", "--nmax", "1"});
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("normalized: 2\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("positive_min: 3/4"), std::string::npos) << r.out;
  Invocation inv = ca_run({"invariants", "FX5", "M5"});
  EXPECT_NE(inv.out.find("pd_A: >= 2"), std::string::npos) << inv.out;
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(ca_run({"verify", "FX1", "bogus", "M1"}).status, cli::kInputError);
  EXPECT_EQ(ca_run({"invariants", fixture("invalid/inhomogeneous"), "M"}).status, cli::kInputError);
  Invocation inh = ca_run({"info", fixture("invalid/inhomogeneous")});
  EXPECT_EQ(inh.status, cli::kInputError);
  EXPECT_NE(inh.err.find("E_NOT_HOMOGENEOUS"), std::string::npos);
  EXPECT_EQ(ca_run({"info", fixture("invalid/syntax")}).status, cli::kInputError);
  EXPECT_EQ(ca_run({"info", "/no/such/file.json"}).status, cli::kInputError);
  EXPECT_EQ(ca_run({"invariants", "FX1", "M9"}).status, cli::kInputError);
  EXPECT_EQ(ca_run({"e-inf", "FX1", "M1", "--seq", "x"}).status, cli::kInputError);
  EXPECT_EQ(ca_run({"bogus-verb", "FX1"}).status, cli::kInputError);
  EXPECT_EQ(ca_run({}).status, cli::kInputError);
  EXPECT_EQ(ca_run({"--help"}).status, cli::kOk);
  // Resource caps: no finite resolution within the cutoff, and an exhausted sop search.
  EXPECT_EQ(ca_run({"chi-inf", "FX5", "M5", "--seq", "y"}).status, cli::kResourceCap);
  EXPECT_EQ(ca_run({"sop", "FX6", "M6", "--max-tries", "0"}).status, cli::kResourceCap);
}
