// Copyright 2026 The gep-tsa Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include <nlohmann/json.hpp>

#include "gep/algorithms.hpp"
#include "gep/cli.hpp"
#include "gep/error.hpp"
#include "gep/instance.hpp"
#include "gep/partition.hpp"

namespace gep::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("gep_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int call(std::vector<std::string> args) {
    args.insert(args.begin(), {"--out", dir_.string()});
    out_.str("");
    err_.str("");
    return run(args, out_, err_);
  }

  std::string slurp(const std::string& name) const {
    std::ifstream in(dir_ / name, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  int lines(const std::string& name) const {
    const std::string s = slurp(name);
    return static_cast<int>(std::count(s.begin(), s.end(), '\n'));
  }

  void small_instance(const std::string& name = "inst.json") {
    ASSERT_EQ(call({"generate", "--generators", "4", "--storages", "1", "--seed", "3",
                    "--horizon", "48", "-o", name}),
              kExitOk)
        << err_.str();
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(CliTest, GenerateIsDeterministicAndFollowsTheMix) {
  ASSERT_EQ(call({"generate", "--generators", "10", "--seed", "7", "--horizon", "72", "-o",
                  "a.json"}),
            kExitOk);
  EXPECT_NE(out_.str().find("2 thermal"), std::string::npos);
  ASSERT_EQ(call({"generate", "--generators", "10", "--seed", "7", "--horizon", "72", "-o",
                  "b.json"}),
            kExitOk);
  EXPECT_EQ(slurp("a.json"), slurp("b.json"));
  const GepInstance inst = instance_from_json(slurp("a.json"));
  EXPECT_EQ(inst.horizon, 72);
  EXPECT_EQ(inst.num_generators(), 10);
  EXPECT_TRUE(fs::exists(dir_ / "generate.manifest.json"));
  const auto manifest = nlohmann::json::parse(slurp("generate.manifest.json"));
  EXPECT_EQ(manifest["status"], "ok");
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(call({"generate", "--profiles", "csv", "--demand-csv", "d.csv"}), kExitUsage);
  EXPECT_EQ(call({"generate", "--profiles", "csv", "--demand-csv", "nope.csv", "--wind-csv",
                  "nope.csv", "--solar-csv", "nope.csv"}),
            kExitInput);
  EXPECT_EQ(call({"solve", "--instance", (dir_ / "missing.json").string()}), kExitInput);
  EXPECT_EQ(call({"bogus"}), kExitUsage);
  EXPECT_EQ(call({"report"}), kExitUsage);
  small_instance();
  EXPECT_EQ(call({"solve", "--instance", (dir_ / "inst.json").string(), "--mode", "agg"}),
            kExitUsage);
  std::ofstream(dir_ / "broken.json") << "{\"horizon\": -3}";
  EXPECT_EQ(call({"solve", "--instance", (dir_ / "broken.json").string()}), kExitInput);
}

TEST_F(CliTest, SolveModesAgree) {
  small_instance();
  const std::string inst = (dir_ / "inst.json").string();
  ASSERT_EQ(call({"solve", "--instance", inst, "--prefix", "milp"}), kExitOk) << err_.str();
  ASSERT_EQ(call({"solve", "--instance", inst, "--mode", "full-lp", "--prefix", "lp"}), kExitOk);
  const auto milp = nlohmann::json::parse(slurp("milp_result.json"));
  const auto lp = nlohmann::json::parse(slurp("lp_result.json"));
  EXPECT_LE(lp["objective"].get<double>(), milp["objective"].get<double>() * (1 + 1e-9));
  EXPECT_EQ(lines("milp_dispatch.csv"), 48 + 1);
  EXPECT_GT(lines("lp_duals.csv"), 48);

  std::ofstream(dir_ / "singletons.json") << partition_to_json(Partition::singletons(48));
  ASSERT_EQ(call({"solve", "--instance", inst, "--mode", "agg", "--partition",
                  (dir_ / "singletons.json").string(), "--prefix", "agg"}),
            kExitOk)
      << err_.str();
  const auto agg = nlohmann::json::parse(slurp("agg_result.json"));
  EXPECT_NEAR(agg["objective"].get<double>(), milp["objective"].get<double>(),
              1e-6 * milp["objective"].get<double>());

  ASSERT_EQ(call({"solve", "--instance", inst, "--mode", "agg", "--zeta", "1e9", "--prefix",
                  "one"}),
            kExitOk);
  EXPECT_EQ(lines("one_dispatch.csv"), 1 + 1);
  EXPECT_EQ(lines("one_partition.csv"), 1 + 1);
}

TEST_F(CliTest, RunWritesTraceArtifacts) {
  small_instance();
  const std::string inst = (dir_ / "inst.json").string();
  ASSERT_EQ(call({"run", "--instance", inst, "--algo", "alg2", "--max-iters", "4", "--seed",
                  "2"}),
            kExitOk)
      << err_.str();
  const BoundsTrace t = trace_from_json(slurp("alg2_trace.json"));
  EXPECT_LE(static_cast<int>(t.iterations.size()), 4);
  EXPECT_EQ(lines("alg2_trace.csv"), static_cast<int>(t.iterations.size()) + 1);
  std::istringstream csv(slurp("alg2_trace.csv"));
  std::string row;
  std::getline(csv, row);
  while (std::getline(csv, row)) {
    int it = 0, k = 0;
    double lb = 0, ub = 0, gap = 0;
    ASSERT_EQ(std::sscanf(row.c_str(), "%d,%lf,%lf,%lf,%d", &it, &lb, &ub, &gap, &k), 5) << row;
    EXPECT_NEAR(gap, 100 * (ub - lb) / ub, 1e-6);
  }
  for (const auto& r : t.iterations) {
    EXPECT_TRUE(fs::exists(dir_ / fmt::format("alg2_partitions/iteration_{:02d}.csv", r.iteration)));
  }
  EXPECT_EQ(lines("alg2_incumbent_dispatch.csv"), 48 + 1);
  EXPECT_TRUE(fs::exists(dir_ / "alg2_timings.csv"));

  const std::string first = slurp("alg2_trace.csv");
  ASSERT_EQ(call({"run", "--instance", inst, "--algo", "alg2", "--max-iters", "4", "--seed",
                  "2"}),
            kExitOk);
  EXPECT_EQ(slurp("alg2_trace.csv"), first);
}

TEST_F(CliTest, ReportComparesAgainstFirstTrace) {
  EXPECT_NEAR(reduction_percent(386, 8760), 95.6, 0.05);
  EXPECT_THROW(reduction_percent(1, 0), DomainError);
  small_instance();
  const std::string inst = (dir_ / "inst.json").string();
  ASSERT_EQ(call({"run", "--instance", inst, "--algo", "alg1", "--max-iters", "2"}), kExitOk);
  fs::copy_file(dir_ / "alg1_trace.json", dir_ / "copy_trace.json");
  ASSERT_EQ(call({"report", (dir_ / "alg1_trace.json").string(),
                  (dir_ / "copy_trace.json").string(), "--csv", "report.csv"}),
            kExitOk)
      << err_.str();
  std::istringstream csv(slurp("report.csv"));
  std::string header, a, b;
  std::getline(csv, header);
  std::getline(csv, a);
  std::getline(csv, b);
  EXPECT_EQ(a.find(",n/a,"), std::string::npos);
  EXPECT_EQ(b.substr(b.size() - std::string(",0.000000,0.000000000,0").size()),
            ",0.000000,0.000000000,0");
  EXPECT_NE(b.find(",n/a,"), std::string::npos);  // no timings next to the copy
}

TEST_F(CliTest, ExportMpsRoundTrips) {
  small_instance();
  ASSERT_EQ(call({"export-mps", "--instance", (dir_ / "inst.json").string(), "-o", "m.mps"}),
            kExitOk)
      << err_.str();
  const std::string text = slurp("m.mps");
  EXPECT_EQ(text.rfind("NAME", 0), 0u);
  EXPECT_NE(text.find("ENDATA"), std::string::npos);
}

}  // namespace
}  // namespace gep::cli
