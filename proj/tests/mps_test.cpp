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

#include <cmath>
#include <string>

#include "gep/error.hpp"
#include "gep/model.hpp"
#include "gep/mps.hpp"
#include "gep/solver.hpp"
#include "support/oracles.hpp"

namespace gep {
namespace {

TEST(ExportMps, TwoVariablesOneRowByHand) {
  LpProblem p;
  p.add_variable("x", 0, kInfinity, 1);
  p.add_variable("y", 0, 4, 2);
  p.add_constraint("c1", {{0, 1}, {1, 1}}, Sense::kGreaterEqual, 1);
  const std::string expected =
      "NAME          GEP\n"
      "ROWS\n"
      " N  COST\n"
      " G  c1\n"
      "COLUMNS\n"
      "    x         COST                 1\n"
      "    x         c1                   1\n"
      "    y         COST                 2\n"
      "    y         c1                   1\n"
      "RHS\n"
      "    RHS       c1                   1\n"
      "BOUNDS\n"
      " UP BND       y                    4\n"
      "ENDATA\n";
  EXPECT_EQ(export_mps(p), expected);
}

TEST(ExportMps, EmptyConstraintListHasOnlyObjectiveRow) {
  LpProblem p;
  p.add_variable("x", 0, 1, 3);
  const std::string text = export_mps(p);
  const auto rows = text.find("ROWS\n");
  const auto cols = text.find("COLUMNS\n");
  EXPECT_EQ(text.substr(rows, cols - rows), "ROWS\n N  COST\n");
}

TEST(ExportMps, TruncationCollisionIsStructuralError) {
  LpProblem p;
  p.add_variable("generator_1", 0, 1, 0);
  p.add_variable("generator_2", 0, 1, 0);
  EXPECT_THROW(export_mps(p, MpsNaming::kTruncate), StructuralError);
  EXPECT_NO_THROW(export_mps(p, MpsNaming::kIndexed));
}

TEST(ExportMps, RowNamedLikeObjectiveCollides) {
  LpProblem p;
  p.add_variable("x", 0, 1, 0);
  p.add_constraint("COST", {{0, 1}}, Sense::kLessEqual, 1);
  EXPECT_THROW(export_mps(p), StructuralError);
}

TEST(ExportMps, FieldsStayInFixedColumns) {
  const LpProblem p = build_full_model(testing::small_instance(4, 3, 1, 24));
  const std::string text = export_mps(p, MpsNaming::kIndexed);
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto eol = text.find('\n', pos);
    const std::string line = text.substr(pos, eol - pos);
    pos = eol + 1;
    EXPECT_LE(line.size(), 61u) << line;
    if (line.rfind("    C", 0) == 0 && line.find("MARKER") == std::string::npos) {
      // Name, row and value fields start at columns 5, 15 and 25.
      EXPECT_EQ(line[12], ' ');
      EXPECT_EQ(line[13], ' ');
      EXPECT_NE(line[14], ' ');
      EXPECT_EQ(line.size(), 36u) << line;
    }
  }
}

TEST(ImportMps, RoundTripPreservesOptimum) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    SCOPED_TRACE(seed);
    const LpProblem p = build_full_model(testing::random_small_instance(seed + 300));
    const LpProblem q = import_mps(export_mps(p, MpsNaming::kIndexed));
    EXPECT_EQ(q.num_variables(), p.num_variables());
    EXPECT_EQ(q.num_constraints(), p.num_constraints());
    EXPECT_EQ(q.num_integer(), p.num_integer());
    const double a = solve_milp(p).objective;
    const double b = solve_milp(q).objective;
    EXPECT_NEAR(a, b, 1e-6 * std::abs(a));
    const double la = solve_lp(relax_binaries(p)).objective;
    const double lb = solve_lp(relax_binaries(q)).objective;
    EXPECT_NEAR(la, lb, 1e-6 * std::abs(la));
  }
}

TEST(ImportMps, OffsetAndBoundTypesSurvive) {
  LpProblem p;
  p.add_variable("free", -kInfinity, kInfinity, 1);
  p.add_variable("neg", -kInfinity, 3, -1);
  p.add_variable("fixed", 2, 2, 4);
  p.add_variable("lo", 1.5, kInfinity, 1);
  p.add_variable("int", 0, 1, 1, true);
  p.add_constraint("r", {{0, 1}, {1, 1}}, Sense::kGreaterEqual, -2);
  p.set_objective_offset(12.5);
  const LpProblem q = import_mps(export_mps(p));
  for (std::size_t j = 0; j < p.num_variables(); ++j) {
    EXPECT_EQ(q.variables()[j].lower, p.variables()[j].lower) << j;
    EXPECT_EQ(q.variables()[j].upper, p.variables()[j].upper) << j;
    EXPECT_EQ(q.variables()[j].integer, p.variables()[j].integer) << j;
  }
  EXPECT_DOUBLE_EQ(q.objective_offset(), 12.5);
}

TEST(ImportMps, MalformedInputIsIngestionError) {
  EXPECT_THROW(import_mps("NAME x\nROWS\n N COST\n"), IngestionError);
  EXPECT_THROW(import_mps("ROWS\n N COST\nCOLUMNS\n    x  nope  1\nENDATA\n"), IngestionError);
  EXPECT_THROW(import_mps("ROWS\n N COST\nRANGES\nENDATA\n"), IngestionError);
  EXPECT_THROW(import_mps("ROWS\n N COST\nCOLUMNS\n    x  COST  abc\nENDATA\n"), IngestionError);
}

}  // namespace
}  // namespace gep
