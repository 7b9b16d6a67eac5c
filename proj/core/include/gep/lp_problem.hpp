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

#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace gep {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Sense { kEqual, kLessEqual, kGreaterEqual };

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInfinity;
  double cost = 0.0;
  bool integer = false;
};

struct Term {
  int var = 0;
  double coef = 0.0;
};

struct Constraint {
  std::string tag;
  std::vector<Term> terms;  // sorted by variable index, no duplicates
  Sense sense = Sense::kEqual;
  double rhs = 0.0;
};

// Minimisation problem `min c'x + offset  s.t.  rows, lower <= x <= upper`,
// with optional integrality on individual columns. Variables are addressed
// by index or by unique name, rows by unique tag.
class LpProblem {
 public:
  int add_variable(std::string name, double lower, double upper, double cost,
                   bool integer = false);
  // Duplicate variable references in `terms` are merged; zero coefficients
  // are dropped.
  int add_constraint(std::string tag, std::vector<Term> terms, Sense sense,
                     double rhs);

  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  std::size_t num_variables() const { return variables_.size(); }
  std::size_t num_constraints() const { return constraints_.size(); }
  std::size_t num_integer() const;
  std::size_t num_nonzeros() const;

  double objective_offset() const { return offset_; }
  void set_objective_offset(double offset) { offset_ = offset; }

  // Bound and cost edits for derived problems (relaxation, fixing).
  void set_bounds(int var, double lower, double upper);
  void set_integer(int var, bool integer);
  void set_cost(int var, double cost);

  std::optional<int> find_variable(std::string_view name) const;
  std::optional<int> find_constraint(std::string_view tag) const;
  // Throw StructuralError when absent.
  int variable_index(std::string_view name) const;
  int constraint_index(std::string_view tag) const;

  // Throws StructuralError or InvalidArgument if the problem is malformed.
  void validate() const;

  double objective_value(std::span<const double> x) const;
  double row_activity(std::size_t row, std::span<const double> x) const;
  // Largest violation of any bound or row by `x`.
  double max_violation(std::span<const double> x) const;

 private:
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  std::unordered_map<std::string, int> variable_lookup_;
  std::unordered_map<std::string, int> constraint_lookup_;
  double offset_ = 0.0;
};

}  // namespace gep
