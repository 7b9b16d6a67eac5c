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

#include "gep/lp_problem.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "gep/error.hpp"

namespace gep {

int LpProblem::add_variable(std::string name, double lower, double upper,
                            double cost, bool integer) {
  if (std::isnan(lower) || std::isnan(upper) || !std::isfinite(cost)) {
    throw InvalidArgument(fmt::format("variable '{}': non-numeric data", name));
  }
  if (lower > upper) {
    throw InvalidArgument(
        fmt::format("variable '{}': lower bound {} exceeds upper bound {}",
                    name, lower, upper));
  }
  const int index = static_cast<int>(variables_.size());
  auto [it, inserted] = variable_lookup_.emplace(name, index);
  if (!inserted) {
    throw StructuralError(fmt::format("duplicate variable name '{}'", name));
  }
  variables_.push_back({std::move(name), lower, upper, cost, integer});
  return index;
}

int LpProblem::add_constraint(std::string tag, std::vector<Term> terms,
                              Sense sense, double rhs) {
  if (!std::isfinite(rhs)) {
    throw InvalidArgument(fmt::format("row '{}': non-finite rhs", tag));
  }
  const int n = static_cast<int>(variables_.size());
  for (const Term& t : terms) {
    if (t.var < 0 || t.var >= n) {
      throw StructuralError(
          fmt::format("row '{}' references undeclared variable {}", tag, t.var));
    }
    if (!std::isfinite(t.coef)) {
      throw InvalidArgument(fmt::format("row '{}': non-finite coefficient", tag));
    }
  }
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.var < b.var; });
  std::vector<Term> merged;
  merged.reserve(terms.size());
  for (const Term& t : terms) {
    if (!merged.empty() && merged.back().var == t.var) {
      merged.back().coef += t.coef;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coef == 0.0; });

  const int index = static_cast<int>(constraints_.size());
  auto [it, inserted] = constraint_lookup_.emplace(tag, index);
  if (!inserted) {
    throw StructuralError(fmt::format("duplicate row tag '{}'", tag));
  }
  constraints_.push_back({std::move(tag), std::move(merged), sense, rhs});
  return index;
}

std::size_t LpProblem::num_integer() const {
  return static_cast<std::size_t>(std::count_if(
      variables_.begin(), variables_.end(),
      [](const Variable& v) { return v.integer; }));
}

std::size_t LpProblem::num_nonzeros() const {
  std::size_t nnz = 0;
  for (const auto& c : constraints_) nnz += c.terms.size();
  return nnz;
}

void LpProblem::set_bounds(int var, double lower, double upper) {
  if (lower > upper) {
    throw InvalidArgument(fmt::format("variable '{}': bounds [{}, {}] crossed",
                                      variables_.at(var).name, lower, upper));
  }
  variables_.at(var).lower = lower;
  variables_.at(var).upper = upper;
}

void LpProblem::set_integer(int var, bool integer) {
  variables_.at(var).integer = integer;
}

void LpProblem::set_cost(int var, double cost) {
  variables_.at(var).cost = cost;
}

std::optional<int> LpProblem::find_variable(std::string_view name) const {
  auto it = variable_lookup_.find(std::string(name));
  if (it == variable_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> LpProblem::find_constraint(std::string_view tag) const {
  auto it = constraint_lookup_.find(std::string(tag));
  if (it == constraint_lookup_.end()) return std::nullopt;
  return it->second;
}

int LpProblem::variable_index(std::string_view name) const {
  if (auto idx = find_variable(name)) return *idx;
  throw StructuralError(fmt::format("unknown variable '{}'", name));
}

int LpProblem::constraint_index(std::string_view tag) const {
  if (auto idx = find_constraint(tag)) return *idx;
  throw StructuralError(fmt::format("unknown row tag '{}'", tag));
}

void LpProblem::validate() const {
  const int n = static_cast<int>(variables_.size());
  for (const Variable& v : variables_) {
    if (v.lower > v.upper) {
      throw InvalidArgument(fmt::format("variable '{}': crossed bounds", v.name));
    }
    if (v.integer && (v.lower < 0.0 || v.upper > 1.0)) {
      throw InvalidArgument(fmt::format(
          "integer variable '{}' must be binary (bounds within [0, 1])", v.name));
    }
  }
  for (const Constraint& c : constraints_) {
    for (const Term& t : c.terms) {
      if (t.var < 0 || t.var >= n) {
        throw StructuralError(fmt::format(
            "row '{}' references undeclared variable {}", c.tag, t.var));
      }
    }
  }
  if (constraint_lookup_.size() != constraints_.size() ||
      variable_lookup_.size() != variables_.size()) {
    throw StructuralError("name index out of sync with problem contents");
  }
}

double LpProblem::objective_value(std::span<const double> x) const {
  double value = offset_;
  for (std::size_t j = 0; j < variables_.size(); ++j) {
    value += variables_[j].cost * x[j];
  }
  return value;
}

double LpProblem::row_activity(std::size_t row, std::span<const double> x) const {
  double activity = 0.0;
  for (const Term& t : constraints_[row].terms) activity += t.coef * x[t.var];
  return activity;
}

double LpProblem::max_violation(std::span<const double> x) const {
  double worst = 0.0;
  for (std::size_t j = 0; j < variables_.size(); ++j) {
    worst = std::max(worst, variables_[j].lower - x[j]);
    worst = std::max(worst, x[j] - variables_[j].upper);
  }
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    const double residual = row_activity(i, x) - constraints_[i].rhs;
    switch (constraints_[i].sense) {
      case Sense::kEqual:
        worst = std::max(worst, std::abs(residual));
        break;
      case Sense::kLessEqual:
        worst = std::max(worst, residual);
        break;
      case Sense::kGreaterEqual:
        worst = std::max(worst, -residual);
        break;
    }
  }
  return worst;
}

}  // namespace gep
