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

#include "gep/mps.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <fmt/format.h>

#include "gep/error.hpp"

namespace gep {
namespace {

constexpr std::string_view kObjectiveRow = "COST";

// Shortest %g rendering that fits the 12-character value field.
std::string number(double v) {
  for (int digits = 12; digits > 0; --digits) {
    std::string s = fmt::format("{:.{}g}", v, digits);
    if (s.size() <= 12) return s;
  }
  throw InvalidArgument(fmt::format("MPS: cannot fit {} into 12 characters", v));
}

std::vector<std::string> make_names(std::size_t count, char prefix, MpsNaming naming,
                                    const auto& original, std::string_view what) {
  std::vector<std::string> names;
  names.reserve(count);
  std::unordered_set<std::string> seen;
  if (prefix == 'R') seen.insert(std::string(kObjectiveRow));
  for (std::size_t i = 0; i < count; ++i) {
    std::string name = naming == MpsNaming::kIndexed
                           ? fmt::format("{}{:07d}", prefix, i + 1)
                           : std::string(original(i)).substr(0, 8);
    if (name.empty() || name.find(' ') != std::string::npos) {
      throw StructuralError(fmt::format("MPS: {} '{}' has no usable name", what, original(i)));
    }
    if (!seen.insert(name).second) {
      throw StructuralError(
          fmt::format("MPS: {} '{}' collides as '{}' after truncation", what, original(i), name));
    }
    names.push_back(std::move(name));
  }
  return names;
}

// Fixed columns: 2-3 type, 5-12 name, 15-22 name, 25-36 value, 40-47 name, 50-61 value.
std::string entry(std::string_view field1, std::string_view name, std::string_view value) {
  return fmt::format("    {:<8}  {:<8}  {:>12}\n", field1, name, value);
}

}  // namespace

std::string export_mps(const LpProblem& p, MpsNaming naming) {
  p.validate();
  const auto& vars = p.variables();
  const auto& rows = p.constraints();
  const auto cols = make_names(vars.size(), 'C', naming,
                               [&](std::size_t j) { return vars[j].name; }, "variable");
  const auto tags = make_names(rows.size(), 'R', naming,
                               [&](std::size_t i) { return rows[i].tag; }, "row");

  // Column-wise view of the rows.
  std::vector<std::vector<std::pair<int, double>>> by_col(vars.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const Term& t : rows[i].terms) by_col[t.var].emplace_back(static_cast<int>(i), t.coef);
  }

  std::string out = "NAME          GEP\nROWS\n";
  out += fmt::format(" N  {}\n", kObjectiveRow);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const char* type = rows[i].sense == Sense::kEqual       ? "E"
                       : rows[i].sense == Sense::kLessEqual ? "L"
                                                            : "G";
    out += fmt::format(" {}  {}\n", type, tags[i]);
  }

  out += "COLUMNS\n";
  bool in_integer = false;
  int markers = 0;
  for (std::size_t j = 0; j < vars.size(); ++j) {
    if (vars[j].integer != in_integer) {
      out += fmt::format("    MARKER{:02d}  'MARKER'                 '{}'\n", markers++,
                         vars[j].integer ? "INTORG" : "INTEND");
      in_integer = vars[j].integer;
    }
    // Always emit the objective entry so that empty columns survive.
    if (vars[j].cost != 0.0 || by_col[j].empty()) {
      out += entry(cols[j], kObjectiveRow, number(vars[j].cost));
    }
    for (const auto& [row, coef] : by_col[j]) out += entry(cols[j], tags[row], number(coef));
  }
  if (in_integer) {
    out += fmt::format("    MARKER{:02d}  'MARKER'                 'INTEND'\n", markers);
  }

  out += "RHS\n";
  if (p.objective_offset() != 0.0) {
    out += entry("RHS", kObjectiveRow, number(-p.objective_offset()));
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].rhs != 0.0) out += entry("RHS", tags[i], number(rows[i].rhs));
  }

  out += "BOUNDS\n";
  auto bound = [&](std::string_view type, std::size_t j, std::optional<double> v) {
    out += fmt::format(" {:<2} {:<8}  {:<8}", type, "BND", cols[j]);
    if (v) out += fmt::format("  {:>12}", number(*v));
    out += '\n';
  };
  for (std::size_t j = 0; j < vars.size(); ++j) {
    const double lo = vars[j].lower;
    const double hi = vars[j].upper;
    if (lo == hi) {
      bound("FX", j, lo);
      continue;
    }
    if (std::isinf(lo) && std::isinf(hi)) {
      bound("FR", j, std::nullopt);
      continue;
    }
    if (std::isinf(lo)) {
      bound("MI", j, std::nullopt);
    } else if (lo != 0.0) {
      bound("LO", j, lo);
    }
    // Integer columns without an explicit bound read as binaries in some
    // solvers, so their upper bound is always written.
    if (std::isinf(hi)) {
      if (vars[j].integer) bound("PL", j, std::nullopt);
    } else {
      bound("UP", j, hi);
    }
  }
  out += "ENDATA\n";
  return out;
}

LpProblem import_mps(std::string_view text) {
  enum class Section { kNone, kRows, kColumns, kRhs, kBounds, kEnd };
  struct Row {
    std::string name;
    Sense sense;
    double rhs = 0.0;
    std::vector<Term> terms;
  };
  struct Col {
    std::string name;
    double lower = 0.0;
    double upper = kInfinity;
    double cost = 0.0;
    bool integer = false;
  };
  std::string objective;
  std::vector<Row> rows;
  std::vector<Col> cols;
  std::unordered_map<std::string, int> row_index;
  std::unordered_map<std::string, int> col_index;
  double offset = 0.0;
  bool integer = false;
  Section section = Section::kNone;

  auto fail = [](int line, std::string_view why) {
    throw IngestionError(fmt::format("MPS line {}: {}", line, why));
  };
  auto to_double = [&](const std::string& s, int line) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) fail(line, fmt::format("bad number '{}'", s));
      return v;
    } catch (const std::logic_error&) {
      fail(line, fmt::format("bad number '{}'", s));
    }
    return 0.0;
  };
  auto add_entry = [&](int col, const std::string& row, const std::string& value, int line) {
    const double v = to_double(value, line);
    if (row == objective) {
      cols[col].cost += v;
      return;
    }
    auto it = row_index.find(row);
    if (it == row_index.end()) fail(line, fmt::format("unknown row '{}'", row));
    rows[it->second].terms.push_back({col, v});
  };

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size() && section != Section::kEnd) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '*') continue;

    std::vector<std::string> f;
    for (std::size_t i = 0; i < line.size();) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
      if (j > i) f.emplace_back(line.substr(i, j - i));
      i = j;
    }
    if (f.empty()) continue;

    if (line.front() != ' ' && line.front() != '\t') {
      if (f[0] == "NAME") section = Section::kNone;
      else if (f[0] == "ROWS") section = Section::kRows;
      else if (f[0] == "COLUMNS") section = Section::kColumns;
      else if (f[0] == "RHS") section = Section::kRhs;
      else if (f[0] == "BOUNDS") section = Section::kBounds;
      else if (f[0] == "ENDATA") section = Section::kEnd;
      else fail(line_no, fmt::format("unsupported section '{}'", f[0]));
      continue;
    }

    switch (section) {
      case Section::kRows: {
        if (f.size() != 2) fail(line_no, "expected row type and name");
        if (f[0] == "N") {
          if (objective.empty()) objective = f[1];
          continue;  // further free rows are ignored
        }
        Sense sense;
        if (f[0] == "E") sense = Sense::kEqual;
        else if (f[0] == "L") sense = Sense::kLessEqual;
        else if (f[0] == "G") sense = Sense::kGreaterEqual;
        else fail(line_no, fmt::format("bad row type '{}'", f[0]));
        if (!row_index.emplace(f[1], static_cast<int>(rows.size())).second) {
          fail(line_no, fmt::format("duplicate row '{}'", f[1]));
        }
        rows.push_back({f[1], sense, 0.0, {}});
        break;
      }
      case Section::kColumns: {
        if (f.size() >= 3 && f[1] == "'MARKER'") {
          if (f[2] == "'INTORG'") integer = true;
          else if (f[2] == "'INTEND'") integer = false;
          else fail(line_no, "bad marker");
          continue;
        }
        if (f.size() != 3 && f.size() != 5) fail(line_no, "expected 3 or 5 fields");
        auto [it, inserted] = col_index.emplace(f[0], static_cast<int>(cols.size()));
        if (inserted) {
          // Integer columns default to [0, 1] until BOUNDS says otherwise.
          cols.push_back({f[0], 0.0, integer ? 1.0 : kInfinity, 0.0, integer});
        } else if (it->second != static_cast<int>(cols.size()) - 1) {
          fail(line_no, fmt::format("column '{}' is not contiguous", f[0]));
        }
        add_entry(it->second, f[1], f[2], line_no);
        if (f.size() == 5) add_entry(it->second, f[3], f[4], line_no);
        break;
      }
      case Section::kRhs: {
        if (f.size() != 3 && f.size() != 5) fail(line_no, "expected 3 or 5 fields");
        for (std::size_t k = 1; k + 1 < f.size(); k += 2) {
          const double v = to_double(f[k + 1], line_no);
          if (f[k] == objective) {
            offset = -v;
            continue;
          }
          auto it = row_index.find(f[k]);
          if (it == row_index.end()) fail(line_no, fmt::format("unknown row '{}'", f[k]));
          rows[it->second].rhs = v;
        }
        break;
      }
      case Section::kBounds: {
        if (f.size() < 3) fail(line_no, "expected bound type, set and column");
        auto it = col_index.find(f[2]);
        if (it == col_index.end()) fail(line_no, fmt::format("unknown column '{}'", f[2]));
        Col& c = cols[it->second];
        const std::string& type = f[0];
        const bool valued = type == "UP" || type == "LO" || type == "FX" || type == "BV";
        if (valued && type != "BV" && f.size() != 4) fail(line_no, "bound value missing");
        const double v = f.size() == 4 ? to_double(f[3], line_no) : 0.0;
        if (type == "UP") {
          if (v < 0.0 && c.lower == 0.0) fail(line_no, "negative upper bound on a default lower bound");
          c.upper = v;
        } else if (type == "LO") {
          c.lower = v;
        } else if (type == "FX") {
          c.lower = c.upper = v;
        } else if (type == "FR") {
          c.lower = -kInfinity;
          c.upper = kInfinity;
        } else if (type == "MI") {
          c.lower = -kInfinity;
        } else if (type == "PL") {
          c.upper = kInfinity;
        } else if (type == "BV") {
          c.lower = 0.0;
          c.upper = 1.0;
          c.integer = true;
        } else {
          fail(line_no, fmt::format("unsupported bound type '{}'", type));
        }
        break;
      }
      default:
        fail(line_no, "data outside a section");
    }
  }
  if (section != Section::kEnd) throw IngestionError("MPS: missing ENDATA");
  if (objective.empty()) throw IngestionError("MPS: no objective row");

  LpProblem p;
  try {
    for (const Col& c : cols) p.add_variable(c.name, c.lower, c.upper, c.cost, c.integer);
    for (Row& r : rows) p.add_constraint(r.name, std::move(r.terms), r.sense, r.rhs);
  } catch (const Error& e) {
    throw IngestionError(fmt::format("MPS: {}", e.what()));
  }
  p.set_objective_offset(offset);
  return p;
}

}  // namespace gep
