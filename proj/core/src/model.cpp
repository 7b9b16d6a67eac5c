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

#include "gep/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <string_view>

#include <fmt/format.h>

#include "gep/error.hpp"
#include "gep/tsa.hpp"

namespace gep {
namespace {

std::string idx(std::string_view base, int i) { return fmt::format("{}[{}]", base, i); }
std::string idx(std::string_view base, int i, int k) {
  return fmt::format("{}[{},{}]", base, i, k);
}

// "p_g[3,17]" -> {"p_g", {3, 17}}.
struct ParsedName {
  std::string_view base;
  int first = -1;
  int second = -1;
  int arity = 0;
};

std::optional<ParsedName> parse_name(std::string_view name) {
  const auto open = name.find('[');
  if (open == std::string_view::npos || name.back() != ']') return std::nullopt;
  ParsedName out;
  out.base = name.substr(0, open);
  std::string_view inner = name.substr(open + 1, name.size() - open - 2);
  auto read_int = [](std::string_view s, int& value) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    return ec == std::errc() && ptr == s.data() + s.size() && value >= 0;
  };
  const auto comma = inner.find(',');
  if (comma == std::string_view::npos) {
    if (!read_int(inner, out.first)) return std::nullopt;
    out.arity = 1;
  } else {
    if (!read_int(inner.substr(0, comma), out.first) ||
        !read_int(inner.substr(comma + 1), out.second)) {
      return std::nullopt;
    }
    out.arity = 2;
  }
  return out;
}

bool is_investment_name(std::string_view base) {
  return base == "x_g" || base == "x_s" || base == "b_g" || base == "b_s";
}

}  // namespace

void InvestmentDecision::validate(const GepInstance& inst, double tol) const {
  if (x_g.size() != inst.generators.size() || b_g.size() != inst.generators.size() ||
      x_s.size() != inst.storages.size() || b_s.size() != inst.storages.size()) {
    throw InvalidArgument("investment decision: dimensions do not match instance");
  }
  auto check = [tol](double x, int b, double lo, double hi, const std::string& who) {
    if (b != 0 && b != 1) {
      throw InvalidArgument(fmt::format("investment decision: {} indicator not binary", who));
    }
    if (b == 0 && std::abs(x) > tol) {
      throw InvalidArgument(
          fmt::format("investment decision: {} has capacity {} but b = 0", who, x));
    }
    if (b == 1 && (x < lo - tol || x > hi + tol)) {
      throw InvalidArgument(fmt::format(
          "investment decision: {} capacity {} outside [{}, {}]", who, x, lo, hi));
    }
  };
  for (std::size_t g = 0; g < x_g.size(); ++g) {
    check(x_g[g], b_g[g], inst.generators[g].x_min, inst.generators[g].x_max,
          fmt::format("generator {}", g));
  }
  for (std::size_t n = 0; n < x_s.size(); ++n) {
    check(x_s[n], b_s[n], inst.storages[n].x_min, inst.storages[n].x_max,
          fmt::format("storage {}", n));
  }
}

InvestmentDecision InvestmentDecision::none(const GepInstance& inst) {
  InvestmentDecision inv;
  inv.x_g.assign(inst.generators.size(), 0.0);
  inv.b_g.assign(inst.generators.size(), 0);
  inv.x_s.assign(inst.storages.size(), 0.0);
  inv.b_s.assign(inst.storages.size(), 0);
  return inv;
}

DispatchSchedule DispatchSchedule::zeros(int generators, int storages, int steps) {
  DispatchSchedule s;
  s.steps = steps;
  const auto T = static_cast<std::size_t>(steps);
  s.p_g.assign(static_cast<std::size_t>(generators), std::vector<double>(T, 0.0));
  s.e_s.assign(static_cast<std::size_t>(storages), std::vector<double>(T, 0.0));
  s.p_c = s.e_s;
  s.p_d = s.e_s;
  s.e_ns.assign(T, 0.0);
  return s;
}

ModelLayout ModelLayout::full(const GepInstance& inst) {
  ModelLayout layout;
  layout.demand = inst.demand;
  layout.capacity_factors = inst.capacity_factors;
  layout.cost_weight.assign(inst.demand.size(), 1.0);
  layout.duration.assign(inst.demand.size(), 1.0);
  return layout;
}

LpProblem build_model(const GepInstance& inst, const ModelLayout& layout) {
  const int G = inst.num_generators();
  const int N = inst.num_storages();
  const int K = layout.steps();
  if (G == 0) throw InvalidArgument("model: the generator set is empty");
  if (K < 1) throw InvalidArgument("model: no time steps");
  if (layout.capacity_factors.size() != static_cast<std::size_t>(G) ||
      layout.cost_weight.size() != static_cast<std::size_t>(K) ||
      layout.duration.size() != static_cast<std::size_t>(K)) {
    throw InvalidArgument("model: layout dimensions do not match");
  }
  for (const auto& row : layout.capacity_factors) {
    if (row.size() != static_cast<std::size_t>(K)) {
      throw InvalidArgument("model: layout capacity factors have wrong length");
    }
  }
  const double dt = inst.delta;

  LpProblem p;
  std::vector<int> x_g(G), b_g(G), x_s(N), b_s(N);
  for (int g = 0; g < G; ++g) {
    x_g[g] = p.add_variable(idx("x_g", g), 0.0, kInfinity, inst.generators[g].inv_cost);
  }
  for (int n = 0; n < N; ++n) {
    x_s[n] = p.add_variable(idx("x_s", n), 0.0, kInfinity, inst.storages[n].inv_cost);
  }
  for (int g = 0; g < G; ++g) b_g[g] = p.add_variable(idx("b_g", g), 0.0, 1.0, 0.0, true);
  for (int n = 0; n < N; ++n) b_s[n] = p.add_variable(idx("b_s", n), 0.0, 1.0, 0.0, true);

  // Operating variables, step-major.
  std::vector<int> p_g(static_cast<std::size_t>(G) * K), e_s(static_cast<std::size_t>(N) * K),
      p_c(e_s.size()), p_d(e_s.size()), e_ns(K);
  auto at = [K](int unit, int k) { return static_cast<std::size_t>(unit) * K + k; };
  for (int k = 0; k < K; ++k) {
    const double w = layout.cost_weight[k];
    for (int g = 0; g < G; ++g) {
      p_g[at(g, k)] = p.add_variable(idx("p_g", g, k), 0.0, kInfinity,
                                     inst.generators[g].op_cost * dt * w);
    }
    for (int n = 0; n < N; ++n) {
      const StorageSpec& s = inst.storages[n];
      e_s[at(n, k)] = p.add_variable(idx("e_s", n, k), 0.0, kInfinity, 0.0);
      p_c[at(n, k)] = p.add_variable(idx("p_c", n, k), 0.0, kInfinity, s.charge_cost * dt * w);
      p_d[at(n, k)] = p.add_variable(idx("p_d", n, k), 0.0, kInfinity, s.discharge_cost * dt * w);
    }
    e_ns[k] = p.add_variable(idx("e_ns", k), 0.0, kInfinity, inst.nse_cost * w);
  }

  for (int k = 0; k < K; ++k) {
    std::vector<Term> balance;
    balance.reserve(static_cast<std::size_t>(G + 2 * N + 1));
    for (int g = 0; g < G; ++g) balance.push_back({p_g[at(g, k)], dt});
    for (int n = 0; n < N; ++n) {
      balance.push_back({p_d[at(n, k)], dt});
      balance.push_back({p_c[at(n, k)], -dt});
    }
    balance.push_back({e_ns[k], 1.0});
    p.add_constraint(idx("balance", k), std::move(balance), Sense::kEqual, layout.demand[k]);

    for (int g = 0; g < G; ++g) {
      p.add_constraint(idx("gen_lim", g, k),
                       {{p_g[at(g, k)], 1.0}, {x_g[g], -layout.capacity_factors[g][k]}},
                       Sense::kLessEqual, 0.0);
    }
    for (int n = 0; n < N; ++n) {
      const StorageSpec& s = inst.storages[n];
      const double power = dt / s.e2p_ratio;
      p.add_constraint(idx("sto_lim", n, k), {{e_s[at(n, k)], 1.0}, {x_s[n], -dt}},
                       Sense::kLessEqual, 0.0);
      p.add_constraint(idx("chg_lim", n, k), {{p_c[at(n, k)], 1.0}, {x_s[n], -power}},
                       Sense::kLessEqual, 0.0);
      p.add_constraint(idx("dis_lim", n, k), {{p_d[at(n, k)], 1.0}, {x_s[n], -power}},
                       Sense::kLessEqual, 0.0);
      if (k + 1 < K) {
        const double span = layout.duration[k] * dt;
        p.add_constraint(idx("dyn", n, k),
                         {{e_s[at(n, k + 1)], 1.0},
                          {e_s[at(n, k)], -1.0},
                          {p_c[at(n, k)], -s.eta_c * span},
                          {p_d[at(n, k)], s.eta_d * span}},
                         Sense::kEqual, 0.0);
      }
    }
  }

  for (int n = 0; n < N; ++n) {
    p.add_constraint(idx("init", n), {{e_s[at(n, 0)], 1.0}}, Sense::kEqual,
                     inst.storages[n].e0);
  }
  for (int g = 0; g < G; ++g) {
    const GeneratorSpec& spec = inst.generators[g];
    p.add_constraint(idx("inv_lo_g", g), {{x_g[g], 1.0}, {b_g[g], -spec.x_min}},
                     Sense::kGreaterEqual, 0.0);
    p.add_constraint(idx("inv_hi_g", g), {{x_g[g], 1.0}, {b_g[g], -spec.x_max}},
                     Sense::kLessEqual, 0.0);
  }
  for (int n = 0; n < N; ++n) {
    const StorageSpec& s = inst.storages[n];
    p.add_constraint(idx("inv_lo_s", n), {{x_s[n], 1.0}, {b_s[n], -s.x_min}},
                     Sense::kGreaterEqual, 0.0);
    p.add_constraint(idx("inv_hi_s", n), {{x_s[n], 1.0}, {b_s[n], -s.x_max}},
                     Sense::kLessEqual, 0.0);
  }
  return p;
}

LpProblem build_full_model(const GepInstance& inst) {
  inst.validate();
  if (inst.horizon < 2) throw InvalidArgument("model: horizon must be at least 2");
  if (inst.generators.empty()) throw InvalidArgument("model: the generator set is empty");
  return build_model(inst, ModelLayout::full(inst));
}

LpProblem build_aggregated_model(const GepInstance& inst, const Partition& part) {
  inst.validate();
  if (part.horizon() != inst.horizon) {
    throw InvalidArgument(fmt::format(
        "model: partition covers {} steps, instance horizon is {}", part.horizon(),
        inst.horizon));
  }
  AggregatedSeries agg = aggregate_series(inst, part);
  ModelLayout layout;
  layout.demand = std::move(agg.demand);
  layout.capacity_factors = std::move(agg.capacity_factors);
  for (const Block& b : part.blocks()) {
    layout.cost_weight.push_back(static_cast<double>(b.length));
    layout.duration.push_back(static_cast<double>(b.length));
  }
  return build_model(inst, layout);
}

LpProblem relax_binaries(const LpProblem& p) {
  LpProblem relaxed = p;
  for (std::size_t j = 0; j < relaxed.num_variables(); ++j) {
    relaxed.set_integer(static_cast<int>(j), false);
  }
  return relaxed;
}

LpProblem fix_investments(const LpProblem& p, const InvestmentDecision& inv) {
  constexpr double kTol = 1e-7;
  const std::size_t n = p.num_variables();
  std::vector<std::optional<double>> fixed(n);
  std::size_t counts[4] = {0, 0, 0, 0};
  for (std::size_t j = 0; j < n; ++j) {
    const auto parsed = parse_name(p.variables()[j].name);
    if (!parsed || parsed->arity != 1 || !is_investment_name(parsed->base)) continue;
    const auto i = static_cast<std::size_t>(parsed->first);
    auto pick = [&](const auto& values, std::size_t slot) -> double {
      if (i >= values.size()) {
        throw StructuralError(fmt::format(
            "fix_investments: no decision value for '{}'", p.variables()[j].name));
      }
      ++counts[slot];
      return static_cast<double>(values[i]);
    };
    if (parsed->base == "x_g") fixed[j] = pick(inv.x_g, 0);
    else if (parsed->base == "x_s") fixed[j] = pick(inv.x_s, 1);
    else if (parsed->base == "b_g") fixed[j] = pick(inv.b_g, 2);
    else fixed[j] = pick(inv.b_s, 3);
  }
  if (counts[0] != inv.x_g.size() || counts[1] != inv.x_s.size() ||
      counts[2] != inv.b_g.size() || counts[3] != inv.b_s.size()) {
    throw StructuralError("fix_investments: decision dimensions do not match the model");
  }
  for (int b : inv.b_g) {
    if (b != 0 && b != 1) throw InvalidArgument("fix_investments: b_g must be binary");
  }
  for (int b : inv.b_s) {
    if (b != 0 && b != 1) throw InvalidArgument("fix_investments: b_s must be binary");
  }

  LpProblem out;
  std::vector<int> remap(n, -1);
  double offset = p.objective_offset();
  for (std::size_t j = 0; j < n; ++j) {
    const Variable& v = p.variables()[j];
    if (fixed[j]) {
      offset += v.cost * *fixed[j];
      continue;
    }
    remap[j] = out.add_variable(v.name, v.lower, v.upper, v.cost, v.integer);
  }
  out.set_objective_offset(offset);

  for (const Constraint& c : p.constraints()) {
    double rhs = c.rhs;
    std::vector<Term> terms;
    bool touched = false;
    for (const Term& t : c.terms) {
      if (fixed[t.var]) {
        rhs -= t.coef * *fixed[t.var];
        touched = true;
      } else {
        terms.push_back({remap[t.var], t.coef});
      }
    }
    if (!touched && terms.size() != 1) {
      out.add_constraint(c.tag, std::move(terms), c.sense, c.rhs);
      continue;
    }
    if (terms.empty()) {
      const double scale = 1.0 + std::abs(c.rhs);
      const bool ok = c.sense == Sense::kEqual        ? std::abs(rhs) <= kTol * scale
                      : c.sense == Sense::kLessEqual ? rhs >= -kTol * scale
                                                      : rhs <= kTol * scale;
      if (!ok) {
        throw InvalidArgument(fmt::format(
            "fix_investments: decision violates '{}' (residual {})", c.tag, -rhs));
      }
      continue;
    }
    if (terms.size() == 1) {
      const Term t = terms.front();
      const Variable& v = out.variables()[t.var];
      double lo = v.lower;
      double hi = v.upper;
      const double bound = rhs / t.coef;
      const bool upper = (c.sense == Sense::kLessEqual) == (t.coef > 0.0);
      if (c.sense == Sense::kEqual) {
        lo = std::max(lo, bound);
        hi = std::min(hi, bound);
      } else if (upper) {
        hi = std::min(hi, bound);
      } else {
        lo = std::max(lo, bound);
      }
      if (lo > hi) {
        if (lo - hi > kTol * (1.0 + std::abs(lo))) {
          throw InvalidArgument(
              fmt::format("fix_investments: '{}' leaves '{}' with empty range [{}, {}]",
                          c.tag, v.name, lo, hi));
        }
        hi = lo;
      }
      out.set_bounds(t.var, lo, hi);
      continue;
    }
    out.add_constraint(c.tag, std::move(terms), c.sense, rhs);
  }
  return out;
}

DispatchSchedule extract_dispatch(const LpProblem& p, std::span<const double> primal) {
  if (primal.size() != p.num_variables()) {
    throw StructuralError("extract_dispatch: primal vector does not match the problem");
  }
  int G = 0, N = 0, K = 0;
  for (const Variable& v : p.variables()) {
    const auto parsed = parse_name(v.name);
    if (!parsed) continue;
    if (parsed->base == "p_g" && parsed->arity == 2) {
      G = std::max(G, parsed->first + 1);
      K = std::max(K, parsed->second + 1);
    } else if (parsed->base == "e_s" && parsed->arity == 2) {
      N = std::max(N, parsed->first + 1);
    } else if (parsed->base == "e_ns" && parsed->arity == 1) {
      K = std::max(K, parsed->first + 1);
    }
  }
  if (K == 0) throw StructuralError("extract_dispatch: no e_ns variables in the problem");

  DispatchSchedule s = DispatchSchedule::zeros(G, N, K);
  const std::size_t expected = static_cast<std::size_t>(K) * (G + 3 * N + 1);
  std::size_t seen = 0;
  for (std::size_t j = 0; j < p.num_variables(); ++j) {
    const auto parsed = parse_name(p.variables()[j].name);
    if (!parsed) continue;
    const double value = primal[j];
    if (parsed->arity == 1 && parsed->base == "e_ns") {
      s.e_ns[parsed->first] = value;
      ++seen;
      continue;
    }
    if (parsed->arity != 2) continue;
    std::vector<std::vector<double>>* target = nullptr;
    if (parsed->base == "p_g") target = &s.p_g;
    else if (parsed->base == "e_s") target = &s.e_s;
    else if (parsed->base == "p_c") target = &s.p_c;
    else if (parsed->base == "p_d") target = &s.p_d;
    if (target == nullptr) continue;
    if (parsed->first >= static_cast<int>(target->size()) || parsed->second >= K) {
      throw StructuralError(fmt::format("extract_dispatch: '{}' outside the grid",
                                        p.variables()[j].name));
    }
    (*target)[parsed->first][parsed->second] = value;
    ++seen;
  }
  if (seen != expected) {
    throw StructuralError(fmt::format(
        "extract_dispatch: found {} dispatch variables, expected {} "
        "(|G| = {}, |N| = {}, steps = {})",
        seen, expected, G, N, K));
  }
  return s;
}

DispatchSchedule extract_dispatch(const LpProblem& p, const SolveResult& result) {
  if (result.primal.empty()) {
    throw StructuralError(fmt::format("extract_dispatch: solve status {} carries no primal",
                                      to_string(result.status)));
  }
  return extract_dispatch(p, result.primal);
}

InvestmentDecision extract_investments(const GepInstance& inst, const LpProblem& p,
                                       std::span<const double> primal) {
  InvestmentDecision inv = InvestmentDecision::none(inst);
  auto snap = [](double x, double b, double lo, double hi, double& x_out, int& b_out) {
    b_out = b > 0.5 ? 1 : 0;
    x_out = b_out == 0 ? 0.0 : std::clamp(x, lo, hi);
  };
  for (int g = 0; g < inst.num_generators(); ++g) {
    const double x = primal[p.variable_index(idx("x_g", g))];
    const double b = primal[p.variable_index(idx("b_g", g))];
    snap(x, b, inst.generators[g].x_min, inst.generators[g].x_max, inv.x_g[g], inv.b_g[g]);
  }
  for (int n = 0; n < inst.num_storages(); ++n) {
    const double x = primal[p.variable_index(idx("x_s", n))];
    const double b = primal[p.variable_index(idx("b_s", n))];
    snap(x, b, inst.storages[n].x_min, inst.storages[n].x_max, inv.x_s[n], inv.b_s[n]);
  }
  return inv;
}

double full_objective(const GepInstance& inst, const InvestmentDecision& inv,
                      const DispatchSchedule& d) {
  const double dt = inst.delta;
  double total = 0.0;
  for (int g = 0; g < inst.num_generators(); ++g) {
    total += inst.generators[g].inv_cost * inv.x_g[g];
    for (int t = 0; t < d.steps; ++t) total += inst.generators[g].op_cost * d.p_g[g][t] * dt;
  }
  for (int n = 0; n < inst.num_storages(); ++n) {
    const StorageSpec& s = inst.storages[n];
    total += s.inv_cost * inv.x_s[n];
    for (int t = 0; t < d.steps; ++t) {
      total += (s.charge_cost * d.p_c[n][t] + s.discharge_cost * d.p_d[n][t]) * dt;
    }
  }
  for (int t = 0; t < d.steps; ++t) total += inst.nse_cost * d.e_ns[t];
  return total;
}

FeasibilityReport check_full_feasibility(const GepInstance& inst,
                                         const InvestmentDecision& inv,
                                         const DispatchSchedule& d) {
  const int G = inst.num_generators();
  const int N = inst.num_storages();
  const int T = inst.horizon;
  if (d.steps != T || d.p_g.size() != static_cast<std::size_t>(G) ||
      d.e_s.size() != static_cast<std::size_t>(N) || d.e_ns.size() != static_cast<std::size_t>(T)) {
    throw StructuralError("check_full_feasibility: schedule shape does not match instance");
  }
  if (inv.x_g.size() != static_cast<std::size_t>(G) ||
      inv.x_s.size() != static_cast<std::size_t>(N)) {
    throw StructuralError("check_full_feasibility: decision shape does not match instance");
  }
  FeasibilityReport report;
  auto note = [&report](double violation, auto&& describe) {
    if (violation > report.max_residual) {
      report.max_residual = violation;
      report.worst_constraint = describe();
    }
  };
  const double dt = inst.delta;
  for (int t = 0; t < T; ++t) {
    double supply = d.e_ns[t];
    for (int g = 0; g < G; ++g) supply += d.p_g[g][t] * dt;
    for (int n = 0; n < N; ++n) supply += (d.p_d[n][t] - d.p_c[n][t]) * dt;
    note(std::abs(supply - inst.demand[t]), [t] { return idx("balance", t); });
    note(-d.e_ns[t], [t] { return idx("nse_nonneg", t); });
    for (int g = 0; g < G; ++g) {
      note(-d.p_g[g][t], [g, t] { return idx("p_g_nonneg", g, t); });
      note(d.p_g[g][t] - inst.capacity_factors[g][t] * inv.x_g[g],
           [g, t] { return idx("gen_lim", g, t); });
    }
    for (int n = 0; n < N; ++n) {
      const StorageSpec& s = inst.storages[n];
      const double power = inv.x_s[n] * dt / s.e2p_ratio;
      note(-d.e_s[n][t], [n, t] { return idx("e_s_nonneg", n, t); });
      note(-d.p_c[n][t], [n, t] { return idx("p_c_nonneg", n, t); });
      note(-d.p_d[n][t], [n, t] { return idx("p_d_nonneg", n, t); });
      note(d.e_s[n][t] - inv.x_s[n] * dt, [n, t] { return idx("sto_lim", n, t); });
      note(d.p_c[n][t] - power, [n, t] { return idx("chg_lim", n, t); });
      note(d.p_d[n][t] - power, [n, t] { return idx("dis_lim", n, t); });
      if (t + 1 < T) {
        const double next =
            d.e_s[n][t] + (s.eta_c * d.p_c[n][t] - s.eta_d * d.p_d[n][t]) * dt;
        note(std::abs(d.e_s[n][t + 1] - next), [n, t] { return idx("dyn", n, t); });
      }
    }
  }
  for (int n = 0; n < N; ++n) {
    note(std::abs(d.e_s[n][0] - inst.storages[n].e0), [n] { return idx("init", n); });
  }
  for (int g = 0; g < G; ++g) {
    const GeneratorSpec& spec = inst.generators[g];
    note(spec.x_min * inv.b_g[g] - inv.x_g[g], [g] { return idx("inv_lo_g", g); });
    note(inv.x_g[g] - spec.x_max * inv.b_g[g], [g] { return idx("inv_hi_g", g); });
  }
  for (int n = 0; n < N; ++n) {
    const StorageSpec& s = inst.storages[n];
    note(s.x_min * inv.b_s[n] - inv.x_s[n], [n] { return idx("inv_lo_s", n); });
    note(inv.x_s[n] - s.x_max * inv.b_s[n], [n] { return idx("inv_hi_s", n); });
  }
  return report;
}

}  // namespace gep
