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

#include "basis_factor.hpp"

#include <algorithm>
#include <cmath>

namespace gep::detail {
namespace {

constexpr double kPivotFloor = 1e-11;  // smallest acceptable |pivot|
constexpr double kThreshold = 0.01;     // relative threshold for row singletons
constexpr double kDropTol = 1e-14;

}  // namespace

CsrMatrix to_rows(const CscMatrix& a) {
  CsrMatrix r;
  r.rows = a.rows;
  r.cols = a.cols;
  r.start.assign(static_cast<std::size_t>(a.rows) + 1, 0);
  for (int idx : a.index) ++r.start[idx + 1];
  for (int i = 0; i < a.rows; ++i) r.start[i + 1] += r.start[i];
  r.index.resize(a.index.size());
  r.value.resize(a.value.size());
  std::vector<int> fill(r.start.begin(), r.start.end() - 1);
  for (int j = 0; j < a.cols; ++j) {
    for (int k = a.start[j]; k < a.start[j + 1]; ++k) {
      const int pos = fill[a.index[k]]++;
      r.index[pos] = j;
      r.value[pos] = a.value[k];
    }
  }
  return r;
}

BasisFactor::BasisFactor(const CscMatrix& structural) : a_(&structural), m_(structural.rows) {}

bool BasisFactor::factorize(std::span<const int> basic) {
  const int m = m_;
  const int n = a_->cols;
  etas_.clear();
  eta_index_.clear();
  eta_value_.clear();
  deficient_.clear();
  work_.assign(static_cast<std::size_t>(m), 0.0);

  // Basis matrix by columns (basis positions) and by rows.
  CscMatrix b;
  b.rows = m;
  b.cols = m;
  b.start.assign(static_cast<std::size_t>(m) + 1, 0);
  for (int p = 0; p < m; ++p) {
    const int col = basic[p];
    b.start[p + 1] = b.start[p] + (col < n ? a_->start[col + 1] - a_->start[col] : 1);
  }
  b.index.resize(b.start[m]);
  b.value.resize(b.start[m]);
  for (int p = 0; p < m; ++p) {
    const int col = basic[p];
    int pos = b.start[p];
    if (col < n) {
      for (int k = a_->start[col]; k < a_->start[col + 1]; ++k, ++pos) {
        b.index[pos] = a_->index[k];
        b.value[pos] = a_->value[k];
      }
    } else {
      b.index[pos] = col - n;
      b.value[pos] = -1.0;
    }
  }
  const CsrMatrix br = to_rows(b);

  std::vector<int> row_count(static_cast<std::size_t>(m));
  std::vector<int> col_count(static_cast<std::size_t>(m));
  std::vector<char> row_alive(static_cast<std::size_t>(m), 1);
  std::vector<char> col_alive(static_cast<std::size_t>(m), 1);
  for (int i = 0; i < m; ++i) row_count[i] = br.start[i + 1] - br.start[i];
  for (int p = 0; p < m; ++p) col_count[p] = b.start[p + 1] - b.start[p];

  pivot_row_.clear();
  pivot_col_.clear();
  diag_.clear();
  l_start_.assign(1, 0);
  l_index_.clear();
  l_value_.clear();
  // U entries keyed by basis position until the pivot order is final.
  std::vector<int> u_start(1, 0);
  std::vector<int> u_pos;
  std::vector<double> u_val;

  auto finish_pivot = [&](int r, int p, double d) {
    pivot_row_.push_back(r);
    pivot_col_.push_back(p);
    diag_.push_back(d);
    l_start_.push_back(static_cast<int>(l_index_.size()));
    u_start.push_back(static_cast<int>(u_pos.size()));
    row_alive[r] = 0;
    col_alive[p] = 0;
  };

  std::vector<int> col_queue;
  std::vector<int> row_queue;
  for (int p = m - 1; p >= 0; --p) {
    if (col_count[p] == 1) col_queue.push_back(p);
  }
  for (int i = m - 1; i >= 0; --i) {
    if (row_count[i] == 1) row_queue.push_back(i);
  }

  // Singleton passes. Neither kind of pivot creates fill, so the active
  // entries keep their original values throughout.
  while (!col_queue.empty() || !row_queue.empty()) {
    if (!col_queue.empty()) {
      const int p = col_queue.back();
      col_queue.pop_back();
      if (!col_alive[p] || col_count[p] != 1) continue;
      int r = -1;
      double d = 0.0;
      for (int k = b.start[p]; k < b.start[p + 1]; ++k) {
        if (row_alive[b.index[k]]) {
          r = b.index[k];
          d = b.value[k];
          break;
        }
      }
      if (std::abs(d) < kPivotFloor) continue;
      for (int k = br.start[r]; k < br.start[r + 1]; ++k) {
        const int q = br.index[k];
        if (q == p || !col_alive[q]) continue;
        u_pos.push_back(q);
        u_val.push_back(br.value[k]);
        if (--col_count[q] == 1) col_queue.push_back(q);
      }
      finish_pivot(r, p, d);
    } else {
      const int r = row_queue.back();
      row_queue.pop_back();
      if (!row_alive[r] || row_count[r] != 1) continue;
      int p = -1;
      double d = 0.0;
      for (int k = br.start[r]; k < br.start[r + 1]; ++k) {
        if (col_alive[br.index[k]]) {
          p = br.index[k];
          d = br.value[k];
          break;
        }
      }
      double col_max = 0.0;
      for (int k = b.start[p]; k < b.start[p + 1]; ++k) {
        if (row_alive[b.index[k]]) col_max = std::max(col_max, std::abs(b.value[k]));
      }
      if (std::abs(d) < kPivotFloor || std::abs(d) < kThreshold * col_max) continue;
      for (int k = b.start[p]; k < b.start[p + 1]; ++k) {
        const int i = b.index[k];
        if (i == r || !row_alive[i]) continue;
        l_index_.push_back(i);
        l_value_.push_back(b.value[k] / d);
        if (--row_count[i] == 1) row_queue.push_back(i);
      }
      finish_pivot(r, p, d);
    }
  }

  // Kernel: Markowitz elimination on the remaining rows and columns.
  std::vector<int> kernel_cols;
  for (int p = 0; p < m; ++p) {
    if (col_alive[p]) kernel_cols.push_back(p);
  }
  if (!kernel_cols.empty()) {
    std::vector<std::vector<std::pair<int, double>>> rows(static_cast<std::size_t>(m));
    std::vector<std::vector<int>> cols(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      if (!row_alive[i]) continue;
      for (int k = br.start[i]; k < br.start[i + 1]; ++k) {
        const int q = br.index[k];
        if (col_alive[q]) {
          rows[i].emplace_back(q, br.value[k]);
          cols[q].push_back(i);
        }
      }
    }
    for (int p : kernel_cols) col_count[p] = static_cast<int>(cols[p].size());

    std::vector<int> where(static_cast<std::size_t>(m), -1);
    auto value_at = [&](int i, int q) {
      for (const auto& [c, v] : rows[i]) {
        if (c == q) return v;
      }
      return 0.0;
    };
    auto by_count = [&](int x, int y) {
      return col_count[x] != col_count[y] ? col_count[x] < col_count[y] : x < y;
    };

    std::vector<int> candidates;
    std::vector<int> alive_cols = kernel_cols;
    while (!alive_cols.empty()) {
      // Candidate columns: the (up to) four alive columns of lowest count.
      const std::size_t take = std::min<std::size_t>(4, alive_cols.size());
      candidates = alive_cols;
      std::partial_sort(candidates.begin(), candidates.begin() + take, candidates.end(),
                        by_count);
      candidates.resize(take);

      int best_r = -1;
      int best_p = -1;
      double best_v = 0.0;
      long best_cost = -1;
      for (int p : candidates) {
        double col_max = 0.0;
        for (int i : cols[p]) {
          if (row_alive[i]) col_max = std::max(col_max, std::abs(value_at(i, p)));
        }
        for (int i : cols[p]) {
          if (!row_alive[i]) continue;
          const double v = value_at(i, p);
          if (std::abs(v) < kPivotFloor || std::abs(v) < 0.1 * col_max) continue;
          const long cost = static_cast<long>(rows[i].size() - 1) * (col_count[p] - 1);
          if (best_cost < 0 || cost < best_cost) {
            best_cost = cost;
            best_r = i;
            best_p = p;
            best_v = v;
          }
        }
      }
      if (best_r < 0) {
        // The lowest-count column has no usable pivot: leave it out.
        const int p = candidates.front();
        col_alive[p] = 0;
        for (int i : cols[p]) {
          if (!row_alive[i]) continue;
          auto& row = rows[i];
          row.erase(std::remove_if(row.begin(), row.end(),
                                   [&](const auto& e) { return e.first == p; }),
                    row.end());
        }
        alive_cols.erase(std::find(alive_cols.begin(), alive_cols.end(), p));
        continue;
      }

      const int r = best_r;
      const int p = best_p;
      const auto pivot_row = rows[r];
      for (const auto& [q, v] : pivot_row) {
        if (q == p) continue;
        u_pos.push_back(q);
        u_val.push_back(v);
        --col_count[q];
      }
      row_alive[r] = 0;
      for (int i : cols[p]) {
        if (!row_alive[i]) continue;
        auto& row = rows[i];
        double a_ip = 0.0;
        for (std::size_t k = 0; k < row.size(); ++k) {
          if (row[k].first == p) {
            a_ip = row[k].second;
            row[k] = row.back();
            row.pop_back();
            break;
          }
        }
        if (a_ip == 0.0) continue;
        const double l = a_ip / best_v;
        l_index_.push_back(i);
        l_value_.push_back(l);
        for (std::size_t k = 0; k < row.size(); ++k) where[row[k].first] = static_cast<int>(k);
        for (const auto& [q, v] : pivot_row) {
          if (q == p) continue;
          const int at = where[q];
          if (at >= 0) {
            row[at].second -= l * v;
          } else {
            where[q] = static_cast<int>(row.size());
            row.emplace_back(q, -l * v);
            cols[q].push_back(i);
            ++col_count[q];
          }
        }
        for (const auto& e : row) where[e.first] = -1;
        const auto tiny = [](const auto& e) { return std::abs(e.second) < kDropTol; };
        for (const auto& e : row) {
          if (tiny(e)) --col_count[e.first];
        }
        row.erase(std::remove_if(row.begin(), row.end(), tiny), row.end());
      }
      finish_pivot(r, p, best_v);
      alive_cols.erase(std::find(alive_cols.begin(), alive_cols.end(), p));
    }
  }

  // Pair unpivoted positions with unpivoted rows.
  if (static_cast<int>(pivot_row_.size()) < m) {
    std::vector<char> row_used(static_cast<std::size_t>(m), 0);
    std::vector<char> col_used(static_cast<std::size_t>(m), 0);
    for (int r : pivot_row_) row_used[r] = 1;
    for (int p : pivot_col_) col_used[p] = 1;
    std::vector<int> free_rows;
    for (int i = 0; i < m; ++i) {
      if (!row_used[i]) free_rows.push_back(i);
    }
    std::size_t k = 0;
    for (int p = 0; p < m; ++p) {
      if (!col_used[p]) deficient_.emplace_back(p, free_rows[k++]);
    }
    return false;
  }

  std::vector<int> pivot_of(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) pivot_of[pivot_col_[k]] = k;
  u_row_start_ = std::move(u_start);
  u_row_index_.resize(u_pos.size());
  u_row_value_ = std::move(u_val);
  for (std::size_t e = 0; e < u_pos.size(); ++e) u_row_index_[e] = pivot_of[u_pos[e]];

  u_col_start_.assign(static_cast<std::size_t>(m) + 1, 0);
  for (int k : u_row_index_) ++u_col_start_[k + 1];
  for (int k = 0; k < m; ++k) u_col_start_[k + 1] += u_col_start_[k];
  u_col_index_.resize(u_row_index_.size());
  u_col_value_.resize(u_row_index_.size());
  std::vector<int> fill(u_col_start_.begin(), u_col_start_.end() - 1);
  for (int k = 0; k < m; ++k) {
    for (int e = u_row_start_[k]; e < u_row_start_[k + 1]; ++e) {
      const int pos = fill[u_row_index_[e]]++;
      u_col_index_[pos] = k;
      u_col_value_[pos] = u_row_value_[e];
    }
  }
  return true;
}

void BasisFactor::ftran(std::vector<double>& rhs) const {
  const int m = m_;
  for (int k = 0; k < m; ++k) {
    const double v = rhs[pivot_row_[k]];
    if (v == 0.0) continue;
    for (int e = l_start_[k]; e < l_start_[k + 1]; ++e) rhs[l_index_[e]] -= l_value_[e] * v;
  }
  std::vector<double>& z = work_;
  for (int k = 0; k < m; ++k) z[k] = rhs[pivot_row_[k]];
  for (int k = m - 1; k >= 0; --k) {
    if (z[k] == 0.0) continue;
    const double v = z[k] / diag_[k];
    z[k] = v;
    for (int e = u_col_start_[k]; e < u_col_start_[k + 1]; ++e) {
      z[u_col_index_[e]] -= u_col_value_[e] * v;
    }
  }
  for (int k = 0; k < m; ++k) rhs[pivot_col_[k]] = z[k];

  for (const Eta& eta : etas_) {
    double& pivot = rhs[eta.pivot];
    if (pivot == 0.0) continue;
    pivot /= eta.pivot_value;
    const double p = pivot;
    for (std::size_t k = eta.begin; k < eta.end; ++k) rhs[eta_index_[k]] -= eta_value_[k] * p;
  }
}

void BasisFactor::btran(std::vector<double>& rhs) const {
  for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
    double sum = rhs[it->pivot];
    for (std::size_t k = it->begin; k < it->end; ++k) sum -= eta_value_[k] * rhs[eta_index_[k]];
    rhs[it->pivot] = sum / it->pivot_value;
  }

  const int m = m_;
  std::vector<double>& z = work_;
  for (int k = 0; k < m; ++k) z[k] = rhs[pivot_col_[k]];
  for (int k = 0; k < m; ++k) {
    if (z[k] == 0.0) continue;
    const double v = z[k] / diag_[k];
    z[k] = v;
    for (int e = u_row_start_[k]; e < u_row_start_[k + 1]; ++e) {
      z[u_row_index_[e]] -= u_row_value_[e] * v;
    }
  }
  for (int k = 0; k < m; ++k) rhs[pivot_row_[k]] = z[k];
  for (int k = m - 1; k >= 0; --k) {
    double sum = 0.0;
    for (int e = l_start_[k]; e < l_start_[k + 1]; ++e) sum += l_value_[e] * rhs[l_index_[e]];
    rhs[pivot_row_[k]] -= sum;
  }
}

void BasisFactor::update(int position, const std::vector<double>& alpha) {
  Eta eta;
  eta.pivot = position;
  eta.pivot_value = alpha[position];
  eta.begin = eta_index_.size();
  for (int i = 0; i < static_cast<int>(alpha.size()); ++i) {
    if (i == position || std::abs(alpha[i]) <= 1e-13) continue;
    eta_index_.push_back(i);
    eta_value_.push_back(alpha[i]);
  }
  eta.end = eta_index_.size();
  etas_.push_back(eta);
}

}  // namespace gep::detail
