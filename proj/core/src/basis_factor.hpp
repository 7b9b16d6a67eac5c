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

#include <span>
#include <utility>
#include <vector>

namespace gep::detail {

// Compressed sparse column matrix.
struct CscMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<int> start;  // size cols + 1
  std::vector<int> index;
  std::vector<double> value;
};

// Compressed sparse row matrix.
struct CsrMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<int> start;  // size rows + 1
  std::vector<int> index;
  std::vector<double> value;
};

CsrMatrix to_rows(const CscMatrix& a);

// Sparse LU factors of a simplex basis drawn from the columns of [A | -I],
// plus a product-form eta file for the column replacements since the last
// refactorisation. Singletons are pivoted first; the remaining kernel uses
// Markowitz pivoting with a relative threshold.
class BasisFactor {
 public:
  explicit BasisFactor(const CscMatrix& structural);

  // `basic[i]` is the column (structural j < n, logical n + r) at position i.
  // Returns false if the basis is numerically singular; deficient() then
  // pairs every position left without a pivot with an unused row.
  bool factorize(std::span<const int> basic);
  const std::vector<std::pair<int, int>>& deficient() const { return deficient_; }

  // rhs <- B^{-1} rhs
  void ftran(std::vector<double>& rhs) const;
  // rhs <- B^{-T} rhs
  void btran(std::vector<double>& rhs) const;

  // Replaces the column at `position` by the column whose FTRAN image is
  // `alpha` (alpha = B^{-1} a_q).
  void update(int position, const std::vector<double>& alpha);

  int updates() const { return static_cast<int>(etas_.size()); }
  std::size_t eta_nonzeros() const { return eta_index_.size(); }
  std::size_t factor_nonzeros() const { return l_index_.size() + u_row_index_.size(); }

 private:
  struct Eta {
    int pivot = 0;
    double pivot_value = 1.0;
    std::size_t begin = 0;
    std::size_t end = 0;
  };

  const CscMatrix* a_;
  int m_ = 0;

  // Pivot k eliminates row pivot_row_[k] against basis position pivot_col_[k].
  std::vector<int> pivot_row_;
  std::vector<int> pivot_col_;
  std::vector<double> diag_;
  // Row multipliers of pivot k: l_index_/l_value_ in [l_start_[k], l_start_[k+1]).
  std::vector<int> l_start_;
  std::vector<int> l_index_;
  std::vector<double> l_value_;
  // Off-diagonal U entries of pivot k's row, keyed by pivot number of the
  // column, in [u_row_start_[k], u_row_start_[k+1]).
  std::vector<int> u_row_start_;
  std::vector<int> u_row_index_;
  std::vector<double> u_row_value_;
  // The same entries grouped by column pivot number.
  std::vector<int> u_col_start_;
  std::vector<int> u_col_index_;
  std::vector<double> u_col_value_;

  std::vector<std::pair<int, int>> deficient_;

  std::vector<Eta> etas_;
  std::vector<int> eta_index_;
  std::vector<double> eta_value_;
  mutable std::vector<double> work_;
};

}  // namespace gep::detail
