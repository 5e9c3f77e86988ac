/*
 * Copyright 2026 the xvtrack authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "xvt/hungarian.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace xvt {

namespace {

// Potentials / shortest-augmenting-path formulation on a square matrix.
// Returns col_to_row of size n (every column assigned).
std::vector<int> solve_square(const std::vector<double>& a, int n) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);  // 1-based; p[j] = row on col j
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = -1;
      double delta = kInf;
      const double* row = a.data() + static_cast<std::size_t>(i0 - 1) * n;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = row[j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> col_to_row(n);
  for (int j = 1; j <= n; ++j) col_to_row[j - 1] = p[j] - 1;
  return col_to_row;
}

}  // namespace

Assignment hungarian_min(const Matrix& cost, double gated) {
  Assignment out;
  const int rows = cost.rows, cols = cost.cols;
  if (rows == 0 || cols == 0) {
    for (int i = 0; i < rows; ++i) out.unmatched_rows.push_back(i);
    for (int j = 0; j < cols; ++j) out.unmatched_cols.push_back(j);
    return out;
  }
  for (double x : cost.data) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument("hungarian_min: non-finite cost entry");
    }
  }

  const int n = rows > cols ? rows : cols;
  std::vector<double> padded(static_cast<std::size_t>(n) * n, gated);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      padded[static_cast<std::size_t>(i) * n + j] = cost.at(i, j);
    }
  }

  const std::vector<int> col_to_row = solve_square(padded, n);
  std::vector<char> row_matched(rows, 0), col_matched(cols, 0);
  for (int j = 0; j < cols; ++j) {
    const int i = col_to_row[j];
    if (i < rows && cost.at(i, j) < gated) {
      out.pairs.emplace_back(i, j);
      row_matched[i] = 1;
      col_matched[j] = 1;
    }
  }
  // Report pairs sorted by row index.
  std::vector<std::pair<int, int>> sorted(rows, {-1, -1});
  for (const auto& pr : out.pairs) sorted[pr.first] = pr;
  out.pairs.clear();
  for (int i = 0; i < rows; ++i) {
    if (sorted[i].first >= 0) out.pairs.push_back(sorted[i]);
    else out.unmatched_rows.push_back(i);
  }
  for (int j = 0; j < cols; ++j) {
    if (!col_matched[j]) out.unmatched_cols.push_back(j);
  }
  return out;
}

Assignment hungarian_max(const Matrix& score) {
  Matrix cost(score.rows, score.cols);
  for (int i = 0; i < score.rows; ++i) {
    for (int j = 0; j < score.cols; ++j) {
      const double s = score.at(i, j);
      cost.at(i, j) = s > 0.0 ? -s : kGated;
    }
  }
  return hungarian_min(cost);
}

}  // namespace xvt
