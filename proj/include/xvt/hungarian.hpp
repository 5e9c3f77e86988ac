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

#pragma once

#include <utility>
#include <vector>

#include "xvt/matrix.hpp"

namespace xvt {

/// Sentinel for gated (infeasible) cost entries. Real entries must stay far
/// below it so that minimizing total cost also maximizes the number of
/// feasible pairs.
inline constexpr double kGated = 1e6;

struct Assignment {
  std::vector<std::pair<int, int>> pairs;  // (row, col), feasible only
  std::vector<int> unmatched_rows;
  std::vector<int> unmatched_cols;
};

/// Minimum-cost assignment on a dense rectangular matrix. The matrix is
/// padded to square with `gated` internally; padded pairs and pairs whose
/// cost reaches `gated` are reported unmatched. Rows are processed in
/// ascending index order, which fixes tie-breaking.
Assignment hungarian_min(const Matrix& cost, double gated = kGated);

/// Maximum-score assignment; entries <= 0 are never matched.
Assignment hungarian_max(const Matrix& score);

}  // namespace xvt
