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

#include <cstddef>
#include <vector>

namespace xvt {

/// Appearance feature vector. Tracker state keeps these L2-normalized so a
/// plain dot product is the cosine similarity.
struct EmbeddingVec {
  std::vector<double> values;

  EmbeddingVec() = default;
  explicit EmbeddingVec(std::vector<double> v) : values(std::move(v)) {}

  std::size_t dim() const { return values.size(); }
  bool empty() const { return values.empty(); }
  const double* data() const { return values.data(); }
  double* data() { return values.data(); }
};

double l2_norm(const EmbeddingVec& v);

/// Unit-length copy. Throws std::invalid_argument on zero norm.
EmbeddingVec normalized(const EmbeddingVec& v);

/// 1 - cos(a, b), in [0, 2]. Throws on dimension mismatch or zero norm.
double cosine_distance(const EmbeddingVec& a, const EmbeddingVec& b);

/// alpha*old + (1-alpha)*next, renormalized to unit length.
/// alpha must lie in [0, 1]; dimensions must agree.
EmbeddingVec ema_update(const EmbeddingVec& old_v, const EmbeddingVec& next_v,
                        double alpha);

}  // namespace xvt
