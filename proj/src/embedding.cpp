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

#include "xvt/embedding.hpp"

#include <cmath>
#include <stdexcept>

#include "xvt/kernels.hpp"

namespace xvt {

double l2_norm(const EmbeddingVec& v) {
  return std::sqrt(kernels::dot(v.data(), v.data(), v.dim()));
}

EmbeddingVec normalized(const EmbeddingVec& v) {
  const double norm = l2_norm(v);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument("normalized: zero or non-finite norm");
  }
  EmbeddingVec out = v;
  kernels::scale(out.data(), 1.0 / norm, out.dim());
  return out;
}

double cosine_distance(const EmbeddingVec& a, const EmbeddingVec& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("cosine_distance: dimension mismatch");
  }
  const double na = l2_norm(a);
  const double nb = l2_norm(b);
  if (!(na > 0.0) || !(nb > 0.0)) {
    throw std::invalid_argument("cosine_distance: zero-norm input");
  }
  const double sim = kernels::dot(a.data(), b.data(), a.dim()) / (na * nb);
  return 1.0 - sim;
}

EmbeddingVec ema_update(const EmbeddingVec& old_v, const EmbeddingVec& next_v,
                        double alpha) {
  if (old_v.dim() != next_v.dim()) {
    throw std::invalid_argument("ema_update: dimension mismatch");
  }
  if (alpha < 0.0 || alpha > 1.0) {
    throw std::invalid_argument("ema_update: alpha outside [0, 1]");
  }
  EmbeddingVec out;
  out.values.resize(old_v.dim());
  kernels::axpby(alpha, old_v.data(), 1.0 - alpha, next_v.data(), out.data(),
                 out.dim());
  return normalized(out);
}

}  // namespace xvt
