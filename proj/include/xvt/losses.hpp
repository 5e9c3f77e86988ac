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

#include <cstdint>
#include <functional>
#include <vector>

#include "xvt/matrix.hpp"

namespace xvt {

/// Trainable affine classifier standing in for a Re-ID head.
struct LinearHead {
  Matrix W;  // n_classes x dim
  std::vector<double> b;

  int n_classes() const { return W.rows; }
  int dim() const { return W.cols; }

  static LinearHead zeros(int n_classes, int dim);
  static LinearHead random(int n_classes, int dim, double scale,
                           std::uint64_t seed);
};

struct Sample {
  std::vector<double> x;
  int gid = 0;   // global identity label
  int lid = 0;   // local identity label, view-scoped
  int view = 0;
};

/// Learnable log-variance balance terms of the total loss.
struct UncertaintyWeights {
  double w1 = -1.85;
  double w2 = -1.05;
};

/// Loss value with analytic gradients. dx[i] is the gradient w.r.t. the
/// feature of sample i.
struct CeResult {
  double loss = 0.0;
  Matrix dW;
  std::vector<double> db;
  std::vector<std::vector<double>> dx;
};

/// Mean softmax cross-entropy with global-ID targets.
/// Throws when a gid lies outside [0, n_classes) or the batch is empty.
CeResult cross_view_ce(const LinearHead& head, const std::vector<Sample>& batch);

/// Mean softmax cross-entropy with local-ID targets over the full (shared)
/// class space. The un-masked single-view loss.
CeResult single_view_plain_ce(const LinearHead& head,
                              const std::vector<Sample>& batch);

/// Conflict-free single-view cross-entropy: sample i competes only against
/// classes whose view equals the view of its true class. Classes from other
/// views are excluded from the softmax entirely, so no gradient reaches
/// their rows. lid_to_view[c] gives the view owning class c and must cover
/// every class.
CeResult conflict_free_ce(const LinearHead& head,
                          const std::vector<Sample>& batch,
                          const std::vector<int>& lid_to_view);

struct TotalLossResult {
  double loss = 0.0;
  double dw1 = 0.0;
  double dw2 = 0.0;
};

/// (exp(-w1)*l_det + exp(-w2)*(l_single + l_cross) + w1 + w2) / 2,
/// with gradients w.r.t. the balance terms.
TotalLossResult total_loss(double l_det, double l_single, double l_cross,
                           const UncertaintyWeights& w);

/// Max over coordinates of |analytic - numeric| / max(1, |numeric|), with
/// numeric gradients from central differences. epsilon must lie in (0, 1e-2].
double finite_diff_check(
    const std::function<double(const std::vector<double>&)>& loss_fn,
    const std::vector<double>& params, const std::vector<double>& analytic_grad,
    double epsilon);

/// Flat parameter packing for gradient checks: [W row-major | b].
std::vector<double> pack_head(const LinearHead& head);
LinearHead unpack_head(const std::vector<double>& params, int n_classes, int dim);

}  // namespace xvt
