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

#include "xvt/losses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "xvt/kernels.hpp"
#include "xvt/rng.hpp"

namespace xvt {

namespace {

// Shared core: restricted-softmax cross-entropy. For sample i the softmax
// runs over class_set(i); the target class is always a member. Gradients
// flow only to member rows.
CeResult restricted_softmax_ce(
    const LinearHead& head, const std::vector<Sample>& batch,
    const std::function<int(const Sample&)>& target_of,
    const std::function<const std::vector<int>&(int target)>& class_set) {
  if (batch.empty()) throw std::invalid_argument("ce: empty batch");
  const int n_classes = head.n_classes();
  const int dim = head.dim();
  const double inv_n = 1.0 / static_cast<double>(batch.size());

  CeResult res;
  res.dW = Matrix(n_classes, dim);
  res.db.assign(static_cast<std::size_t>(n_classes), 0.0);
  res.dx.reserve(batch.size());

  std::vector<double> logits;
  std::vector<double> probs;
  for (const Sample& s : batch) {
    if (static_cast<int>(s.x.size()) != dim) {
      throw std::invalid_argument("ce: feature dimension mismatch");
    }
    const int target = target_of(s);
    if (target < 0 || target >= n_classes) {
      throw std::invalid_argument("ce: label out of range");
    }
    const std::vector<int>& classes = class_set(target);

    logits.resize(classes.size());
    double max_logit = -std::numeric_limits<double>::infinity();
    int target_pos = -1;
    for (std::size_t k = 0; k < classes.size(); ++k) {
      const int c = classes[k];
      logits[k] = kernels::dot(head.W.row(c), s.x.data(),
                               static_cast<std::size_t>(dim)) +
                  head.b[static_cast<std::size_t>(c)];
      if (logits[k] > max_logit) max_logit = logits[k];
      if (c == target) target_pos = static_cast<int>(k);
    }
    if (target_pos < 0) {
      throw std::logic_error("ce: target class missing from its class set");
    }

    probs.resize(classes.size());
    double denom = 0.0;
    for (std::size_t k = 0; k < classes.size(); ++k) {
      probs[k] = std::exp(logits[k] - max_logit);
      denom += probs[k];
    }
    res.loss += -(logits[static_cast<std::size_t>(target_pos)] - max_logit -
                  std::log(denom)) * inv_n;

    std::vector<double> dx(static_cast<std::size_t>(dim), 0.0);
    for (std::size_t k = 0; k < classes.size(); ++k) {
      const int c = classes[k];
      double g = probs[k] / denom;
      if (static_cast<int>(k) == target_pos) g -= 1.0;
      g *= inv_n;
      kernels::axpy(g, s.x.data(), res.dW.row(c), static_cast<std::size_t>(dim));
      res.db[static_cast<std::size_t>(c)] += g;
      kernels::axpy(g, head.W.row(c), dx.data(), static_cast<std::size_t>(dim));
    }
    res.dx.push_back(std::move(dx));
  }
  return res;
}

}  // namespace

LinearHead LinearHead::zeros(int n_classes, int dim) {
  LinearHead h;
  h.W = Matrix(n_classes, dim);
  h.b.assign(static_cast<std::size_t>(n_classes), 0.0);
  return h;
}

LinearHead LinearHead::random(int n_classes, int dim, double scale,
                              std::uint64_t seed) {
  LinearHead h = zeros(n_classes, dim);
  Rng rng(seed);
  for (auto& w : h.W.data) w = scale * rng.normal();
  for (auto& b : h.b) b = scale * rng.normal();
  return h;
}

CeResult cross_view_ce(const LinearHead& head, const std::vector<Sample>& batch) {
  std::vector<int> all(static_cast<std::size_t>(head.n_classes()));
  for (int c = 0; c < head.n_classes(); ++c) all[c] = c;
  return restricted_softmax_ce(
      head, batch, [](const Sample& s) { return s.gid; },
      [&all](int) -> const std::vector<int>& { return all; });
}

CeResult single_view_plain_ce(const LinearHead& head,
                              const std::vector<Sample>& batch) {
  std::vector<int> all(static_cast<std::size_t>(head.n_classes()));
  for (int c = 0; c < head.n_classes(); ++c) all[c] = c;
  return restricted_softmax_ce(
      head, batch, [](const Sample& s) { return s.lid; },
      [&all](int) -> const std::vector<int>& { return all; });
}

CeResult conflict_free_ce(const LinearHead& head,
                          const std::vector<Sample>& batch,
                          const std::vector<int>& lid_to_view) {
  if (static_cast<int>(lid_to_view.size()) < head.n_classes()) {
    throw std::invalid_argument(
        "conflict_free_ce: lid_to_view does not cover all classes");
  }
  // Same-view class lists; the mask depends only on class identity.
  int max_view = -1;
  for (int c = 0; c < head.n_classes(); ++c) {
    if (lid_to_view[c] < 0) {
      throw std::invalid_argument("conflict_free_ce: class with unknown view");
    }
    max_view = std::max(max_view, lid_to_view[c]);
  }
  std::vector<std::vector<int>> by_view(static_cast<std::size_t>(max_view + 1));
  for (int c = 0; c < head.n_classes(); ++c) {
    by_view[static_cast<std::size_t>(lid_to_view[c])].push_back(c);
  }
  return restricted_softmax_ce(
      head, batch, [](const Sample& s) { return s.lid; },
      [&](int target) -> const std::vector<int>& {
        return by_view[static_cast<std::size_t>(lid_to_view[target])];
      });
}

TotalLossResult total_loss(double l_det, double l_single, double l_cross,
                           const UncertaintyWeights& w) {
  if (!std::isfinite(l_det) || !std::isfinite(l_single) ||
      !std::isfinite(l_cross)) {
    throw std::invalid_argument("total_loss: non-finite component loss");
  }
  TotalLossResult res;
  const double e1 = std::exp(-w.w1);
  const double e2 = std::exp(-w.w2);
  res.loss = 0.5 * (e1 * l_det + e2 * (l_single + l_cross) + w.w1 + w.w2);
  res.dw1 = 0.5 * (1.0 - e1 * l_det);
  res.dw2 = 0.5 * (1.0 - e2 * (l_single + l_cross));
  return res;
}

double finite_diff_check(
    const std::function<double(const std::vector<double>&)>& loss_fn,
    const std::vector<double>& params, const std::vector<double>& analytic_grad,
    double epsilon) {
  if (!(epsilon > 0.0) || epsilon > 1e-2) {
    throw std::invalid_argument("finite_diff_check: epsilon outside (0, 1e-2]");
  }
  if (params.size() != analytic_grad.size()) {
    throw std::invalid_argument("finite_diff_check: size mismatch");
  }
  double worst = 0.0;
  std::vector<double> p = params;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double saved = p[i];
    p[i] = saved + epsilon;
    const double up = loss_fn(p);
    p[i] = saved - epsilon;
    const double down = loss_fn(p);
    p[i] = saved;
    const double numeric = (up - down) / (2.0 * epsilon);
    const double err = std::abs(analytic_grad[i] - numeric) /
                       std::max(1.0, std::abs(numeric));
    worst = std::max(worst, err);
  }
  return worst;
}

std::vector<double> pack_head(const LinearHead& head) {
  std::vector<double> out = head.W.data;
  out.insert(out.end(), head.b.begin(), head.b.end());
  return out;
}

LinearHead unpack_head(const std::vector<double>& params, int n_classes,
                       int dim) {
  const std::size_t w_size = static_cast<std::size_t>(n_classes) * dim;
  if (params.size() != w_size + static_cast<std::size_t>(n_classes)) {
    throw std::invalid_argument("unpack_head: size mismatch");
  }
  LinearHead h = LinearHead::zeros(n_classes, dim);
  std::copy(params.begin(), params.begin() + w_size, h.W.data.begin());
  std::copy(params.begin() + w_size, params.end(), h.b.begin());
  return h;
}

}  // namespace xvt
