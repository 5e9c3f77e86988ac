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

#include "xvt/toy_train.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "xvt/embedding.hpp"
#include "xvt/kernels.hpp"
#include "xvt/rng.hpp"
#include "xvt/sim.hpp"

namespace xvt {

namespace {

std::vector<Sample> draw_samples(int n_gids, int n_views, int per_pair, int dim,
                                 double lambda, double sigma, Rng& rng,
                                 const std::vector<std::vector<double>>& u,
                                 const std::vector<std::vector<std::vector<double>>>& w) {
  std::vector<Sample> out;
  out.reserve(static_cast<std::size_t>(n_gids) * n_views * per_pair);
  for (int g = 0; g < n_gids; ++g) {
    for (int v = 0; v < n_views; ++v) {
      for (int k = 0; k < per_pair; ++k) {
        Sample s;
        s.gid = g;
        s.lid = v * n_gids + g;
        s.view = v;
        s.x.resize(static_cast<std::size_t>(dim));
        double norm_sq = 0.0;
        for (int i = 0; i < dim; ++i) {
          double val = (1.0 - lambda) * u[g][i] + lambda * w[g][v][i] +
                       sigma * rng.normal();
          s.x[static_cast<std::size_t>(i)] = val;
          norm_sq += val * val;
        }
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (auto& val : s.x) val *= inv;
        out.push_back(std::move(s));
      }
    }
  }
  return out;
}

// e_i = Enc.W x_i + Enc.b for the whole batch.
std::vector<Sample> encode(const LinearHead& enc, const std::vector<Sample>& in) {
  std::vector<Sample> out = in;
  for (std::size_t i = 0; i < in.size(); ++i) {
    out[i].x.assign(static_cast<std::size_t>(enc.n_classes()), 0.0);
    for (int r = 0; r < enc.n_classes(); ++r) {
      out[i].x[static_cast<std::size_t>(r)] =
          kernels::dot(enc.W.row(r), in[i].x.data(), in[i].x.size()) +
          enc.b[static_cast<std::size_t>(r)];
    }
  }
  return out;
}

// Chain rule into the encoder: dE.W[r] += sum_i de_i[r] * x_i, dE.b[r] += de_i[r].
void backprop_encoder(const std::vector<Sample>& raw,
                      const std::vector<std::vector<double>>& de,
                      Matrix& dW, std::vector<double>& db) {
  for (std::size_t i = 0; i < raw.size(); ++i) {
    for (int r = 0; r < dW.rows; ++r) {
      const double g = de[i][static_cast<std::size_t>(r)];
      if (g == 0.0) continue;
      kernels::axpy(g, raw[i].x.data(), dW.row(r), raw[i].x.size());
      db[static_cast<std::size_t>(r)] += g;
    }
  }
}

void apply_update(LinearHead& head, const Matrix& dW,
                  const std::vector<double>& db, double lr) {
  kernels::axpy(-lr, dW.data.data(), head.W.data.data(), head.W.data.size());
  kernels::axpy(-lr, db.data(), head.b.data(), head.b.size());
}

}  // namespace

ToyBatch make_conflict_batch(int n_gids, int n_views, int samples_per_pair,
                             int dim, double view_component_weight,
                             double sigma, std::uint64_t seed) {
  if (n_gids < 2 || n_views < 2 || samples_per_pair < 1 || dim < 2) {
    throw std::invalid_argument("make_conflict_batch: degenerate shape");
  }
  ToyBatch batch;
  batch.n_gids = n_gids;
  batch.n_views = n_views;
  batch.n_lids = n_gids * n_views;
  batch.feature_dim = dim;
  batch.lid_to_view.resize(static_cast<std::size_t>(batch.n_lids));
  for (int v = 0; v < n_views; ++v) {
    for (int g = 0; g < n_gids; ++g) {
      batch.lid_to_view[static_cast<std::size_t>(v * n_gids + g)] = v;
    }
  }

  std::vector<std::vector<double>> u(static_cast<std::size_t>(n_gids));
  std::vector<std::vector<std::vector<double>>> w(static_cast<std::size_t>(n_gids));
  for (int g = 0; g < n_gids; ++g) {
    u[g] = sim::identity_direction(seed, dim, g);
    w[g].resize(static_cast<std::size_t>(n_views));
    for (int v = 0; v < n_views; ++v) {
      w[g][v] = sim::view_direction(seed, dim, g, v);
    }
  }

  Rng rng_train(mix_seed(seed, 0x70, 1));
  Rng rng_test(mix_seed(seed, 0x70, 2));
  batch.train = draw_samples(n_gids, n_views, samples_per_pair, dim,
                             view_component_weight, sigma, rng_train, u, w);
  batch.heldout = draw_samples(n_gids, n_views, samples_per_pair, dim,
                               view_component_weight, sigma, rng_test, u, w);
  return batch;
}

ToyTrainResult toy_train(const ToyBatch& batch, TrainMode mode, int epochs,
                         double lr, std::uint64_t seed, int embed_dim) {
  if (batch.train.empty()) throw std::invalid_argument("toy_train: empty batch");

  ToyTrainResult res;
  res.encoder_cross = LinearHead::random(embed_dim, batch.feature_dim, 0.1,
                                         mix_seed(seed, 0x71, 1));
  res.encoder_single = mode == TrainMode::Shared
                           ? res.encoder_cross
                           : LinearHead::random(embed_dim, batch.feature_dim, 0.1,
                                                mix_seed(seed, 0x71, 2));
  res.cls_gid = LinearHead::random(batch.n_gids, embed_dim, 0.1,
                                   mix_seed(seed, 0x71, 3));
  res.cls_lid = LinearHead::random(batch.n_lids, embed_dim, 0.1,
                                   mix_seed(seed, 0x71, 4));

  const bool shared = mode == TrainMode::Shared;
  auto lid_loss = [&](const std::vector<Sample>& encoded) {
    if (mode == TrainMode::DecoupledConflictFree) {
      return conflict_free_ce(res.cls_lid, encoded, batch.lid_to_view);
    }
    return single_view_plain_ce(res.cls_lid, encoded);
  };

  auto combined_loss = [&]() {
    const auto ec = encode(res.encoder_cross, batch.train);
    const auto es = shared ? ec : encode(res.encoder_single, batch.train);
    return cross_view_ce(res.cls_gid, ec).loss + lid_loss(es).loss;
  };

  res.loss_trace.push_back(combined_loss());
  for (int epoch = 0; epoch < epochs; ++epoch) {
    const auto ec = encode(res.encoder_cross, batch.train);
    const auto es = shared ? ec : encode(res.encoder_single, batch.train);

    CeResult gc = cross_view_ce(res.cls_gid, ec);
    CeResult gs = lid_loss(es);
    const double loss = gc.loss + gs.loss;
    if (!std::isfinite(loss)) {
      throw std::runtime_error("toy_train: loss diverged at epoch " +
                               std::to_string(epoch));
    }

    Matrix denc_c(embed_dim, batch.feature_dim);
    std::vector<double> denc_c_b(static_cast<std::size_t>(embed_dim), 0.0);
    backprop_encoder(batch.train, gc.dx, denc_c, denc_c_b);
    if (shared) {
      backprop_encoder(batch.train, gs.dx, denc_c, denc_c_b);
      apply_update(res.encoder_cross, denc_c, denc_c_b, lr);
      res.encoder_single = res.encoder_cross;
    } else {
      Matrix denc_s(embed_dim, batch.feature_dim);
      std::vector<double> denc_s_b(static_cast<std::size_t>(embed_dim), 0.0);
      backprop_encoder(batch.train, gs.dx, denc_s, denc_s_b);
      apply_update(res.encoder_cross, denc_c, denc_c_b, lr);
      apply_update(res.encoder_single, denc_s, denc_s_b, lr);
    }
    apply_update(res.cls_gid, gc.dW, gc.db, lr);
    apply_update(res.cls_lid, gs.dW, gs.db, lr);

    res.loss_trace.push_back(combined_loss());
  }
  return res;
}

double matching_accuracy(const ToyTrainResult& result, const ToyBatch& batch) {
  const auto encoded = encode(result.encoder_cross, batch.heldout);
  long long correct = 0, total = 0;
  for (std::size_t i = 0; i < encoded.size(); ++i) {
    const EmbeddingVec ei(encoded[i].x);
    for (int v = 0; v < batch.n_views; ++v) {
      if (v == encoded[i].view) continue;
      double best = std::numeric_limits<double>::infinity();
      int best_gid = -1;
      for (std::size_t j = 0; j < encoded.size(); ++j) {
        if (encoded[j].view != v) continue;
        const double d = cosine_distance(ei, EmbeddingVec(encoded[j].x));
        if (d < best) {
          best = d;
          best_gid = encoded[j].gid;
        }
      }
      if (best_gid >= 0) {
        ++total;
        if (best_gid == encoded[i].gid) ++correct;
      }
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
}

}  // namespace xvt
