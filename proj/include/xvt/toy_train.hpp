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
#include <vector>

#include "xvt/losses.hpp"

namespace xvt {

/// The embedding-head variants under comparison. The trainable stand-in for
/// a Re-ID head is a linear encoder; identity classifiers sit on top of its
/// output. Shared uses one encoder for both branches (the conflicting case);
/// the decoupled variants use one encoder per branch and differ in the
/// single-view loss.
enum class TrainMode { Shared, DecoupledPlain, DecoupledConflictFree };

/// Synthetic labeled features with genuinely conflicting labels: every
/// (gid, view) pair owns one local-ID class in a class space shared across
/// views.
struct ToyBatch {
  std::vector<Sample> train;
  std::vector<Sample> heldout;
  int n_gids = 0;
  int n_views = 0;
  int n_lids = 0;
  int feature_dim = 0;
  std::vector<int> lid_to_view;
};

/// Features follow the scene simulator's embedding model:
/// normalize((1-lambda)*u_g + lambda*w_gv + sigma*noise).
ToyBatch make_conflict_batch(int n_gids, int n_views, int samples_per_pair,
                             int dim, double view_component_weight,
                             double sigma, std::uint64_t seed);

struct ToyTrainResult {
  LinearHead encoder_cross;   // cross-view branch encoder (Shared: the one encoder)
  LinearHead encoder_single;  // single-view branch encoder
  LinearHead cls_gid;
  LinearHead cls_lid;
  // loss_trace[k] = combined (cross + single) loss after k updates;
  // entry 0 is the initialization loss.
  std::vector<double> loss_trace;
};

/// Full-batch gradient descent with a fixed learning rate. Throws
/// std::runtime_error when the loss turns non-finite.
ToyTrainResult toy_train(const ToyBatch& batch, TrainMode mode, int epochs,
                         double lr, std::uint64_t seed, int embed_dim = 32);

/// Cross-view nearest-neighbor retrieval accuracy on the held-out samples:
/// features pass through the cross branch encoder, and for every held-out
/// sample the nearest held-out sample of every other view (by cosine) must
/// share its gid.
double matching_accuracy(const ToyTrainResult& result, const ToyBatch& batch);

}  // namespace xvt
