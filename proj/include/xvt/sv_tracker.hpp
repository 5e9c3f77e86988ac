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

#include <vector>

#include "xvt/hungarian.hpp"
#include "xvt/types.hpp"

namespace xvt {

struct TrackerParams {
  double delta_d = 0.5;   // detection confidence threshold
  double delta_s = 0.3;   // single-view cosine-distance gate
  double delta_c = 0.5;   // cross-view matching threshold
  double epsilon = 0.5;   // adaptive temperature parameter
  double gamma = 0.5;     // adaptive temperature parameter
  double ema_alpha = 0.9;
  int max_age = 30;
  int min_hits = 2;
  bool iou_fallback = true;  // second pass matching leftovers by IoU
  double iou_fallback_threshold = 0.3;
  // Output shaping. backfill replays a track's pre-confirmation boxes once it
  // confirms; coast keeps emitting the last box while a confirmed track is
  // briefly unmatched. Both keep the output stream gap-free under detector
  // misses without emitting unconfirmed tracks.
  bool backfill = true;
  bool coast = true;
  int coast_frames = 30;
  bool symmetrize_cv = false;  // min(M_ij, M_ji^T) before cross-view matching
};

struct SvOutputRow {
  int frame = 0;
  int local_id = 0;
  BBox box;
  double confidence = 1.0;
  bool coasted = false;
};

/// Appearance cost: entry = cosine distance between the track's smoothed
/// single-view embedding and the detection's embedding.
Matrix build_cost_matrix(const std::vector<const Track*>& tracks,
                         const std::vector<const Detection*>& dets);

/// Entries above delta_s become the gated sentinel.
void gate_costs(Matrix& cost, double delta_s);

/// Frame-to-frame association and lifecycle for one view.
class SingleViewTracker {
 public:
  SingleViewTracker(int view, const TrackerParams& params)
      : view_(view), params_(params) {}

  /// Processes one frame; frames must arrive in strictly increasing order.
  /// Returns the output rows emitted at this step (current-frame rows plus
  /// any backfilled earlier rows).
  std::vector<SvOutputRow> step(int frame, const std::vector<Detection>& dets);

  const std::vector<Track>& tracks() const { return tracks_; }
  std::vector<Track>& tracks() { return tracks_; }
  int view() const { return view_; }
  const TrackerParams& params() const { return params_; }

 private:
  int view_ = 0;
  TrackerParams params_;
  int next_local_id_ = 0;
  int last_frame_ = -1;
  std::vector<Track> tracks_;
};

}  // namespace xvt
