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

#include "xvt/types.hpp"

namespace xvt::sim {

/// Ground-plane rectangle in meters.
struct Rect {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  bool contains(double x, double y) const {
    return x >= x0 && x <= x1 && y >= y0 && y <= y1;
  }
};

/// A camera sees an axis-aligned sub-rectangle of the arena and maps it to
/// pixels with a fixed scale. Box size shrinks with distance from the
/// reference edge, which stands in for camera depth.
struct CameraSpec {
  enum class Edge { Bottom, Top, Left, Right };
  Rect visible;
  double pixel_scale = 20.0;  // px per meter
  Edge reference_edge = Edge::Bottom;
};

struct SceneConfig {
  int n_agents = 6;
  int n_views = 3;
  int n_frames = 200;
  Rect arena{0.0, 0.0, 40.0, 30.0};
  double speed_min = 0.1;  // m per frame
  double speed_max = 0.3;
  std::vector<CameraSpec> cameras;  // when empty, defaults derived per view
  double miss_prob = 0.0;
  double fp_rate = 0.0;  // expected false positives per view per frame
  double box_jitter_sigma = 0.0;  // px
  double sigma_cross = 0.0;
  double sigma_single = 0.0;
  double view_component_weight = 0.0;  // weight of the view-specific part
  int embedding_dim = 512;
  bool hard_negatives = false;  // false positives sampled near real identities
  std::uint64_t seed = 1;

  CameraSpec camera(int view) const;
  void validate() const;  // throws std::invalid_argument
};

/// Per (view, frame) detection lists; dets[view][frame].
using DetectionGrid = std::vector<std::vector<std::vector<Detection>>>;

struct SceneTruth {
  SceneConfig config;
  // trajectories[frame][agent] = ground-plane position
  std::vector<std::vector<std::pair<double, double>>> trajectories;
  DetectionGrid gt;  // gt_global_id set, confidence 1, no noise
};

struct Scene {
  SceneTruth truth;
  DetectionGrid detections;  // dropouts, false positives, jitter applied
};

/// Random-waypoint trajectories projected into every view, plus the degraded
/// detection stream. Embeddings are left empty; sample_embeddings fills them.
/// Identical config (including seed) reproduces bit-identical output.
Scene generate_scene(const SceneConfig& config);

/// Attaches feature vectors to a detection stream. True detections draw from
/// a per-identity unit vector u_g (cross-view) blended with a per-(identity,
/// view) vector w_gv (single-view); false positives draw fresh random
/// directions, or near-identity ones in hard-negatives mode.
void sample_embeddings(const SceneTruth& truth, DetectionGrid& detections);

/// generate_scene + sample_embeddings.
Scene simulate_scene(const SceneConfig& config);

/// The embedding model's fixed directions, also used by the training demo:
/// one unit vector per identity and one per (identity, view) pair.
std::vector<double> identity_direction(std::uint64_t seed, int dim, int gid);
std::vector<double> view_direction(std::uint64_t seed, int dim, int gid, int view);

}  // namespace xvt::sim
