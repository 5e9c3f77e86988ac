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

#include "xvt/sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "xvt/rng.hpp"

namespace xvt::sim {

namespace {

// Sub-stream tags for seed derivation.
enum : std::uint64_t {
  kStreamMotion = 1,
  kStreamDegrade = 2,
  kStreamIdentity = 3,
  kStreamViewComponent = 4,
  kStreamEmbNoise = 5,
};

constexpr double kBaseBoxHeightMeters = 2.0;
constexpr double kBoxAspect = 0.4;
constexpr double kMinBoxPx = 1.0;

double edge_distance(const CameraSpec& cam, double x, double y) {
  switch (cam.reference_edge) {
    case CameraSpec::Edge::Bottom: return y - cam.visible.y0;
    case CameraSpec::Edge::Top: return cam.visible.y1 - y;
    case CameraSpec::Edge::Left: return x - cam.visible.x0;
    case CameraSpec::Edge::Right: return cam.visible.x1 - x;
  }
  return 0.0;
}

BBox project_box(const CameraSpec& cam, double x, double y) {
  const double px = (x - cam.visible.x0) * cam.pixel_scale;
  const double py = (y - cam.visible.y0) * cam.pixel_scale;
  const double dist = edge_distance(cam, x, y);
  const double h =
      std::max(kMinBoxPx, kBaseBoxHeightMeters * cam.pixel_scale / (1.0 + dist));
  const double w = std::max(kMinBoxPx, kBoxAspect * h);
  // Foot point at the projected ground position (bottom-center of the box).
  return BBox{px - 0.5 * w, py - h, w, h};
}

EmbeddingVec perturbed_unit(const std::vector<double>& base, double sigma,
                            Rng& rng) {
  EmbeddingVec v(base);
  if (sigma > 0.0) {
    for (auto& x : v.values) x += sigma * rng.normal();
  }
  return normalized(v);
}

}  // namespace

std::vector<double> identity_direction(std::uint64_t seed, int dim, int gid) {
  Rng rng(mix_seed(seed, kStreamIdentity, static_cast<std::uint64_t>(gid)));
  return rng.unit_vector(static_cast<std::size_t>(dim));
}

std::vector<double> view_direction(std::uint64_t seed, int dim, int gid,
                                   int view) {
  Rng rng(mix_seed(seed, kStreamViewComponent, static_cast<std::uint64_t>(gid),
                   static_cast<std::uint64_t>(view)));
  return rng.unit_vector(static_cast<std::size_t>(dim));
}

CameraSpec SceneConfig::camera(int view) const {
  if (view >= 0 && view < static_cast<int>(cameras.size())) {
    return cameras[static_cast<std::size_t>(view)];
  }
  // Default: every view covers the whole arena; views differ in scale and
  // reference edge so boxes genuinely disagree across views.
  CameraSpec cam;
  cam.visible = arena;
  cam.pixel_scale = 18.0 + 3.0 * view;
  constexpr CameraSpec::Edge kEdges[] = {
      CameraSpec::Edge::Bottom, CameraSpec::Edge::Left, CameraSpec::Edge::Top,
      CameraSpec::Edge::Right};
  cam.reference_edge = kEdges[view % 4];
  return cam;
}

void SceneConfig::validate() const {
  if (n_agents < 1) throw std::invalid_argument("scene: n_agents must be >= 1");
  if (n_views < 2) throw std::invalid_argument("scene: n_views must be >= 2");
  if (n_frames < 1) throw std::invalid_argument("scene: n_frames must be >= 1");
  if (!(arena.width() > 0.0) || !(arena.height() > 0.0)) {
    throw std::invalid_argument("scene: arena must have positive extent");
  }
  if (speed_min < 0.0 || speed_max < speed_min) {
    throw std::invalid_argument("scene: invalid speed range");
  }
  if (miss_prob < 0.0 || miss_prob >= 1.0) {
    throw std::invalid_argument("scene: miss_prob must lie in [0, 1)");
  }
  if (fp_rate < 0.0 || box_jitter_sigma < 0.0 || sigma_cross < 0.0 ||
      sigma_single < 0.0) {
    throw std::invalid_argument("scene: noise parameters must be non-negative");
  }
  if (view_component_weight < 0.0 || view_component_weight > 1.0) {
    throw std::invalid_argument("scene: view_component_weight outside [0, 1]");
  }
  if (embedding_dim < 1) throw std::invalid_argument("scene: embedding_dim < 1");
  for (int v = 0; v < n_views; ++v) {
    const Rect r = camera(v).visible;
    const bool overlaps = r.x0 < arena.x1 && r.x1 > arena.x0 &&
                          r.y0 < arena.y1 && r.y1 > arena.y0;
    if (!(r.width() > 0.0) || !(r.height() > 0.0) || !overlaps) {
      throw std::invalid_argument("scene: camera rectangle must overlap arena");
    }
  }
}

Scene generate_scene(const SceneConfig& config) {
  config.validate();
  Scene scene;
  scene.truth.config = config;

  // Random-waypoint motion: head to a uniform target at a sampled speed,
  // re-pick on arrival.
  struct AgentState {
    double x, y, tx, ty, speed;
  };
  Rng motion(mix_seed(config.seed, kStreamMotion));
  std::vector<AgentState> agents(static_cast<std::size_t>(config.n_agents));
  for (auto& a : agents) {
    a.x = motion.uniform(config.arena.x0, config.arena.x1);
    a.y = motion.uniform(config.arena.y0, config.arena.y1);
    a.tx = motion.uniform(config.arena.x0, config.arena.x1);
    a.ty = motion.uniform(config.arena.y0, config.arena.y1);
    a.speed = motion.uniform(config.speed_min, config.speed_max);
  }

  auto& traj = scene.truth.trajectories;
  traj.resize(static_cast<std::size_t>(config.n_frames));
  for (int f = 0; f < config.n_frames; ++f) {
    auto& positions = traj[static_cast<std::size_t>(f)];
    positions.reserve(agents.size());
    for (auto& a : agents) {
      positions.emplace_back(a.x, a.y);
      const double dx = a.tx - a.x, dy = a.ty - a.y;
      const double dist = std::hypot(dx, dy);
      if (dist <= a.speed) {
        a.x = a.tx;
        a.y = a.ty;
        a.tx = motion.uniform(config.arena.x0, config.arena.x1);
        a.ty = motion.uniform(config.arena.y0, config.arena.y1);
        a.speed = motion.uniform(config.speed_min, config.speed_max);
      } else {
        a.x += a.speed * dx / dist;
        a.y += a.speed * dy / dist;
      }
    }
  }

  scene.truth.gt.assign(static_cast<std::size_t>(config.n_views), {});
  scene.detections.assign(static_cast<std::size_t>(config.n_views), {});
  for (int v = 0; v < config.n_views; ++v) {
    scene.truth.gt[v].resize(static_cast<std::size_t>(config.n_frames));
    scene.detections[v].resize(static_cast<std::size_t>(config.n_frames));
  }

  for (int v = 0; v < config.n_views; ++v) {
    const CameraSpec cam = config.camera(v);
    for (int f = 0; f < config.n_frames; ++f) {
      auto& gt_list = scene.truth.gt[v][f];
      for (int g = 0; g < config.n_agents; ++g) {
        const auto [x, y] = traj[f][static_cast<std::size_t>(g)];
        if (!cam.visible.contains(x, y)) continue;
        Detection d;
        d.view = v;
        d.frame = f;
        d.box = project_box(cam, x, y);
        d.confidence = 1.0;
        d.gt_global_id = g;
        gt_list.push_back(std::move(d));
      }

      Rng noise(mix_seed(config.seed, kStreamDegrade,
                         static_cast<std::uint64_t>(v),
                         static_cast<std::uint64_t>(f)));
      auto& det_list = scene.detections[v][f];
      for (const Detection& gt_det : gt_list) {
        if (config.miss_prob > 0.0 && noise.uniform() < config.miss_prob) {
          continue;
        }
        Detection d = gt_det;
        d.confidence = noise.uniform(0.7, 1.0);
        if (config.box_jitter_sigma > 0.0) {
          const double s = config.box_jitter_sigma;
          d.box.left += s * noise.normal();
          d.box.top += s * noise.normal();
          d.box.width = std::max(kMinBoxPx, d.box.width + s * noise.normal());
          d.box.height = std::max(kMinBoxPx, d.box.height + s * noise.normal());
        }
        det_list.push_back(std::move(d));
      }
      const int n_fp = noise.poisson(config.fp_rate);
      for (int k = 0; k < n_fp; ++k) {
        const double x = noise.uniform(cam.visible.x0, cam.visible.x1);
        const double y = noise.uniform(cam.visible.y0, cam.visible.y1);
        Detection d;
        d.view = v;
        d.frame = f;
        d.box = project_box(cam, x, y);
        const double size_jitter = noise.uniform(0.5, 1.5);
        d.box.width = std::max(kMinBoxPx, d.box.width * size_jitter);
        d.box.height = std::max(kMinBoxPx, d.box.height * size_jitter);
        d.confidence = noise.uniform(0.4, 0.9);
        det_list.push_back(std::move(d));
      }
    }
  }
  return scene;
}

void sample_embeddings(const SceneTruth& truth, DetectionGrid& detections) {
  const SceneConfig& cfg = truth.config;
  const double lambda = cfg.view_component_weight;

  // Fixed per-identity and per-(identity, view) directions.
  std::vector<std::vector<double>> identity(static_cast<std::size_t>(cfg.n_agents));
  std::vector<std::vector<std::vector<double>>> view_comp(
      static_cast<std::size_t>(cfg.n_agents));
  for (int g = 0; g < cfg.n_agents; ++g) {
    identity[g] = identity_direction(cfg.seed, cfg.embedding_dim, g);
    view_comp[g].resize(static_cast<std::size_t>(cfg.n_views));
    for (int v = 0; v < cfg.n_views; ++v) {
      view_comp[g][v] = view_direction(cfg.seed, cfg.embedding_dim, g, v);
    }
  }

  const std::size_t dim = static_cast<std::size_t>(cfg.embedding_dim);
  for (int v = 0; v < static_cast<int>(detections.size()); ++v) {
    for (int f = 0; f < static_cast<int>(detections[v].size()); ++f) {
      Rng rng(mix_seed(cfg.seed, kStreamEmbNoise, static_cast<std::uint64_t>(v),
                       static_cast<std::uint64_t>(f)));
      for (Detection& d : detections[v][f]) {
        if (d.gt_global_id) {
          const int g = *d.gt_global_id;
          d.cross_emb = perturbed_unit(identity[g], cfg.sigma_cross, rng);
          std::vector<double> mix(dim);
          for (std::size_t i = 0; i < dim; ++i) {
            mix[i] = (1.0 - lambda) * identity[g][i] + lambda * view_comp[g][v][i];
          }
          d.single_emb = perturbed_unit(mix, cfg.sigma_single, rng);
        } else if (cfg.hard_negatives && cfg.n_agents > 0) {
          const int g = static_cast<int>(
              rng.uniform_index(static_cast<std::uint64_t>(cfg.n_agents)));
          d.cross_emb = perturbed_unit(identity[g], 0.25, rng);
          d.single_emb = perturbed_unit(view_comp[g][v], 0.25, rng);
        } else {
          d.cross_emb = EmbeddingVec(rng.unit_vector(dim));
          d.single_emb = EmbeddingVec(rng.unit_vector(dim));
        }
      }
    }
  }
}

Scene simulate_scene(const SceneConfig& config) {
  Scene scene = generate_scene(config);
  sample_embeddings(scene.truth, scene.detections);
  return scene;
}

}  // namespace xvt::sim
