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

#include <compare>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "xvt/embedding.hpp"
#include "xvt/geometry.hpp"

namespace xvt {

/// One observed box in one view at one frame.
struct Detection {
  int view = 0;
  int frame = 0;  // 0-based inside the engine; MOT files are 1-based
  BBox box;
  double confidence = 1.0;
  EmbeddingVec single_emb;
  EmbeddingVec cross_emb;
  std::optional<int> gt_global_id;  // simulator / ground truth only
};

enum class TrackStatus { Tentative, Confirmed, Dead };

/// Per-view identity hypothesis.
struct Track {
  int local_id = -1;  // unique within its view
  int view = 0;
  int last_frame = -1;
  EmbeddingVec smoothed_single_emb;
  EmbeddingVec smoothed_cross_emb;
  int age_since_update = 0;
  int hits = 0;
  TrackStatus status = TrackStatus::Tentative;
  std::optional<int> global_id;

  BBox last_box;  // most recent matched box; reused for IoU fallback / coasting
  // Rows observed before confirmation, replayed once the track confirms.
  std::vector<std::pair<int, BBox>> pending_rows;
};

struct TrackKey {
  int view = 0;
  int local_id = 0;
  auto operator<=>(const TrackKey&) const = default;
};

/// Persistent clustering of (view, local_id) tracks into global identities.
/// Bindings are sticky: a track that received a global ID keeps it.
class GlobalIdMap {
 public:
  std::optional<int> lookup(const TrackKey& key) const {
    auto it = bindings_.find(key);
    if (it == bindings_.end()) return std::nullopt;
    return it->second;
  }

  void bind(const TrackKey& key, int gid) {
    bindings_.emplace(key, gid);
    members_[gid].push_back(key);
  }

  int fresh_gid() { return next_gid_++; }
  int next_gid() const { return next_gid_; }

  const std::map<TrackKey, int>& bindings() const { return bindings_; }
  const std::map<int, std::vector<TrackKey>>& clusters() const { return members_; }

 private:
  std::map<TrackKey, int> bindings_;
  std::map<int, std::vector<TrackKey>> members_;
  int next_gid_ = 0;
};

}  // namespace xvt
