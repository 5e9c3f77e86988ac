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

#include "xvt/sv_tracker.hpp"

#include <algorithm>
#include <stdexcept>

namespace xvt {

Matrix build_cost_matrix(const std::vector<const Track*>& tracks,
                         const std::vector<const Detection*>& dets) {
  Matrix cost(static_cast<int>(tracks.size()), static_cast<int>(dets.size()));
  for (int i = 0; i < cost.rows; ++i) {
    for (int j = 0; j < cost.cols; ++j) {
      cost.at(i, j) =
          cosine_distance(tracks[i]->smoothed_single_emb, dets[j]->single_emb);
    }
  }
  return cost;
}

void gate_costs(Matrix& cost, double delta_s) {
  for (auto& c : cost.data) {
    if (c > delta_s) c = kGated;
  }
}

std::vector<SvOutputRow> SingleViewTracker::step(
    int frame, const std::vector<Detection>& dets) {
  if (frame <= last_frame_) {
    throw std::invalid_argument("sv_step: frames must be strictly increasing");
  }
  last_frame_ = frame;

  // Drop tracks that died on a previous step.
  std::erase_if(tracks_, [](const Track& t) { return t.status == TrackStatus::Dead; });

  std::vector<const Detection*> cands;
  for (const Detection& d : dets) {
    if (d.confidence >= params_.delta_d) cands.push_back(&d);
  }
  std::vector<Track*> live;
  for (Track& t : tracks_) live.push_back(&t);

  std::vector<const Track*> live_const(live.begin(), live.end());
  Matrix cost = build_cost_matrix(live_const, cands);
  gate_costs(cost, params_.delta_s);
  Assignment assign = hungarian_min(cost);

  std::vector<std::pair<Track*, const Detection*>> matched;
  for (const auto& [ti, dj] : assign.pairs) {
    matched.emplace_back(live[static_cast<std::size_t>(ti)],
                         cands[static_cast<std::size_t>(dj)]);
  }

  // Rescue pass: leftover pairs with enough box overlap. Embedding outliers
  // on a track that is clearly still in place should not fragment it.
  std::vector<int> rest_tracks = assign.unmatched_rows;
  std::vector<int> rest_dets = assign.unmatched_cols;
  if (params_.iou_fallback && !rest_tracks.empty() && !rest_dets.empty()) {
    Matrix iou_cost(static_cast<int>(rest_tracks.size()),
                    static_cast<int>(rest_dets.size()));
    for (int i = 0; i < iou_cost.rows; ++i) {
      const Track* t = live[static_cast<std::size_t>(rest_tracks[i])];
      for (int j = 0; j < iou_cost.cols; ++j) {
        const Detection* d = cands[static_cast<std::size_t>(rest_dets[j])];
        const double overlap = iou(t->last_box, d->box);
        iou_cost.at(i, j) =
            overlap >= params_.iou_fallback_threshold ? 1.0 - overlap : kGated;
      }
    }
    Assignment rescue = hungarian_min(iou_cost);
    std::vector<int> still_tracks, still_dets;
    for (int i : rescue.unmatched_rows) still_tracks.push_back(rest_tracks[i]);
    for (int j : rescue.unmatched_cols) still_dets.push_back(rest_dets[j]);
    for (const auto& [ri, rj] : rescue.pairs) {
      matched.emplace_back(live[static_cast<std::size_t>(rest_tracks[ri])],
                           cands[static_cast<std::size_t>(rest_dets[rj])]);
    }
    rest_tracks = std::move(still_tracks);
    rest_dets = std::move(still_dets);
  }

  std::vector<SvOutputRow> rows;
  auto emit = [&rows](int f, int id, const BBox& box, double conf, bool coasted) {
    rows.push_back(SvOutputRow{f, id, box, conf, coasted});
  };

  for (auto& [t, d] : matched) {
    t->smoothed_single_emb =
        ema_update(t->smoothed_single_emb, d->single_emb, params_.ema_alpha);
    t->smoothed_cross_emb =
        ema_update(t->smoothed_cross_emb, d->cross_emb, params_.ema_alpha);
    t->age_since_update = 0;
    t->hits += 1;
    t->last_frame = frame;
    t->last_box = d->box;
    if (t->status == TrackStatus::Tentative) {
      if (t->hits >= params_.min_hits) {
        t->status = TrackStatus::Confirmed;
        if (params_.backfill) {
          for (const auto& [pf, pbox] : t->pending_rows) {
            emit(pf, t->local_id, pbox, 1.0, false);
          }
        }
        t->pending_rows.clear();
        emit(frame, t->local_id, d->box, d->confidence, false);
      } else {
        t->pending_rows.emplace_back(frame, d->box);
      }
    } else {
      emit(frame, t->local_id, d->box, d->confidence, false);
    }
  }

  for (int ti : rest_tracks) {
    Track* t = live[static_cast<std::size_t>(ti)];
    t->age_since_update += 1;
    if (t->age_since_update > params_.max_age) {
      t->status = TrackStatus::Dead;
      t->pending_rows.clear();
    } else if (t->status == TrackStatus::Confirmed && params_.coast &&
               t->age_since_update <= params_.coast_frames) {
      emit(frame, t->local_id, t->last_box, 0.0, true);
    }
  }

  for (int dj : rest_dets) {
    const Detection* d = cands[static_cast<std::size_t>(dj)];
    Track t;
    t.local_id = next_local_id_++;
    t.view = view_;
    t.last_frame = frame;
    t.smoothed_single_emb = normalized(d->single_emb);
    t.smoothed_cross_emb = normalized(d->cross_emb);
    t.age_since_update = 0;
    t.hits = 1;
    t.last_box = d->box;
    if (params_.min_hits <= 1) {
      t.status = TrackStatus::Confirmed;
      emit(frame, t.local_id, d->box, d->confidence, false);
    } else {
      t.status = TrackStatus::Tentative;
      t.pending_rows.emplace_back(frame, d->box);
    }
    tracks_.push_back(std::move(t));
  }

  return rows;
}

}  // namespace xvt
