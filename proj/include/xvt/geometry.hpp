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

namespace xvt {

/// Axis-aligned box in pixel coordinates; width and height must be positive.
struct BBox {
  double left = 0.0;
  double top = 0.0;
  double width = 0.0;
  double height = 0.0;

  double right() const { return left + width; }
  double bottom() const { return top + height; }
  double area() const { return width * height; }
  bool valid() const { return width > 0.0 && height > 0.0; }
};

/// Intersection over union, in [0, 1]. Throws std::invalid_argument when a
/// box has non-positive width or height.
double iou(const BBox& a, const BBox& b);

}  // namespace xvt
