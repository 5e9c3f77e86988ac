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

#include "xvt/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace xvt {

double iou(const BBox& a, const BBox& b) {
  if (!a.valid() || !b.valid()) {
    throw std::invalid_argument("iou: box with non-positive width or height");
  }
  const double ix = std::min(a.right(), b.right()) - std::max(a.left, b.left);
  const double iy = std::min(a.bottom(), b.bottom()) - std::max(a.top, b.top);
  if (ix <= 0.0 || iy <= 0.0) return 0.0;
  const double inter = ix * iy;
  return inter / (a.area() + b.area() - inter);
}

}  // namespace xvt
