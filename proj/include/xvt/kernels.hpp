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

#include <cstddef>

namespace xvt::kernels {

/// Data-parallel primitives behind the embedding / loss / matching math.
/// A scalar reference implementation always exists; on x86-64 an AVX2+FMA
/// variant (and on aarch64 a NEON variant) is selected at runtime when the
/// CPU supports it. All variants compute the same quantities; they may
/// differ in the last few ULPs because of reassociation and FMA contraction.
struct Ops {
  const char* name;
  double (*dot)(const double* x, const double* y, std::size_t n);
  // y += a*x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // out = a*x + b*y
  void (*axpby)(double a, const double* x, double b, const double* y,
                double* out, std::size_t n);
  // x *= a
  void (*scale)(double* x, double a, std::size_t n);
};

enum class Backend { Auto, Scalar, Avx2, Neon };

/// The backend in use. With Backend::Auto (the default) the first call
/// probes the CPU; the environment variable XVT_KERNEL_BACKEND
/// (scalar|avx2|neon) overrides the probe.
const Ops& active();

/// The scalar reference implementation, independent of dispatch state.
const Ops& scalar_ops();

/// Returns the named variant or nullptr when it was not compiled in /
/// the CPU lacks the instructions.
const Ops* backend_ops(Backend b);

/// Pin the dispatch (mainly for equivalence tests). Backend::Auto restores
/// runtime detection. Throws std::invalid_argument for unavailable backends.
void force_backend(Backend b);

const char* backend_name();

inline double dot(const double* x, const double* y, std::size_t n) {
  return active().dot(x, y, n);
}
inline void axpy(double a, const double* x, double* y, std::size_t n) {
  active().axpy(a, x, y, n);
}
inline void axpby(double a, const double* x, double b, const double* y,
                  double* out, std::size_t n) {
  active().axpby(a, x, b, y, out, n);
}
inline void scale(double* x, double a, std::size_t n) {
  active().scale(x, a, n);
}

}  // namespace xvt::kernels
