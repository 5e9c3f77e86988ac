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

#include "xvt/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace xvt::kernels {

#if defined(XVT_BUILD_AVX2)
const Ops* avx2_ops();
#endif
#if defined(XVT_BUILD_NEON)
const Ops* neon_ops();
#endif

namespace {

const Ops* cpu_best() {
#if defined(XVT_BUILD_AVX2)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    return avx2_ops();
  }
#endif
#if defined(XVT_BUILD_NEON)
  // NEON is baseline on aarch64.
  return neon_ops();
#endif
  return &scalar_ops();
}

const Ops* detect() {
  if (const char* env = std::getenv("XVT_KERNEL_BACKEND")) {
    if (std::strcmp(env, "scalar") == 0) return &scalar_ops();
    if (std::strcmp(env, "avx2") == 0) {
      if (const Ops* o = backend_ops(Backend::Avx2)) return o;
    }
    if (std::strcmp(env, "neon") == 0) {
      if (const Ops* o = backend_ops(Backend::Neon)) return o;
    }
    // Unknown or unavailable value: fall through to detection.
  }
  return cpu_best();
}

std::atomic<const Ops*> g_active{nullptr};

}  // namespace

const Ops* backend_ops(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return &scalar_ops();
    case Backend::Avx2:
#if defined(XVT_BUILD_AVX2)
      if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
        return avx2_ops();
      }
#endif
      return nullptr;
    case Backend::Neon:
#if defined(XVT_BUILD_NEON)
      return neon_ops();
#else
      return nullptr;
#endif
    case Backend::Auto:
      return cpu_best();
  }
  return nullptr;
}

const Ops& active() {
  const Ops* ops = g_active.load(std::memory_order_acquire);
  if (!ops) {
    ops = detect();
    g_active.store(ops, std::memory_order_release);
  }
  return *ops;
}

void force_backend(Backend b) {
  const Ops* ops = backend_ops(b);
  if (!ops) throw std::invalid_argument("kernel backend not available");
  g_active.store(ops, std::memory_order_release);
}

const char* backend_name() { return active().name; }

}  // namespace xvt::kernels
