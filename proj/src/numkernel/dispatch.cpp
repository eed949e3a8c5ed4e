// Copyright 2026 The squeezelim Authors
// SPDX-License-Identifier: Apache-2.0

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "sqz/numkernel/kernels.hpp"

namespace sqz::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(SQZ_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{&table(detect())};
  return slot;
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

bool available(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
      return cpu_has_avx2();
  }
  return false;
}

const KernelTable& table(Isa isa) {
  if (!available(isa)) {
    throw std::runtime_error("kernel variant '" + std::string(to_string(isa)) +
                             "' is not available on this build/CPU");
  }
#if defined(SQZ_HAVE_AVX2)
  if (isa == Isa::avx2) return avx2_table();
#endif
  return scalar_table();
}

Isa detect() {
  if (const char* env = std::getenv("SQZ_KERNEL"); env != nullptr && std::string(env) == "scalar") {
    return Isa::scalar;
  }
  return available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

const KernelTable& active() { return *active_slot().load(std::memory_order_acquire); }

void set_active(Isa isa) { active_slot().store(&table(isa), std::memory_order_release); }

}  // namespace sqz::kernels
