#include <atomic>
#include <cstdlib>
#include <string>
#include <string_view>

#include "rhd/errors.hpp"
#include "rhd/kernels.hpp"

namespace rhd::kernels {

#if defined(RHD_HAVE_AVX2_KERNELS)
const KernelTable& avx2_table_ref() noexcept;  // kernels_avx2.cpp
const KernelTable* avx2_table() noexcept { return &avx2_table_ref(); }
#else
const KernelTable* avx2_table() noexcept { return nullptr; }
#endif

bool cpu_has_avx2() noexcept {
#if (defined(__GNUC__) || defined(__clang__)) && (defined(__x86_64__) || defined(__i386__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

namespace {

const KernelTable* usable(Isa isa) noexcept {
  if (isa == Isa::scalar) return &scalar_table();
  const KernelTable* t = avx2_table();
  return t != nullptr && cpu_has_avx2() ? t : nullptr;
}

const KernelTable* initial_choice() noexcept {
  if (const char* env = std::getenv("RHD_KERNELS")) {
    const std::string_view want(env);
    if (want == "scalar") return &scalar_table();
    if (want == "avx2") {
      if (const KernelTable* t = usable(Isa::avx2)) return t;
    }
    // unknown or unavailable request: fall through to auto-detection
  }
  if (const KernelTable* t = usable(Isa::avx2)) return t;
  return &scalar_table();
}

std::atomic<const KernelTable*>& current() noexcept {
  static std::atomic<const KernelTable*> table{initial_choice()};
  return table;
}

}  // namespace

const KernelTable& active() noexcept { return *current().load(std::memory_order_acquire); }

void select(Isa isa) {
  const KernelTable* t = usable(isa);
  if (t == nullptr) {
    throw ConfigError(std::string("kernel variant '") + std::string(to_string(isa)) +
                      "' is not available on this CPU/build");
  }
  current().store(t, std::memory_order_release);
}

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

}  // namespace rhd::kernels
