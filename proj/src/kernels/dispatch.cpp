#include <atomic>
#include <cassert>
#include <cstdlib>
#include <string_view>

#include "psbm/kernels/kernels.hpp"

namespace psbm::kernels {

namespace {

// -1: no override.
std::atomic<int> g_forced{-1};

Isa env_or_detected() {
  static const Isa isa = [] {
    if (const char* env = std::getenv("PSBM_SIMD"); env && std::string_view(env) == "scalar") {
      return Isa::Scalar;
    }
    return detected_isa();
  }();
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

Isa detected_isa() {
#if defined(PSBM_HAVE_AVX2)
  static const bool has_avx2 = __builtin_cpu_supports("avx2");
  if (has_avx2) return Isa::Avx2;
#endif
  return Isa::Scalar;
}

Isa active_isa() {
  const int forced = g_forced.load(std::memory_order_relaxed);
  if (forced >= 0) return static_cast<Isa>(forced);
  return env_or_detected();
}

void force_isa(std::optional<Isa> isa) {
  if (isa && *isa == Isa::Avx2 && detected_isa() != Isa::Avx2) isa = Isa::Scalar;
  g_forced.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

void quintic_triple(std::span<const double> p, std::span<const double> q,
                    std::span<const double> r, std::span<double> out) {
  assert(p.size() == q.size() && q.size() == r.size() && r.size() == out.size());
#if defined(PSBM_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) {
    avx2::quintic_triple(p.data(), q.data(), r.data(), out.data(), out.size());
    return;
  }
#endif
  scalar::quintic_triple(p.data(), q.data(), r.data(), out.data(), out.size());
}

void triangle_rhs(std::span<const double> a, std::span<const double> b,
                  std::span<const double> c, std::span<const double> d, double t,
                  std::span<double> out) {
  assert(a.size() == out.size() && b.size() == out.size() && c.size() == out.size() &&
         d.size() == out.size());
#if defined(PSBM_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) {
    avx2::triangle_rhs(a.data(), b.data(), c.data(), d.data(), t, out.data(), out.size());
    return;
  }
#endif
  scalar::triangle_rhs(a.data(), b.data(), c.data(), d.data(), t, out.data(), out.size());
}

std::size_t strict_below(std::span<const double> values, double bound,
                         std::span<std::uint8_t> out) {
  assert(values.size() == out.size());
#if defined(PSBM_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) {
    return avx2::strict_below(values.data(), bound, out.data(), out.size());
  }
#endif
  return scalar::strict_below(values.data(), bound, out.data(), out.size());
}

}  // namespace psbm::kernels
