#pragma once

// Batched arithmetic kernels behind the axiom scans, ball materialization and
// certification loops. Every kernel has a scalar reference implementation and,
// on x86-64, an AVX2 variant chosen at runtime. The variants are required to
// agree bit-for-bit with the reference (tests/unit/test_kernels.cpp).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace psbm::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);

/// Best ISA supported by the running CPU (and compiled in).
Isa detected_isa();

/// ISA used by the dispatching entry points. Defaults to detected_isa();
/// PSBM_SIMD=scalar in the environment forces the reference path.
Isa active_isa();

/// Override for tests; std::nullopt restores the default.
void force_isa(std::optional<Isa> isa);

// Dispatching entry points. All spans of one call must have equal length.

/// Builtin quintic rule: p^5 if p=q=r, 2(p^5+r^5) if p=q!=r, p^5+q^5+r^5 otherwise.
void quintic_triple(std::span<const double> p, std::span<const double> q,
                    std::span<const double> r, std::span<double> out);

/// out = t*(a+b+c) - d; the right-hand side of the relaxed triangle axiom.
void triangle_rhs(std::span<const double> a, std::span<const double> b,
                  std::span<const double> c, std::span<const double> d, double t,
                  std::span<double> out);

/// out[i] = values[i] < bound under the exact/floating policy of numeric.hpp.
/// Returns the number of set flags.
std::size_t strict_below(std::span<const double> values, double bound,
                         std::span<std::uint8_t> out);

namespace scalar {
void quintic_triple(const double* p, const double* q, const double* r, double* out,
                    std::size_t n);
void triangle_rhs(const double* a, const double* b, const double* c, const double* d,
                  double t, double* out, std::size_t n);
std::size_t strict_below(const double* values, double bound, std::uint8_t* out,
                         std::size_t n);
}  // namespace scalar

#if defined(PSBM_HAVE_AVX2)
namespace avx2 {
void quintic_triple(const double* p, const double* q, const double* r, double* out,
                    std::size_t n);
void triangle_rhs(const double* a, const double* b, const double* c, const double* d,
                  double t, double* out, std::size_t n);
std::size_t strict_below(const double* values, double bound, std::uint8_t* out,
                         std::size_t n);
}  // namespace avx2
#endif

}  // namespace psbm::kernels
