#include <cmath>

#include "psbm/kernels/kernels.hpp"
#include "psbm/numeric.hpp"

namespace psbm::kernels::scalar {

namespace {

inline double pow5(double x) {
  const double x2 = x * x;
  const double x4 = x2 * x2;
  return x4 * x;
}

}  // namespace

void quintic_triple(const double* p, const double* q, const double* r, double* out,
                    std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double p5 = pow5(p[i]);
    const double r5 = pow5(r[i]);
    if (p[i] == q[i] && q[i] == r[i]) {
      out[i] = p5;
    } else if (p[i] == q[i]) {
      out[i] = 2.0 * (p5 + r5);
    } else {
      out[i] = (p5 + pow5(q[i])) + r5;
    }
  }
}

void triangle_rhs(const double* a, const double* b, const double* c, const double* d,
                  double t, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = t * ((a[i] + b[i]) + c[i]) - d[i];
}

std::size_t strict_below(const double* values, double bound, std::uint8_t* out,
                         std::size_t n) {
  const bool bound_exact = is_exact_integer(bound);
  const double threshold = strict_threshold(bound);
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = values[i];
    const bool hit = (bound_exact && is_exact_integer(v)) ? v < bound : v < threshold;
    out[i] = hit ? 1 : 0;
    count += hit ? 1 : 0;
  }
  return count;
}

}  // namespace psbm::kernels::scalar
