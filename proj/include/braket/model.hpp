#ifndef BRAKET_MODEL_HPP
#define BRAKET_MODEL_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>

#include "braket/error.hpp"

namespace braket {

using Cplx = std::complex<double>;

// Residual checks (reconstruction, Parseval, eigenequations).
inline constexpr double kDefaultTol = 1e-10;
// Exact-algebra checks (idempotence, orthonormality, identifications)
// at desk-scale dimensions.
inline constexpr double kExactTol = 1e-12;

// Largest dense coordinate array a model may allocate. Beyond this the
// model is rejected at configuration time.
inline constexpr std::size_t kMaxDenseSize = std::size_t{1} << 22;

inline bool is_finite(Cplx z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// dim^factors with overflow and size-cap checking.
inline std::size_t checked_dense_size(std::size_t dim, std::size_t factors) {
  std::size_t size = 1;
  for (std::size_t k = 0; k < factors; ++k) {
    if (dim != 0 && size > kMaxDenseSize / dim) {
      throw model_error("model too large: " + std::to_string(dim) + "^" +
                        std::to_string(factors) + " dense coordinates exceed the supported size");
    }
    size *= dim;
  }
  return size;
}

// Fixes the concrete finite-dimensional model: one factor space of
// dimension `dim`, `factors` tensor slots, and the numerical equality
// threshold used by residual checks.
struct ModelConfig {
  std::size_t dim = 2;
  std::size_t factors = 2;
  double tol = kDefaultTol;

  ModelConfig() = default;
  ModelConfig(std::size_t dim_, std::size_t factors_, double tol_ = kDefaultTol)
      : dim(dim_), factors(factors_), tol(tol_) {
    validate();
  }

  void validate() const {
    if (dim < 1) throw model_error("ModelConfig: dim must be >= 1");
    if (factors < 1) throw model_error("ModelConfig: factors must be >= 1");
    if (!(tol > 0.0) || !std::isfinite(tol)) {
      throw model_error("ModelConfig: tol must be a positive finite real");
    }
    checked_dense_size(dim, factors);
  }

  std::size_t dense_size() const { return checked_dense_size(dim, factors); }
};

} // namespace braket

#endif
