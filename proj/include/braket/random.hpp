#ifndef BRAKET_RANDOM_HPP
#define BRAKET_RANDOM_HPP

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "braket/hilbert.hpp"
#include "braket/matrix.hpp"
#include "braket/model.hpp"
#include "braket/tensor.hpp"

namespace braket {

// Seed for randomized property suites; BRAKET_RHS_SEED overrides.
inline constexpr std::uint64_t kDefaultSeed = 42;

inline std::uint64_t seed_from_env() {
  if (const char *env = std::getenv("BRAKET_RHS_SEED")) {
    char *end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return static_cast<std::uint64_t>(value);
  }
  return kDefaultSeed;
}

// FNV-1a mix of a base seed with a label, so each named check draws an
// independent deterministic stream no matter which suites run.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view label) {
  std::uint64_t h = 14695981039346656037ull ^ base;
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

// Deterministic generator for model-sized random objects.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double real(double lo = -1.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(eng_);
  }

  Cplx cplx() { return Cplx{real(), real()}; }

  std::size_t index(std::size_t bound) {
    return std::uniform_int_distribution<std::size_t>(0, bound - 1)(eng_);
  }

  HilbertVector vector(std::size_t dim, bool normalized = false) {
    std::vector<Cplx> coords(dim);
    for (Cplx &c : coords) c = cplx();
    HilbertVector v(std::move(coords));
    return normalized ? v.normalized() : v;
  }

  std::vector<HilbertVector> vectors(std::size_t count, std::size_t dim, bool normalized = false) {
    std::vector<HilbertVector> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(vector(dim, normalized));
    return out;
  }

  // Random tensor-space element as a short sum of simple tensors.
  TensorVector tensor(std::size_t dim, std::size_t factors, std::size_t max_terms = 5) {
    const std::size_t terms = 1 + index(max_terms);
    std::vector<SimpleTensor> list;
    list.reserve(terms);
    for (std::size_t t = 0; t < terms; ++t) {
      list.emplace_back(cplx(), vectors(factors, dim));
    }
    return TensorVector::from_terms(dim, factors, std::move(list));
  }

  std::vector<TensorVector> tensors(std::size_t count, std::size_t dim, std::size_t factors,
                                    std::size_t max_terms = 5) {
    std::vector<TensorVector> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(tensor(dim, factors, max_terms));
    return out;
  }

  CMatrix matrix(std::size_t rows, std::size_t cols) {
    CMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = cplx();
    }
    return m;
  }

  CMatrix hermitian(std::size_t n) {
    const CMatrix raw = matrix(n, n);
    CMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        h.at(i, j) = 0.5 * (raw.at(i, j) + std::conj(raw.at(j, i)));
      }
    }
    return h;
  }

private:
  std::mt19937_64 eng_;
};

} // namespace braket

#endif
