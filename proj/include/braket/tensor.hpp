#ifndef BRAKET_TENSOR_HPP
#define BRAKET_TENSOR_HPP

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "braket/error.hpp"
#include "braket/hilbert.hpp"
#include "braket/model.hpp"

namespace braket {

// One weighted product phi_1 (x) ... (x) phi_N.
struct SimpleTensor {
  Cplx weight{1.0, 0.0};
  std::vector<HilbertVector> factors;

  SimpleTensor(Cplx weight_, std::vector<HilbertVector> factors_)
      : weight(weight_), factors(std::move(factors_)) {
    if (factors.empty()) throw model_error("SimpleTensor: needs at least one factor");
    if (!is_finite(weight)) throw model_error("SimpleTensor: non-finite weight");
    const std::size_t d = factors.front().dim();
    for (const HilbertVector &f : factors) {
      if (f.dim() != d) throw model_error("SimpleTensor: factors of unequal dimension");
    }
  }

  std::size_t factor_count() const { return factors.size(); }
  std::size_t dim() const { return factors.front().dim(); }
};

// Element of the N-fold tensor space. Held both as a list of weighted
// simple tensors and as the dense coordinate array under row-major
// multi-index order with factor 1 slowest:
//   dense[i_1*d^(N-1) + ... + i_N] = sum_terms weight * prod_k factor_k[i_k].
// The dense form is authoritative for equality and inner products; the
// term list carries the simple-tensor structure that slot-wise
// operations (permutations) act on.
class TensorVector {
public:
  static TensorVector zero(std::size_t dim, std::size_t factors) {
    return TensorVector(dim, factors, {}, std::vector<Cplx>(checked_dense_size(dim, factors)));
  }

  static TensorVector from_terms(std::size_t dim, std::size_t factors,
                                 std::vector<SimpleTensor> terms) {
    for (const SimpleTensor &t : terms) {
      if (t.factor_count() != factors || t.dim() != dim) {
        throw model_error("TensorVector: term shape does not match model (" +
                          std::to_string(dim) + "^" + std::to_string(factors) + ")");
      }
    }
    std::vector<Cplx> dense(checked_dense_size(dim, factors), Cplx{0.0, 0.0});
    for (const SimpleTensor &t : terms) accumulate_flattened(t, dense);
    return TensorVector(dim, factors, std::move(terms), std::move(dense));
  }

  // Builds from raw coordinates; the term list becomes the standard-basis
  // decomposition of the nonzero entries.
  static TensorVector from_dense(std::size_t dim, std::size_t factors, std::vector<Cplx> dense) {
    if (dense.size() != checked_dense_size(dim, factors)) {
      throw model_error("TensorVector::from_dense: coordinate count != dim^factors");
    }
    std::vector<SimpleTensor> terms;
    std::vector<std::size_t> digits(factors, 0);
    for (std::size_t i = 0; i < dense.size(); ++i) {
      if (!is_finite(dense[i])) throw model_error("TensorVector::from_dense: non-finite entry");
      if (dense[i] != Cplx{0.0, 0.0}) {
        std::vector<HilbertVector> fs;
        fs.reserve(factors);
        for (std::size_t k = 0; k < factors; ++k) fs.push_back(HilbertVector::basis(dim, digits[k]));
        terms.emplace_back(dense[i], std::move(fs));
      }
      next_multi_index(digits, dim);
    }
    return TensorVector(dim, factors, std::move(terms), std::move(dense));
  }

  std::size_t dim() const { return dim_; }
  std::size_t factor_count() const { return factors_; }
  std::size_t dense_size() const { return dense_.size(); }
  const std::vector<SimpleTensor> &terms() const { return terms_; }
  const std::vector<Cplx> &dense() const { return dense_; }

  bool same_space(const TensorVector &o) const {
    return dim_ == o.dim_ && factors_ == o.factors_;
  }

  TensorVector &operator+=(const TensorVector &o) {
    require_same_space(o, "+");
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    for (std::size_t i = 0; i < dense_.size(); ++i) dense_[i] += o.dense_[i];
    return *this;
  }
  TensorVector &operator-=(const TensorVector &o) {
    require_same_space(o, "-");
    for (const SimpleTensor &t : o.terms_) terms_.emplace_back(-t.weight, t.factors);
    for (std::size_t i = 0; i < dense_.size(); ++i) dense_[i] -= o.dense_[i];
    return *this;
  }
  TensorVector &operator*=(Cplx a) {
    if (!is_finite(a)) throw model_error("TensorVector: non-finite scalar");
    for (SimpleTensor &t : terms_) t.weight *= a;
    for (Cplx &c : dense_) c *= a;
    return *this;
  }

  friend TensorVector operator+(TensorVector a, const TensorVector &b) { return a += b; }
  friend TensorVector operator-(TensorVector a, const TensorVector &b) { return a -= b; }
  friend TensorVector operator*(Cplx a, TensorVector t) { return t *= a; }
  friend TensorVector operator*(TensorVector t, Cplx a) { return t *= a; }

  double norm_sq() const {
    double s = 0.0;
    for (const Cplx &c : dense_) s += std::norm(c);
    return s;
  }
  double norm() const { return std::sqrt(norm_sq()); }

  // Largest coordinate deviation from `o`.
  double max_abs_diff(const TensorVector &o) const {
    require_same_space(o, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < dense_.size(); ++i) {
      m = std::max(m, std::abs(dense_[i] - o.dense_[i]));
    }
    return m;
  }

  // Tensor product with another (partial) tensor: arities add, term
  // lists combine pairwise.
  friend TensorVector tensor_product(const TensorVector &a, const TensorVector &b) {
    if (a.dim() != b.dim()) throw model_error("tensor_product: factor dimensions differ");
    std::vector<SimpleTensor> terms;
    terms.reserve(a.terms_.size() * b.terms_.size());
    for (const SimpleTensor &s : a.terms_) {
      for (const SimpleTensor &t : b.terms_) {
        std::vector<HilbertVector> fs = s.factors;
        fs.insert(fs.end(), t.factors.begin(), t.factors.end());
        terms.emplace_back(s.weight * t.weight, std::move(fs));
      }
    }
    return from_terms(a.dim(), a.factor_count() + b.factor_count(), std::move(terms));
  }

  static void next_multi_index(std::vector<std::size_t> &digits, std::size_t dim) {
    for (std::size_t k = digits.size(); k-- > 0;) {
      if (++digits[k] < dim) return;
      digits[k] = 0;
    }
  }

private:
  TensorVector(std::size_t dim, std::size_t factors, std::vector<SimpleTensor> terms,
               std::vector<Cplx> dense)
      : dim_(dim), factors_(factors), terms_(std::move(terms)), dense_(std::move(dense)) {}

  void require_same_space(const TensorVector &o, const char *op) const {
    if (!same_space(o)) {
      throw model_error(std::string("TensorVector: space mismatch in '") + op + "'");
    }
  }

  // dense += flattening of one simple tensor, built by iterated
  // Kronecker expansion in slot order.
  static void accumulate_flattened(const SimpleTensor &t, std::vector<Cplx> &dense) {
    std::vector<Cplx> acc{t.weight};
    for (const HilbertVector &f : t.factors) {
      std::vector<Cplx> next(acc.size() * f.dim());
      for (std::size_t i = 0; i < acc.size(); ++i) {
        for (std::size_t j = 0; j < f.dim(); ++j) next[i * f.dim() + j] = acc[i] * f[j];
      }
      acc = std::move(next);
    }
    for (std::size_t i = 0; i < dense.size(); ++i) dense[i] += acc[i];
  }

  std::size_t dim_;
  std::size_t factors_;
  std::vector<SimpleTensor> terms_;
  std::vector<Cplx> dense_;
};

// The canonical multilinear map chi: (phi_1, ..., phi_N) -> phi_1 (x) ... (x) phi_N.
inline TensorVector canonical_chi(const std::vector<HilbertVector> &factors) {
  if (factors.empty()) throw model_error("canonical_chi: needs at least one factor");
  std::vector<SimpleTensor> terms;
  terms.emplace_back(Cplx{1.0, 0.0}, factors);
  return TensorVector::from_terms(factors.front().dim(), factors.size(), std::move(terms));
}

inline TensorVector canonical_chi(const ModelConfig &config,
                                  const std::vector<HilbertVector> &factors) {
  if (factors.size() != config.factors) {
    throw model_error("canonical_chi: expected " + std::to_string(config.factors) +
                      " factors, got " + std::to_string(factors.size()));
  }
  for (const HilbertVector &f : factors) {
    if (f.dim() != config.dim) throw model_error("canonical_chi: factor dimension mismatch");
  }
  return canonical_chi(factors);
}

// Dense coordinates of t; idempotent (the flattening is cached).
inline const std::vector<Cplx> &flatten(const TensorVector &t) { return t.dense(); }

// Inner product on the tensor space, conjugate-linear in the first
// slot. Computed on the dense forms; on simple tensors it equals the
// product of factor inner products.
inline Cplx tensor_inner(const TensorVector &s, const TensorVector &t) {
  if (!s.same_space(t)) throw model_error("tensor_inner: space mismatch");
  Cplx acc{0.0, 0.0};
  const std::vector<Cplx> &a = s.dense();
  const std::vector<Cplx> &b = t.dense();
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

// Embeds a single-factor vector as an N=1 tensor.
inline TensorVector as_tensor(const HilbertVector &v) {
  return canonical_chi(std::vector<HilbertVector>{v});
}

} // namespace braket

#endif
