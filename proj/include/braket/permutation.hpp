#ifndef BRAKET_PERMUTATION_HPP
#define BRAKET_PERMUTATION_HPP

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "braket/error.hpp"
#include "braket/functional.hpp"
#include "braket/matrix.hpp"
#include "braket/model.hpp"
#include "braket/tensor.hpp"

namespace braket {

// Group enumeration is capped: N! permutations over dense coordinates.
inline constexpr std::size_t kMaxPermutationDegree = 8;

// Element of the symmetric group on slots {0, ..., N-1}, stored as the
// image table: slot k of a permuted tensor draws from slot map[k].
class Permutation {
public:
  explicit Permutation(std::vector<std::size_t> map) : map_(std::move(map)) {
    if (map_.empty()) throw model_error("Permutation: empty map");
    std::vector<bool> seen(map_.size(), false);
    for (std::size_t image : map_) {
      if (image >= map_.size() || seen[image]) {
        throw model_error("Permutation: map is not a bijection");
      }
      seen[image] = true;
    }
  }

  static Permutation identity(std::size_t n) {
    std::vector<std::size_t> map(n);
    std::iota(map.begin(), map.end(), std::size_t{0});
    return Permutation(std::move(map));
  }

  std::size_t degree() const { return map_.size(); }
  std::size_t operator()(std::size_t k) const { return map_[k]; }
  const std::vector<std::size_t> &map() const { return map_; }

  Permutation inverse() const {
    std::vector<std::size_t> inv(map_.size());
    for (std::size_t k = 0; k < map_.size(); ++k) inv[map_[k]] = k;
    return Permutation(std::move(inv));
  }

  // Parity via cycle decomposition: sgn = (-1)^(N - #cycles).
  int sign() const {
    std::vector<bool> seen(map_.size(), false);
    std::size_t cycles = 0;
    for (std::size_t k = 0; k < map_.size(); ++k) {
      if (seen[k]) continue;
      ++cycles;
      for (std::size_t j = k; !seen[j]; j = map_[j]) seen[j] = true;
    }
    return (map_.size() - cycles) % 2 == 0 ? 1 : -1;
  }

  bool operator==(const Permutation &o) const { return map_ == o.map_; }
  bool operator!=(const Permutation &o) const { return !(*this == o); }

private:
  std::vector<std::size_t> map_;
};

// (a o b)(k) = a(b(k)).
inline Permutation compose(const Permutation &a, const Permutation &b) {
  if (a.degree() != b.degree()) throw model_error("compose: degree mismatch");
  std::vector<std::size_t> map(a.degree());
  for (std::size_t k = 0; k < map.size(); ++k) map[k] = a(b(k));
  return Permutation(std::move(map));
}

// All n! permutations in lexicographic order of their image tables.
inline std::vector<Permutation> enumerate_group(std::size_t n) {
  if (n < 1 || n > kMaxPermutationDegree) {
    throw model_error("enumerate_group: degree must be in [1, " +
                      std::to_string(kMaxPermutationDegree) + "]");
  }
  std::vector<std::size_t> map(n);
  std::iota(map.begin(), map.end(), std::size_t{0});
  std::vector<Permutation> group;
  do {
    group.emplace_back(map);
  } while (std::next_permutation(map.begin(), map.end()));
  return group;
}

// Character of the symmetrizer (trivial) or antisymmetrizer (sign)
// projection.
enum class SymmetrizerKind { Sym, Antisym };

inline const char *to_string(SymmetrizerKind k) {
  return k == SymmetrizerKind::Sym ? "sym" : "antisym";
}

inline double character(SymmetrizerKind kind, const Permutation &sigma) {
  return kind == SymmetrizerKind::Sym ? 1.0 : static_cast<double>(sigma.sign());
}

namespace detail {

// Dense index image under U_sigma: the output multi-index j obeys
// j_k = i_{sigma(k)}.
inline void permute_dense(const Permutation &sigma, std::size_t dim, std::size_t factors,
                          const std::vector<Cplx> &in, std::vector<Cplx> &out) {
  const std::size_t n = factors;
  std::vector<std::size_t> digits(n, 0);
  std::vector<std::size_t> weight(n); // weight of digit k in the flat index
  weight[n - 1] = 1;
  for (std::size_t k = n - 1; k-- > 0;) weight[k] = weight[k + 1] * dim;
  for (std::size_t i = 0; i < in.size(); ++i) {
    std::size_t j = 0;
    for (std::size_t k = 0; k < n; ++k) j += digits[sigma(k)] * weight[k];
    out[j] = in[i];
    TensorVector::next_multi_index(digits, dim);
  }
}

} // namespace detail

// U_sigma: slot k of each simple term of the output is the input's slot
// sigma(k). Linear and unitary; with this slot rule the assignment
// sigma -> U_sigma satisfies U_tau(U_sigma(t)) = U_{sigma o tau}(t).
inline TensorVector apply_permutation(const Permutation &sigma, const TensorVector &t) {
  if (sigma.degree() != t.factor_count()) {
    throw model_error("apply_permutation: permutation degree != factor count");
  }
  std::vector<SimpleTensor> terms;
  terms.reserve(t.terms().size());
  for (const SimpleTensor &term : t.terms()) {
    std::vector<HilbertVector> fs;
    fs.reserve(term.factors.size());
    for (std::size_t k = 0; k < term.factors.size(); ++k) fs.push_back(term.factors[sigma(k)]);
    terms.emplace_back(term.weight, std::move(fs));
  }
  return TensorVector::from_terms(t.dim(), t.factor_count(), std::move(terms));
}

// P_c(t) = (1/N!) sum_sigma c(sigma) U_sigma(t), accumulated on the
// dense coordinates via index permutation.
inline TensorVector projector(SymmetrizerKind kind, const TensorVector &t) {
  const std::size_t n = t.factor_count();
  const std::vector<Permutation> group = enumerate_group(n);
  const double scale = 1.0 / static_cast<double>(group.size());
  std::vector<Cplx> acc(t.dense_size(), Cplx{0.0, 0.0});
  std::vector<Cplx> image(t.dense_size());
  for (const Permutation &sigma : group) {
    detail::permute_dense(sigma, t.dim(), n, t.dense(), image);
    const double coeff = character(kind, sigma) * scale;
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += coeff * image[i];
  }
  return TensorVector::from_dense(t.dim(), n, std::move(acc));
}

// The extension of P_c to the dual spaces: (P~_c f)(phi) = f(P_c phi).
// P_c is real symmetric in the product basis, so for both bras and kets
// this is realized by projecting the representing vector.
inline Functional dual_projector(SymmetrizerKind kind, const Functional &f) {
  return Functional(f.kind(), projector(kind, f.rep()));
}

// Extension of U_sigma to functionals: (U~_sigma f)(phi) = f(U_sigma phi),
// realized on the representing vector by the inverse slot permutation.
inline Functional dual_permutation(const Permutation &sigma, const Functional &f) {
  return Functional(f.kind(), apply_permutation(sigma.inverse(), f.rep()));
}

struct MembershipResult {
  bool member = false;
  double residual = 0.0;
};

// Fixed-point test for the image of P~_c: f lies in the (anti)symmetric
// bra/ket space exactly when dual_projector leaves it unchanged.
inline MembershipResult is_in_symmetric_space(const Functional &f, SymmetrizerKind kind,
                                              double tol = kExactTol) {
  const Functional projected = dual_projector(kind, f);
  const double residual = projected.rep().max_abs_diff(f.rep());
  return MembershipResult{residual <= tol, residual};
}

// Dense matrix of P_c on the full tensor space.
inline CMatrix projector_matrix(SymmetrizerKind kind, std::size_t dim, std::size_t factors) {
  const std::size_t size = checked_dense_size(dim, factors);
  const std::vector<Permutation> group = enumerate_group(factors);
  const double scale = 1.0 / static_cast<double>(group.size());
  CMatrix p(size, size);
  std::vector<std::size_t> digits(factors, 0);
  std::vector<std::size_t> weight(factors);
  weight[factors - 1] = 1;
  for (std::size_t k = factors; k-- > 1;) weight[k - 1] = weight[k] * dim;
  for (std::size_t col = 0; col < size; ++col) {
    for (const Permutation &sigma : group) {
      std::size_t row = 0;
      for (std::size_t k = 0; k < factors; ++k) row += digits[sigma(k)] * weight[k];
      p.at(row, col) += Cplx{character(kind, sigma) * scale, 0.0};
    }
    TensorVector::next_multi_index(digits, dim);
  }
  return p;
}

// Rank of P_c by eigenvalue counting with threshold 1/2; projector
// spectra are {0, 1} so the threshold sits at maximal separation.
inline std::size_t projector_rank(SymmetrizerKind kind, std::size_t dim, std::size_t factors) {
  const EighResult eig = eigh(projector_matrix(kind, dim, factors));
  std::size_t rank = 0;
  for (double lambda : eig.eigenvalues) {
    if (lambda > 0.5) ++rank;
  }
  return rank;
}

} // namespace braket

#endif
