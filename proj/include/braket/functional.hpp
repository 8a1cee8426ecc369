#ifndef BRAKET_FUNCTIONAL_HPP
#define BRAKET_FUNCTIONAL_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "braket/error.hpp"
#include "braket/hilbert.hpp"
#include "braket/model.hpp"
#include "braket/report.hpp"
#include "braket/tensor.hpp"

namespace braket {

enum class FunctionalKind { Bra, Ket };

inline const char *to_string(FunctionalKind k) {
  return k == FunctionalKind::Bra ? "bra" : "ket";
}

// A bra (continuous linear functional) or ket (continuous anti-linear
// functional) on the tensor space, held by its representing vector:
//   Bra_r(phi) = <r, phi>     linear in phi,
//   Ket_r(phi) = <phi, r>     anti-linear in phi.
// Single-particle functionals are the N=1 case.
class Functional {
public:
  Functional(FunctionalKind kind, TensorVector rep) : kind_(kind), rep_(std::move(rep)) {}

  FunctionalKind kind() const { return kind_; }
  const TensorVector &rep() const { return rep_; }
  std::size_t dim() const { return rep_.dim(); }
  std::size_t factor_count() const { return rep_.factor_count(); }

  Cplx operator()(const TensorVector &phi) const {
    return kind_ == FunctionalKind::Bra ? tensor_inner(rep_, phi) : tensor_inner(phi, rep_);
  }
  Cplx operator()(const HilbertVector &phi) const { return (*this)(as_tensor(phi)); }

  double norm() const { return rep_.norm(); }
  bool is_zero(double tol) const { return norm() <= tol; }

  // Pointwise linear structure: (f+g)(phi) = f(phi)+g(phi) and
  // (a*f)(phi) = a*f(phi). For kets the representing vector absorbs the
  // scalar directly; for bras it absorbs the conjugate.
  friend Functional operator+(const Functional &f, const Functional &g) {
    if (f.kind_ != g.kind_) throw contract_error("Functional: cannot add a bra and a ket");
    return Functional(f.kind_, f.rep_ + g.rep_);
  }
  friend Functional operator-(const Functional &f, const Functional &g) {
    if (f.kind_ != g.kind_) throw contract_error("Functional: cannot subtract a bra and a ket");
    return Functional(f.kind_, f.rep_ - g.rep_);
  }
  friend Functional scale(Cplx a, const Functional &f) {
    return Functional(f.kind_, f.rep_ * (f.kind_ == FunctionalKind::Bra ? std::conj(a) : a));
  }

private:
  FunctionalKind kind_;
  TensorVector rep_;
};

inline Functional composite_ket(const TensorVector &phi) {
  return Functional(FunctionalKind::Ket, phi);
}
inline Functional composite_bra(const TensorVector &phi) {
  return Functional(FunctionalKind::Bra, phi);
}

inline Functional make_ket(const HilbertVector &phi) { return composite_ket(as_tensor(phi)); }
inline Functional make_bra(const HilbertVector &phi) { return composite_bra(as_tensor(phi)); }

// Complex conjugation swaps bra and ket over the same representing
// vector: conjugate(f)(phi) = conj(f(phi)).
inline Functional conjugate(const Functional &f) {
  return Functional(f.kind() == FunctionalKind::Bra ? FunctionalKind::Ket : FunctionalKind::Bra,
                    f.rep());
}

// Tensor product of N single-factor functionals of one kind. The result
// acts on the N-factor space and is realized by the product of the
// representing vectors, so that on simple tensors it evaluates to the
// product of the single evaluations.
inline Functional functional_tensor(const std::vector<Functional> &fs) {
  if (fs.empty()) throw model_error("functional_tensor: needs at least one functional");
  const FunctionalKind kind = fs.front().kind();
  std::vector<HilbertVector> reps;
  reps.reserve(fs.size());
  for (const Functional &f : fs) {
    if (f.kind() != kind) throw contract_error("functional_tensor: mixed bra/ket kinds");
    if (f.factor_count() != 1) {
      throw model_error("functional_tensor: factors must be single-particle functionals");
    }
    reps.emplace_back(f.rep().dense());
  }
  return Functional(kind, canonical_chi(reps));
}

// Evaluates the tensor-of-functionals product form directly: combines
// per-term factor-wise single evaluations, without ever forming a
// representing vector on the tensor space. Used as the independent side
// of the identification checks.
inline Cplx product_evaluate(const std::vector<Functional> &fs, const TensorVector &probe) {
  if (fs.empty()) throw model_error("product_evaluate: needs at least one functional");
  const FunctionalKind kind = fs.front().kind();
  for (const Functional &f : fs) {
    if (f.kind() != kind) throw contract_error("product_evaluate: mixed bra/ket kinds");
    if (f.factor_count() != 1) {
      throw model_error("product_evaluate: factors must be single-particle functionals");
    }
  }
  if (probe.factor_count() != fs.size()) {
    throw model_error("product_evaluate: probe arity mismatch");
  }
  Cplx total{0.0, 0.0};
  for (const SimpleTensor &term : probe.terms()) {
    Cplx prod = kind == FunctionalKind::Ket ? std::conj(term.weight) : term.weight;
    for (std::size_t k = 0; k < fs.size(); ++k) prod *= fs[k](term.factors[k]);
    total += prod;
  }
  return total;
}

// Verifies |phi_1 (x) ... (x) phi_N> = |phi_1> (x) ... (x) |phi_N> and
// the bra analogue by evaluating both sides on every probe. The left
// side evaluates through the composite inner product, the right side
// through factor-wise products.
inline CheckReport check_identification(const std::vector<HilbertVector> &factors,
                                        const std::vector<TensorVector> &probes,
                                        double tolerance = kExactTol) {
  if (probes.empty()) throw model_error("check_identification: needs at least one probe");
  const TensorVector product = canonical_chi(factors);
  const Functional ket = composite_ket(product);
  const Functional bra = composite_bra(product);
  std::vector<Functional> kets, bras;
  for (const HilbertVector &f : factors) {
    kets.push_back(make_ket(f));
    bras.push_back(make_bra(f));
  }
  double max_residual = 0.0;
  for (const TensorVector &probe : probes) {
    max_residual = std::max(max_residual, std::abs(ket(probe) - product_evaluate(kets, probe)));
    max_residual = std::max(max_residual, std::abs(bra(probe) - product_evaluate(bras, probe)));
  }
  return CheckReport::from_residual("identification", max_residual, tolerance,
                                    std::to_string(probes.size()) + " probes, N=" +
                                        std::to_string(factors.size()));
}

} // namespace braket

#endif
