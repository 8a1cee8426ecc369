#ifndef BRAKET_OBSERVABLE_HPP
#define BRAKET_OBSERVABLE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "braket/error.hpp"
#include "braket/functional.hpp"
#include "braket/hilbert.hpp"
#include "braket/matrix.hpp"
#include "braket/model.hpp"
#include "braket/permutation.hpp"
#include "braket/report.hpp"
#include "braket/tensor.hpp"

namespace braket {

// Hermitian operator on one factor space.
class FactorObservable {
public:
  explicit FactorObservable(CMatrix matrix, double tol = kDefaultTol) : mat_(std::move(matrix)) {
    if (mat_.rows() != mat_.cols()) throw contract_error("FactorObservable: matrix not square");
    const double defect = mat_.hermiticity_defect();
    if (defect > tol) {
      throw contract_error("FactorObservable: matrix is not Hermitian (max asymmetry " +
                               std::to_string(defect) + ")",
                           defect);
    }
  }

  std::size_t dim() const { return mat_.rows(); }
  const CMatrix &matrix() const { return mat_; }

private:
  CMatrix mat_;
};

inline HilbertVector apply(const CMatrix &op, const HilbertVector &v) {
  return HilbertVector(op.apply(v.coords()));
}

// A = sum_i I (x) ... (x) A_i (x) ... (x) I on the N-factor tensor
// space, with the factor decomposition retained.
class CompositeObservable {
public:
  explicit CompositeObservable(std::vector<FactorObservable> factor_ops)
      : factor_ops_(std::move(factor_ops)) {
    if (factor_ops_.empty()) throw model_error("CompositeObservable: needs at least one factor");
    const std::size_t d = factor_ops_.front().dim();
    for (const FactorObservable &op : factor_ops_) {
      if (op.dim() != d) throw model_error("CompositeObservable: factor dimensions differ");
    }
    const std::size_t n = factor_ops_.size();
    const std::size_t size = checked_dense_size(d, n);
    dense_ = CMatrix(size, size);
    for (std::size_t i = 0; i < n; ++i) {
      CMatrix term = CMatrix::identity(1);
      for (std::size_t k = 0; k < n; ++k) {
        term = kron(term, k == i ? factor_ops_[k].matrix() : CMatrix::identity(d));
      }
      dense_ += term;
    }
  }

  std::size_t factor_count() const { return factor_ops_.size(); }
  std::size_t dim() const { return factor_ops_.front().dim(); }
  std::size_t dense_size() const { return dense_.rows(); }
  const FactorObservable &factor_op(std::size_t i) const { return factor_ops_[i]; }
  const std::vector<FactorObservable> &factor_ops() const { return factor_ops_; }
  const CMatrix &dense() const { return dense_; }

  TensorVector apply(const TensorVector &t) const {
    if (t.dense_size() != dense_.rows() || t.dim() != dim()) {
      throw model_error("CompositeObservable::apply: space mismatch");
    }
    return TensorVector::from_dense(t.dim(), t.factor_count(), dense_.apply(t.dense()));
  }

private:
  std::vector<FactorObservable> factor_ops_;
  CMatrix dense_;
};

inline CompositeObservable compose_observable(std::vector<FactorObservable> factor_ops) {
  return CompositeObservable(std::move(factor_ops));
}

// One generalized eigenpair |lambda_1> (x) ... (x) |lambda_N> of the
// composite observable, with the per-factor multiplicity labels that
// distinguish degenerate factor eigenvectors. The counting-measure
// weight of every pair is 1.
struct GeneralizedEigenpair {
  std::vector<double> lambdas;
  std::vector<std::size_t> mult_indices;
  double lambda_sum = 0.0;
  Functional ket;
  Functional bra;
  double weight = 1.0;
};

struct SpectralGroup {
  double lambda_sum = 0.0;
  std::vector<std::size_t> members;
};

// Full product eigenbasis of a composite observable: d^N generalized
// eigenpairs grouped by total eigenvalue.
class SpectralDecomposition {
public:
  SpectralDecomposition(CompositeObservable observable, std::vector<GeneralizedEigenpair> pairs,
                        std::vector<std::vector<double>> factor_eigenvalues,
                        std::vector<std::vector<HilbertVector>> factor_eigenvectors)
      : observable_(std::move(observable)),
        pairs_(std::move(pairs)),
        factor_eigenvalues_(std::move(factor_eigenvalues)),
        factor_eigenvectors_(std::move(factor_eigenvectors)) {
    build_groups();
  }

  const CompositeObservable &observable() const { return observable_; }
  const std::vector<GeneralizedEigenpair> &pairs() const { return pairs_; }
  const GeneralizedEigenpair &pair(std::size_t p) const { return pairs_.at(p); }
  std::size_t size() const { return pairs_.size(); }
  const std::vector<SpectralGroup> &groups() const { return groups_; }
  const std::vector<double> &factor_eigenvalues(std::size_t k) const {
    return factor_eigenvalues_.at(k);
  }
  const std::vector<HilbertVector> &factor_eigenvectors(std::size_t k) const {
    return factor_eigenvectors_.at(k);
  }

  // The distinct lambda_sum values (the finite model of Sp(A)).
  std::vector<double> spectrum() const {
    std::vector<double> sp;
    sp.reserve(groups_.size());
    for (const SpectralGroup &g : groups_) sp.push_back(g.lambda_sum);
    return sp;
  }

private:
  void build_groups() {
    std::vector<std::size_t> order(pairs_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return pairs_[a].lambda_sum < pairs_[b].lambda_sum;
    });
    for (std::size_t idx : order) {
      const double lambda = pairs_[idx].lambda_sum;
      if (groups_.empty() || lambda - groups_.back().lambda_sum > degeneracy_tol(lambda)) {
        groups_.push_back(SpectralGroup{lambda, {}});
      }
      groups_.back().members.push_back(idx);
    }
  }

  CompositeObservable observable_;
  std::vector<GeneralizedEigenpair> pairs_;
  std::vector<std::vector<double>> factor_eigenvalues_;
  std::vector<std::vector<HilbertVector>> factor_eigenvectors_;
  std::vector<SpectralGroup> groups_;
};

// Diagonalizes each factor and forms all product eigenpairs. Pair order
// is row-major over the per-factor eigen indices (factor 1 slowest),
// with factor eigenvalues ascending; phases follow the eigh convention,
// so the decomposition is reproducible bit-for-bit across runs.
inline SpectralDecomposition spectral_decompose(const CompositeObservable &observable,
                                                double tol = kDefaultTol) {
  const std::size_t n = observable.factor_count();
  const std::size_t d = observable.dim();

  std::vector<std::vector<double>> factor_values(n);
  std::vector<std::vector<HilbertVector>> factor_vectors(n);
  std::vector<std::vector<std::size_t>> factor_mults(n);
  for (std::size_t k = 0; k < n; ++k) {
    const EighResult eig = eigh(observable.factor_op(k).matrix(), tol);
    factor_values[k] = eig.eigenvalues;
    for (std::size_t j = 0; j < d; ++j) {
      factor_vectors[k].emplace_back(eig.eigenvector(j));
      const bool degenerate_with_prev =
          j > 0 && eig.eigenvalues[j] - eig.eigenvalues[j - 1] <= degeneracy_tol(eig.eigenvalues[j]);
      factor_mults[k].push_back(degenerate_with_prev ? factor_mults[k].back() + 1 : 0);
    }
  }

  std::vector<GeneralizedEigenpair> pairs;
  pairs.reserve(observable.dense_size());
  std::vector<std::size_t> digits(n, 0);
  for (std::size_t p = 0; p < observable.dense_size(); ++p) {
    GeneralizedEigenpair pair{{},
                              {},
                              0.0,
                              Functional(FunctionalKind::Ket, TensorVector::zero(d, n)),
                              Functional(FunctionalKind::Bra, TensorVector::zero(d, n))};
    std::vector<HilbertVector> product_factors;
    for (std::size_t k = 0; k < n; ++k) {
      pair.lambdas.push_back(factor_values[k][digits[k]]);
      pair.mult_indices.push_back(factor_mults[k][digits[k]]);
      pair.lambda_sum += factor_values[k][digits[k]];
      product_factors.push_back(factor_vectors[k][digits[k]]);
    }
    const TensorVector rep = canonical_chi(product_factors);
    if (std::abs(rep.norm() - 1.0) > kExactTol) {
      throw numeric_error("spectral_decompose: eigenpair representing vector not unit norm");
    }
    const TensorVector image = observable.apply(rep);
    const double residual = image.max_abs_diff(rep * Cplx{pair.lambda_sum, 0.0});
    if (residual > tol) {
      throw numeric_error("spectral_decompose: eigen-residual " + std::to_string(residual) +
                          " exceeds tolerance");
    }
    pair.ket = composite_ket(rep);
    pair.bra = composite_bra(rep);
    pairs.push_back(std::move(pair));
    TensorVector::next_multi_index(digits, d);
  }

  return SpectralDecomposition(observable, std::move(pairs), std::move(factor_values),
                               std::move(factor_vectors));
}

// Expansion coefficients of phi over the product eigenbasis:
// c_p = <lambda_1| (x) ... (x) <lambda_N| (phi). The expansion of A phi
// has coefficients lambda_sum_p * c_p.
inline std::vector<Cplx> expand_ket(const SpectralDecomposition &sd, const TensorVector &phi) {
  std::vector<Cplx> coeffs;
  coeffs.reserve(sd.size());
  for (const GeneralizedEigenpair &pair : sd.pairs()) coeffs.push_back(pair.bra(phi));
  return coeffs;
}

// Coefficients of a product vector phi_1 (x) ... (x) phi_N computed
// factor-wise: c_p = prod_k <lambda_k, phi_k>. Agrees with expand_ket
// of the flattened product.
inline std::vector<Cplx> expand_product_ket(const SpectralDecomposition &sd,
                                            const std::vector<HilbertVector> &phis) {
  const std::size_t n = sd.observable().factor_count();
  if (phis.size() != n) throw model_error("expand_product_ket: factor count mismatch");
  std::vector<Cplx> coeffs;
  coeffs.reserve(sd.size());
  for (const GeneralizedEigenpair &pair : sd.pairs()) {
    Cplx c{1.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
      c *= inner(pair.ket.rep().terms().front().factors[k], phis[k]);
    }
    coeffs.push_back(c);
  }
  return coeffs;
}

// Bra-side coefficients <phi_k, lambda_k> products; conjugates of the
// ket coefficients.
inline std::vector<Cplx> expand_product_bra(const SpectralDecomposition &sd,
                                            const std::vector<HilbertVector> &phis) {
  const std::size_t n = sd.observable().factor_count();
  if (phis.size() != n) throw model_error("expand_product_bra: factor count mismatch");
  std::vector<Cplx> coeffs;
  coeffs.reserve(sd.size());
  for (const GeneralizedEigenpair &pair : sd.pairs()) {
    Cplx c{1.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
      c *= inner(phis[k], pair.ket.rep().terms().front().factors[k]);
    }
    coeffs.push_back(c);
  }
  return coeffs;
}

inline TensorVector reconstruct(const SpectralDecomposition &sd, const std::vector<Cplx> &coeffs) {
  if (coeffs.size() != sd.size()) throw model_error("reconstruct: coefficient count mismatch");
  TensorVector acc =
      TensorVector::zero(sd.observable().dim(), sd.observable().factor_count());
  for (std::size_t p = 0; p < coeffs.size(); ++p) acc += sd.pair(p).ket.rep() * coeffs[p];
  return acc;
}

// Parseval identity and its weighted variant over the counting measure:
//   <phi, psi>   = sum_p conj(c_p(phi)) c_p(psi)
//   <phi, A psi> = sum_p lambda_sum_p conj(c_p(phi)) c_p(psi).
inline CheckReport parseval_check(const SpectralDecomposition &sd, const TensorVector &phi,
                                  const TensorVector &psi, double tolerance = kDefaultTol) {
  const std::vector<Cplx> cphi = expand_ket(sd, phi);
  const std::vector<Cplx> cpsi = expand_ket(sd, psi);
  Cplx plain{0.0, 0.0}, weighted{0.0, 0.0};
  for (std::size_t p = 0; p < sd.size(); ++p) {
    const Cplx term = std::conj(cphi[p]) * cpsi[p];
    plain += term;
    weighted += sd.pair(p).lambda_sum * term;
  }
  const Cplx lhs_plain = tensor_inner(phi, psi);
  const Cplx lhs_weighted = tensor_inner(phi, sd.observable().apply(psi));
  const double residual =
      std::max(std::abs(lhs_plain - plain), std::abs(lhs_weighted - weighted));
  return CheckReport::from_residual("parseval", residual, tolerance);
}

// sum_p |lambda_p><lambda_p| = I on the dense tensor space.
inline CheckReport completeness_check(const SpectralDecomposition &sd,
                                      double tolerance = kDefaultTol) {
  const std::size_t size = sd.observable().dense_size();
  CMatrix sum(size, size);
  for (const GeneralizedEigenpair &pair : sd.pairs()) {
    const std::vector<Cplx> &rep = pair.ket.rep().dense();
    for (std::size_t i = 0; i < size; ++i) {
      if (rep[i] == Cplx{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < size; ++j) sum.at(i, j) += rep[i] * std::conj(rep[j]);
    }
  }
  const double residual = sum.max_abs_diff(CMatrix::identity(size));
  return CheckReport::from_residual("completeness", residual, tolerance);
}

// Kronecker-delta orthonormality per eigen-label tuple: the bra of pair
// p applied to the representing vector of pair q is delta_pq, including
// distinct labels with equal lambda_sum.
inline CheckReport orthonormality_check(const SpectralDecomposition &sd,
                                        double tolerance = kDefaultTol) {
  double residual = 0.0;
  for (std::size_t p = 0; p < sd.size(); ++p) {
    for (std::size_t q = 0; q < sd.size(); ++q) {
      const Cplx value = sd.pair(p).bra(sd.pair(q).ket.rep());
      const double expected = p == q ? 1.0 : 0.0;
      residual = std::max(residual, std::abs(value - Cplx{expected, 0.0}));
    }
  }
  return CheckReport::from_residual("orthonormality", residual, tolerance);
}

// Eigenequations of the tensored generalized eigenvectors: for every
// pair p and probe phi,
//   bra_p(A phi) = lambda_sum_p * bra_p(phi),
//   ket_p(A phi) = lambda_sum_p * ket_p(phi)
// (lambda_sum is real, so the anti-linear ket chain closes too).
inline CheckReport eigenequation_check(const SpectralDecomposition &sd,
                                       const CompositeObservable &observable,
                                       const std::vector<TensorVector> &probes,
                                       double tolerance = kDefaultTol) {
  if (probes.empty()) throw model_error("eigenequation_check: needs at least one probe");
  double residual = 0.0;
  for (const TensorVector &probe : probes) {
    const TensorVector image = observable.apply(probe);
    for (const GeneralizedEigenpair &pair : sd.pairs()) {
      const Cplx lam{pair.lambda_sum, 0.0};
      residual = std::max(residual, std::abs(pair.bra(image) - lam * pair.bra(probe)));
      residual = std::max(residual, std::abs(pair.ket(image) - lam * pair.ket(probe)));
    }
  }
  return CheckReport::from_residual("eigenequation", residual, tolerance);
}

// Extension of a Hermitian operator to the dual spaces:
// (O^ f)(phi) = f(O phi), realized on the representing vector as
// rep' = O rep (valid for both kinds because O is Hermitian).
inline Functional extend_operator(const CMatrix &op, const Functional &f,
                                  double hermitian_tol = kDefaultTol) {
  if (op.rows() != f.rep().dense_size()) {
    throw model_error("extend_operator: operator size does not match functional space");
  }
  const double defect = op.hermiticity_defect();
  if (defect > hermitian_tol) {
    throw contract_error("extend_operator: operator is not Hermitian (max asymmetry " +
                             std::to_string(defect) + ")",
                         defect);
  }
  return Functional(f.kind(), TensorVector::from_dense(f.rep().dim(), f.rep().factor_count(),
                                                       op.apply(f.rep().dense())));
}

inline Functional extend_operator(const CompositeObservable &observable, const Functional &f) {
  return extend_operator(observable.dense(), f);
}

// Two-path check of A^ = A1^ (x) I2^ + I1^ (x) A2^ on finite sums of
// single-factor functional products. The left side goes through the
// composite dense extension; the right side is evaluated term by term
// with factor-level operations only.
inline CheckReport check_extension_relation(const FactorObservable &a1, const FactorObservable &a2,
                                            const std::vector<std::pair<Functional, Functional>> &f_terms,
                                            const std::vector<TensorVector> &probes,
                                            double tolerance = kDefaultTol) {
  if (f_terms.empty()) throw model_error("check_extension_relation: needs at least one term");
  if (probes.empty()) throw model_error("check_extension_relation: needs at least one probe");
  const FunctionalKind kind = f_terms.front().first.kind();
  for (const auto &[f1, f2] : f_terms) {
    if (f1.kind() != kind || f2.kind() != kind) {
      throw contract_error("check_extension_relation: mixed bra/ket kinds");
    }
    if (f1.factor_count() != 1 || f2.factor_count() != 1) {
      throw model_error("check_extension_relation: terms must be single-factor functionals");
    }
  }

  // Left path: composite extension of the assembled functional.
  const CompositeObservable composite({a1, a2});
  Functional assembled(kind, TensorVector::zero(a1.dim(), 2));
  for (const auto &[f1, f2] : f_terms) assembled = assembled + functional_tensor({f1, f2});
  const Functional left = extend_operator(composite, assembled);

  double residual = 0.0;
  for (const TensorVector &probe : probes) {
    if (probe.factor_count() != 2) {
      throw model_error("check_extension_relation: probes must be two-factor tensors");
    }
    Cplx right{0.0, 0.0};
    for (const auto &[f1, f2] : f_terms) {
      for (const SimpleTensor &term : probe.terms()) {
        const Cplx w = kind == FunctionalKind::Ket ? std::conj(term.weight) : term.weight;
        const HilbertVector &p1 = term.factors[0];
        const HilbertVector &p2 = term.factors[1];
        right += w * (f1(apply(a1.matrix(), p1)) * f2(p2) + f1(p1) * f2(apply(a2.matrix(), p2)));
      }
    }
    residual = std::max(residual, std::abs(left(probe) - right));
  }
  return CheckReport::from_residual("extension_relation", residual, tolerance,
                                    std::string(to_string(kind)) + " kind, " +
                                        std::to_string(f_terms.size()) + " terms");
}

// Lemma: if B is Hermitian and commutes with A, then B^ maps each
// generalized eigenvector of A to a generalized eigenvector with the
// same eigenvalue:
//   A^(B^ ket_p) = lambda_p B^ ket_p,   (bra_p o B^) o A^ = lambda_p (bra_p o B^).
inline CheckReport lemma_commuting_check(const CompositeObservable &observable, const CMatrix &b,
                                         const SpectralDecomposition &sd,
                                         const std::vector<TensorVector> &probes,
                                         double tolerance = kDefaultTol) {
  if (probes.empty()) throw model_error("lemma_commuting_check: needs at least one probe");
  if (b.rows() != observable.dense_size() || b.cols() != observable.dense_size()) {
    throw model_error("lemma_commuting_check: B has the wrong shape");
  }
  const double defect = b.hermiticity_defect();
  if (defect > tolerance) {
    throw contract_error("lemma_commuting_check: B is not Hermitian (max asymmetry " +
                             std::to_string(defect) + ")",
                         defect);
  }
  const double comm = commutator_norm(observable.dense(), b);
  if (comm > tolerance) {
    throw precondition_error("lemma_commuting_check: A and B do not commute (||[A,B]|| = " +
                                 std::to_string(comm) + ")",
                             comm);
  }
  double residual = 0.0;
  for (const GeneralizedEigenpair &pair : sd.pairs()) {
    const Cplx lam{pair.lambda_sum, 0.0};
    const Functional bket = extend_operator(b, pair.ket, tolerance);
    const Functional abket = extend_operator(observable.dense(), bket, tolerance);
    const Functional bbra = extend_operator(b, pair.bra, tolerance);
    const Functional abbra = extend_operator(observable.dense(), bbra, tolerance);
    for (const TensorVector &probe : probes) {
      residual = std::max(residual, std::abs(abket(probe) - lam * bket(probe)));
      residual = std::max(residual, std::abs(abbra(probe) - lam * bbra(probe)));
    }
  }
  return CheckReport::from_residual("lemma_commuting", residual, tolerance,
                                    "||[A,B]|| = " + detail::format_real(comm));
}

// P~_c applied to an eigen-ket (or eigen-bra): the (anti)symmetrized
// generalized eigenvector (1/N!) sum_sigma c(sigma)
// |lambda_sigma(1)> (x) ... (x) |lambda_sigma(N)>. May be zero.
inline Functional symmetrized_eigenvector(const SpectralDecomposition &sd, std::size_t pair_index,
                                          SymmetrizerKind kind,
                                          FunctionalKind which = FunctionalKind::Ket) {
  const GeneralizedEigenpair &pair = sd.pair(pair_index);
  return dual_projector(kind, which == FunctionalKind::Ket ? pair.ket : pair.bra);
}

// With identical factor observables, [A, P_c] = 0 and every nonzero
// symmetrized eigenvector satisfies the same eigenequation as the pair
// it came from. Unequal factor observables are rejected, carrying the
// measured commutator norm.
inline CheckReport symmetrized_eigenequation_check(const CompositeObservable &observable,
                                                   const SpectralDecomposition &sd,
                                                   SymmetrizerKind kind,
                                                   const std::vector<TensorVector> &probes,
                                                   double tolerance = kDefaultTol) {
  if (probes.empty()) throw model_error("symmetrized_eigenequation_check: needs at least one probe");
  const std::size_t n = observable.factor_count();
  const CMatrix pmat = projector_matrix(kind, observable.dim(), n);
  const double comm = commutator_norm(observable.dense(), pmat);
  for (std::size_t k = 1; k < n; ++k) {
    const double diff =
        observable.factor_op(k).matrix().max_abs_diff(observable.factor_op(0).matrix());
    if (diff > tolerance) {
      throw precondition_error(
          "symmetrized_eigenequation_check: factor observables differ (||[A,P_c]|| = " +
              std::to_string(comm) + ")",
          comm);
    }
  }
  if (comm > tolerance) {
    throw precondition_error("symmetrized_eigenequation_check: ||[A,P_c]|| = " +
                                 std::to_string(comm),
                             comm);
  }
  double residual = 0.0;
  std::size_t nonzero = 0;
  for (std::size_t p = 0; p < sd.size(); ++p) {
    const Cplx lam{sd.pair(p).lambda_sum, 0.0};
    for (FunctionalKind which : {FunctionalKind::Ket, FunctionalKind::Bra}) {
      const Functional sym = symmetrized_eigenvector(sd, p, kind, which);
      if (sym.is_zero(tolerance)) continue; // vacuous
      ++nonzero;
      const Functional image = extend_operator(observable, sym);
      for (const TensorVector &probe : probes) {
        residual = std::max(residual, std::abs(image(probe) - lam * sym(probe)));
      }
    }
  }
  return CheckReport::from_residual(
      std::string("symmetrized_eigenequation_") + to_string(kind), residual, tolerance,
      std::to_string(nonzero) + " nonzero symmetrized vectors, ||[A,P_c]|| = " +
          detail::format_real(comm));
}

} // namespace braket

#endif
