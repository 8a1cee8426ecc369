#ifndef BRAKET_SUITES_HPP
#define BRAKET_SUITES_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "braket/dsl.hpp"
#include "braket/error.hpp"
#include "braket/functional.hpp"
#include "braket/matrix.hpp"
#include "braket/model.hpp"
#include "braket/model_file.hpp"
#include "braket/observable.hpp"
#include "braket/permutation.hpp"
#include "braket/random.hpp"
#include "braket/report.hpp"

namespace braket {

struct SuiteOptions {
  std::uint64_t seed = kDefaultSeed;
  std::optional<double> tol_override;

  double residual_tol() const { return tol_override.value_or(kDefaultTol); }
  double exact_tol() const { return tol_override.value_or(kExactTol); }
};

inline const std::vector<std::string> &all_suite_names() {
  static const std::vector<std::string> names = {
      "identification", "permutation", "spectral", "extension", "lemma", "symmetrization",
      "expressions"};
  return names;
}

namespace suites_detail {

inline Rng check_rng(const SuiteOptions &opts, std::string_view check_name) {
  return Rng(derive_seed(opts.seed, check_name));
}

// --------------------------------------------------------------- identification

inline void run_identification(const ModelFile &model, const SuiteOptions &opts,
                               std::vector<CheckReport> &out) {
  const std::size_t d = model.config.dim;
  const std::size_t n = model.config.factors;

  {
    // Basis tuples evaluated on every basis simple tensor.
    std::vector<HilbertVector> factors;
    for (std::size_t k = 0; k < n; ++k) factors.push_back(HilbertVector::basis(d, k % d));
    std::vector<TensorVector> probes;
    std::vector<std::size_t> digits(n, 0);
    for (std::size_t i = 0; i < checked_dense_size(d, n); ++i) {
      std::vector<HilbertVector> fs;
      for (std::size_t k = 0; k < n; ++k) fs.push_back(HilbertVector::basis(d, digits[k]));
      probes.push_back(canonical_chi(fs));
      TensorVector::next_multi_index(digits, d);
    }
    CheckReport r = check_identification(factors, probes, opts.exact_tol());
    r.name = "identification.basis";
    out.push_back(std::move(r));
  }

  {
    Rng rng = check_rng(opts, "identification.random");
    double residual = 0.0;
    for (int round = 0; round < 20; ++round) {
      const CheckReport r =
          check_identification(rng.vectors(n, d), rng.tensors(20, d, n), opts.exact_tol());
      residual = std::max(residual, r.residual);
    }
    out.push_back(CheckReport::from_residual("identification.random", residual, opts.exact_tol(),
                                             "20 tuples x 20 probes"));
  }

  {
    // conjugate maps the ket identification to the bra identification
    Rng rng = check_rng(opts, "identification.conjugate");
    double residual = 0.0;
    for (int round = 0; round < 10; ++round) {
      const std::vector<HilbertVector> factors = rng.vectors(n, d);
      const Functional flipped = conjugate(composite_ket(canonical_chi(factors)));
      std::vector<Functional> bras;
      for (const HilbertVector &f : factors) bras.push_back(make_bra(f));
      for (const TensorVector &probe : rng.tensors(10, d, n)) {
        residual = std::max(residual, std::abs(flipped(probe) - product_evaluate(bras, probe)));
      }
    }
    out.push_back(CheckReport::from_residual("identification.conjugate", residual,
                                             opts.exact_tol(), "10 tuples x 10 probes"));
  }
}

// ----------------------------------------------------------------- permutation

inline void run_permutation(const ModelFile &model, const SuiteOptions &opts,
                            std::vector<CheckReport> &out) {
  const std::size_t d = model.config.dim;
  const std::size_t n = model.config.factors;
  const std::vector<Permutation> group = enumerate_group(n);
  // N! dense passes per projector call; scale the sample counts down for
  // the large permutation-only models.
  const int rounds = n >= 6 ? 2 : 5;
  const std::size_t probes = n >= 6 ? 3 : 10;

  {
    Rng rng = check_rng(opts, "permutation.unitarity");
    double residual = 0.0;
    for (int round = 0; round < rounds; ++round) {
      const TensorVector s = rng.tensor(d, n);
      const TensorVector t = rng.tensor(d, n);
      const Cplx plain = tensor_inner(s, t);
      for (const Permutation &sigma : group) {
        residual = std::max(
            residual,
            std::abs(tensor_inner(apply_permutation(sigma, s), apply_permutation(sigma, t)) -
                     plain));
      }
    }
    out.push_back(CheckReport::from_residual("permutation.unitarity", residual, opts.exact_tol(),
                                             std::to_string(group.size()) + " permutations"));
  }

  {
    // U_tau(U_sigma(t)) = U_{sigma o tau}(t) under the slot rule.
    Rng rng = check_rng(opts, "permutation.composition");
    double residual = 0.0;
    const TensorVector t = rng.tensor(d, n);
    const std::size_t max_pairs = 64;
    std::size_t tried = 0;
    for (const Permutation &sigma : group) {
      for (const Permutation &tau : group) {
        if (tried >= max_pairs) break;
        ++tried;
        const TensorVector lhs = apply_permutation(tau, apply_permutation(sigma, t));
        const TensorVector rhs = apply_permutation(compose(sigma, tau), t);
        residual = std::max(residual, lhs.max_abs_diff(rhs));
      }
    }
    out.push_back(CheckReport::from_residual("permutation.composition", residual, opts.exact_tol(),
                                             std::to_string(tried) + " pairs"));
  }

  for (SymmetrizerKind kind : {SymmetrizerKind::Sym, SymmetrizerKind::Antisym}) {
    Rng rng = check_rng(opts, std::string("permutation.projector_") + to_string(kind));
    double idem = 0.0, selfadj = 0.0;
    for (int round = 0; round < rounds; ++round) {
      const TensorVector t = rng.tensor(d, n);
      const TensorVector s = rng.tensor(d, n);
      const TensorVector pt = projector(kind, t);
      idem = std::max(idem, projector(kind, pt).max_abs_diff(pt));
      selfadj = std::max(selfadj,
                         std::abs(tensor_inner(pt, s) - tensor_inner(t, projector(kind, s))));
    }
    out.push_back(CheckReport::from_residual(
        std::string("permutation.idempotence_") + to_string(kind), idem, opts.exact_tol()));
    out.push_back(CheckReport::from_residual(
        std::string("permutation.selfadjoint_") + to_string(kind), selfadj, opts.exact_tol()));
  }

  if (n == 2) {
    const CMatrix sum = projector_matrix(SymmetrizerKind::Sym, d, n) +
                        projector_matrix(SymmetrizerKind::Antisym, d, n);
    const double residual = sum.max_abs_diff(CMatrix::identity(sum.rows()));
    out.push_back(CheckReport::from_residual("permutation.sym_plus_antisym_identity", residual,
                                             opts.exact_tol(), "N=2"));
  }
  if (n == 3 && d >= 2) {
    const std::size_t rank_sum = projector_rank(SymmetrizerKind::Sym, d, n) +
                                 projector_rank(SymmetrizerKind::Antisym, d, n);
    const std::size_t full = checked_dense_size(d, n);
    const double deficit_missing = rank_sum + 1 <= full ? 0.0 : 1.0;
    out.push_back(CheckReport::from_residual(
        "permutation.mixed_symmetry_rank", deficit_missing, 0.0,
        "rank(P_sym)+rank(P_antisym)=" + std::to_string(rank_sum) + " of " + std::to_string(full)));
  }

  {
    // Definitional evaluation f(P_c phi) against the representation
    // shortcut.
    Rng rng = check_rng(opts, "permutation.dual_projector");
    double residual = 0.0;
    for (int round = 0; round < 2 * rounds; ++round) {
      const FunctionalKind fk = round % 2 == 0 ? FunctionalKind::Ket : FunctionalKind::Bra;
      const Functional f(fk, rng.tensor(d, n));
      for (SymmetrizerKind kind : {SymmetrizerKind::Sym, SymmetrizerKind::Antisym}) {
        const Functional shortcut = dual_projector(kind, f);
        for (const TensorVector &probe : rng.tensors(probes, d, n)) {
          residual = std::max(residual, std::abs(shortcut(probe) - f(projector(kind, probe))));
        }
      }
    }
    out.push_back(CheckReport::from_residual("permutation.dual_projector", residual,
                                             opts.exact_tol(),
                                             std::to_string(2 * rounds) + " functionals x " +
                                                 std::to_string(probes) + " probes"));
  }

  {
    Rng rng = check_rng(opts, "permutation.membership");
    double residual = 0.0;
    std::string detail = "projected functionals are fixed points";
    for (SymmetrizerKind kind : {SymmetrizerKind::Sym, SymmetrizerKind::Antisym}) {
      const Functional f(FunctionalKind::Ket, rng.tensor(d, n));
      const MembershipResult member =
          is_in_symmetric_space(dual_projector(kind, f), kind, opts.exact_tol());
      residual = std::max(residual, member.residual);
      const Functional zero(FunctionalKind::Bra, TensorVector::zero(d, n));
      if (!is_in_symmetric_space(zero, kind, opts.exact_tol()).member) residual = 1.0;
    }
    if (d >= 2) {
      std::vector<HilbertVector> fs;
      for (std::size_t k = 0; k < n; ++k) fs.push_back(HilbertVector::basis(d, k % d));
      const Functional raw = composite_ket(canonical_chi(fs));
      for (SymmetrizerKind kind : {SymmetrizerKind::Sym, SymmetrizerKind::Antisym}) {
        if (is_in_symmetric_space(raw, kind, opts.exact_tol()).member) residual = 1.0;
      }
      detail += "; raw basis product is not";
    }
    out.push_back(
        CheckReport::from_residual("permutation.membership", residual, opts.exact_tol(), detail));
  }
}

// -------------------------------------------------------------------- spectral

inline void run_spectral(const ModelFile &model, const SuiteOptions &opts,
                         std::vector<CheckReport> &out) {
  const std::size_t d = model.config.dim;
  const std::size_t n = model.config.factors;
  const CompositeObservable observable = model.composite();
  const SpectralDecomposition sd = spectral_decompose(observable, opts.residual_tol());

  {
    // {lambda_sum} must equal the sumset of the factor spectra, exactly.
    std::vector<double> sums;
    for (const GeneralizedEigenpair &pair : sd.pairs()) sums.push_back(pair.lambda_sum);
    std::vector<double> sumset;
    std::vector<std::size_t> digits(n, 0);
    for (std::size_t i = 0; i < sd.size(); ++i) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += sd.factor_eigenvalues(k)[digits[k]];
      sumset.push_back(s);
      TensorVector::next_multi_index(digits, d);
    }
    std::sort(sums.begin(), sums.end());
    std::sort(sumset.begin(), sumset.end());
    double residual = 0.0;
    for (std::size_t i = 0; i < sums.size(); ++i) {
      residual = std::max(residual, std::abs(sums[i] - sumset[i]));
    }
    out.push_back(CheckReport::from_residual("spectral.sumset", residual, 0.0,
                                             std::to_string(sd.groups().size()) +
                                                 " distinct sums"));
  }

  {
    Rng rng = check_rng(opts, "spectral.reconstruction");
    double residual = 0.0;
    for (int round = 0; round < 20; ++round) {
      const TensorVector phi = rng.tensor(d, n);
      residual = std::max(residual, reconstruct(sd, expand_ket(sd, phi)).max_abs_diff(phi));
    }
    out.push_back(CheckReport::from_residual("spectral.reconstruction", residual,
                                             opts.residual_tol(), "20 random vectors"));
  }

  {
    Rng rng = check_rng(opts, "spectral.parseval");
    double residual = 0.0;
    for (int round = 0; round < 20; ++round) {
      residual = std::max(
          residual,
          parseval_check(sd, rng.tensor(d, n), rng.tensor(d, n), opts.residual_tol()).residual);
    }
    out.push_back(CheckReport::from_residual("spectral.parseval", residual, opts.residual_tol(),
                                             "plain and lambda-weighted, 20 pairs"));
  }

  {
    CheckReport r = completeness_check(sd, opts.residual_tol());
    r.name = "spectral.completeness";
    out.push_back(std::move(r));
  }
  {
    CheckReport r = orthonormality_check(sd, opts.residual_tol());
    r.name = "spectral.orthonormality";
    r.detail = "Kronecker delta per eigen-label";
    out.push_back(std::move(r));
  }
  {
    Rng rng = check_rng(opts, "spectral.eigenequation");
    CheckReport r = eigenequation_check(sd, observable, rng.tensors(20, d, n), opts.residual_tol());
    r.name = "spectral.eigenequation";
    out.push_back(std::move(r));
  }

  {
    // Product vectors expand with factor-wise coefficients; bra
    // coefficients conjugate the ket ones.
    Rng rng = check_rng(opts, "spectral.product_expansion");
    double residual = 0.0;
    for (int round = 0; round < 10; ++round) {
      const std::vector<HilbertVector> phis = rng.vectors(n, d);
      const std::vector<Cplx> product = expand_product_ket(sd, phis);
      const std::vector<Cplx> direct = expand_ket(sd, canonical_chi(phis));
      const std::vector<Cplx> bra = expand_product_bra(sd, phis);
      for (std::size_t p = 0; p < product.size(); ++p) {
        residual = std::max(residual, std::abs(product[p] - direct[p]));
        residual = std::max(residual, std::abs(bra[p] - std::conj(product[p])));
      }
    }
    out.push_back(CheckReport::from_residual("spectral.product_expansion", residual,
                                             opts.exact_tol(), "10 product tuples"));
  }

  {
    // Expansion of A phi = expansion of phi weighted by lambda_sum.
    Rng rng = check_rng(opts, "spectral.image_expansion");
    double residual = 0.0;
    for (int round = 0; round < 10; ++round) {
      const TensorVector phi = rng.tensor(d, n);
      const std::vector<Cplx> base = expand_ket(sd, phi);
      const std::vector<Cplx> image = expand_ket(sd, observable.apply(phi));
      for (std::size_t p = 0; p < base.size(); ++p) {
        residual = std::max(residual, std::abs(image[p] - sd.pair(p).lambda_sum * base[p]));
      }
    }
    out.push_back(CheckReport::from_residual("spectral.image_expansion", residual,
                                             opts.residual_tol(), "10 random vectors"));
  }
}

// ------------------------------------------------------------------- extension

inline void run_extension(const ModelFile &model, const SuiteOptions &opts,
                          std::vector<CheckReport> &out) {
  const std::size_t d = model.config.dim;
  const std::size_t n = model.config.factors;
  const CompositeObservable observable = model.composite();

  {
    // (A^ f)(phi) = f(A phi): shortcut against definition.
    Rng rng = check_rng(opts, "extension.shortcut");
    double residual = 0.0;
    for (int round = 0; round < 10; ++round) {
      const FunctionalKind fk = round % 2 == 0 ? FunctionalKind::Ket : FunctionalKind::Bra;
      const Functional f(fk, rng.tensor(d, n));
      const Functional extended = extend_operator(observable, f);
      for (const TensorVector &probe : rng.tensors(10, d, n)) {
        residual = std::max(residual, std::abs(extended(probe) - f(observable.apply(probe))));
      }
    }
    out.push_back(CheckReport::from_residual("extension.shortcut", residual, opts.exact_tol(),
                                             "10 functionals x 10 probes"));
  }

  {
    const SpectralDecomposition sd = spectral_decompose(observable, opts.residual_tol());
    Rng rng = check_rng(opts, "extension.eigenfunctional");
    const std::vector<TensorVector> probes = rng.tensors(10, d, n);
    double residual = 0.0;
    for (const GeneralizedEigenpair &pair : sd.pairs()) {
      const Cplx lam{pair.lambda_sum, 0.0};
      const Functional ket_image = extend_operator(observable, pair.ket);
      const Functional bra_image = extend_operator(observable, pair.bra);
      for (const TensorVector &probe : probes) {
        residual = std::max(residual, std::abs(ket_image(probe) - lam * pair.ket(probe)));
        residual = std::max(residual, std::abs(bra_image(probe) - lam * pair.bra(probe)));
      }
    }
    out.push_back(CheckReport::from_residual("extension.eigenfunctional", residual,
                                             opts.residual_tol(),
                                             "A^ ket = lambda ket, bra A^ = lambda bra"));
  }

  {
    // A^ commutes with conjugation for Hermitian A.
    Rng rng = check_rng(opts, "extension.conjugation");
    double residual = 0.0;
    for (int round = 0; round < 10; ++round) {
      const FunctionalKind fk = round % 2 == 0 ? FunctionalKind::Ket : FunctionalKind::Bra;
      const Functional f(fk, rng.tensor(d, n));
      const Functional lhs = extend_operator(observable, conjugate(f));
      const Functional rhs = conjugate(extend_operator(observable, f));
      for (const TensorVector &probe : rng.tensors(5, d, n)) {
        residual = std::max(residual, std::abs(lhs(probe) - rhs(probe)));
      }
    }
    out.push_back(CheckReport::from_residual("extension.conjugation", residual, opts.exact_tol()));
  }

  if (n == 2) {
    Rng rng = check_rng(opts, "extension.factorized");
    const FactorObservable &a1 = model.find_observable(model.composite_names[0]);
    const FactorObservable &a2 = model.find_observable(model.composite_names[1]);
    double residual = 0.0;
    for (FunctionalKind fk : {FunctionalKind::Bra, FunctionalKind::Ket}) {
      for (int round = 0; round < 5; ++round) {
        std::vector<std::pair<Functional, Functional>> terms;
        for (int t = 0; t < 5; ++t) {
          terms.emplace_back(Functional(fk, as_tensor(rng.vector(d))),
                             Functional(fk, as_tensor(rng.vector(d))));
        }
        const CheckReport r =
            check_extension_relation(a1, a2, terms, rng.tensors(10, d, 2), opts.residual_tol());
        residual = std::max(residual, r.residual);
      }
    }
    out.push_back(CheckReport::from_residual("extension.factorized", residual, opts.residual_tol(),
                                             "A^ = A1^ (x) I2^ + I1^ (x) A2^ on 5-term sums"));
  }
}

// ----------------------------------------------------------------------- lemma

inline void run_lemma(const ModelFile &model, const SuiteOptions &opts,
                      std::vector<CheckReport> &out) {
  const std::size_t d = model.config.dim;
  const std::size_t n = model.config.factors;
  const CompositeObservable observable = model.composite();
  const SpectralDecomposition sd = spectral_decompose(observable, opts.residual_tol());
  const CMatrix &a = observable.dense();

  {
    // B = c0 I + c1 A + c2 A^2 always commutes with A.
    Rng rng = check_rng(opts, "lemma.polynomial_in_A");
    double residual = 0.0;
    for (int round = 0; round < 3; ++round) {
      CMatrix b = CMatrix::identity(a.rows());
      b *= Cplx{rng.real(), 0.0};
      b += Cplx{rng.real(), 0.0} * a;
      b += Cplx{rng.real(), 0.0} * (a * a);
      const CheckReport r =
          lemma_commuting_check(observable, b, sd, rng.tensors(10, d, n), opts.residual_tol());
      residual = std::max(residual, r.residual);
    }
    out.push_back(CheckReport::from_residual("lemma.polynomial_in_A", residual,
                                             opts.residual_tol(), "3 random polynomials"));
  }

  {
    // B = sum_i lift of p_i(A_i): polynomials in the factor
    // observables, lifted slot-wise.
    Rng rng = check_rng(opts, "lemma.factor_polynomials");
    double residual = 0.0;
    for (int round = 0; round < 3; ++round) {
      std::vector<FactorObservable> lifted;
      for (std::size_t k = 0; k < n; ++k) {
        const CMatrix &ak = observable.factor_op(k).matrix();
        CMatrix pk = CMatrix::identity(d);
        pk *= Cplx{rng.real(), 0.0};
        pk += Cplx{rng.real(), 0.0} * ak;
        pk += Cplx{rng.real(), 0.0} * (ak * ak);
        lifted.emplace_back(std::move(pk), opts.residual_tol());
      }
      const CMatrix b = CompositeObservable(std::move(lifted)).dense();
      const CheckReport r =
          lemma_commuting_check(observable, b, sd, rng.tensors(10, d, n), opts.residual_tol());
      residual = std::max(residual, r.residual);
    }
    out.push_back(CheckReport::from_residual("lemma.factor_polynomials", residual,
                                             opts.residual_tol(), "3 random factor polynomials"));
  }

  {
    // Negative control: a random Hermitian B that does not commute must
    // be rejected with the commutator norm attached.
    Rng rng = check_rng(opts, "lemma.noncommuting_rejected");
    const Cplx mean_diag = [&] {
      Cplx tr{0.0, 0.0};
      for (std::size_t i = 0; i < a.rows(); ++i) tr += a.at(i, i);
      return tr * Cplx{1.0 / static_cast<double>(a.rows()), 0.0};
    }();
    CMatrix centered = a;
    centered -= mean_diag * CMatrix::identity(a.rows());
    if (centered.max_abs() <= opts.residual_tol()) {
      out.push_back(CheckReport::from_residual("lemma.noncommuting_rejected", 0.0, 0.0,
                                               "A is a multiple of the identity; vacuous"));
    } else {
      const CMatrix b = rng.hermitian(a.rows());
      double residual = 1.0;
      std::string detail = "rejection expected but not raised";
      try {
        lemma_commuting_check(observable, b, sd, rng.tensors(2, d, n), opts.residual_tol());
      } catch (const precondition_error &e) {
        residual = e.magnitude() > opts.residual_tol() ? 0.0 : 1.0;
        detail = "rejected with ||[A,B]|| = " + detail::format_real(e.magnitude());
      }
      out.push_back(
          CheckReport::from_residual("lemma.noncommuting_rejected", residual, 0.0, detail));
    }
  }
}

// -------------------------------------------------------------- symmetrization

inline void run_symmetrization(const ModelFile &model, const SuiteOptions &opts,
                               std::vector<CheckReport> &out) {
  const std::size_t d = model.config.dim;
  const std::size_t n = model.config.factors;
  const CompositeObservable observable = model.composite();

  bool identical = true;
  for (std::size_t k = 1; k < n; ++k) {
    if (observable.factor_op(k).matrix().max_abs_diff(observable.factor_op(0).matrix()) >
        opts.exact_tol()) {
      identical = false;
    }
  }

  if (!identical) {
    // Config-driven negative control: the composite with unequal factor
    // observables must fail to commute with the symmetrizer and be
    // rejected by the symmetrized eigenequation check.
    const double comm =
        commutator_norm(observable.dense(), projector_matrix(SymmetrizerKind::Sym, d, n));
    out.push_back(CheckReport::from_residual(
        "symmetrization.negative_control", std::max(0.0, 1e-6 - comm), 0.0,
        "unequal factor observables, ||[A,P_sym]|| = " + detail::format_real(comm)));
    Rng rng = check_rng(opts, "symmetrization.rejection");
    const SpectralDecomposition sd = spectral_decompose(observable, opts.residual_tol());
    double residual = 1.0;
    std::string detail = "rejection expected but not raised";
    try {
      symmetrized_eigenequation_check(observable, sd, SymmetrizerKind::Sym,
                                      rng.tensors(2, d, n), opts.residual_tol());
    } catch (const precondition_error &e) {
      residual = 0.0;
      detail = "rejected with ||[A,P_c]|| = " + detail::format_real(e.magnitude());
    }
    out.push_back(CheckReport::from_residual("symmetrization.rejection", residual, 0.0, detail));
    return;
  }

  for (SymmetrizerKind kind : {SymmetrizerKind::Sym, SymmetrizerKind::Antisym}) {
    const double comm = commutator_norm(observable.dense(), projector_matrix(kind, d, n));
    out.push_back(CheckReport::from_residual(
        std::string("symmetrization.commutator_") + to_string(kind), comm, opts.exact_tol()));
  }

  const SpectralDecomposition sd = spectral_decompose(observable, opts.residual_tol());
  for (SymmetrizerKind kind : {SymmetrizerKind::Sym, SymmetrizerKind::Antisym}) {
    const std::string name = std::string("symmetrization.eigenequation_") + to_string(kind);
    Rng rng = check_rng(opts, name);
    CheckReport r = symmetrized_eigenequation_check(observable, sd, kind, rng.tensors(10, d, n),
                                                    opts.residual_tol());
    r.name = name;
    out.push_back(std::move(r));
  }

  if (d >= 2) {
    // Synthetic negative control: perturb one factor and verify the
    // commutation breaks.
    CMatrix perturbed = observable.factor_op(0).matrix();
    for (std::size_t i = 0; i < d; ++i) {
      perturbed.at(i, i) += Cplx{static_cast<double>(i + 1), 0.0};
    }
    std::vector<FactorObservable> ops;
    ops.emplace_back(observable.factor_op(0).matrix(), opts.residual_tol());
    for (std::size_t k = 1; k < n; ++k) ops.emplace_back(perturbed, opts.residual_tol());
    const CompositeObservable unequal(std::move(ops));
    const double comm =
        commutator_norm(unequal.dense(), projector_matrix(SymmetrizerKind::Sym, d, n));
    out.push_back(CheckReport::from_residual(
        "symmetrization.negative_control", std::max(0.0, 1e-6 - comm), 0.0,
        "perturbed factor, ||[A,P_sym]|| = " + detail::format_real(comm)));
  }
}

// ----------------------------------------------------------------- expressions

inline void run_expressions(const ModelFile &model, const SuiteOptions &opts,
                            std::vector<CheckReport> &out) {
  const dsl::Bindings bindings = model.bindings();
  for (const ModelFile::ExpressionCheck &entry : model.expressions) {
    const std::string name = "#expr " + entry.expr;
    try {
      const dsl::Value value = dsl::evaluate(entry.expr, bindings);
      if (entry.expect) {
        const Cplx *scalar = std::get_if<Cplx>(&value);
        if (!scalar) {
          out.push_back(CheckReport::error(name, opts.exact_tol(),
                                           "expected a scalar, got " + dsl::describe(value)));
          continue;
        }
        out.push_back(CheckReport::from_residual(name, std::abs(*scalar - *entry.expect),
                                                 opts.exact_tol(),
                                                 "value " + dsl::describe(value)));
      } else {
        out.push_back(
            CheckReport::from_residual(name, 0.0, opts.exact_tol(), dsl::describe(value)));
      }
    } catch (const error &e) {
      out.push_back(CheckReport::error(name, opts.exact_tol(), e.what()));
    }
  }
}

} // namespace suites_detail

inline bool suite_needs_composite(std::string_view name) {
  return name == "spectral" || name == "extension" || name == "lemma" || name == "symmetrization";
}

// Runs one named suite. Suites that need a composite observable throw
// model_error when the model has none.
inline std::vector<CheckReport> run_suite(std::string_view name, const ModelFile &model,
                                          const SuiteOptions &opts) {
  if (suite_needs_composite(name) && !model.has_composite()) {
    throw model_error("suite '" + std::string(name) + "' needs a composite observable");
  }
  std::vector<CheckReport> out;
  if (name == "identification") {
    suites_detail::run_identification(model, opts, out);
  } else if (name == "permutation") {
    suites_detail::run_permutation(model, opts, out);
  } else if (name == "spectral") {
    suites_detail::run_spectral(model, opts, out);
  } else if (name == "extension") {
    suites_detail::run_extension(model, opts, out);
  } else if (name == "lemma") {
    suites_detail::run_lemma(model, opts, out);
  } else if (name == "symmetrization") {
    suites_detail::run_symmetrization(model, opts, out);
  } else if (name == "expressions") {
    suites_detail::run_expressions(model, opts, out);
  } else {
    throw model_error("unknown suite '" + std::string(name) + "'");
  }
  return out;
}

// Runs the selected suites (explicit list, else the model's list, else
// every applicable suite), emitting reports in declaration order.
inline std::vector<CheckReport> run_checks(const ModelFile &model,
                                           std::vector<std::string> selected,
                                           const SuiteOptions &opts) {
  const bool defaulted = selected.empty() && model.suites.empty();
  if (selected.empty()) selected = model.suites;
  if (selected.empty()) selected = all_suite_names();
  std::vector<CheckReport> out;
  for (const std::string &name : selected) {
    if (defaulted && suite_needs_composite(name) && !model.has_composite()) continue;
    if (defaulted && name == "expressions" && model.expressions.empty()) continue;
    for (CheckReport &r : run_suite(name, model, opts)) out.push_back(std::move(r));
  }
  return out;
}

} // namespace braket

#endif
