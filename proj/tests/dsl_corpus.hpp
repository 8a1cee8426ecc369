#ifndef BRAKET_TESTS_DSL_CORPUS_HPP
#define BRAKET_TESTS_DSL_CORPUS_HPP

// The expression corpus shared by the unit tests and the acceptance
// suite: every entry must parse, round-trip through the pretty printer,
// and evaluate to the same value as the direct library computation.

#include <cmath>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "braket/dsl.hpp"
#include "braket/observable.hpp"
#include "braket/random.hpp"

namespace braket_tests {

namespace corpus_detail {

inline braket::HilbertVector cvec(std::vector<braket::Cplx> coords) {
  return braket::HilbertVector(std::move(coords));
}

} // namespace corpus_detail

struct CorpusContext {
  braket::HilbertVector a = braket::HilbertVector::basis(2, 0);
  braket::HilbertVector b = braket::HilbertVector::basis(2, 1);
  braket::HilbertVector u = corpus_detail::cvec({{0.6, 0.0}, {0.8, 0.0}});
  braket::HilbertVector v = corpus_detail::cvec({{0.8, 0.0}, {-0.6, 0.0}});
  braket::HilbertVector w = corpus_detail::cvec({{0.5, 0.5}, {0.0, -1.0}});
  braket::CMatrix diag;
  braket::CMatrix flip;

  CorpusContext() : diag(2, 2), flip(2, 2) {
    diag.at(0, 0) = {1.0, 0.0};
    diag.at(1, 1) = {-1.0, 0.0};
    flip.at(0, 1) = {1.0, 0.0};
    flip.at(1, 0) = {1.0, 0.0};
  }
};

inline braket::dsl::Bindings corpus_bindings() {
  const CorpusContext ctx;
  braket::dsl::Bindings bind;
  bind.config = braket::ModelConfig(2, 2);
  bind.vectors.emplace("a", ctx.a);
  bind.vectors.emplace("b", ctx.b);
  bind.vectors.emplace("u", ctx.u);
  bind.vectors.emplace("v", ctx.v);
  bind.vectors.emplace("w", ctx.w);
  bind.vectors.emplace("l1", ctx.a);
  bind.vectors.emplace("l2", ctx.b);
  bind.vectors.emplace("p", ctx.u);
  bind.vectors.emplace("q", ctx.v);
  bind.operators.emplace("A", ctx.diag);
  bind.operators.emplace("B", ctx.flip);
  bind.composite = braket::CompositeObservable({braket::FactorObservable(ctx.diag),
                                                braket::FactorObservable(ctx.diag)})
                       .dense();
  return bind;
}

inline const std::vector<std::string> &corpus_strings() {
  static const std::vector<std::string> expressions = {
      "|a>",
      "<a|",
      "<a|b>",
      "<u|v>",
      "<w|w>",
      "|a> (x) |b>",
      "<a| (x) <b|",
      "(|a> (x) |b>)'",
      "(<a|b>)'",
      "P_sym (|a> (x) |b>)",
      "P_asym (|a> (x) |a>)",
      "P_asym (|u> (x) |v>)",
      "P_sym (u (x) v)",
      "A |u>",
      "B |a>",
      "A (|u> (x) |v>)",
      "A_hat (|u> (x) |v>)",
      "A (u (x) v)",
      "(<a| (x) <b|) (A (|u> (x) |v>))",
      "(<l1| (x) <l2|) (A (|p> (x) |q>))",
      "<a| (A |u>)",
      "U_21 (|a> (x) |b>)",
      "U_21 (u (x) v)",
      "2 * |a>",
      "0.5i * <a|",
      "2 * |a> + |b>",
      "|u> - |v>",
      "|u> - |v> + |u>",
      "(1 + 2i) * (<a|b>)",
      "(1 + 2i)'",
      "(2 - 0.5i) * (<u|w>)",
      "u (x) w",
      "(<a| (x) <a|) (u (x) v)",
      "(P_sym (u (x) v))'",
      "(A + B) |u>",
      "(2 * A) |u>",
      "A' |u>",
      "(|w>)' |w>",
  };
  return expressions;
}

inline const std::vector<std::string> &malformed_parse_strings() {
  static const std::vector<std::string> expressions = {
      "|a", "<a", "a $ b", "|>", "|a> )", "((|a>)", "2 +", "(x) |a>", "|a> (x)", "'", "* 2", "()",
  };
  return expressions;
}

inline const std::vector<std::string> &malformed_eval_strings() {
  static const std::vector<std::string> expressions = {
      "|zz>", "Q |a>", "|a> |b>", "2 |a>", "(|a> (x) |b>) (x) |a>",
      "<a| + |b>", "<a| (x) |b>", "1 + |a>", "U_21 |a>", "U_213 (|a> (x) |b>)",
  };
  return expressions;
}

struct CorpusEvalOutcome {
  double max_residual = 0.0;
  std::size_t entries = 0;
  std::vector<std::string> failures;
};

// Evaluates every corpus expression and compares it with the value
// computed through direct library calls. Functionals and vectors are
// compared by evaluation on seeded probes.
inline CorpusEvalOutcome evaluate_corpus_against_library() {
  using namespace braket;
  namespace dsl = braket::dsl;
  const CorpusContext ctx;
  const dsl::Bindings bind = corpus_bindings();
  const CompositeObservable composite(
      {FactorObservable(ctx.diag), FactorObservable(ctx.diag)});

  Rng rng(derive_seed(kDefaultSeed, "dsl-corpus-probes"));
  const std::vector<TensorVector> probes2 = rng.tensors(10, 2, 2);
  const std::vector<TensorVector> probes1 = rng.tensors(10, 2, 1);

  CorpusEvalOutcome outcome;
  auto record = [&outcome](const std::string &expr, double residual, bool type_ok) {
    ++outcome.entries;
    if (!type_ok || !std::isfinite(residual)) {
      outcome.failures.push_back(expr);
      return;
    }
    outcome.max_residual = std::max(outcome.max_residual, residual);
  };

  auto scalar_case = [&](const std::string &expr, Cplx want) {
    const dsl::Value value = dsl::evaluate(expr, bind);
    const Cplx *got = std::get_if<Cplx>(&value);
    record(expr, got ? std::abs(*got - want) : 0.0, got != nullptr);
  };
  auto functional_case = [&](const std::string &expr, const Functional &want,
                             const std::vector<TensorVector> &probes) {
    const dsl::Value value = dsl::evaluate(expr, bind);
    const Functional *got = std::get_if<Functional>(&value);
    if (!got || got->kind() != want.kind()) {
      record(expr, 0.0, false);
      return;
    }
    double residual = 0.0;
    for (const TensorVector &probe : probes) {
      residual = std::max(residual, std::abs((*got)(probe) - want(probe)));
    }
    record(expr, residual, true);
  };
  auto tensor_case = [&](const std::string &expr, const TensorVector &want) {
    const dsl::Value value = dsl::evaluate(expr, bind);
    const TensorVector *got = std::get_if<TensorVector>(&value);
    record(expr, got ? got->max_abs_diff(want) : 0.0, got != nullptr);
  };

  const HilbertVector &a = ctx.a, &b = ctx.b, &u = ctx.u, &v = ctx.v, &w = ctx.w;

  functional_case("|a>", make_ket(a), probes1);
  functional_case("<a|", make_bra(a), probes1);
  scalar_case("<a|b>", inner(a, b));
  scalar_case("<u|v>", inner(u, v));
  scalar_case("<w|w>", inner(w, w));
  functional_case("|a> (x) |b>", functional_tensor({make_ket(a), make_ket(b)}), probes2);
  functional_case("<a| (x) <b|", functional_tensor({make_bra(a), make_bra(b)}), probes2);
  functional_case("(|a> (x) |b>)'", composite_bra(canonical_chi({a, b})), probes2);
  scalar_case("(<a|b>)'", std::conj(inner(a, b)));
  functional_case("P_sym (|a> (x) |b>)",
                  dual_projector(SymmetrizerKind::Sym,
                                 functional_tensor({make_ket(a), make_ket(b)})),
                  probes2);
  functional_case("P_asym (|a> (x) |a>)",
                  dual_projector(SymmetrizerKind::Antisym,
                                 functional_tensor({make_ket(a), make_ket(a)})),
                  probes2);
  functional_case("P_asym (|u> (x) |v>)",
                  dual_projector(SymmetrizerKind::Antisym,
                                 functional_tensor({make_ket(u), make_ket(v)})),
                  probes2);
  tensor_case("P_sym (u (x) v)", projector(SymmetrizerKind::Sym, canonical_chi({u, v})));
  functional_case("A |u>", extend_operator(ctx.diag, make_ket(u)), probes1);
  functional_case("B |a>", make_ket(apply(ctx.flip, a)), probes1);
  functional_case("A (|u> (x) |v>)",
                  extend_operator(composite, functional_tensor({make_ket(u), make_ket(v)})),
                  probes2);
  functional_case("A_hat (|u> (x) |v>)",
                  extend_operator(composite, functional_tensor({make_ket(u), make_ket(v)})),
                  probes2);
  tensor_case("A (u (x) v)", composite.apply(canonical_chi({u, v})));
  scalar_case("(<a| (x) <b|) (A (|u> (x) |v>))",
              functional_tensor({make_bra(a), make_bra(b)})(
                  composite.apply(canonical_chi({u, v}))));
  scalar_case("(<l1| (x) <l2|) (A (|p> (x) |q>))",
              functional_tensor({make_bra(a), make_bra(b)})(
                  composite.apply(canonical_chi({u, v}))));
  scalar_case("<a| (A |u>)", inner(a, apply(ctx.diag, u)));
  functional_case("U_21 (|a> (x) |b>)",
                  dual_permutation(Permutation({1, 0}),
                                   functional_tensor({make_ket(a), make_ket(b)})),
                  probes2);
  tensor_case("U_21 (u (x) v)", apply_permutation(Permutation({1, 0}), canonical_chi({u, v})));
  functional_case("2 * |a>", scale(Cplx{2, 0}, make_ket(a)), probes1);
  functional_case("0.5i * <a|", scale(Cplx{0, 0.5}, make_bra(a)), probes1);
  functional_case("2 * |a> + |b>", scale(Cplx{2, 0}, make_ket(a)) + make_ket(b), probes1);
  functional_case("|u> - |v>", make_ket(u) - make_ket(v), probes1);
  functional_case("|u> - |v> + |u>", make_ket(u) - make_ket(v) + make_ket(u), probes1);
  scalar_case("(1 + 2i) * (<a|b>)", Cplx{1, 2} * inner(a, b));
  scalar_case("(1 + 2i)'", Cplx{1, -2});
  scalar_case("(2 - 0.5i) * (<u|w>)", Cplx{2, -0.5} * inner(u, w));
  tensor_case("u (x) w", canonical_chi({u, w}));
  scalar_case("(<a| (x) <a|) (u (x) v)",
              functional_tensor({make_bra(a), make_bra(a)})(canonical_chi({u, v})));
  functional_case("(P_sym (u (x) v))'",
                  composite_bra(projector(SymmetrizerKind::Sym, canonical_chi({u, v}))),
                  probes2);
  functional_case("(A + B) |u>", extend_operator(ctx.diag + ctx.flip, make_ket(u)), probes1);
  functional_case("(2 * A) |u>", extend_operator(Cplx{2, 0} * ctx.diag, make_ket(u)), probes1);
  functional_case("A' |u>", extend_operator(ctx.diag, make_ket(u)), probes1);
  scalar_case("(|w>)' |w>", inner(w, w));

  return outcome;
}

} // namespace braket_tests

#endif
