#include <catch2/catch.hpp>

#include "braket/random.hpp"
#include "braket/tensor.hpp"

#include "test_util.hpp"

using namespace braket;
using namespace braket_tests;

TEST_CASE("canonical chi produces the expected dense coordinates") {
  const HilbertVector e0 = HilbertVector::basis(2, 0);
  const HilbertVector e1 = HilbertVector::basis(2, 1);

  // chi(e0, e1): dense index (0,1) is 1, everything else 0
  const TensorVector t = canonical_chi({e0, e1});
  CHECK(t.dense() == std::vector<Cplx>{C(0), C(1), C(0), C(0)});
  CHECK(t.terms().size() == 1);
  CHECK(cdist(t.terms().front().weight, C(1)) == 0.0);
}

TEST_CASE("chi is multilinear in each slot") {
  Rng rng(21);
  const HilbertVector u = rng.vector(2);
  const HilbertVector v = rng.vector(2);
  const HilbertVector w = rng.vector(2);
  const Cplx a = rng.cplx();

  const TensorVector lhs = canonical_chi({a * u, v});
  const TensorVector rhs = canonical_chi({u, v}) * a;
  CHECK(lhs.max_abs_diff(rhs) < 1e-14);

  const TensorVector sum_lhs = canonical_chi({u + w, v});
  const TensorVector sum_rhs = canonical_chi({u, v}) + canonical_chi({w, v});
  CHECK(sum_lhs.max_abs_diff(sum_rhs) < 1e-14);
}

TEST_CASE("chi validates arity and dimensions against the model") {
  const ModelConfig config(2, 2);
  const HilbertVector e0 = HilbertVector::basis(2, 0);
  CHECK_NOTHROW(canonical_chi(config, {e0, e0}));
  CHECK_THROWS_AS(canonical_chi(config, {e0}), model_error);
  CHECK_THROWS_AS(canonical_chi(config, {e0, HilbertVector::basis(3, 0)}), model_error);
}

TEST_CASE("flatten fixes the row-major order with factor 1 slowest") {
  const HilbertVector e0 = HilbertVector::basis(2, 0);
  const HilbertVector e1 = HilbertVector::basis(2, 1);

  CHECK(flatten(canonical_chi({e0, e0})) == std::vector<Cplx>{C(1), C(0), C(0), C(0)});

  // (e0 (x) e1 + e1 (x) e0) / 2 -> [0, 1/2, 1/2, 0]
  const TensorVector mixed =
      (canonical_chi({e0, e1}) + canonical_chi({e1, e0})) * C(0.5);
  CHECK(flatten(mixed) == std::vector<Cplx>{C(0), C(0.5), C(0.5), C(0)});

  const TensorVector zero = TensorVector::zero(2, 2);
  CHECK(flatten(zero) == std::vector<Cplx>(4, C(0)));
  CHECK(zero.terms().empty());

  // idempotent: flattening an already-flattened vector changes nothing
  const TensorVector rebuilt = TensorVector::from_dense(2, 2, flatten(mixed));
  CHECK(flatten(rebuilt) == flatten(mixed));
}

TEST_CASE("from_dense keeps the flattening invariant") {
  Rng rng(22);
  std::vector<Cplx> dense(8);
  for (Cplx &c : dense) c = rng.cplx();
  const TensorVector t = TensorVector::from_dense(2, 3, dense);
  CHECK(t.dense() == dense);
  const TensorVector rebuilt = TensorVector::from_terms(2, 3, t.terms());
  CHECK(rebuilt.max_abs_diff(t) < 1e-15);
}

TEST_CASE("tensor inner product on basis tensors") {
  const HilbertVector e0 = HilbertVector::basis(2, 0);
  const HilbertVector e1 = HilbertVector::basis(2, 1);
  const TensorVector t01 = canonical_chi({e0, e1});
  const TensorVector t10 = canonical_chi({e1, e0});
  CHECK(cdist(tensor_inner(t01, t01), C(1)) == 0.0);
  CHECK(cdist(tensor_inner(t01, t10), C(0)) == 0.0);
}

TEST_CASE("tensor inner factorizes on simple tensors") {
  Rng rng(23);
  for (int round = 0; round < 50; ++round) {
    const HilbertVector p1 = rng.vector(3);
    const HilbertVector p2 = rng.vector(3);
    const HilbertVector q1 = rng.vector(3);
    const HilbertVector q2 = rng.vector(3);
    const Cplx via_dense = tensor_inner(canonical_chi({p1, p2}), canonical_chi({q1, q2}));
    const Cplx via_product = inner(p1, q1) * inner(p2, q2);
    CHECK(cdist(via_dense, via_product) < 1e-12);
  }
}

TEST_CASE("representation coherence: terms path equals dense path") {
  Rng rng(24);
  for (int round = 0; round < 200; ++round) {
    const std::size_t d = 2 + round % 2;
    const std::size_t n = 2 + round % 2;
    const TensorVector s = rng.tensor(d, n, 5);
    const TensorVector t = rng.tensor(d, n, 5);
    CHECK(cdist(tensor_inner(s, t), inner_via_terms(s, t)) < 1e-12);
  }
}

TEST_CASE("norm positivity and conjugate symmetry") {
  Rng rng(25);
  for (int round = 0; round < 30; ++round) {
    const TensorVector s = rng.tensor(2, 3);
    const TensorVector t = rng.tensor(2, 3);
    const Cplx selfinner = tensor_inner(s, s);
    CHECK(selfinner.real() >= 0.0);
    CHECK(std::abs(selfinner.imag()) < 1e-13);
    CHECK(cdist(tensor_inner(s, t), std::conj(tensor_inner(t, s))) < 1e-13);
  }
}

TEST_CASE("space mismatches are model errors") {
  const TensorVector a = TensorVector::zero(2, 2);
  const TensorVector b = TensorVector::zero(2, 3);
  const TensorVector c = TensorVector::zero(3, 2);
  CHECK_THROWS_AS(tensor_inner(a, b), model_error);
  CHECK_THROWS_AS(tensor_inner(a, c), model_error);
  CHECK_THROWS_AS(a + b, model_error);
  CHECK_THROWS_AS(TensorVector::from_dense(2, 2, std::vector<Cplx>(5)), model_error);
}

TEST_CASE("arithmetic keeps the terms/dense pairing coherent") {
  Rng rng(27);
  for (int round = 0; round < 50; ++round) {
    TensorVector t = rng.tensor(2, 3, 4);
    t += rng.tensor(2, 3, 4);
    t -= rng.tensor(2, 3, 2);
    t *= rng.cplx();
    const TensorVector refl = TensorVector::from_terms(2, 3, t.terms());
    CHECK(refl.max_abs_diff(t) < 1e-12);
  }
}

TEST_CASE("tensor_product concatenates slots") {
  Rng rng(26);
  const TensorVector a = rng.tensor(2, 1, 2);
  const TensorVector b = rng.tensor(2, 2, 2);
  const TensorVector ab = tensor_product(a, b);
  CHECK(ab.factor_count() == 3);
  CHECK(ab.dense_size() == 8);
  // inner products factorize across the split
  const TensorVector c = rng.tensor(2, 1, 2);
  const TensorVector d = rng.tensor(2, 2, 2);
  const TensorVector cd = tensor_product(c, d);
  CHECK(cdist(tensor_inner(ab, cd), tensor_inner(a, c) * tensor_inner(b, d)) < 1e-12);
}
