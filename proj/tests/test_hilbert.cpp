#include <catch2/catch.hpp>

#include "braket/functional.hpp"
#include "braket/hilbert.hpp"
#include "braket/random.hpp"

#include "test_util.hpp"

using namespace braket;
using namespace braket_tests;

TEST_CASE("model config validation") {
  CHECK_NOTHROW(ModelConfig(2, 2));
  CHECK_NOTHROW(ModelConfig(1, 1, 1e-8));
  CHECK_THROWS_AS(ModelConfig(0, 2), model_error);
  CHECK_THROWS_AS(ModelConfig(2, 0), model_error);
  CHECK_THROWS_AS(ModelConfig(2, 2, 0.0), model_error);
  CHECK_THROWS_AS(ModelConfig(2, 2, -1.0), model_error);
  // dim^factors beyond the supported size is rejected at config time
  CHECK_THROWS_AS(ModelConfig(10, 12), model_error);
  CHECK(ModelConfig(3, 4).dense_size() == 81);
}

TEST_CASE("vectors reject non-finite coordinates") {
  CHECK_THROWS_AS(vec({C(std::numeric_limits<double>::quiet_NaN())}), model_error);
  CHECK_THROWS_AS(vec({C(1.0, std::numeric_limits<double>::infinity())}), model_error);
  CHECK_THROWS_AS(HilbertVector(std::vector<Cplx>{}), model_error);
}

TEST_CASE("inner product basics") {
  const HilbertVector e0 = HilbertVector::basis(3, 0);
  const HilbertVector e1 = HilbertVector::basis(3, 1);
  CHECK(cdist(inner(e0, e0), C(1)) == 0.0);
  CHECK(cdist(inner(e0, e1), C(0)) == 0.0);

  // conjugate-linear in the first slot: <i u, v> = -i <u, v>
  Rng rng(11);
  const HilbertVector u = rng.vector(3);
  const HilbertVector v = rng.vector(3);
  CHECK(cdist(inner(C(0, 1) * u, v), C(0, -1) * inner(u, v)) < 1e-14);

  CHECK_THROWS_AS(inner(u, HilbertVector::basis(2, 0)), model_error);
}

TEST_CASE("inner product sesquilinearity on random triples") {
  Rng rng(12);
  for (int round = 0; round < 50; ++round) {
    const HilbertVector u = rng.vector(3);
    const HilbertVector v = rng.vector(3);
    const HilbertVector w = rng.vector(3);
    const Cplx a = rng.cplx();
    const Cplx b = rng.cplx();
    CHECK(cdist(inner(u, a * v + b * w), a * inner(u, v) + b * inner(u, w)) < 1e-12);
    CHECK(cdist(inner(u, v), std::conj(inner(v, u))) < 1e-14);
    CHECK(inner(u, u).real() >= 0.0);
    CHECK(std::abs(inner(u, u).imag()) < 1e-14);
  }
}

TEST_CASE("kets are anti-linear, bras are linear") {
  Rng rng(13);
  const HilbertVector phi = rng.vector(2);
  const Functional ket = make_ket(phi);
  const Functional bra = make_bra(phi);
  for (int round = 0; round < 20; ++round) {
    const HilbertVector psi = rng.vector(2);
    const HilbertVector chi = rng.vector(2);
    const Cplx a = rng.cplx();
    const Cplx b = rng.cplx();
    const HilbertVector mix = a * psi + b * chi;
    CHECK(cdist(ket(mix), std::conj(a) * ket(psi) + std::conj(b) * ket(chi)) < 1e-12);
    CHECK(cdist(bra(mix), a * bra(psi) + b * bra(chi)) < 1e-12);
    // bra evaluation is the complex conjugate of the ket evaluation
    CHECK(cdist(bra(psi), std::conj(ket(psi))) < 1e-14);
  }
}

TEST_CASE("ket and bra evaluation conventions") {
  const HilbertVector e0 = HilbertVector::basis(2, 0);
  CHECK(cdist(make_ket(e0)(e0), C(1)) == 0.0);

  // at psi = (1+i) e0, phi = e0: ket gives 1-i, its conjugate gives 1+i
  const HilbertVector psi = vec({C(1, 1), C(0)});
  const Functional ket = make_ket(e0);
  CHECK(cdist(ket(psi), C(1, -1)) < 1e-15);
  CHECK(cdist(conjugate(ket)(psi), C(1, 1)) < 1e-15);
}

TEST_CASE("conjugate swaps kind and is an involution") {
  Rng rng(14);
  const HilbertVector phi = rng.vector(3);
  const Functional ket = make_ket(phi);
  const Functional flipped = conjugate(ket);
  CHECK(flipped.kind() == FunctionalKind::Bra);
  CHECK(conjugate(flipped).kind() == FunctionalKind::Ket);
  for (int round = 0; round < 10; ++round) {
    const HilbertVector psi = rng.vector(3);
    CHECK(cdist(flipped(psi), make_bra(phi)(psi)) == 0.0);
    CHECK(cdist(conjugate(conjugate(ket))(psi), ket(psi)) == 0.0);
    CHECK(cdist(conjugate(ket)(psi), std::conj(ket(psi))) < 1e-14);
  }
}

TEST_CASE("functional arithmetic stays pointwise") {
  Rng rng(15);
  const Functional f = make_ket(rng.vector(2));
  const Functional g = make_ket(rng.vector(2));
  const Cplx a = rng.cplx();
  for (int round = 0; round < 10; ++round) {
    const HilbertVector psi = rng.vector(2);
    CHECK(cdist((f + g)(psi), f(psi) + g(psi)) < 1e-13);
    CHECK(cdist(scale(a, f)(psi), a * f(psi)) < 1e-13);
    CHECK(cdist(scale(a, conjugate(f))(psi), a * conjugate(f)(psi)) < 1e-13);
  }
  CHECK_THROWS_AS(f + conjugate(g), contract_error);
}
