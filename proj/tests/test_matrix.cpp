#include <catch2/catch.hpp>

#include "braket/matrix.hpp"
#include "braket/random.hpp"

#include "test_util.hpp"

using namespace braket;
using namespace braket_tests;

namespace {

double eigen_residual(const CMatrix &a, const EighResult &eig) {
  const CMatrix av = a * eig.eigenvectors;
  double res = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      res = std::max(res, std::abs(av.at(i, j) - eig.eigenvalues[j] * eig.eigenvectors.at(i, j)));
    }
  }
  return res;
}

} // namespace

TEST_CASE("kron matches the hand-expanded 2x2 case") {
  CMatrix a(2, 2);
  a.at(0, 0) = C(1);
  a.at(0, 1) = C(2);
  a.at(1, 0) = C(3);
  a.at(1, 1) = C(4);
  const CMatrix k = kron(a, CMatrix::identity(2));
  CHECK(cdist(k.at(0, 0), C(1)) == 0.0);
  CHECK(cdist(k.at(1, 1), C(1)) == 0.0);
  CHECK(cdist(k.at(0, 2), C(2)) == 0.0);
  CHECK(cdist(k.at(2, 0), C(3)) == 0.0);
  CHECK(cdist(k.at(3, 3), C(4)) == 0.0);
  CHECK(cdist(k.at(0, 1), C(0)) == 0.0);
}

TEST_CASE("eigh solves random Hermitian matrices to tight residuals") {
  Rng rng(41);
  for (std::size_t n : {std::size_t{2}, std::size_t{3}, std::size_t{5}, std::size_t{9}}) {
    for (int round = 0; round < 10; ++round) {
      const CMatrix h = rng.hermitian(n);
      const EighResult eig = eigh(h);
      CHECK(eigen_residual(h, eig) < 1e-12);
      CHECK((eig.eigenvectors.adjoint() * eig.eigenvectors)
                .max_abs_diff(CMatrix::identity(n)) < 1e-12);
      for (std::size_t j = 1; j < n; ++j) CHECK(eig.eigenvalues[j - 1] <= eig.eigenvalues[j]);
    }
  }
}

TEST_CASE("eigh is deterministic and phase-fixed") {
  Rng rng(42);
  const CMatrix h = rng.hermitian(4);
  const EighResult first = eigh(h);
  const EighResult second = eigh(h);
  CHECK(first.eigenvectors.max_abs_diff(second.eigenvectors) == 0.0);
  for (std::size_t j = 0; j < 4; ++j) {
    const std::vector<Cplx> v = first.eigenvector(j);
    std::size_t arg = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (std::abs(v[i]) > std::abs(v[arg])) arg = i;
    }
    CHECK(v[arg].real() > 0.0);
    CHECK(std::abs(v[arg].imag()) < 1e-12);
  }
}

TEST_CASE("eigh rebuilds degenerate eigenspaces from ascending basis indices") {
  // diag(1, 1, 0): the lambda=1 eigenspace is span(e0, e1) and the
  // convention picks e0, e1 themselves.
  CMatrix d(3, 3);
  d.at(0, 0) = C(1);
  d.at(1, 1) = C(1);
  const EighResult eig = eigh(d);
  CHECK(eig.eigenvalues[0] == Approx(0.0).margin(1e-14));
  CHECK(eig.eigenvalues[1] == Approx(1.0).margin(1e-14));
  CHECK(eig.eigenvalues[2] == Approx(1.0).margin(1e-14));
  CHECK(cdist(eig.eigenvectors.at(2, 0), C(1)) < 1e-13); // e2 for lambda=0
  CHECK(cdist(eig.eigenvectors.at(0, 1), C(1)) < 1e-13); // e0 first in the degenerate pair
  CHECK(cdist(eig.eigenvectors.at(1, 2), C(1)) < 1e-13); // then e1
}

TEST_CASE("eigh handles a degenerate eigenspace not aligned with the basis") {
  // Projector onto span((e0+e1)/sqrt2): eigenvalues {0, 0, 1}.
  CMatrix p(3, 3);
  p.at(0, 0) = C(0.5);
  p.at(0, 1) = C(0.5);
  p.at(1, 0) = C(0.5);
  p.at(1, 1) = C(0.5);
  const EighResult eig = eigh(p);
  CHECK(eig.eigenvalues[0] == Approx(0.0).margin(1e-13));
  CHECK(eig.eigenvalues[1] == Approx(0.0).margin(1e-13));
  CHECK(eig.eigenvalues[2] == Approx(1.0).margin(1e-13));
  CHECK(eigen_residual(p, eig) < 1e-12);
}

TEST_CASE("eigh rejects non-Hermitian input with the defect attached") {
  CMatrix m(2, 2);
  m.at(0, 1) = C(1);
  try {
    eigh(m);
    FAIL("expected contract_error");
  } catch (const contract_error &e) {
    CHECK(e.magnitude() == Approx(1.0));
  }
}

TEST_CASE("commutator norm vanishes only for commuting pairs") {
  Rng rng(43);
  const CMatrix a = rng.hermitian(4);
  CHECK(commutator_norm(a, a * a) < 1e-13);
  CHECK(commutator_norm(a, CMatrix::identity(4)) == 0.0);
  const CMatrix b = rng.hermitian(4);
  CHECK(commutator_norm(a, b) > 1e-3); // random pairs essentially never commute
}
