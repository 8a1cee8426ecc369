#ifndef BRAKET_MATRIX_HPP
#define BRAKET_MATRIX_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "braket/error.hpp"
#include "braket/model.hpp"

namespace braket {

// Dense complex matrix, row-major.
class CMatrix {
public:
  CMatrix() : rows_(0), cols_(0) {}

  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(checked_size(rows, cols), Cplx{0.0, 0.0}) {}

  CMatrix(std::size_t rows, std::size_t cols, std::vector<Cplx> entries)
      : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != checked_size(rows, cols)) {
      throw model_error("CMatrix: entry count does not match shape");
    }
    for (const Cplx &c : a_) {
      if (!is_finite(c)) throw model_error("CMatrix: non-finite entry");
    }
  }

  static CMatrix identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Cplx{1.0, 0.0};
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Cplx &at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Cplx &at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  const std::vector<Cplx> &entries() const { return a_; }

  CMatrix adjoint() const {
    CMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = std::conj(at(i, j));
    }
    return m;
  }

  CMatrix &operator+=(const CMatrix &o) {
    require_same_shape(o, "+");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  CMatrix &operator-=(const CMatrix &o) {
    require_same_shape(o, "-");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  CMatrix &operator*=(Cplx s) {
    for (Cplx &c : a_) c *= s;
    return *this;
  }
  friend CMatrix operator+(CMatrix a, const CMatrix &b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix &b) { return a -= b; }
  friend CMatrix operator*(Cplx s, CMatrix m) { return m *= s; }

  friend CMatrix operator*(const CMatrix &a, const CMatrix &b) {
    if (a.cols_ != b.rows_) throw model_error("CMatrix: shape mismatch in product");
    CMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Cplx aik = a.at(i, k);
        if (aik == Cplx{0.0, 0.0}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c.at(i, j) += aik * b.at(k, j);
      }
    }
    return c;
  }

  std::vector<Cplx> apply(const std::vector<Cplx> &v) const {
    if (v.size() != cols_) throw model_error("CMatrix::apply: vector length mismatch");
    std::vector<Cplx> out(rows_, Cplx{0.0, 0.0});
    for (std::size_t i = 0; i < rows_; ++i) {
      Cplx s{0.0, 0.0};
      for (std::size_t j = 0; j < cols_; ++j) s += at(i, j) * v[j];
      out[i] = s;
    }
    return out;
  }

  double max_abs() const {
    double m = 0.0;
    for (const Cplx &c : a_) m = std::max(m, std::abs(c));
    return m;
  }

  double max_abs_diff(const CMatrix &o) const {
    require_same_shape(o, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a_.size(); ++i) m = std::max(m, std::abs(a_[i] - o.a_[i]));
    return m;
  }

  // max_ij |a_ij - conj(a_ji)|; zero for Hermitian matrices.
  double hermiticity_defect() const {
    if (rows_ != cols_) throw model_error("hermiticity_defect: matrix not square");
    double m = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        m = std::max(m, std::abs(at(i, j) - std::conj(at(j, i))));
      }
    }
    return m;
  }

  bool is_hermitian(double tol) const { return hermiticity_defect() <= tol; }

private:
  static std::size_t checked_size(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) throw model_error("CMatrix: shape must be nonzero");
    if (rows > kMaxDenseSize / cols) throw model_error("CMatrix: matrix too large");
    return rows * cols;
  }
  void require_same_shape(const CMatrix &o, const char *op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw model_error(std::string("CMatrix: shape mismatch in '") + op + "'");
    }
  }

  std::size_t rows_, cols_;
  std::vector<Cplx> a_;
};

inline CMatrix kron(const CMatrix &a, const CMatrix &b) {
  CMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Cplx aij = a.at(i, j);
      if (aij == Cplx{0.0, 0.0}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          c.at(i * b.rows() + k, j * b.cols() + l) = aij * b.at(k, l);
        }
      }
    }
  }
  return c;
}

inline CMatrix commutator(const CMatrix &a, const CMatrix &b) { return a * b - b * a; }

inline double commutator_norm(const CMatrix &a, const CMatrix &b) {
  return commutator(a, b).max_abs();
}

struct EighResult {
  std::vector<double> eigenvalues; // ascending
  CMatrix eigenvectors;            // column j pairs with eigenvalues[j]

  std::vector<Cplx> eigenvector(std::size_t j) const {
    std::vector<Cplx> v(eigenvectors.rows());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = eigenvectors.at(i, j);
    return v;
  }
};

namespace detail {

// One cyclic sweep of two-sided complex Jacobi rotations. Returns the
// off-diagonal Frobenius mass that remained before the sweep.
inline double jacobi_sweep(CMatrix &a, CMatrix &v) {
  const std::size_t n = a.rows();
  for (std::size_t p = 0; p + 1 < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      const Cplx apq = a.at(p, q);
      const double mag = std::abs(apq);
      const double scale = std::abs(a.at(p, p).real()) + std::abs(a.at(q, q).real());
      if (mag <= 1e-300 || mag <= 1e-18 * scale) {
        a.at(p, q) = Cplx{0.0, 0.0};
        a.at(q, p) = Cplx{0.0, 0.0};
        continue;
      }
      // Absorb the phase so the 2x2 block is real symmetric, then apply
      // the classic Jacobi angle.
      const Cplx phase = apq / mag;
      const double app = a.at(p, p).real();
      const double aqq = a.at(q, q).real();
      const double tau = (aqq - app) / (2.0 * mag);
      const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
      const double c = 1.0 / std::sqrt(1.0 + t * t);
      const double s = t * c;
      const Cplx jp = Cplx{c, 0.0};            // J[p][p]
      const Cplx jpq = phase * s;              // J[p][q]
      const Cplx jqp = -std::conj(phase) * s;  // J[q][p]
      const Cplx jq = Cplx{c, 0.0};            // J[q][q]
      // A <- J^dagger A J, applied as column then row updates.
      for (std::size_t i = 0; i < n; ++i) {
        const Cplx aip = a.at(i, p), aiq = a.at(i, q);
        a.at(i, p) = aip * jp + aiq * jqp;
        a.at(i, q) = aip * jpq + aiq * jq;
      }
      for (std::size_t j = 0; j < n; ++j) {
        const Cplx apj = a.at(p, j), aqj = a.at(q, j);
        a.at(p, j) = std::conj(jp) * apj + std::conj(jqp) * aqj;
        a.at(q, j) = std::conj(jpq) * apj + std::conj(jq) * aqj;
      }
      for (std::size_t i = 0; i < n; ++i) {
        const Cplx vip = v.at(i, p), viq = v.at(i, q);
        v.at(i, p) = vip * jp + viq * jqp;
        v.at(i, q) = vip * jpq + viq * jq;
      }
    }
  }
  double off = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) off += std::norm(a.at(i, j));
    }
  }
  return std::sqrt(off);
}

// Rotates each vector's phase so its first component of largest modulus
// is positive real.
inline void fix_phase(CMatrix &vectors, std::size_t col) {
  std::size_t arg = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < vectors.rows(); ++i) {
    const double m = std::abs(vectors.at(i, col));
    if (m > best) {
      best = m;
      arg = i;
    }
  }
  const Cplx z = vectors.at(arg, col);
  if (std::abs(z) == 0.0) return;
  const Cplx rot = std::conj(z) / std::abs(z);
  for (std::size_t i = 0; i < vectors.rows(); ++i) vectors.at(i, col) *= rot;
}

} // namespace detail

// Relative tolerance used to cluster nearby eigenvalues into one
// degenerate group.
inline double degeneracy_tol(double lambda) { return 1e-9 * (1.0 + std::abs(lambda)); }

// Hermitian eigendecomposition via cyclic complex Jacobi rotations,
// followed by a deterministic basis convention:
//   * eigenvalues sorted ascending;
//   * within each degenerate group, the basis is rebuilt by projecting
//     standard basis vectors in ascending index order and
//     orthonormalizing the nonzero images;
//   * each vector's global phase makes its first component of largest
//     modulus positive real.
inline EighResult eigh(const CMatrix &input, double hermitian_tol = kDefaultTol) {
  if (input.rows() != input.cols()) throw model_error("eigh: matrix not square");
  const double defect = input.hermiticity_defect();
  if (defect > hermitian_tol) {
    throw contract_error("eigh: matrix is not Hermitian (max asymmetry " +
                             std::to_string(defect) + ")",
                         defect);
  }
  const std::size_t n = input.rows();

  CMatrix a = input;
  CMatrix v = CMatrix::identity(n);
  double norm_scale = std::max(input.max_abs(), 1.0);
  bool converged = false;
  for (int sweep = 0; sweep < 64; ++sweep) {
    const double off = detail::jacobi_sweep(a, v);
    if (off <= 1e-15 * norm_scale * static_cast<double>(n)) {
      converged = true;
      break;
    }
  }
  if (!converged) throw numeric_error("eigh: Jacobi iteration did not converge");

  // Ascending eigenvalue order.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::vector<double> raw(n);
  for (std::size_t i = 0; i < n; ++i) raw[i] = a.at(i, i).real();
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return raw[x] < raw[y]; });

  EighResult result;
  result.eigenvalues.resize(n);
  result.eigenvectors = CMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    result.eigenvalues[j] = raw[order[j]];
    for (std::size_t i = 0; i < n; ++i) result.eigenvectors.at(i, j) = v.at(i, order[j]);
  }

  // Deterministic basis within each degenerate group.
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n &&
           result.eigenvalues[end] - result.eigenvalues[end - 1] <=
               degeneracy_tol(result.eigenvalues[end])) {
      ++end;
    }
    const std::size_t m = end - start;
    // Spectral projector of the group; its images of e_0, e_1, ...
    // orthonormalized in ascending index order give a basis that does
    // not depend on the iteration's arbitrary choices. A skipped
    // candidate always leaves a later one with component >= 1/sqrt(n),
    // so the single pass cannot come up short.
    CMatrix proj(n, n);
    for (std::size_t j = start; j < end; ++j) {
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
          proj.at(r, c) += result.eigenvectors.at(r, j) * std::conj(result.eigenvectors.at(c, j));
        }
      }
    }
    std::vector<std::vector<Cplx>> basis;
    for (std::size_t b = 0; b < n && basis.size() < m; ++b) {
      std::vector<Cplx> w(n);
      for (std::size_t r = 0; r < n; ++r) w[r] = proj.at(r, b);
      for (const std::vector<Cplx> &u : basis) {
        Cplx overlap{0.0, 0.0};
        for (std::size_t r = 0; r < n; ++r) overlap += std::conj(u[r]) * w[r];
        for (std::size_t r = 0; r < n; ++r) w[r] -= overlap * u[r];
      }
      double norm2 = 0.0;
      for (const Cplx &c : w) norm2 += std::norm(c);
      const double norm = std::sqrt(norm2);
      if (norm > 1e-6) {
        for (Cplx &c : w) c *= 1.0 / norm;
        basis.push_back(std::move(w));
      }
    }
    if (basis.size() != m) {
      throw numeric_error("eigh: failed to rebuild a degenerate eigenspace basis");
    }
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t r = 0; r < n; ++r) result.eigenvectors.at(r, start + j) = basis[j][r];
    }
    start = end;
  }

  for (std::size_t j = 0; j < n; ++j) detail::fix_phase(result.eigenvectors, j);

  // Contract check: residual and orthonormality.
  const CMatrix &vec = result.eigenvectors;
  CMatrix gram = vec.adjoint() * vec;
  if (gram.max_abs_diff(CMatrix::identity(n)) > 1e-11) {
    throw numeric_error("eigh: eigenvector basis lost orthonormality");
  }
  CMatrix av = input * vec;
  double res = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      res = std::max(res, std::abs(av.at(i, j) - result.eigenvalues[j] * vec.at(i, j)));
    }
  }
  if (res > 1e-11 * norm_scale) throw numeric_error("eigh: eigen-residual too large");
  return result;
}

} // namespace braket

#endif
