#ifndef BRAKET_HILBERT_HPP
#define BRAKET_HILBERT_HPP

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "braket/error.hpp"
#include "braket/model.hpp"

namespace braket {

// Element of the single-factor finite-dimensional complex space.
class HilbertVector {
public:
  explicit HilbertVector(std::size_t dim) : coords_(dim, Cplx{0.0, 0.0}) {
    if (dim < 1) throw model_error("HilbertVector: dim must be >= 1");
  }

  explicit HilbertVector(std::vector<Cplx> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw model_error("HilbertVector: empty coordinate list");
    for (const Cplx &c : coords_) {
      if (!is_finite(c)) throw model_error("HilbertVector: non-finite coordinate");
    }
  }

  static HilbertVector basis(std::size_t dim, std::size_t index) {
    if (index >= dim) throw model_error("HilbertVector::basis: index out of range");
    HilbertVector v(dim);
    v.coords_[index] = Cplx{1.0, 0.0};
    return v;
  }

  std::size_t dim() const { return coords_.size(); }
  const std::vector<Cplx> &coords() const { return coords_; }
  const Cplx &operator[](std::size_t i) const { return coords_[i]; }
  Cplx &operator[](std::size_t i) { return coords_[i]; }

  HilbertVector &operator+=(const HilbertVector &o) {
    require_same_dim(o, "+");
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  HilbertVector &operator-=(const HilbertVector &o) {
    require_same_dim(o, "-");
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
  }
  HilbertVector &operator*=(Cplx a) {
    for (Cplx &c : coords_) c *= a;
    return *this;
  }

  friend HilbertVector operator+(HilbertVector a, const HilbertVector &b) { return a += b; }
  friend HilbertVector operator-(HilbertVector a, const HilbertVector &b) { return a -= b; }
  friend HilbertVector operator*(Cplx a, HilbertVector v) { return v *= a; }
  friend HilbertVector operator*(HilbertVector v, Cplx a) { return v *= a; }

  double norm_sq() const {
    double s = 0.0;
    for (const Cplx &c : coords_) s += std::norm(c);
    return s;
  }
  double norm() const { return std::sqrt(norm_sq()); }

  HilbertVector normalized() const {
    const double n = norm();
    if (n == 0.0) throw model_error("HilbertVector::normalized: zero vector");
    HilbertVector v(*this);
    v *= Cplx{1.0 / n, 0.0};
    return v;
  }

private:
  void require_same_dim(const HilbertVector &o, const char *op) const {
    if (o.dim() != dim()) {
      throw model_error(std::string("HilbertVector: dimension mismatch in '") + op + "' (" +
                        std::to_string(dim()) + " vs " + std::to_string(o.dim()) + ")");
    }
  }

  std::vector<Cplx> coords_;
};

// <u, v>: conjugate-linear in the first argument, linear in the second.
// This slot convention is what makes the ket functional |phi>(psi) =
// <psi, phi> anti-linear in psi.
inline Cplx inner(const HilbertVector &u, const HilbertVector &v) {
  if (u.dim() != v.dim()) {
    throw model_error("inner: dimension mismatch (" + std::to_string(u.dim()) + " vs " +
                      std::to_string(v.dim()) + ")");
  }
  Cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < u.dim(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

} // namespace braket

#endif
