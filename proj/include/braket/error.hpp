#ifndef BRAKET_ERROR_HPP
#define BRAKET_ERROR_HPP

#include <stdexcept>
#include <string>

namespace braket {

// Base class for everything this library throws on purpose.
class error : public std::runtime_error {
public:
  explicit error(const std::string &what) : std::runtime_error(what) {}
};

// Shape or configuration problems: dimension mismatches, wrong factor
// counts, invalid ModelConfig values.
class model_error : public error {
public:
  explicit model_error(const std::string &what) : error(what) {}
};

// Violated operation contracts (mixed functional kinds, non-Hermitian
// input, ...). `magnitude` carries the offending size when one exists,
// e.g. the maximal Hermiticity defect.
class contract_error : public error {
public:
  explicit contract_error(const std::string &what, double magnitude = 0.0)
      : error(what), magnitude_(magnitude) {}
  double magnitude() const { return magnitude_; }

private:
  double magnitude_;
};

// Failed preconditions that carry a measured quantity, e.g. the
// commutator norm of a pair that was required to commute.
class precondition_error : public error {
public:
  explicit precondition_error(const std::string &what, double magnitude = 0.0)
      : error(what), magnitude_(magnitude) {}
  double magnitude() const { return magnitude_; }

private:
  double magnitude_;
};

// Numerical breakdown (eigensolver non-convergence and friends).
class numeric_error : public error {
public:
  explicit numeric_error(const std::string &what) : error(what) {}
};

} // namespace braket

#endif
