#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

// Shared scalar/vector aliases and error types. Everything numerical in the
// project runs on 64-bit floats through Eigen; change the aliases here if
// that ever needs to move.
namespace qreduce {

using Real = double;
using Complex = std::complex<Real>;
using VectorXc = Eigen::VectorXcd;
using Matrix2c = Eigen::Matrix2cd;
using MatrixXc = Eigen::MatrixXcd;

// Angle triples (theta, phi, eta) per qubit, one row per qubit.
using AngleMatrix = Eigen::Matrix<Real, Eigen::Dynamic, 3>;

// Bad caller input: wrong sizes, out-of-range parameters, unknown flags.
// The CLI maps this to exit code 2.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Request exceeds a configured resource ceiling (e.g. dense register too
// large). CLI exit code 3.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Internal invariant breach (states out of norm, misuse of an outcome, ...).
// CLI exit code 4. If one of these fires the library itself is at fault.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Backend ceilings on the code distance n (register has n^2 qubits).
// Dense keeps 2^(n^2) amplitudes, so n=4 (65536 amplitudes) is the default
// cap; the factored form only ever holds 2n vectors of 2^n entries.
struct Limits {
  int dense_max_n = 4;
  int factored_max_n = 16;
};

// States are compared up to global phase everywhere; norms must hold to
// this tolerance.
inline constexpr Real kNormTol = 1e-10;

}  // namespace qreduce
