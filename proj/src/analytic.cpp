#include "qreduce/analytic.hpp"

#include <cmath>
#include <string>

namespace qreduce {

namespace {

void require_prob(Real p, const char* name) {
  if (!(p >= Real(0) && p <= Real(1))) {
    throw ArgumentError(std::string(name) + " must lie in [0, 1], got " +
                        std::to_string(p));
  }
}

void require_min(int value, int lo, const char* name) {
  if (value < lo) {
    throw ArgumentError(std::string(name) + " must be >= " +
                        std::to_string(lo) + ", got " + std::to_string(value));
  }
}

}  // namespace

Real binom_errors(Real p, int l) {
  require_prob(p, "p");
  if (l < 0 || l > 3) {
    throw ArgumentError("fault count l must lie in [0, 3], got " +
                        std::to_string(l));
  }
  static constexpr Real kChoose3[4] = {1, 3, 3, 1};
  return kChoose3[l] * std::pow(p, l) * std::pow(Real(1) - p, 3 - l);
}

Real correction_remainder_3(Real p) {
  require_prob(p, "p");
  return 3 * p * p - 2 * p * p * p;
}

Real reduction_Q(Real p, int n) {
  require_prob(p, "p");
  require_min(n, 1, "n");
  return std::pow(Real(1) - p, n) + std::pow(p, n);
}

Real reduction_P(Real p, int n) {
  require_prob(p, "p");
  require_min(n, 1, "n");
  const Real q = reduction_Q(p, n);
  if (q <= Real(0)) {
    throw ArgumentError("acceptance probability vanished; P is undefined");
  }
  return std::pow(p, n) / q;
}

Real reduction_P_approx(Real p, int n) {
  require_prob(p, "p");
  require_min(n, 1, "n");
  if (p >= Real(1)) {
    throw ArgumentError("leading-order form requires p < 1");
  }
  return std::pow(p / (Real(1) - p), n);
}

Real conditional_error_after_one_correction(Real p) {
  if (!(p > Real(0) && p < Real(1))) {
    throw ArgumentError(
        "conditional error is a 0/0 form at the endpoints; need 0 < p < 1");
  }
  const Real one_fault = 3 * p * (1 - p) * (1 - p);
  const Real two_faults = 3 * p * p * (1 - p);
  return two_faults / (one_fault + two_faults);
}

Real zeno_Q(Real p, int n, int M) {
  require_prob(p, "p");
  require_min(n, 1, "n");
  require_min(M, 1, "M");
  const Real per_step = p / (static_cast<Real>(M) * static_cast<Real>(M));
  return std::pow(Real(1) - per_step, static_cast<Real>(n) * M);
}

Real c_factor(const AngleMatrix& angles) {
  if (angles.rows() != 4 || angles.cols() != 3) {
    throw ArgumentError(
        "c_factor expects a 4x3 angle matrix (four qubits, three angles "
        "each)");
  }
  const Real c = angles.array().cos().prod();
  return c * c;
}

}  // namespace qreduce
