#include "qreduce/statevec.hpp"

#include <cmath>
#include <string>

namespace qreduce {

namespace {

void require_unitary(const Matrix2c& u) {
  Matrix2c d = u.adjoint() * u - Matrix2c::Identity();
  if (d.cwiseAbs().maxCoeff() > 1e-12) {
    throw ArgumentError("apply_1q: matrix is not unitary within 1e-12");
  }
}

// Shared 2x2 kernel over one bit position of a column of amplitudes.
void kernel_1q(VectorXc& v, const Matrix2c& u, int bit) {
  const Eigen::Index size = v.size();
  const Eigen::Index step = Eigen::Index{1} << bit;
  const Complex u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
  for (Eigen::Index base = 0; base < size; base += 2 * step) {
    for (Eigen::Index i = base; i < base + step; ++i) {
      const Complex a0 = v[i];
      const Complex a1 = v[i + step];
      v[i] = u00 * a0 + u01 * a1;
      v[i + step] = u10 * a0 + u11 * a1;
    }
  }
}

}  // namespace

PureState zero_state(int num_qubits) {
  if (num_qubits < 1 || num_qubits > 24) {
    throw ArgumentError("zero_state: qubit count out of range: " +
                        std::to_string(num_qubits));
  }
  PureState s;
  s.num_qubits = num_qubits;
  s.amps = VectorXc::Zero(Eigen::Index{1} << num_qubits);
  s.amps[0] = Complex(1, 0);
  return s;
}

void check_state(const PureState& state) {
  if (state.amps.size() != (Eigen::Index{1} << state.num_qubits)) {
    throw InvariantError("PureState: amplitude count != 2^num_qubits");
  }
  if (std::abs(state.amps.norm() - 1.0) > kNormTol) {
    throw InvariantError("PureState: norm drifted beyond 1e-10");
  }
}

void check_state(const FactoredState& state) {
  for (int k = 0; k < 2; ++k) {
    const MatrixXc& m = state.blocks[k];
    if (m.rows() != (Eigen::Index{1} << state.n) || m.cols() != state.n) {
      throw InvariantError("FactoredState: block matrix has wrong shape");
    }
    for (int b = 0; b < state.n; ++b) {
      if (std::abs(m.col(b).norm() - 1.0) > kNormTol) {
        throw InvariantError("FactoredState: block vector norm drifted");
      }
    }
  }
}

void apply_1q(PureState& state, const Matrix2c& u, int qubit) {
  if (qubit < 0 || qubit >= state.num_qubits) {
    throw ArgumentError("apply_1q: qubit index out of range");
  }
  require_unitary(u);
  kernel_1q(state.amps, u, qubit);
}

void apply_1q(FactoredState& state, const Matrix2c& u, int qubit) {
  if (qubit < 0 || qubit >= state.n * state.n) {
    throw ArgumentError("apply_1q: qubit index out of range");
  }
  require_unitary(u);
  const int block = qubit / state.n;
  const int pos = qubit % state.n;
  // The same physical qubit lives in column `block` of both product terms.
  for (int k = 0; k < 2; ++k) {
    VectorXc col = state.blocks[k].col(block);
    kernel_1q(col, u, pos);
    state.blocks[k].col(block) = col;
  }
}

Complex inner(const PureState& a, const PureState& b) {
  if (a.num_qubits != b.num_qubits) {
    throw ArgumentError("inner: qubit counts differ");
  }
  return a.amps.dot(b.amps);  // Eigen's dot conjugates the left factor
}

Real overlap2(const PureState& a, const PureState& b) {
  return std::norm(inner(a, b));
}

PureState expand(const FactoredState& state, const Limits& limits) {
  const int n = state.n;
  if (n > limits.dense_max_n) {
    throw ResourceError("expand: dense register needs n <= " +
                        std::to_string(limits.dense_max_n) + ", got n = " +
                        std::to_string(n));
  }
  check_state(state);
  const Eigen::Index block_dim = Eigen::Index{1} << n;
  PureState out;
  out.num_qubits = n * n;
  out.amps = VectorXc::Zero(Eigen::Index{1} << (n * n));
  for (int k = 0; k < 2; ++k) {
    // Iterated Kronecker product, block 0 in the lowest bits.
    VectorXc cur = state.coeff[k] * state.blocks[k].col(0);
    for (int b = 1; b < n; ++b) {
      VectorXc next(cur.size() * block_dim);
      for (Eigen::Index i = 0; i < block_dim; ++i) {
        next.segment(i * cur.size(), cur.size()) =
            state.blocks[k](i, b) * cur;
      }
      cur.swap(next);
    }
    out.amps += cur;
  }
  const Real nrm = out.amps.norm();
  if (std::abs(nrm - 1.0) > kNormTol) {
    throw InvariantError("expand: dense norm drifted beyond 1e-10");
  }
  out.amps /= nrm;
  return out;
}

}  // namespace qreduce
