#pragma once

#include <array>

#include "qreduce/types.hpp"

// State-vector backends.
//
// Dense: one complex amplitude per basis state of the full register,
// little-endian (qubit q is bit 2^q of the index). For the block codes in
// this project qubit indexing is block-major: qubit = block*n + position.
//
// Factored: the states this project manipulates stay, up to local unitaries,
// in span{ (x)_b u_b , (x)_b v_b } — two weighted tensor products of n
// per-block vectors of 2^n amplitudes each. Memory is O(n 2^n) instead of
// O(2^(n^2)), which is what makes n=4..16 reachable.
namespace qreduce {

struct PureState {
  int num_qubits = 0;
  VectorXc amps;
};

struct FactoredState {
  int n = 0;                          // block size == number of blocks
  std::array<Complex, 2> coeff{};    // weights of the two product terms
  std::array<MatrixXc, 2> blocks{};  // 2^n x n, column b = block b's vector
};

// |0...0> on num_qubits qubits.
PureState zero_state(int num_qubits);

// Throw InvariantError unless the state is normalized within kNormTol
// (per block column for the factored form).
void check_state(const PureState& state);
void check_state(const FactoredState& state);

// In-place single-qubit unitary. Throws ArgumentError if u is not unitary
// within 1e-12 or the qubit index is out of range. Norm is preserved (the
// kernel touches each amplitude pair once; Pauli-like entries of 0/±1/±i
// pass through exactly).
void apply_1q(PureState& state, const Matrix2c& u, int qubit);
void apply_1q(FactoredState& state, const Matrix2c& u, int qubit);

// <a|b>, conjugate-linear in the first argument.
Complex inner(const PureState& a, const PureState& b);

// |<a|b>|^2 — the global-phase-blind comparison used throughout.
Real overlap2(const PureState& a, const PureState& b);

// Materialize the factored form as a dense register (block b occupies bits
// [b*n, (b+1)*n)). Result is renormalized; drift beyond kNormTol throws
// InvariantError, a 2^(n^2) register beyond limits.dense_max_n throws
// ResourceError.
PureState expand(const FactoredState& state, const Limits& limits = {});

}  // namespace qreduce
