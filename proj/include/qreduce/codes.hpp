#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "qreduce/statevec.hpp"
#include "qreduce/types.hpp"

// The repetition/rotation/repetition block code. One logical qubit is spread
// over n blocks of n qubits; the codewords are products of GHZ-type blocks,
//
//   |0_L> = prod_b (|0..0> + |1..1>)/sqrt(2)
//   |1_L> = prod_b (|0..0> - |1..1>)/sqrt(2)
//
// so a logical state is told apart by the common sign of the n block
// superpositions. n=3 reproduces the familiar nine-qubit encoding.
namespace qreduce {

struct LogicalQubit {
  Complex a0{1, 0};  // amplitude on logical |0>
  Complex a1{0, 0};  // amplitude on logical |1>
};

enum class Backend { kDense, kFactored };

struct CodeParams {
  int n = 3;
  Backend backend = Backend::kDense;
  Limits limits{};
};

using State = std::variant<PureState, FactoredState>;

// |<a|b>|^2 on the logical 2-dim space.
Real logical_overlap2(const LogicalQubit& a, const LogicalQubit& b);

// Nonzero structure of a codeword: 2^n basis states, one per block on/off
// pattern, all with amplitude 2^(-n/2); sign[pat] applies to codeword 1
// (parity of the number of all-ones blocks). Cached per n and shared
// across threads (immutable once built).
struct CodewordSupport {
  int n = 0;
  std::vector<Eigen::Index> index;  // dense index of each block pattern
  std::vector<Real> sign;           // +-1, sign inside codeword 1
  Real amp = 0;                     // 2^(-n/2)
};

std::shared_ptr<const CodewordSupport> codeword_support(int n);

// Dense codeword for logical `bit`.
PureState codeword_rur(int bit, int n, const Limits& limits = {});

// Encode a (normalized) logical qubit with the requested backend.
PureState encode_dense(const LogicalQubit& q, int n, const Limits& limits = {});
FactoredState encode_factored(const LogicalQubit& q, int n,
                              const Limits& limits = {});
State encode(const LogicalQubit& q, const CodeParams& params);

// alpha|0..0> + beta|1..1> on `m` qubits — the plain repetition layer.
PureState encode_repetition(const LogicalQubit& q, int m);

// The basis rotation applied between the two repetition layers:
// |0> -> (|0>+|1>)/sqrt(2), |1> -> (|0>-|1>)/sqrt(2).
Matrix2c basis_rotation();

// Construct the encoding the long way round — repetition, per-qubit
// rotation, repetition again — as an independent cross-check of the direct
// product formula. Kept as the test oracle; encode_dense is the production
// path.
PureState encode_staged(const LogicalQubit& q, int n, const Limits& limits = {});

}  // namespace qreduce
