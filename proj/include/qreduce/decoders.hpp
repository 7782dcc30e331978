#pragma once

#include "qreduce/codes.hpp"
#include "qreduce/rng.hpp"
#include "qreduce/statevec.hpp"
#include "qreduce/types.hpp"

// Decoders.
//
// reduce:  project onto span{|0_L>, |1_L>} and post-select. No attempt to
//          repair anything — rejection is the error filter.
// correct: measure the full stabilizer syndrome (pairwise Z parities inside
//          each block, X^(x)n sign parities between adjacent blocks), apply
//          the minimal-weight Pauli repair, keep everything it can.
// hybrid:  same syndrome extraction, but only subspaces whose inferred error
//          weight is <= t' in every layer are repaired; larger syndromes are
//          rejected like the reduce decoder would.
namespace qreduce {

enum class DecodeStatus { kAccepted, kCorrected, kRejected };

// Expectation: deterministic, carries the acceptance probability exactly
// (no rng consumed). Sampled: one Bernoulli accept/reject per projection.
enum class Decision { kExpectation, kSampled };

enum class DecoderMode { kReduce, kCorrect, kHybrid };

struct DecodeOutcome {
  DecodeStatus status = DecodeStatus::kRejected;
  Real success_prob = 0;    // in [0,1]
  LogicalQubit decoded{0, 0};  // meaningful unless Rejected
  int syndrome_weight = 0;  // Corrected only: sum of per-layer weights
};

struct DecoderParams {
  DecoderMode mode = DecoderMode::kReduce;
  int t_prime = 0;  // hybrid threshold, 0 <= t' <= floor((n-1)/2)
  Decision decision = Decision::kExpectation;
};

// Raw codespace amplitudes a_k = <k_L|psi> and Qhat = |a0|^2 + |a1|^2,
// computed as two inner products against the cached codeword support —
// never via a projector matrix. O(2^n) dense, O(n) factored.
struct CodespaceAmplitudes {
  Complex a0{0, 0};
  Complex a1{0, 0};
  Real qhat = 0;
};

CodespaceAmplitudes codespace_amplitudes(const PureState& state);
CodespaceAmplitudes codespace_amplitudes(const FactoredState& state);

// Projection + post-selection. Expectation mode returns Accepted with
// success_prob = Qhat and the renormalized in-space amplitudes, or Rejected
// when Qhat <= 1e-14 (nothing left to normalize). Sampled mode draws one
// uniform and accepts with probability Qhat.
DecodeOutcome project_codespace(const PureState& state, Decision decision,
                                SplitMix64* rng = nullptr);
DecodeOutcome project_codespace(const FactoredState& state, Decision decision,
                                SplitMix64* rng = nullptr);

// Logical infidelity 1 - |<ideal|decoded>|^2 of an accepted/corrected
// outcome. Calling this on a Rejected outcome is a caller bug
// (InvariantError): rejected shots carry no decoded qubit.
Real remainder_error(const DecodeOutcome& outcome, const LogicalQubit& ideal);

// Syndrome measurement + minimal-weight repair, dense backend only (the
// factored form cannot host the collapse). Mutates `state` (measurement
// collapse, then the repair Paulis). Born-samples every syndrome bit from
// `rng`. Rejects on majority ties (even n) and whenever a layer infers more
// than t_prime errors. Logical frame repairs (e.g. a full block of X reads
// as a trivial bit syndrome) are what the minimal-weight choice implies;
// any mismatch with the actual fault surfaces as remainder error, exactly
// like the classical majority vote.
DecodeOutcome syndrome_correct(PureState& state, int t_prime, SplitMix64& rng);
DecodeOutcome syndrome_correct(FactoredState& state, int t_prime,
                               SplitMix64& rng);

// Mode dispatch; `correct` is hybrid with t' = floor((n-1)/2).
DecodeOutcome decode(State& state, const DecoderParams& params,
                     SplitMix64* rng);

// Block size n from a dense register (n*n qubits); ArgumentError if the
// qubit count is not a perfect square with n >= 2.
int infer_block_size(const PureState& state);

}  // namespace qreduce
