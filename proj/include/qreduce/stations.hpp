#pragma once

#include <vector>

#include "qreduce/codes.hpp"
#include "qreduce/decoders.hpp"
#include "qreduce/noise.hpp"
#include "qreduce/rng.hpp"

// A transmission chain: the logical qubit is encoded, drifts coherently for
// a time slice, is filtered by codespace projection, re-encoded, and handed
// to the next station. Splitting a fixed total time over M stations trades
// M-fold post-selection for a quadratically smaller per-station error.
namespace qreduce {

struct StationSpec {
  int n = 2;               // carriers per block (register holds n*n qubits)
  int M = 1;               // number of filtering stations
  Real total_time = 1.0;   // drift duration shared by the whole chain
  Real w_max = 0.0;        // per-angle drift-rate bound (radians / time)
  Backend backend = Backend::kFactored;
  Decision decision = Decision::kExpectation;
  Limits limits{};
};

struct ChainResult {
  // Cumulative outcome: success_prob is the product of per-station
  // acceptance probabilities; decoded is the logical content after the last
  // accepted station.
  DecodeOutcome outcome;
  // Conditional acceptance of each station that ran (length <= M; shorter
  // only when a sampled run rejects early).
  std::vector<Real> station_success;
};

// Draws one drift-rate triple per physical qubit, each component uniform on
// [-w_max, w_max]. Rates are persistent: the same matrix drives every
// station of a chain. Row = qubit, columns = theta, phi, eta rates.
AngleMatrix sample_drift_rates(int num_qubits, Real w_max, SplitMix64& rng);

// Runs the chain with explicit drift rates (row per qubit). `rng` is only
// consumed when spec.decision == kSampled (one accept/reject draw per
// station); pass nullptr for expectation runs.
ChainResult run_chain_with_rates(const LogicalQubit& q, const StationSpec& spec,
                                 const AngleMatrix& rates, SplitMix64* rng);

// Samples rates from `rng`, then runs the chain (the same `rng` also serves
// the per-station accept draws in sampled mode).
ChainResult run_chain(const LogicalQubit& q, const StationSpec& spec,
                      SplitMix64& rng);

}  // namespace qreduce
