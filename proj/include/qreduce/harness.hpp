#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "qreduce/codes.hpp"
#include "qreduce/decoders.hpp"
#include "qreduce/noise.hpp"
#include "qreduce/stations.hpp"
#include "qreduce/types.hpp"

// Monte Carlo sweep driver plus the exhaustive discrete-fault oracle.
//
// Reproducibility contract: a sweep's output is a pure function of its spec.
// Every trial draws from its own counter-based stream, per-trial results are
// written into slots indexed by trial number, and all reductions run in
// trial order — so the bytes of the CSV do not depend on the thread count.
// Wall-clock (elapsed_ms) is the one unavoidable exception; stable_timing
// pins it to zero for byte-compare workflows.
namespace qreduce {

enum class SweepMode { kPauli, kUnitary, kZeno, kOracle };

// The logical input used when none is given: (|0> + |1>)/sqrt(2). The most
// sensitive choice — it is damaged by both logical sign and flip+sign
// actions, unlike the basis states.
LogicalQubit default_input();

struct SweepSpec {
  SweepMode mode = SweepMode::kPauli;
  std::vector<int> n_values{3};        // block sizes (register = n*n qubits)
  std::vector<int> station_values{1};  // chain lengths; kZeno only
  // Per-mode meaning of a grid value v:
  //   kPauli/kOracle: channel probabilities (v*mix.px, v*mix.py, v*mix.pz)
  //   kUnitary:       angle bound chi = v
  //   kZeno:          drift-rate bound w_max = v
  std::vector<Real> noise_values{0.05};
  PauliProbs mix{1, 1, 1};  // relative channel weights for kPauli/kOracle
  long trials = 10000;
  std::uint64_t seed = 1;
  Decision decision = Decision::kExpectation;
  DecoderMode decoder = DecoderMode::kReduce;
  int t_prime = 1;                  // hybrid threshold
  Backend backend = Backend::kDense;
  bool auto_backend = true;         // dense when it fits, factored beyond
  LogicalQubit input = default_input();
  Real total_time = 1.0;            // kZeno: drift duration of the chain
  int threads = 0;                  // 0 = QREDUCE_THREADS or hardware count
  bool stable_timing = false;       // write elapsed_ms as 0
  Limits limits{};
};

struct GridPointStats {
  std::string mode;
  int n = 0;
  int M = 1;
  Real noise_param = 0;
  long trials = 0;
  std::uint64_t seed = 0;
  Real Q_mean = 0, Q_ci_lo = 0, Q_ci_hi = 0;
  Real P_mean = 0, P_ci_lo = 0, P_ci_hi = 0;
  Real elapsed_ms = 0;
};

// One row per (n, M, noise) lattice point, in deterministic order
// (n-major, then M, then noise).
std::vector<GridPointStats> run_sweep(const SweepSpec& spec);

// Exact header:
// mode,n,M,noise_param,trials,seed,Q_mean,Q_ci_lo,Q_ci_hi,P_mean,P_ci_lo,
// P_ci_hi,elapsed_ms — floats with 10 significant digits.
void write_csv(std::ostream& os, const std::vector<GridPointStats>& rows);
void write_json(std::ostream& os, const std::vector<GridPointStats>& rows);
void write_table(std::ostream& os, const std::vector<GridPointStats>& rows);

// 95% Wilson score interval for a binomial proportion, clamped to [0,1].
std::pair<Real, Real> wilson_interval(long successes, long trials);

// Least-squares slope of y on x; with log_log, of log(y) on log(x)
// (all values must then be positive).
Real slope_fit(const std::vector<Real>& x, const std::vector<Real>& y,
               bool log_log);

// Worker count actually used: `requested` if positive, else the
// QREDUCE_THREADS environment variable, else the hardware count; the
// environment variable also acts as a hard cap when set.
int resolve_threads(int requested);

// ---------------------------------------------------------------------------
// Exhaustive oracle over all 4^(n*n) discrete fault patterns.
//
// Every pattern is classified purely combinatorially:
//   benign      — acts as identity on the codespace,
//   logical     — maps codespace to codespace with a nontrivial action,
//   orthogonal  — maps the codespace into its orthogonal complement
//                 (the projection filter removes it with certainty).
// The rule: a block with a partial set of X/Y digits, or blocks that
// disagree on whether they swap the |0..0>+-|1..1> pair, kill the overlap;
// otherwise the action is Z^K (all blocks diagonal) or X Z^K (all blocks
// swapping), K = number of blocks whose digits are all X/Y with the parity
// that contributes a sign.
// ---------------------------------------------------------------------------

enum class PatternClass : std::uint8_t { kBenign, kLogical, kOrthogonal };

// Logical action of a non-orthogonal pattern, up to global phase.
enum class LogicalAction : std::uint8_t {
  kIdentity,  // (a, b) -> (a, b)
  kSign,      // (a, b) -> (a, -b)
  kFlip,      // (a, b) -> (b, a)
  kFlipSign   // (a, b) -> (b, -a)
};

struct PatternInfo {
  PatternClass cls = PatternClass::kOrthogonal;
  LogicalAction action = LogicalAction::kIdentity;
};

// Classify a fault pattern given as base-4 digits (digit q = bits 2q..2q+1
// of `pattern`; 0=I, 1=X, 2=Y, 3=Z), for a register of n*n qubits.
PatternInfo classify_pattern(std::uint64_t pattern, int n);

LogicalQubit apply_logical_action(LogicalAction a, const LogicalQubit& q);

struct OracleResult {
  Real q_exact = 0;  // acceptance probability of the projection filter
  Real p_exact = 0;  // conditional remainder error given acceptance
  long benign = 0;
  long logical = 0;
  long orthogonal = 0;
  std::uint64_t patterns = 0;        // 4^(n*n)
  std::vector<PatternInfo> ledger;   // entry per pattern iff keep_ledger
};

// Enumerates every pattern, classifying combinatorially and simulating
// densely, and throws InvariantError if the two routes ever disagree —
// the returned numbers are exact, not sampled. n <= 3 (4^9 patterns);
// larger n must use oracle_closed_form or Monte Carlo.
OracleResult brute_force_pauli(int n, const PauliProbs& probs,
                               const LogicalQubit& input, bool keep_ledger);

// The same {Q, P}, from per-block probability generating functions instead
// of enumeration; works for any n.
std::pair<Real, Real> oracle_closed_form(int n, const PauliProbs& probs,
                                         const LogicalQubit& input);

}  // namespace qreduce
