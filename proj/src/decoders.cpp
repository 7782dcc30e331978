#include "qreduce/decoders.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "qreduce/noise.hpp"

namespace qreduce {

namespace {

constexpr Real kRejectQhat = 1e-14;

Real clamp01(Real x) { return std::min(std::max(x, 0.0), 1.0); }

DecodeOutcome outcome_from_amplitudes(const CodespaceAmplitudes& amps,
                                      Decision decision, SplitMix64* rng,
                                      DecodeStatus accept_status,
                                      int syndrome_weight) {
  DecodeOutcome out;
  out.syndrome_weight = syndrome_weight;
  out.success_prob = clamp01(amps.qhat);
  if (amps.qhat <= kRejectQhat) {
    out.status = DecodeStatus::kRejected;
    return out;
  }
  if (decision == Decision::kSampled) {
    if (rng == nullptr) {
      throw ArgumentError("sampled projection needs an rng");
    }
    if (rng->uniform() >= out.success_prob) {
      out.status = DecodeStatus::kRejected;
      return out;
    }
  }
  const Real r = 1.0 / std::sqrt(amps.qhat);
  out.status = accept_status;
  out.decoded = LogicalQubit{amps.a0 * r, amps.a1 * r};
  return out;
}

// --- projective syndrome measurements on the dense register ---

// Z_i Z_j parity: returns 1 for the odd (-1) branch. One uniform consumed.
int measure_z_parity(PureState& state, int q1, int q2, SplitMix64& rng) {
  const Eigen::Index m1 = Eigen::Index{1} << q1;
  const Eigen::Index m2 = Eigen::Index{1} << q2;
  Real p_even = 0;
  for (Eigen::Index x = 0; x < state.amps.size(); ++x) {
    const bool odd = ((x & m1) != 0) != ((x & m2) != 0);
    if (!odd) p_even += std::norm(state.amps[x]);
  }
  const int outcome = rng.uniform() < p_even ? 0 : 1;
  const Real p = outcome == 0 ? p_even : 1.0 - p_even;
  const Real r = 1.0 / std::sqrt(std::max(p, 1e-300));
  for (Eigen::Index x = 0; x < state.amps.size(); ++x) {
    const bool odd = ((x & m1) != 0) != ((x & m2) != 0);
    state.amps[x] = (odd == (outcome == 1)) ? state.amps[x] * r : Complex(0, 0);
  }
  return outcome;
}

// Parity of X on every qubit in `mask` (eigenvalues +-1 of the flip
// permutation). Returns 1 for the -1 branch. One uniform consumed.
int measure_x_mask(PureState& state, Eigen::Index mask, SplitMix64& rng) {
  Real p_plus = 0;
  for (Eigen::Index x = 0; x < state.amps.size(); ++x) {
    p_plus += 0.25 * std::norm(state.amps[x] + state.amps[x ^ mask]);
  }
  const int outcome = rng.uniform() < p_plus ? 0 : 1;
  const Real p = outcome == 0 ? p_plus : 1.0 - p_plus;
  const Real r = 0.5 / std::sqrt(std::max(p, 1e-300));
  const Real s = outcome == 0 ? 1.0 : -1.0;
  thread_local VectorXc scratch;
  scratch.resize(state.amps.size());
  for (Eigen::Index x = 0; x < state.amps.size(); ++x) {
    scratch[x] = (state.amps[x] + s * state.amps[x ^ mask]) * r;
  }
  state.amps.swap(scratch);
  return outcome;
}

// Minimal-weight member of the coset determined by adjacent parities.
// parities[i] = e_i xor e_{i+1}; the two candidates differ by complement.
// Returns weight, or -1 on an exact tie (even length only).
int minimal_weight_pattern(const std::vector<int>& parities,
                           std::vector<int>& pattern_out) {
  const int len = static_cast<int>(parities.size()) + 1;
  pattern_out.assign(len, 0);
  int w = 0;
  for (int i = 0; i + 1 < len; ++i) {
    pattern_out[i + 1] = pattern_out[i] ^ parities[i];
    w += pattern_out[i + 1];
  }
  const int wc = len - w;
  if (w == wc) return -1;
  if (w > wc) {
    for (int i = 0; i < len; ++i) pattern_out[i] ^= 1;
    w = wc;
  }
  return w;
}

}  // namespace

int infer_block_size(const PureState& state) {
  const int n = static_cast<int>(std::lround(std::sqrt(state.num_qubits)));
  if (n < 2 || n * n != state.num_qubits) {
    throw ArgumentError("register has " + std::to_string(state.num_qubits) +
                        " qubits, not an n*n block layout with n >= 2");
  }
  return n;
}

CodespaceAmplitudes codespace_amplitudes(const PureState& state) {
  const int n = infer_block_size(state);
  auto sup = codeword_support(n);
  CodespaceAmplitudes out;
  for (size_t pat = 0; pat < sup->index.size(); ++pat) {
    const Complex amp = state.amps[sup->index[pat]];
    out.a0 += amp;
    out.a1 += sup->sign[pat] * amp;
  }
  out.a0 *= sup->amp;
  out.a1 *= sup->amp;
  out.qhat = std::norm(out.a0) + std::norm(out.a1);
  return out;
}

CodespaceAmplitudes codespace_amplitudes(const FactoredState& state) {
  const Eigen::Index last = (Eigen::Index{1} << state.n) - 1;
  const Real r = 1.0 / std::sqrt(2.0);
  CodespaceAmplitudes out;
  for (int k = 0; k < 2; ++k) {
    Complex plus_prod{1, 0};
    Complex minus_prod{1, 0};
    for (int b = 0; b < state.n; ++b) {
      const Complex lo = state.blocks[k](0, b);
      const Complex hi = state.blocks[k](last, b);
      plus_prod *= (lo + hi) * r;
      minus_prod *= (lo - hi) * r;
    }
    out.a0 += state.coeff[k] * plus_prod;
    out.a1 += state.coeff[k] * minus_prod;
  }
  out.qhat = std::norm(out.a0) + std::norm(out.a1);
  return out;
}

DecodeOutcome project_codespace(const PureState& state, Decision decision,
                                SplitMix64* rng) {
  return outcome_from_amplitudes(codespace_amplitudes(state), decision, rng,
                                 DecodeStatus::kAccepted, 0);
}

DecodeOutcome project_codespace(const FactoredState& state, Decision decision,
                                SplitMix64* rng) {
  return outcome_from_amplitudes(codespace_amplitudes(state), decision, rng,
                                 DecodeStatus::kAccepted, 0);
}

Real remainder_error(const DecodeOutcome& outcome, const LogicalQubit& ideal) {
  if (outcome.status == DecodeStatus::kRejected) {
    throw InvariantError(
        "remainder_error: rejected outcome carries no decoded qubit");
  }
  return clamp01(1.0 - logical_overlap2(ideal, outcome.decoded));
}

DecodeOutcome syndrome_correct(PureState& state, int t_prime, SplitMix64& rng) {
  const int n = infer_block_size(state);
  const int t_max = (n - 1) / 2;
  if (t_prime < 0 || t_prime > t_max) {
    throw ArgumentError("t_prime must lie in [0, floor((n-1)/2)] = [0, " +
                        std::to_string(t_max) + "]");
  }

  DecodeOutcome rejected;
  rejected.status = DecodeStatus::kRejected;

  int total_weight = 0;
  std::vector<int> parities(n - 1);
  std::vector<int> pattern;

  // Bit layer: adjacent Z parities inside each block locate X-type faults
  // up to complement; take the lighter reading, repair, or reject when the
  // block is ambiguous (even-n tie) or busier than t'.
  for (int b = 0; b < n; ++b) {
    for (int i = 0; i + 1 < n; ++i) {
      parities[i] = measure_z_parity(state, b * n + i, b * n + i + 1, rng);
    }
    const int w = minimal_weight_pattern(parities, pattern);
    if (w < 0 || w > t_prime) return rejected;
    total_weight += w;
    for (int i = 0; i < n; ++i) {
      if (pattern[i]) {
        apply_1q(state, pauli_matrix(PauliOp::kX), b * n + i);
      }
    }
  }

  // Phase layer: adjacent-block X^(x)n sign parities locate sign-flipped
  // blocks the same way; one Z per flipped block repairs the sign.
  const Eigen::Index block_ones = (Eigen::Index{1} << n) - 1;
  for (int b = 0; b + 1 < n; ++b) {
    const Eigen::Index mask =
        (block_ones << (b * n)) | (block_ones << ((b + 1) * n));
    parities[b] = measure_x_mask(state, mask, rng);
  }
  const int w = minimal_weight_pattern(parities, pattern);
  if (w < 0 || w > t_prime) return rejected;
  total_weight += w;
  for (int b = 0; b < n; ++b) {
    if (pattern[b]) {
      apply_1q(state, pauli_matrix(PauliOp::kZ), b * n);
    }
  }

  // The full stabilizer record plus its repair maps the measured sector
  // back onto the codespace, so Qhat here is 1 up to float noise.
  return outcome_from_amplitudes(codespace_amplitudes(state),
                                 Decision::kExpectation, nullptr,
                                 DecodeStatus::kCorrected, total_weight);
}

DecodeOutcome syndrome_correct(FactoredState&, int, SplitMix64&) {
  throw ArgumentError(
      "syndrome_correct requires the dense backend: the factored form "
      "cannot host syndrome collapse");
}

DecodeOutcome decode(State& state, const DecoderParams& params,
                     SplitMix64* rng) {
  switch (params.mode) {
    case DecoderMode::kReduce:
      return std::visit(
          [&](auto& s) { return project_codespace(s, params.decision, rng); },
          state);
    case DecoderMode::kCorrect:
    case DecoderMode::kHybrid: {
      if (rng == nullptr) {
        throw ArgumentError("syndrome decoding needs an rng");
      }
      return std::visit(
          [&](auto& s) {
            int t = params.t_prime;
            if (params.mode == DecoderMode::kCorrect) {
              if constexpr (std::is_same_v<std::decay_t<decltype(s)>,
                                           PureState>) {
                t = (infer_block_size(s) - 1) / 2;
              }
            }
            return syndrome_correct(s, t, *rng);
          },
          state);
    }
  }
  throw InvariantError("decode: unreachable decoder mode");
}

}  // namespace qreduce
