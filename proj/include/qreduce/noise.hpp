#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "qreduce/rng.hpp"
#include "qreduce/statevec.hpp"
#include "qreduce/types.hpp"

// Noise channels. Three families:
//  - independent per-qubit Pauli faults (px, py, pz),
//  - independent per-qubit random small unitaries, angles iid in [-chi, chi],
//  - slow coherent drift: per-qubit angular rates, fixed for a whole trial,
//    integrated over a time slice (the station chain's noise; see stations).
//
// Sampling consumes the rng in a fixed, documented order — qubit-major,
// angle-minor (theta, phi, eta) — so a trial's randomness is a pure function
// of its stream regardless of threading.
namespace qreduce {

// General single-qubit unitary, parameterized so that all three angles at 0
// give the identity:
//   [ cos(theta)                 sin(theta) e^{i phi}        ]
//   [ -sin(theta) e^{i eta}      cos(theta) e^{i (phi+eta)}  ]
struct SingleQubitUnitary {
  Real theta = 0;
  Real phi = 0;
  Real eta = 0;
  Matrix2c matrix() const;
};

enum class PauliOp : std::uint8_t { kI = 0, kX = 1, kY = 2, kZ = 3 };

struct PauliProbs {
  Real px = 0;
  Real py = 0;
  Real pz = 0;
};

struct RandomUnitaryNoise {
  Real chi = 0;  // radians
};

struct DriftNoise {
  Real w_max = 0;     // radians per unit time, rate magnitude cap
  Real duration = 0;  // time slice integrated by one application
};

using NoiseModel = std::variant<PauliProbs, RandomUnitaryNoise, DriftNoise>;

// Throws ArgumentError unless probabilities are nonnegative with sum <= 1 /
// chi, w_max, duration nonnegative.
void validate(const NoiseModel& model);

// True when w_max * duration leaves the small-angle regime (>= pi/2); the
// CLI warns on this, the library stays silent.
bool outside_small_angle(const DriftNoise& drift);

Matrix2c pauli_matrix(PauliOp op);

// One categorical draw per qubit (exactly one uniform consumed per qubit).
std::vector<PauliOp> sample_pauli_pattern(const PauliProbs& probs,
                                          int num_qubits, SplitMix64& rng);

// Angles iid uniform in [-chi, chi], drawn theta, phi, eta.
SingleQubitUnitary sample_unitary(Real chi, SplitMix64& rng);

// Unitary accumulated by drifting at fixed per-axis rates for `dt`.
SingleQubitUnitary drift_unitary(Real rate_theta, Real rate_phi, Real rate_eta,
                                 Real dt);

// Apply a Pauli fault pattern (pattern.size() == qubit count). The dense
// path is a single index-permutation pass, so the norm is preserved exactly.
void apply_pauli(PureState& state, const std::vector<PauliOp>& pattern);
void apply_pauli(FactoredState& state, const std::vector<PauliOp>& pattern);

// Sample one shot of the model and apply it. Drift draws fresh rates for
// every call (i.e. behaves as a single station); the station chain keeps
// rates alive across segments itself.
void apply_noise(PureState& state, const NoiseModel& model, SplitMix64& rng);
void apply_noise(FactoredState& state, const NoiseModel& model,
                 SplitMix64& rng);

}  // namespace qreduce
