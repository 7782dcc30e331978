#include "qreduce/noise.hpp"

#include <bit>
#include <cmath>

namespace qreduce {

namespace {

constexpr Real kPi = 3.14159265358979323846;

// Dense Pauli application: out[x] = g * (-1)^{popcount(x & zy)} * in[x ^ xy]
// with xy the X|Y flip mask, zy the Z|Y phase mask and g = (-i)^{#Y}.
struct PauliMasks {
  std::uint64_t flip = 0;
  std::uint64_t phase = 0;
  int y_count = 0;
};

PauliMasks build_masks(const std::vector<PauliOp>& pattern) {
  PauliMasks m;
  for (size_t q = 0; q < pattern.size(); ++q) {
    switch (pattern[q]) {
      case PauliOp::kI:
        break;
      case PauliOp::kX:
        m.flip |= std::uint64_t{1} << q;
        break;
      case PauliOp::kY:
        m.flip |= std::uint64_t{1} << q;
        m.phase |= std::uint64_t{1} << q;
        ++m.y_count;
        break;
      case PauliOp::kZ:
        m.phase |= std::uint64_t{1} << q;
        break;
    }
  }
  return m;
}

int num_qubits_of(const PureState& s) { return s.num_qubits; }
int num_qubits_of(const FactoredState& s) { return s.n * s.n; }

template <typename StateT>
void apply_noise_impl(StateT& state, const NoiseModel& model,
                      SplitMix64& rng) {
  validate(model);
  const int nq = num_qubits_of(state);
  if (const auto* pauli = std::get_if<PauliProbs>(&model)) {
    apply_pauli(state, sample_pauli_pattern(*pauli, nq, rng));
  } else if (const auto* ru = std::get_if<RandomUnitaryNoise>(&model)) {
    for (int q = 0; q < nq; ++q) {
      apply_1q(state, sample_unitary(ru->chi, rng).matrix(), q);
    }
  } else {
    const auto& drift = std::get<DriftNoise>(model);
    for (int q = 0; q < nq; ++q) {
      const Real rt = rng.uniform(-drift.w_max, drift.w_max);
      const Real rp = rng.uniform(-drift.w_max, drift.w_max);
      const Real re = rng.uniform(-drift.w_max, drift.w_max);
      apply_1q(state, drift_unitary(rt, rp, re, drift.duration).matrix(), q);
    }
  }
}

}  // namespace

Matrix2c SingleQubitUnitary::matrix() const {
  const Real c = std::cos(theta);
  const Real s = std::sin(theta);
  Matrix2c u;
  u(0, 0) = Complex(c, 0);
  u(0, 1) = s * std::polar(1.0, phi);
  u(1, 0) = -s * std::polar(1.0, eta);
  u(1, 1) = c * std::polar(1.0, phi + eta);
  return u;
}

void validate(const NoiseModel& model) {
  if (const auto* pauli = std::get_if<PauliProbs>(&model)) {
    if (pauli->px < 0 || pauli->py < 0 || pauli->pz < 0 ||
        pauli->px + pauli->py + pauli->pz > 1.0) {
      throw ArgumentError(
          "Pauli probabilities must be nonnegative with px+py+pz <= 1");
    }
  } else if (const auto* ru = std::get_if<RandomUnitaryNoise>(&model)) {
    if (ru->chi < 0) throw ArgumentError("chi must be nonnegative");
  } else {
    const auto& drift = std::get<DriftNoise>(model);
    if (drift.w_max < 0 || drift.duration < 0) {
      throw ArgumentError("drift rate cap and duration must be nonnegative");
    }
  }
}

bool outside_small_angle(const DriftNoise& drift) {
  return drift.w_max * drift.duration >= kPi / 2;
}

Matrix2c pauli_matrix(PauliOp op) {
  Matrix2c m = Matrix2c::Zero();
  switch (op) {
    case PauliOp::kI:
      m(0, 0) = m(1, 1) = Complex(1, 0);
      break;
    case PauliOp::kX:
      m(0, 1) = m(1, 0) = Complex(1, 0);
      break;
    case PauliOp::kY:
      m(0, 1) = Complex(0, -1);
      m(1, 0) = Complex(0, 1);
      break;
    case PauliOp::kZ:
      m(0, 0) = Complex(1, 0);
      m(1, 1) = Complex(-1, 0);
      break;
  }
  return m;
}

std::vector<PauliOp> sample_pauli_pattern(const PauliProbs& probs,
                                          int num_qubits, SplitMix64& rng) {
  validate(NoiseModel{probs});
  std::vector<PauliOp> pattern(num_qubits, PauliOp::kI);
  for (int q = 0; q < num_qubits; ++q) {
    const Real u = rng.uniform();
    if (u < probs.px) {
      pattern[q] = PauliOp::kX;
    } else if (u < probs.px + probs.py) {
      pattern[q] = PauliOp::kY;
    } else if (u < probs.px + probs.py + probs.pz) {
      pattern[q] = PauliOp::kZ;
    }
  }
  return pattern;
}

SingleQubitUnitary sample_unitary(Real chi, SplitMix64& rng) {
  SingleQubitUnitary u;
  u.theta = rng.uniform(-chi, chi);
  u.phi = rng.uniform(-chi, chi);
  u.eta = rng.uniform(-chi, chi);
  return u;
}

SingleQubitUnitary drift_unitary(Real rate_theta, Real rate_phi, Real rate_eta,
                                 Real dt) {
  return SingleQubitUnitary{rate_theta * dt, rate_phi * dt, rate_eta * dt};
}

void apply_pauli(PureState& state, const std::vector<PauliOp>& pattern) {
  if (static_cast<int>(pattern.size()) != state.num_qubits) {
    throw ArgumentError("apply_pauli: pattern length != qubit count");
  }
  const PauliMasks m = build_masks(pattern);
  if (m.flip == 0 && m.phase == 0) return;
  // (-i)^{y_count}
  static const Complex kIPow[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
  const Complex g = kIPow[m.y_count % 4];
  thread_local VectorXc scratch;
  scratch.resize(state.amps.size());
  for (Eigen::Index x = 0; x < state.amps.size(); ++x) {
    const Complex v = g * state.amps[static_cast<Eigen::Index>(x ^ m.flip)];
    const bool neg =
        std::popcount(static_cast<std::uint64_t>(x) & m.phase) % 2 != 0;
    scratch[x] = neg ? -v : v;
  }
  state.amps.swap(scratch);
}

void apply_pauli(FactoredState& state, const std::vector<PauliOp>& pattern) {
  if (static_cast<int>(pattern.size()) != state.n * state.n) {
    throw ArgumentError("apply_pauli: pattern length != qubit count");
  }
  for (size_t q = 0; q < pattern.size(); ++q) {
    if (pattern[q] == PauliOp::kI) continue;
    apply_1q(state, pauli_matrix(pattern[q]), static_cast<int>(q));
  }
}

void apply_noise(PureState& state, const NoiseModel& model, SplitMix64& rng) {
  apply_noise_impl(state, model, rng);
}

void apply_noise(FactoredState& state, const NoiseModel& model,
                 SplitMix64& rng) {
  apply_noise_impl(state, model, rng);
}

}  // namespace qreduce
