#include "qreduce/stations.hpp"

#include <cmath>
#include <string>
#include <variant>

namespace qreduce {

namespace {

void validate(const StationSpec& spec) {
  if (spec.n < 2) {
    throw ArgumentError("block size n must be >= 2, got " +
                        std::to_string(spec.n));
  }
  if (spec.M < 1) {
    throw ArgumentError("station count M must be >= 1, got " +
                        std::to_string(spec.M));
  }
  if (!(spec.total_time >= Real(0))) {
    throw ArgumentError("total_time must be >= 0");
  }
  if (!(spec.w_max >= Real(0))) {
    throw ArgumentError("w_max must be >= 0");
  }
}

}  // namespace

AngleMatrix sample_drift_rates(int num_qubits, Real w_max, SplitMix64& rng) {
  if (num_qubits < 1) {
    throw ArgumentError("num_qubits must be >= 1");
  }
  if (!(w_max >= Real(0))) {
    throw ArgumentError("w_max must be >= 0");
  }
  AngleMatrix rates(num_qubits, 3);
  for (int q = 0; q < num_qubits; ++q) {
    for (int a = 0; a < 3; ++a) {
      rates(q, a) = rng.uniform(-w_max, w_max);
    }
  }
  return rates;
}

ChainResult run_chain_with_rates(const LogicalQubit& q, const StationSpec& spec,
                                 const AngleMatrix& rates, SplitMix64* rng) {
  validate(spec);
  const int num_qubits = spec.n * spec.n;
  if (rates.rows() != num_qubits || rates.cols() != 3) {
    throw ArgumentError("rates must be " + std::to_string(num_qubits) +
                        "x3 (row per qubit)");
  }
  if (spec.decision == Decision::kSampled && rng == nullptr) {
    throw ArgumentError("sampled chains need an rng for the accept draws");
  }

  const Real slice = spec.total_time / spec.M;
  CodeParams params{spec.n, spec.backend, spec.limits};

  ChainResult result;
  result.station_success.reserve(spec.M);

  LogicalQubit carried = q;
  Real cumulative = 1;
  for (int m = 0; m < spec.M; ++m) {
    State state = encode(carried, params);
    for (int qubit = 0; qubit < num_qubits; ++qubit) {
      const Matrix2c u = drift_unitary(rates(qubit, 0), rates(qubit, 1),
                                       rates(qubit, 2), slice)
                             .matrix();
      std::visit([&](auto& s) { apply_1q(s, u, qubit); }, state);
    }
    const DecodeOutcome station = std::visit(
        [&](const auto& s) { return project_codespace(s, spec.decision, rng); },
        state);

    result.station_success.push_back(station.success_prob);
    cumulative *= station.success_prob;
    if (station.status == DecodeStatus::kRejected) {
      result.outcome.status = DecodeStatus::kRejected;
      result.outcome.success_prob = cumulative;
      result.outcome.decoded = LogicalQubit{Complex(0), Complex(0)};
      return result;
    }
    carried = station.decoded;
  }

  result.outcome.status = DecodeStatus::kAccepted;
  result.outcome.success_prob = cumulative;
  result.outcome.decoded = carried;
  return result;
}

ChainResult run_chain(const LogicalQubit& q, const StationSpec& spec,
                      SplitMix64& rng) {
  validate(spec);
  const AngleMatrix rates = sample_drift_rates(spec.n * spec.n, spec.w_max, rng);
  return run_chain_with_rates(q, spec, rates, &rng);
}

}  // namespace qreduce
