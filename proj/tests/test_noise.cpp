#include <doctest.h>

#include <cmath>
#include <vector>

#include "qreduce/codes.hpp"
#include "qreduce/noise.hpp"
#include "qreduce/rng.hpp"
#include "qreduce/statevec.hpp"

using namespace qreduce;

TEST_CASE("single-qubit unitary matches its defining entries") {
  const SingleQubitUnitary u{0.3, 0.4, 0.5};
  const Matrix2c m = u.matrix();
  CHECK(std::abs(m(0, 0) - Complex(std::cos(0.3), 0)) < 1e-15);
  CHECK(std::abs(m(0, 1) - std::sin(0.3) * std::polar(1.0, 0.4)) < 1e-15);
  CHECK(std::abs(m(1, 0) + std::sin(0.3) * std::polar(1.0, 0.5)) < 1e-15);
  CHECK(std::abs(m(1, 1) - std::cos(0.3) * std::polar(1.0, 0.9)) < 1e-15);
  CHECK((m.adjoint() * m - Matrix2c::Identity()).cwiseAbs().maxCoeff() <
        1e-15);
  CHECK((SingleQubitUnitary{}.matrix() - Matrix2c::Identity())
            .cwiseAbs()
            .maxCoeff() == 0.0);
}

TEST_CASE("pauli matrices multiply by the usual algebra") {
  const Matrix2c x = pauli_matrix(PauliOp::kX);
  const Matrix2c y = pauli_matrix(PauliOp::kY);
  const Matrix2c z = pauli_matrix(PauliOp::kZ);
  CHECK((x * x - Matrix2c::Identity()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((x * y - Complex(0, 1) * z).cwiseAbs().maxCoeff() == 0.0);
  CHECK((y * z - Complex(0, 1) * x).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("pattern sampling consumes one uniform per qubit, in order") {
  const PauliProbs probs{0.1, 0.2, 0.3};
  SplitMix64 rng(99);
  const auto pattern = sample_pauli_pattern(probs, 6, rng);
  SplitMix64 replay(99);
  for (int q = 0; q < 6; ++q) {
    const Real u = replay.uniform();
    PauliOp expected = PauliOp::kI;
    if (u < 0.1) {
      expected = PauliOp::kX;
    } else if (u < 0.3) {
      expected = PauliOp::kY;
    } else if (u < 0.6) {
      expected = PauliOp::kZ;
    }
    CHECK(pattern[q] == expected);
  }
  // The two generators must now be in the same position.
  CHECK(rng.next() == replay.next());
}

TEST_CASE("sampled pattern frequencies match the channel") {
  const PauliProbs probs{0.05, 0.02, 0.03};
  SplitMix64 rng(7);
  long counts[4] = {0, 0, 0, 0};
  const long draws = 20000;
  for (long t = 0; t < draws; ++t) {
    for (PauliOp op : sample_pauli_pattern(probs, 9, rng)) {
      ++counts[static_cast<int>(op)];
    }
  }
  const Real total = static_cast<Real>(draws) * 9;
  CHECK(std::abs(counts[1] / total - 0.05) < 0.003);
  CHECK(std::abs(counts[2] / total - 0.02) < 0.003);
  CHECK(std::abs(counts[3] / total - 0.03) < 0.003);
}

TEST_CASE("dense pauli application equals per-qubit matrix application") {
  const LogicalQubit q{Complex(0.6, 0), Complex(0, 0.8)};
  PureState via_masks = encode_dense(q, 3);
  PureState via_matrices = via_masks;
  const std::vector<PauliOp> pattern{
      PauliOp::kX, PauliOp::kY, PauliOp::kZ, PauliOp::kI, PauliOp::kY,
      PauliOp::kI, PauliOp::kZ, PauliOp::kX, PauliOp::kI};
  apply_pauli(via_masks, pattern);
  for (int qb = 0; qb < 9; ++qb) {
    if (pattern[qb] != PauliOp::kI) {
      apply_1q(via_matrices, pauli_matrix(pattern[qb]), qb);
    }
  }
  CHECK((via_masks.amps - via_matrices.amps).cwiseAbs().maxCoeff() < 1e-14);
  check_state(via_masks);  // Pauli application is exactly norm-preserving
}

TEST_CASE("factored pauli application matches dense") {
  const LogicalQubit q{Complex(0.6, 0), Complex(0, 0.8)};
  PureState dense = encode_dense(q, 3);
  FactoredState fact = encode_factored(q, 3);
  const std::vector<PauliOp> pattern{
      PauliOp::kZ, PauliOp::kI, PauliOp::kX, PauliOp::kX, PauliOp::kX,
      PauliOp::kY, PauliOp::kI, PauliOp::kZ, PauliOp::kI};
  apply_pauli(dense, pattern);
  apply_pauli(fact, pattern);
  CHECK(overlap2(dense, expand(fact)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("drift unitary is the rate triple scaled by time") {
  const SingleQubitUnitary u = drift_unitary(0.2, -0.4, 0.6, 0.5);
  CHECK(u.theta == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(u.phi == doctest::Approx(-0.2).epsilon(1e-15));
  CHECK(u.eta == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("sample_unitary draws theta, phi, eta in that order") {
  SplitMix64 rng(31);
  const SingleQubitUnitary u = sample_unitary(0.5, rng);
  SplitMix64 replay(31);
  CHECK(u.theta == replay.uniform(-0.5, 0.5));
  CHECK(u.phi == replay.uniform(-0.5, 0.5));
  CHECK(u.eta == replay.uniform(-0.5, 0.5));
}

TEST_CASE("channel validation rejects out-of-range parameters") {
  CHECK_THROWS_AS(validate(NoiseModel{PauliProbs{0.5, 0.4, 0.2}}),
                  ArgumentError);
  CHECK_THROWS_AS(validate(NoiseModel{PauliProbs{-0.1, 0, 0}}),
                  ArgumentError);
  CHECK_THROWS_AS(validate(NoiseModel{RandomUnitaryNoise{-1}}),
                  ArgumentError);
  CHECK_THROWS_AS(validate(NoiseModel{DriftNoise{-1, 1}}), ArgumentError);
  CHECK_NOTHROW(validate(NoiseModel{PauliProbs{0.3, 0.3, 0.4}}));
}

TEST_CASE("small-angle boundary sits at a quarter turn") {
  CHECK(!outside_small_angle(DriftNoise{1.0, 1.5}));
  CHECK(outside_small_angle(DriftNoise{1.0, 1.5707963268}));
  CHECK(outside_small_angle(DriftNoise{2.0, 1.0}));
}

TEST_CASE("apply_noise drives both backends identically from one seed") {
  const LogicalQubit q{Complex(0.6, 0), Complex(0, 0.8)};
  for (const NoiseModel model :
       {NoiseModel{PauliProbs{0.1, 0.05, 0.1}},
        NoiseModel{RandomUnitaryNoise{0.3}}, NoiseModel{DriftNoise{0.4, 1.0}}}) {
    PureState dense = encode_dense(q, 3);
    FactoredState fact = encode_factored(q, 3);
    SplitMix64 rng_a(1234);
    SplitMix64 rng_b(1234);
    apply_noise(dense, model, rng_a);
    apply_noise(fact, model, rng_b);
    CHECK(overlap2(dense, expand(fact)) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // Both paths must consume the same amount of randomness.
    CHECK(rng_a.next() == rng_b.next());
  }
}
