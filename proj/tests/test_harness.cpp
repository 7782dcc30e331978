#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qreduce/analytic.hpp"
#include "qreduce/harness.hpp"
#include "qreduce/rng.hpp"

using namespace qreduce;

namespace {

std::string csv_of(const std::vector<GridPointStats>& rows) {
  std::ostringstream os;
  write_csv(os, rows);
  return os.str();
}

}  // namespace

TEST_CASE("wilson interval goldens") {
  const auto mid = wilson_interval(8, 10);
  CHECK(mid.first == doctest::Approx(0.49015684672072335).epsilon(1e-12));
  CHECK(mid.second == doctest::Approx(0.9433190520193067).epsilon(1e-12));

  const auto lo = wilson_interval(0, 10);
  CHECK(lo.first == 0.0);  // clamped, never negative
  CHECK(lo.second == doctest::Approx(0.2775401687666166).epsilon(1e-12));

  const auto hi = wilson_interval(10, 10);
  CHECK(hi.first == doctest::Approx(0.7224598312333834).epsilon(1e-12));
  CHECK(hi.second == 1.0);

  CHECK_THROWS_AS(wilson_interval(5, 0), ArgumentError);
  CHECK_THROWS_AS(wilson_interval(-1, 10), ArgumentError);
  CHECK_THROWS_AS(wilson_interval(11, 10), ArgumentError);
}

TEST_CASE("wilson interval covers the true proportion at its nominal rate") {
  SplitMix64 rng(123);
  const Real p = 0.3;
  const long draws = 200;
  int covered = 0;
  for (int exp = 0; exp < 100; ++exp) {
    long k = 0;
    for (long d = 0; d < draws; ++d) {
      if (rng.uniform() < p) ++k;
    }
    const auto [lo, hi] = wilson_interval(k, draws);
    if (lo <= p && p <= hi) ++covered;
  }
  CHECK(covered >= 93);
}

TEST_CASE("slope fit recovers power laws and lines") {
  const std::vector<Real> x{0.02, 0.04, 0.08, 0.16};
  std::vector<Real> y;
  for (Real xi : x) y.push_back(3 * xi * xi);
  CHECK(slope_fit(x, y, true) == doctest::Approx(2.0).epsilon(1e-12));

  std::vector<Real> lin;
  for (Real xi : x) lin.push_back(2 * xi + 1);
  CHECK(slope_fit(x, lin, false) == doctest::Approx(2.0).epsilon(1e-12));

  CHECK_THROWS_AS(slope_fit({1.0}, {1.0}, false), ArgumentError);
  CHECK_THROWS_AS(slope_fit({1.0, 2.0}, {1.0}, false), ArgumentError);
  CHECK_THROWS_AS(slope_fit({1.0, 2.0}, {0.0, 1.0}, true), ArgumentError);
  CHECK_THROWS_AS(slope_fit({1.0, 1.0}, {1.0, 2.0}, false), ArgumentError);
}

TEST_CASE("fault pattern spot classifications, 2x2 register") {
  // digit q = bits 2q..2q+1 of the id; 0=I, 1=X, 2=Y, 3=Z
  const PatternInfo x0 = classify_pattern(0b01, 2);
  CHECK(x0.cls == PatternClass::kOrthogonal);

  const PatternInfo zz = classify_pattern(0b1111, 2);  // Z0 Z1, one block
  CHECK(zz.cls == PatternClass::kBenign);
  CHECK(zz.action == LogicalAction::kIdentity);

  const PatternInfo z_each = classify_pattern(0b110011, 2);  // Z0, Z2
  CHECK(z_each.cls == PatternClass::kLogical);
  CHECK(z_each.action == LogicalAction::kFlip);

  const PatternInfo xx = classify_pattern(0b0101, 2);  // X0 X1, one block
  CHECK(xx.cls == PatternClass::kLogical);
  CHECK(xx.action == LogicalAction::kSign);

  const PatternInfo xy = classify_pattern(0b1001, 2);  // X0 Y1
  CHECK(xy.cls == PatternClass::kOrthogonal);

  const PatternInfo yy = classify_pattern(0b1010, 2);  // Y0 Y1
  CHECK(yy.cls == PatternClass::kLogical);
  CHECK(yy.action == LogicalAction::kSign);

  const PatternInfo x_all = classify_pattern(0b01010101, 2);  // X everywhere
  CHECK(x_all.cls == PatternClass::kBenign);
  CHECK(x_all.action == LogicalAction::kIdentity);

  CHECK_THROWS_AS(classify_pattern(0, 6), ArgumentError);
  CHECK_THROWS_AS(classify_pattern(0, 1), ArgumentError);
}

TEST_CASE("logical actions move amplitudes as advertised") {
  const LogicalQubit q{Complex(0.6, 0), Complex(0, 0.8)};
  const LogicalQubit id = apply_logical_action(LogicalAction::kIdentity, q);
  CHECK(id.a0 == q.a0);
  CHECK(id.a1 == q.a1);
  const LogicalQubit sign = apply_logical_action(LogicalAction::kSign, q);
  CHECK(sign.a0 == q.a0);
  CHECK(sign.a1 == -q.a1);
  const LogicalQubit flip = apply_logical_action(LogicalAction::kFlip, q);
  CHECK(flip.a0 == q.a1);
  CHECK(flip.a1 == q.a0);
  const LogicalQubit fs = apply_logical_action(LogicalAction::kFlipSign, q);
  CHECK(fs.a0 == q.a1);
  CHECK(fs.a1 == -q.a0);
}

TEST_CASE("exhaustive enumeration tallies the three classes") {
  const OracleResult two =
      brute_force_pauli(2, PauliProbs{0.02, 0.02, 0.02}, default_input(), true);
  CHECK(two.patterns == 256);
  CHECK(two.benign == 8);
  CHECK(two.logical == 24);
  CHECK(two.orthogonal == 224);
  REQUIRE(two.ledger.size() == 256);
  long benign = 0, logical = 0, orthogonal = 0;
  for (const PatternInfo& info : two.ledger) {
    switch (info.cls) {
      case PatternClass::kBenign: ++benign; break;
      case PatternClass::kLogical: ++logical; break;
      case PatternClass::kOrthogonal: ++orthogonal; break;
    }
  }
  CHECK(benign == two.benign);
  CHECK(logical == two.logical);
  CHECK(orthogonal == two.orthogonal);

  const OracleResult three = brute_force_pauli(
      3, PauliProbs{0.02, 0.02, 0.02}, default_input(), false);
  CHECK(three.patterns == 262144);
  CHECK(three.benign == 256);
  CHECK(three.logical == 768);
  CHECK(three.orthogonal == 261120);
  CHECK(three.ledger.empty());

  CHECK_THROWS_AS(
      brute_force_pauli(4, PauliProbs{0.02, 0.02, 0.02}, default_input(),
                        false),
      ResourceError);
}

TEST_CASE("closed-form filter statistics goldens") {
  const LogicalQubit in = default_input();
  CHECK(in.a0.real() == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(in.a1.real() == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));

  struct Golden {
    int n;
    Real q;
    Real Q;
    Real P;
  };
  const Golden goldens[] = {
      {2, 0.02, 0.7843455999999999, 0.001879987597304489},
      {3, 0.02, 0.5755482529398782, 0.00011585025876653423},
      {4, 0.02, 0.3756500852990156, 6.543661811754983e-06},
      {3, 0.03, 0.43273067500311013, 0.00043212182521692517},
      {2, 0.1, 0.296, 0.08648648648648688},
  };
  for (const Golden& g : goldens) {
    const auto [Q, P] =
        oracle_closed_form(g.n, PauliProbs{g.q, g.q, g.q}, in);
    CHECK(Q == doctest::Approx(g.Q).epsilon(1e-12));
    CHECK(P == doctest::Approx(g.P).epsilon(1e-12));
  }

  // Enumeration and generating functions are two independent routes.
  for (int n : {2, 3}) {
    const PauliProbs probs{0.05, 0.01, 0.02};
    const OracleResult brute = brute_force_pauli(n, probs, in, false);
    const auto [Q, P] = oracle_closed_form(n, probs, in);
    CHECK(brute.q_exact == doctest::Approx(Q).epsilon(1e-12));
    CHECK(brute.p_exact == doctest::Approx(P).epsilon(1e-12));
  }

  CHECK_THROWS_AS(
      oracle_closed_form(2, PauliProbs{0.6, 0.3, 0.2}, in), ArgumentError);
  CHECK_THROWS_AS(oracle_closed_form(1, PauliProbs{0.1, 0, 0}, in),
                  ArgumentError);
}

TEST_CASE("expectation sweeps bracket the exact answer") {
  SweepSpec spec;
  spec.mode = SweepMode::kPauli;
  spec.n_values = {2};
  spec.noise_values = {0.05};
  spec.trials = 4000;
  spec.seed = 11;
  spec.stable_timing = true;
  const auto rows = run_sweep(spec);
  REQUIRE(rows.size() == 1);
  const auto [Q, P] =
      oracle_closed_form(2, PauliProbs{0.05, 0.05, 0.05}, default_input());
  CHECK(rows[0].mode == "pauli");
  CHECK(rows[0].noise_param == 0.05);
  CHECK(rows[0].Q_ci_lo <= Q);
  CHECK(Q <= rows[0].Q_ci_hi);
  CHECK(rows[0].P_ci_lo <= P);
  CHECK(P <= rows[0].P_ci_hi);
  CHECK(rows[0].elapsed_ms == 0.0);
}

TEST_CASE("sampled sweeps report Wilson acceptance intervals") {
  SweepSpec spec;
  spec.mode = SweepMode::kPauli;
  spec.n_values = {2};
  spec.noise_values = {0.1};
  spec.trials = 1000;
  spec.seed = 5;
  spec.decision = Decision::kSampled;
  const auto rows = run_sweep(spec);
  REQUIRE(rows.size() == 1);
  const long k = std::lround(rows[0].Q_mean * 1000);
  const auto [lo, hi] = wilson_interval(k, 1000);
  CHECK(rows[0].Q_ci_lo == doctest::Approx(lo).epsilon(1e-12));
  CHECK(rows[0].Q_ci_hi == doctest::Approx(hi).epsilon(1e-12));
  CHECK(rows[0].P_ci_lo >= 0.0);
  CHECK(rows[0].P_ci_hi <= 1.0);
}

TEST_CASE("the same spec yields byte-identical output at any thread count") {
  SweepSpec spec;
  spec.mode = SweepMode::kPauli;
  spec.n_values = {2, 3};
  spec.noise_values = {0.02, 0.05};
  spec.trials = 2000;
  spec.seed = 7;
  spec.decision = Decision::kSampled;
  spec.stable_timing = true;

  spec.threads = 1;
  const std::string serial = csv_of(run_sweep(spec));
  spec.threads = 4;
  const std::string parallel = csv_of(run_sweep(spec));
  CHECK(serial == parallel);
  CHECK(serial.rfind("mode,n,M,noise_param,trials,seed,Q_mean,Q_ci_lo,"
                     "Q_ci_hi,P_mean,P_ci_lo,P_ci_hi,elapsed_ms\n",
                     0) == 0);
}

TEST_CASE("syndrome-decoder sweeps accept every shot at odd block size") {
  SweepSpec spec;
  spec.mode = SweepMode::kPauli;
  spec.n_values = {3};
  spec.noise_values = {0.03};
  spec.trials = 2000;
  spec.seed = 11;
  spec.decoder = DecoderMode::kHybrid;
  spec.t_prime = 1;
  const auto rows = run_sweep(spec);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].Q_mean == 1.0);
  // Frame repairs leave behind a small conditional error.
  CHECK(rows[0].P_mean > 0.0);
  CHECK(rows[0].P_mean < 0.05);
}

TEST_CASE("station sweeps improve with finer slicing") {
  SweepSpec spec;
  spec.mode = SweepMode::kZeno;
  spec.n_values = {2};
  spec.station_values = {1, 4};
  spec.noise_values = {0.2};
  spec.trials = 400;
  spec.seed = 3;
  const auto rows = run_sweep(spec);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].M == 1);
  CHECK(rows[1].M == 4);
  CHECK(rows[1].Q_mean > rows[0].Q_mean);
  CHECK(rows[1].P_mean < rows[0].P_mean);
}

TEST_CASE("oracle sweeps report exact numbers with point intervals") {
  SweepSpec spec;
  spec.mode = SweepMode::kOracle;
  spec.n_values = {2};
  spec.noise_values = {0.1};
  const auto rows = run_sweep(spec);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].trials == 256);
  CHECK(rows[0].Q_mean == doctest::Approx(0.296).epsilon(1e-12));
  CHECK(rows[0].P_mean ==
        doctest::Approx(0.08648648648648688).epsilon(1e-12));
  CHECK(rows[0].Q_ci_lo == rows[0].Q_mean);
  CHECK(rows[0].Q_ci_hi == rows[0].Q_mean);
}

TEST_CASE("serializers agree on the same rows") {
  SweepSpec spec;
  spec.mode = SweepMode::kOracle;
  spec.n_values = {2};
  spec.noise_values = {0.02};
  spec.stable_timing = true;
  const auto rows = run_sweep(spec);

  const std::string csv = csv_of(rows);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);  // header + 1 row

  std::ostringstream js;
  write_json(js, rows);
  const nlohmann::json arr = nlohmann::json::parse(js.str());
  REQUIRE(arr.is_array());
  REQUIRE(arr.size() == 1);
  CHECK(arr[0]["mode"] == "oracle");
  CHECK(arr[0]["n"] == 2);
  CHECK(arr[0]["Q_mean"].get<double>() ==
        doctest::Approx(rows[0].Q_mean).epsilon(1e-12));

  std::ostringstream tbl;
  write_table(tbl, rows);
  const std::string table = tbl.str();
  CHECK(table.find("Q_mean") != std::string::npos);
  CHECK(std::count(table.begin(), table.end(), '\n') == 2);
}

TEST_CASE("sweep validation rejects inconsistent requests") {
  SweepSpec stations_outside_zeno;
  stations_outside_zeno.mode = SweepMode::kPauli;
  stations_outside_zeno.station_values = {2};
  CHECK_THROWS_AS(run_sweep(stations_outside_zeno), ArgumentError);

  SweepSpec zeno_with_syndrome;
  zeno_with_syndrome.mode = SweepMode::kZeno;
  zeno_with_syndrome.decoder = DecoderMode::kCorrect;
  CHECK_THROWS_AS(run_sweep(zeno_with_syndrome), ArgumentError);

  SweepSpec no_trials;
  no_trials.trials = 0;
  CHECK_THROWS_AS(run_sweep(no_trials), ArgumentError);

  SweepSpec tiny_n;
  tiny_n.n_values = {1};
  CHECK_THROWS_AS(run_sweep(tiny_n), ArgumentError);

  SweepSpec negative_noise;
  negative_noise.noise_values = {-0.1};
  CHECK_THROWS_AS(run_sweep(negative_noise), ArgumentError);
}

TEST_CASE("thread resolution respects the environment cap") {
  const char* old = std::getenv("QREDUCE_THREADS");
  const std::string saved = old ? old : "";
  const bool had = old != nullptr;

  unsetenv("QREDUCE_THREADS");
  CHECK(resolve_threads(5) == 5);
  CHECK(resolve_threads(0) >= 1);
  CHECK_THROWS_AS(resolve_threads(-1), ArgumentError);

  setenv("QREDUCE_THREADS", "3", 1);
  CHECK(resolve_threads(0) == 3);
  CHECK(resolve_threads(8) == 3);
  CHECK(resolve_threads(2) == 2);

  setenv("QREDUCE_THREADS", "zebra", 1);
  CHECK_THROWS_AS(resolve_threads(0), ArgumentError);
  setenv("QREDUCE_THREADS", "0", 1);
  CHECK_THROWS_AS(resolve_threads(0), ArgumentError);

  if (had) {
    setenv("QREDUCE_THREADS", saved.c_str(), 1);
  } else {
    unsetenv("QREDUCE_THREADS");
  }
}
