#include "qreduce/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>
#include <variant>

#include <json.hpp>

namespace qreduce {

namespace {

constexpr Real kZ95 = 1.96;

Real clamp01(Real x) { return std::min(std::max(x, 0.0), 1.0); }

// Integer power with exact sign handling for negative bases.
Real ipow(Real base, int e) {
  Real r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

LogicalQubit normalized_input(const LogicalQubit& q) {
  const Real norm2 = std::norm(q.a0) + std::norm(q.a1);
  if (norm2 < kNormTol) {
    throw ArgumentError("logical input must be a nonzero amplitude pair");
  }
  const Real r = 1.0 / std::sqrt(norm2);
  return LogicalQubit{q.a0 * r, q.a1 * r};
}

std::string format_real(Real v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

const char* mode_name(SweepMode mode) {
  switch (mode) {
    case SweepMode::kPauli: return "pauli";
    case SweepMode::kUnitary: return "unitary";
    case SweepMode::kZeno: return "zeno";
    case SweepMode::kOracle: return "oracle";
  }
  throw InvariantError("mode_name: unreachable");
}

struct TrialResult {
  Real w = 0;  // acceptance weight: Qhat (expectation) or 0/1 (sampled)
  Real e = 0;  // remainder error, 0 when rejected
};

// Mean and 95% normal-theory interval of the weights.
void weight_stats(const std::vector<Real>& w, Real& mean, Real& lo, Real& hi) {
  const Real t = static_cast<Real>(w.size());
  Real sum = 0;
  for (Real v : w) sum += v;
  mean = sum / t;
  if (w.size() < 2) {
    lo = 0;
    hi = 1;
    return;
  }
  Real ss = 0;
  for (Real v : w) ss += (v - mean) * (v - mean);
  const Real se = std::sqrt(ss / (t - 1) / t);
  lo = clamp01(mean - kZ95 * se);
  hi = clamp01(mean + kZ95 * se);
}

// Ratio estimator sum(w*e)/sum(w) with a linearized 95% interval.
void ratio_stats(const std::vector<Real>& w, const std::vector<Real>& e,
                 Real& ratio, Real& lo, Real& hi) {
  Real sw = 0, swe = 0;
  for (size_t i = 0; i < w.size(); ++i) {
    sw += w[i];
    swe += w[i] * e[i];
  }
  if (sw <= 0) {
    ratio = 0;
    lo = 0;
    hi = 1;
    return;
  }
  ratio = swe / sw;
  if (w.size() < 2) {
    lo = 0;
    hi = 1;
    return;
  }
  Real sd2 = 0;
  for (size_t i = 0; i < w.size(); ++i) {
    const Real d = w[i] * (e[i] - ratio);
    sd2 += d * d;
  }
  const Real t = static_cast<Real>(w.size());
  const Real se = std::sqrt(sd2 * t / (t - 1)) / sw;
  lo = clamp01(ratio - kZ95 * se);
  hi = clamp01(ratio + kZ95 * se);
}

// Conditional mean of e over accepted trials (w == 1) with a 95% interval.
void conditional_stats(const std::vector<Real>& w, const std::vector<Real>& e,
                       Real& mean, Real& lo, Real& hi) {
  long k = 0;
  Real sum = 0;
  for (size_t i = 0; i < w.size(); ++i) {
    if (w[i] > 0) {
      ++k;
      sum += e[i];
    }
  }
  if (k == 0) {
    mean = 0;
    lo = 0;
    hi = 1;
    return;
  }
  mean = sum / static_cast<Real>(k);
  if (k < 2) {
    lo = 0;
    hi = 1;
    return;
  }
  Real ss = 0;
  for (size_t i = 0; i < w.size(); ++i) {
    if (w[i] > 0) ss += (e[i] - mean) * (e[i] - mean);
  }
  const Real se = std::sqrt(ss / static_cast<Real>(k - 1) /
                            static_cast<Real>(k));
  lo = clamp01(mean - kZ95 * se);
  hi = clamp01(mean + kZ95 * se);
}

// Runs `trial` for every index in [0, trials), filling slot-per-trial
// vectors; worker threads own disjoint contiguous ranges.
void run_trials(long trials, int threads,
                const std::function<TrialResult(std::uint64_t)>& trial,
                std::vector<Real>& w, std::vector<Real>& e) {
  w.assign(trials, 0);
  e.assign(trials, 0);
  const int workers =
      static_cast<int>(std::min<long>(std::max(threads, 1), trials));
  auto run_range = [&](long lo, long hi) {
    for (long t = lo; t < hi; ++t) {
      const TrialResult r = trial(static_cast<std::uint64_t>(t));
      w[t] = r.w;
      e[t] = r.e;
    }
  };
  if (workers == 1) {
    run_range(0, trials);
    return;
  }
  const long chunk = (trials + workers - 1) / workers;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (int k = 0; k < workers; ++k) {
    const long lo = k * chunk;
    const long hi = std::min(trials, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, k, lo, hi] {
      try {
        run_range(lo, hi);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
}

void validate_spec(const SweepSpec& spec) {
  if (spec.n_values.empty()) throw ArgumentError("need at least one n value");
  for (int n : spec.n_values) {
    if (n < 2) {
      throw ArgumentError("block size n must be >= 2, got " +
                          std::to_string(n));
    }
  }
  if (spec.noise_values.empty()) {
    throw ArgumentError("need at least one noise value");
  }
  for (Real v : spec.noise_values) {
    if (!(v >= 0)) throw ArgumentError("noise values must be >= 0");
  }
  if (spec.station_values.empty()) {
    throw ArgumentError("need at least one station count");
  }
  for (int m : spec.station_values) {
    if (m < 1) throw ArgumentError("station counts must be >= 1");
  }
  if (spec.mode != SweepMode::kZeno &&
      (spec.station_values.size() != 1 || spec.station_values[0] != 1)) {
    throw ArgumentError("station grids apply to zeno mode only");
  }
  if (spec.mode == SweepMode::kZeno && spec.decoder != DecoderMode::kReduce) {
    throw ArgumentError("the station chain filters by projection only");
  }
  if (spec.mode != SweepMode::kOracle && spec.trials < 1) {
    throw ArgumentError("trials must be >= 1");
  }
  if (spec.mode == SweepMode::kZeno && !(spec.total_time > 0)) {
    throw ArgumentError("total_time must be > 0");
  }
}

Backend pick_backend(const SweepSpec& spec, int n) {
  if (!spec.auto_backend) return spec.backend;
  if (spec.decoder != DecoderMode::kReduce) return Backend::kDense;
  return n <= spec.limits.dense_max_n ? Backend::kDense : Backend::kFactored;
}

}  // namespace

LogicalQubit default_input() {
  const Real r = 1.0 / std::numbers::sqrt2_v<Real>;
  return LogicalQubit{Complex(r, 0), Complex(r, 0)};
}

int resolve_threads(int requested) {
  if (requested < 0) throw ArgumentError("threads must be >= 0");
  int cap = 0;
  if (const char* env = std::getenv("QREDUCE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) {
      throw ArgumentError("QREDUCE_THREADS must be a positive integer");
    }
    cap = static_cast<int>(v);
  }
  int threads = requested;
  if (threads == 0) {
    threads = cap > 0 ? cap
                      : static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
  }
  if (cap > 0) threads = std::min(threads, cap);
  return threads;
}

std::pair<Real, Real> wilson_interval(long successes, long trials) {
  if (trials < 1 || successes < 0 || successes > trials) {
    throw ArgumentError("wilson_interval needs 0 <= successes <= trials");
  }
  const Real t = static_cast<Real>(trials);
  const Real phat = static_cast<Real>(successes) / t;
  const Real z2 = kZ95 * kZ95;
  const Real denom = 1 + z2 / t;
  const Real center = (phat + z2 / (2 * t)) / denom;
  const Real half =
      kZ95 * std::sqrt(phat * (1 - phat) / t + z2 / (4 * t * t)) / denom;
  return {clamp01(center - half), clamp01(center + half)};
}

Real slope_fit(const std::vector<Real>& x, const std::vector<Real>& y,
               bool log_log) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ArgumentError("slope_fit needs two same-length series, size >= 2");
  }
  std::vector<Real> xs(x.size()), ys(y.size());
  for (size_t i = 0; i < x.size(); ++i) {
    if (log_log) {
      if (!(x[i] > 0) || !(y[i] > 0)) {
        throw ArgumentError("log-log fit needs strictly positive data");
      }
      xs[i] = std::log(x[i]);
      ys[i] = std::log(y[i]);
    } else {
      xs[i] = x[i];
      ys[i] = y[i];
    }
  }
  Real mx = 0, my = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<Real>(xs.size());
  my /= static_cast<Real>(xs.size());
  Real sxy = 0, sxx = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx == 0) throw ArgumentError("slope_fit: x values are all equal");
  return sxy / sxx;
}

PatternInfo classify_pattern(std::uint64_t pattern, int n) {
  if (n < 2 || n * n > 32) {
    throw ArgumentError("classify_pattern supports 2 <= n <= 5");
  }
  bool any_anti = false, any_diag = false;
  int full_blocks = 0;
  for (int b = 0; b < n; ++b) {
    int xcnt = 0, ycnt = 0, zcnt = 0;
    for (int pos = 0; pos < n; ++pos) {
      const int digit =
          static_cast<int>((pattern >> (2 * (b * n + pos))) & 3ULL);
      switch (static_cast<PauliOp>(digit)) {
        case PauliOp::kI: break;
        case PauliOp::kX: ++xcnt; break;
        case PauliOp::kY: ++xcnt; ++ycnt; break;
        case PauliOp::kZ: ++zcnt; break;
      }
    }
    if (xcnt > 0 && xcnt < n) {
      return {PatternClass::kOrthogonal, LogicalAction::kIdentity};
    }
    // A block either keeps the |0..0> +- |1..1> pair (diagonal) or swaps it:
    // an odd number of Z digits swaps, as does a full X/Y block with an odd
    // number of Y's.
    const bool anti = (xcnt == 0) ? (zcnt % 2 == 1) : (ycnt % 2 == 1);
    (anti ? any_anti : any_diag) = true;
    if (xcnt == n) ++full_blocks;
  }
  if (any_anti && any_diag) {
    return {PatternClass::kOrthogonal, LogicalAction::kIdentity};
  }
  // Every full X/Y block contributes one logical sign; an all-swapping
  // pattern additionally flips the logical basis.
  const bool sign = full_blocks % 2 == 1;
  if (any_anti) {
    return {PatternClass::kLogical,
            sign ? LogicalAction::kFlipSign : LogicalAction::kFlip};
  }
  return {sign ? PatternClass::kLogical : PatternClass::kBenign,
          sign ? LogicalAction::kSign : LogicalAction::kIdentity};
}

LogicalQubit apply_logical_action(LogicalAction a, const LogicalQubit& q) {
  switch (a) {
    case LogicalAction::kIdentity: return q;
    case LogicalAction::kSign: return {q.a0, -q.a1};
    case LogicalAction::kFlip: return {q.a1, q.a0};
    case LogicalAction::kFlipSign: return {q.a1, -q.a0};
  }
  throw InvariantError("apply_logical_action: unreachable");
}

std::pair<Real, Real> oracle_closed_form(int n, const PauliProbs& probs,
                                         const LogicalQubit& input) {
  validate(NoiseModel{probs});
  if (n < 2) throw ArgumentError("block size n must be >= 2");
  const LogicalQubit q = normalized_input(input);
  const Real pi = 1 - probs.px - probs.py - probs.pz;

  // Per-block probabilities of the four block behaviours, from generating
  // functions over the digit distribution.
  const Real a = ipow(pi + probs.pz, n);        // no X/Y digits
  const Real b = ipow(pi - probs.pz, n);        // signed by Z parity
  const Real c = ipow(probs.px + probs.py, n);  // all X/Y digits
  const Real d = ipow(probs.px - probs.py, n);  // signed by Y parity
  const Real keep_plain = (a + b) / 2;  // diagonal, no sign
  const Real keep_sign = (c + d) / 2;   // diagonal, contributes a sign
  const Real swap_plain = (a - b) / 2;  // swapping, no sign
  const Real swap_sign = (c - d) / 2;   // swapping, contributes a sign

  // Over n blocks: all-diagonal / all-swapping masses split by sign parity.
  const Real diag_total = ipow(keep_plain + keep_sign, n);
  const Real diag_even = (diag_total + ipow(keep_plain - keep_sign, n)) / 2;
  const Real swap_total = ipow(swap_plain + swap_sign, n);
  const Real swap_even = (swap_total + ipow(swap_plain - swap_sign, n)) / 2;

  auto action_err = [&](LogicalAction act) {
    return clamp01(1 - logical_overlap2(q, apply_logical_action(act, q)));
  };
  const Real q_exact = diag_total + swap_total;
  const Real bad = (diag_total - diag_even) * action_err(LogicalAction::kSign) +
                   swap_even * action_err(LogicalAction::kFlip) +
                   (swap_total - swap_even) *
                       action_err(LogicalAction::kFlipSign);
  return {q_exact, q_exact > 0 ? bad / q_exact : 0};
}

OracleResult brute_force_pauli(int n, const PauliProbs& probs,
                               const LogicalQubit& input, bool keep_ledger) {
  validate(NoiseModel{probs});
  if (n < 2) throw ArgumentError("block size n must be >= 2");
  if (n > 3) {
    throw ResourceError(
        "exhaustive enumeration is 4^(n*n) patterns; capped at n = 3 "
        "(262144). Use oracle_closed_form or Monte Carlo beyond that.");
  }
  const LogicalQubit q = normalized_input(input);
  const int num_qubits = n * n;
  const std::uint64_t patterns = std::uint64_t{1} << (2 * num_qubits);

  Limits limits;
  const PureState base = encode_dense(q, n, limits);
  const Real digit_prob[4] = {1 - probs.px - probs.py - probs.pz, probs.px,
                              probs.py, probs.pz};

  OracleResult out;
  out.patterns = patterns;
  if (keep_ledger) out.ledger.reserve(patterns);

  Real q_sim = 0, bad_sim = 0;   // from dense simulation
  Real q_cls = 0, bad_cls = 0;   // from the combinatorial classification
  Real action_err[4];
  for (int a = 0; a < 4; ++a) {
    action_err[a] = clamp01(
        1 - logical_overlap2(
                q, apply_logical_action(static_cast<LogicalAction>(a), q)));
  }

  std::vector<PauliOp> ops(num_qubits);
  PureState st = base;
  for (std::uint64_t pattern = 0; pattern < patterns; ++pattern) {
    Real pr = 1;
    for (int i = 0; i < num_qubits; ++i) {
      const int digit = static_cast<int>((pattern >> (2 * i)) & 3ULL);
      ops[i] = static_cast<PauliOp>(digit);
      pr *= digit_prob[digit];
    }
    const PatternInfo info = classify_pattern(pattern, n);

    st.amps = base.amps;
    apply_pauli(st, ops);
    const CodespaceAmplitudes amps = codespace_amplitudes(st);

    if (info.cls == PatternClass::kOrthogonal) {
      ++out.orthogonal;
      if (amps.qhat > 1e-14) {
        throw InvariantError(
            "oracle cross-check: pattern classified orthogonal has nonzero "
            "codespace weight");
      }
    } else {
      info.cls == PatternClass::kBenign ? ++out.benign : ++out.logical;
      if (std::abs(amps.qhat - 1) > 1e-12) {
        throw InvariantError(
            "oracle cross-check: codespace-preserving pattern has Qhat != 1");
      }
      const Real r = 1.0 / std::sqrt(amps.qhat);
      const LogicalQubit decoded{amps.a0 * r, amps.a1 * r};
      const LogicalQubit predicted = apply_logical_action(info.action, q);
      if (logical_overlap2(decoded, predicted) < 1 - 1e-10) {
        throw InvariantError(
            "oracle cross-check: simulated logical action disagrees with "
            "the combinatorial classification");
      }
      q_sim += pr * amps.qhat;
      bad_sim += pr * amps.qhat * clamp01(1 - logical_overlap2(q, decoded));
      q_cls += pr;
      bad_cls += pr * action_err[static_cast<int>(info.action)];
    }
    if (keep_ledger) out.ledger.push_back(info);
  }

  const auto [q_closed, p_closed] = oracle_closed_form(n, probs, q);
  const Real p_sim = q_sim > 0 ? bad_sim / q_sim : 0;
  const Real p_cls = q_cls > 0 ? bad_cls / q_cls : 0;
  if (std::abs(q_sim - q_cls) > 1e-12 || std::abs(q_sim - q_closed) > 1e-12 ||
      std::abs(p_sim - p_cls) > 1e-12 || std::abs(p_sim - p_closed) > 1e-12) {
    throw InvariantError(
        "oracle cross-check: enumeration and closed form disagree");
  }
  out.q_exact = q_sim;
  out.p_exact = p_sim;
  return out;
}

std::vector<GridPointStats> run_sweep(const SweepSpec& spec) {
  validate_spec(spec);
  const int threads = resolve_threads(spec.threads);
  const LogicalQubit input = normalized_input(spec.input);

  std::vector<GridPointStats> rows;
  std::vector<Real> w, e;

  for (int n : spec.n_values) {
    for (int m : spec.station_values) {
      for (Real v : spec.noise_values) {
        const auto start = std::chrono::steady_clock::now();
        GridPointStats row;
        row.mode = mode_name(spec.mode);
        row.n = n;
        row.M = m;
        row.noise_param = v;
        row.seed = spec.seed;

        if (spec.mode == SweepMode::kOracle) {
          const PauliProbs probs{v * spec.mix.px, v * spec.mix.py,
                                 v * spec.mix.pz};
          const OracleResult oracle =
              brute_force_pauli(n, probs, input, false);
          row.trials = static_cast<long>(oracle.patterns);
          row.Q_mean = row.Q_ci_lo = row.Q_ci_hi = oracle.q_exact;
          row.P_mean = row.P_ci_lo = row.P_ci_hi = oracle.p_exact;
        } else {
          row.trials = spec.trials;
          const Backend backend = pick_backend(spec, n);
          const CodeParams cparams{n, backend, spec.limits};
          const DecoderParams dparams{spec.decoder, spec.t_prime,
                                      spec.decision};

          std::function<TrialResult(std::uint64_t)> trial;
          // Binary acceptance (0/1 weights) whenever a sampled decision is
          // involved; syndrome decoding is measurement-driven, so it is
          // binary even under an expectation-mode projection setting.
          bool binary = spec.decision == Decision::kSampled ||
                        spec.decoder != DecoderMode::kReduce;

          if (spec.mode == SweepMode::kZeno) {
            binary = spec.decision == Decision::kSampled;
            StationSpec chain{n,      m,
                              spec.total_time, v,
                              backend, spec.decision,
                              spec.limits};
            trial = [chain, input, seed = spec.seed](std::uint64_t t) {
              SplitMix64 rng = stream(seed, t);
              const ChainResult res = run_chain(input, chain, rng);
              TrialResult r;
              const bool accepted =
                  res.outcome.status != DecodeStatus::kRejected;
              if (chain.decision == Decision::kSampled) {
                r.w = accepted ? 1 : 0;
              } else {
                r.w = res.outcome.success_prob;
              }
              r.e = accepted ? remainder_error(res.outcome, input) : 0;
              return r;
            };
          } else {
            NoiseModel model;
            if (spec.mode == SweepMode::kPauli) {
              model = PauliProbs{v * spec.mix.px, v * spec.mix.py,
                                 v * spec.mix.pz};
            } else {
              model = RandomUnitaryNoise{v};
            }
            validate(model);
            trial = [cparams, dparams, model, input,
                     seed = spec.seed](std::uint64_t t) {
              SplitMix64 rng = stream(seed, t);
              State st = encode(input, cparams);
              std::visit([&](auto& s) { apply_noise(s, model, rng); }, st);
              const DecodeOutcome out = decode(st, dparams, &rng);
              TrialResult r;
              const bool accepted = out.status != DecodeStatus::kRejected;
              if (dparams.mode == DecoderMode::kReduce &&
                  dparams.decision == Decision::kExpectation) {
                r.w = out.success_prob;
              } else {
                r.w = accepted ? 1 : 0;
              }
              r.e = accepted ? remainder_error(out, input) : 0;
              return r;
            };
          }

          run_trials(spec.trials, threads, trial, w, e);
          if (binary) {
            long k = 0;
            for (Real wi : w) k += wi > 0 ? 1 : 0;
            row.Q_mean =
                static_cast<Real>(k) / static_cast<Real>(spec.trials);
            std::tie(row.Q_ci_lo, row.Q_ci_hi) =
                wilson_interval(k, spec.trials);
            conditional_stats(w, e, row.P_mean, row.P_ci_lo, row.P_ci_hi);
          } else {
            weight_stats(w, row.Q_mean, row.Q_ci_lo, row.Q_ci_hi);
            ratio_stats(w, e, row.P_mean, row.P_ci_lo, row.P_ci_hi);
          }
        }

        const auto stop = std::chrono::steady_clock::now();
        row.elapsed_ms =
            spec.stable_timing
                ? 0
                : std::chrono::duration<Real, std::milli>(stop - start)
                      .count();
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

void write_csv(std::ostream& os, const std::vector<GridPointStats>& rows) {
  os << "mode,n,M,noise_param,trials,seed,Q_mean,Q_ci_lo,Q_ci_hi,"
        "P_mean,P_ci_lo,P_ci_hi,elapsed_ms\n";
  for (const auto& r : rows) {
    os << r.mode << ',' << r.n << ',' << r.M << ',' << format_real(r.noise_param)
       << ',' << r.trials << ',' << r.seed << ',' << format_real(r.Q_mean)
       << ',' << format_real(r.Q_ci_lo) << ',' << format_real(r.Q_ci_hi) << ','
       << format_real(r.P_mean) << ',' << format_real(r.P_ci_lo) << ','
       << format_real(r.P_ci_hi) << ',' << format_real(r.elapsed_ms) << '\n';
  }
}

void write_json(std::ostream& os, const std::vector<GridPointStats>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    arr.push_back({{"mode", r.mode},
                   {"n", r.n},
                   {"M", r.M},
                   {"noise_param", r.noise_param},
                   {"trials", r.trials},
                   {"seed", r.seed},
                   {"Q_mean", r.Q_mean},
                   {"Q_ci_lo", r.Q_ci_lo},
                   {"Q_ci_hi", r.Q_ci_hi},
                   {"P_mean", r.P_mean},
                   {"P_ci_lo", r.P_ci_lo},
                   {"P_ci_hi", r.P_ci_hi},
                   {"elapsed_ms", r.elapsed_ms}});
  }
  os << arr.dump(2) << '\n';
}

void write_table(std::ostream& os, const std::vector<GridPointStats>& rows) {
  os << std::left << std::setw(9) << "mode" << std::right << std::setw(3)
     << "n" << std::setw(4) << "M" << std::setw(13) << "noise" << std::setw(10)
     << "trials" << std::setw(16) << "Q_mean" << std::setw(36) << "Q 95% CI"
     << std::setw(16) << "P_mean" << std::setw(36) << "P 95% CI"
     << std::setw(12) << "elapsed_ms" << '\n';
  for (const auto& r : rows) {
    std::ostringstream qci, pci;
    qci << '[' << format_real(r.Q_ci_lo) << ", " << format_real(r.Q_ci_hi)
        << ']';
    pci << '[' << format_real(r.P_ci_lo) << ", " << format_real(r.P_ci_hi)
        << ']';
    os << std::left << std::setw(9) << r.mode << std::right << std::setw(3)
       << r.n << std::setw(4) << r.M << std::setw(13)
       << format_real(r.noise_param) << std::setw(10) << r.trials
       << std::setw(16) << format_real(r.Q_mean) << std::setw(36) << qci.str()
       << std::setw(16) << format_real(r.P_mean) << std::setw(36) << pci.str()
       << std::setw(12) << format_real(r.elapsed_ms) << '\n';
  }
}

}  // namespace qreduce
