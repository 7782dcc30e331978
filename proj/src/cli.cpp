#include "qreduce/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <new>
#include <ostream>
#include <sstream>
#include <utility>

#include <CLI11.hpp>
#include <json.hpp>

#include "qreduce/analytic.hpp"
#include "qreduce/harness.hpp"
#include "qreduce/noise.hpp"

namespace qreduce {

namespace {

Real parse_number(const std::string& text) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw ArgumentError("not a number: '" + text + "'");
  }
  return v;
}

struct McOptions {
  std::string mode = "pauli";
  std::string p_text;           // per-channel fault probability (or grid)
  std::vector<Real> p_triple;   // explicit px py pz (single point)
  std::string chi_text;         // rotation-angle bound in radians (or grid)
  bool log_grid = false;
  std::vector<int> n_values{3};
  long trials = 10000;
  std::uint64_t seed = 1;
  std::string decision = "expectation";
  std::string decoder = "reduce";
  int t_prime = 1;
  std::string backend = "auto";
  int threads = 0;
  std::vector<Real> input;  // re(a0) im(a0) re(a1) im(a1)
  std::string format = "csv";
  std::string out_path;
  bool stable_timing = false;
};

void add_output_options(CLI::App* cmd, McOptions& o) {
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json", "table"}))
      ->capture_default_str();
  cmd->add_option("--out", o.out_path,
                  "Write results to this file instead of stdout");
  cmd->add_flag("--stable-timing", o.stable_timing,
                "Report elapsed_ms as 0 so outputs byte-compare across runs");
}

void add_mc_options(CLI::App* cmd, McOptions& o) {
  cmd->add_option("--trials", o.trials, "Monte Carlo trials per grid point")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--seed", o.seed, "Base seed; trial k uses stream (seed, k)")
      ->capture_default_str();
  cmd->add_option("--threads", o.threads,
                  "Worker threads; 0 means QREDUCE_THREADS or the hardware "
                  "count. Results are identical for any value.")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--decision", o.decision,
                  "expectation: carry acceptance probabilities exactly; "
                  "sampled: Bernoulli accept/reject per projection")
      ->check(CLI::IsMember({"expectation", "sampled"}))
      ->capture_default_str();
  cmd->add_option("--backend", o.backend,
                  "auto picks dense up to the register limit, factored beyond")
      ->check(CLI::IsMember({"auto", "dense", "factored"}))
      ->capture_default_str();
  cmd->add_option("--input", o.input,
                  "Logical input amplitudes re(a0) im(a0) re(a1) im(a1); "
                  "normalized internally. Default (|0>+|1>)/sqrt(2).")
      ->expected(4);
  add_output_options(cmd, o);
}

void add_noise_options(CLI::App* cmd, McOptions& o, bool grid) {
  const char* grid_hint =
      grid ? "; a single number or an inclusive grid start:stop:count" : "";
  auto* p = cmd->add_option(
      "--p", o.p_text,
      std::string("Per-channel fault probability: px = py = pz = p "
                  "(dimensionless)") +
          grid_hint);
  auto* triple = cmd->add_option(
      "--pxyz", o.p_triple,
      "Explicit channel probabilities px py pz (dimensionless, sum <= 1); "
      "the output's noise_param column then reports their sum");
  triple->expected(3);
  auto* chi = cmd->add_option(
      "--chi", o.chi_text,
      std::string("Rotation-angle bound in radians; each qubit gets an "
                  "independent unitary with angles uniform in [-chi, chi]") +
          grid_hint);
  p->excludes(triple);
  p->excludes(chi);
  triple->excludes(chi);
  cmd->add_option("--n", o.n_values,
                  "Block sizes to run; the register holds n*n qubits")
      ->delimiter(',')
      ->capture_default_str();
  cmd->add_option("--mode", o.mode,
                  "pauli: discrete X/Y/Z faults; unitary: random rotations")
      ->check(CLI::IsMember({"pauli", "unitary"}))
      ->capture_default_str();
  cmd->add_option("--decoder", o.decoder,
                  "reduce: project and post-select; correct: syndrome repair "
                  "up to floor((n-1)/2) per layer; hybrid: repair up to "
                  "--t-prime, reject busier syndromes")
      ->check(CLI::IsMember({"reduce", "correct", "hybrid"}))
      ->capture_default_str();
  cmd->add_option("--t-prime", o.t_prime,
                  "Hybrid repair threshold per layer (errors, not a rate)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  if (grid) {
    cmd->add_flag("--log-grid", o.log_grid,
                  "Space grid points geometrically instead of linearly");
  }
}

Decision parse_decision(const std::string& s) {
  return s == "sampled" ? Decision::kSampled : Decision::kExpectation;
}

DecoderMode parse_decoder(const std::string& s) {
  if (s == "correct") return DecoderMode::kCorrect;
  if (s == "hybrid") return DecoderMode::kHybrid;
  return DecoderMode::kReduce;
}

LogicalQubit parse_input(const std::vector<Real>& v) {
  if (v.empty()) return default_input();
  return LogicalQubit{Complex(v[0], v[1]), Complex(v[2], v[3])};
}

void apply_backend(SweepSpec& spec, const std::string& name) {
  if (name == "auto") {
    spec.auto_backend = true;
  } else {
    spec.auto_backend = false;
    spec.backend = name == "dense" ? Backend::kDense : Backend::kFactored;
  }
}

// Shared translation for the pauli/unitary subcommands.
SweepSpec build_mc_spec(const McOptions& o, bool allow_grid) {
  SweepSpec spec;
  spec.n_values = o.n_values;
  spec.trials = o.trials;
  spec.seed = o.seed;
  spec.threads = o.threads;
  spec.decision = parse_decision(o.decision);
  spec.decoder = parse_decoder(o.decoder);
  spec.t_prime = o.t_prime;
  spec.input = parse_input(o.input);
  spec.stable_timing = o.stable_timing;
  apply_backend(spec, o.backend);

  auto grid_of = [&](const std::string& text) {
    if (!allow_grid && text.find(':') != std::string::npos) {
      throw ArgumentError(
          "this subcommand takes a single noise value; use `sweep` for "
          "start:stop:count grids");
    }
    return parse_grid(text, o.log_grid);
  };

  if (o.mode == "unitary") {
    if (o.chi_text.empty()) {
      throw ArgumentError("unitary mode needs --chi");
    }
    spec.mode = SweepMode::kUnitary;
    spec.noise_values = grid_of(o.chi_text);
    return spec;
  }
  spec.mode = SweepMode::kPauli;
  if (!o.p_triple.empty()) {
    const Real sum = o.p_triple[0] + o.p_triple[1] + o.p_triple[2];
    if (sum > 0) {
      spec.mix = PauliProbs{o.p_triple[0] / sum, o.p_triple[1] / sum,
                            o.p_triple[2] / sum};
      spec.noise_values = {sum};
    } else {
      spec.noise_values = {0};
    }
    return spec;
  }
  if (o.p_text.empty()) {
    throw ArgumentError("pauli mode needs --p or --pxyz");
  }
  spec.noise_values = grid_of(o.p_text);
  return spec;
}

void emit(const std::vector<GridPointStats>& rows, const McOptions& o,
          std::ostream& out) {
  std::ofstream file;
  std::ostream* os = &out;
  if (!o.out_path.empty()) {
    file.open(o.out_path);
    if (!file) {
      throw ResourceError("cannot open output file: " + o.out_path);
    }
    os = &file;
  }
  if (o.format == "json") {
    write_json(*os, rows);
  } else if (o.format == "table") {
    write_table(*os, rows);
  } else {
    write_csv(*os, rows);
  }
  if (!o.out_path.empty() && !file.good()) {
    throw ResourceError("failed while writing: " + o.out_path);
  }
}

struct AnalyticOptions {
  Real p = 0;
  int n = 3;
  int M = 1;
  std::vector<Real> angles;
  std::string format = "table";
  std::string out_path;
};

void run_analytic(const AnalyticOptions& o, std::ostream& out) {
  std::vector<std::pair<std::string, Real>> kv;
  kv.emplace_back("reduction_Q", reduction_Q(o.p, o.n));
  kv.emplace_back("reduction_P", reduction_P(o.p, o.n));
  kv.emplace_back("reduction_P_approx", reduction_P_approx(o.p, o.n));
  kv.emplace_back("correction_remainder_3", correction_remainder_3(o.p));
  if (o.p > 0 && o.p < 1) {
    kv.emplace_back("conditional_error_after_one_correction",
                    conditional_error_after_one_correction(o.p));
  }
  kv.emplace_back("zeno_Q", zeno_Q(o.p, o.n, o.M));
  if (!o.angles.empty()) {
    AngleMatrix m(4, 3);
    for (int q = 0; q < 4; ++q) {
      for (int a = 0; a < 3; ++a) m(q, a) = o.angles[3 * q + a];
    }
    kv.emplace_back("c_factor", c_factor(m));
  }

  std::ofstream file;
  std::ostream* os = &out;
  if (!o.out_path.empty()) {
    file.open(o.out_path);
    if (!file) throw ResourceError("cannot open output file: " + o.out_path);
    os = &file;
  }
  if (o.format == "json") {
    nlohmann::json obj;
    obj["p"] = o.p;
    obj["n"] = o.n;
    obj["M"] = o.M;
    for (const auto& [k, v] : kv) obj[k] = v;
    *os << obj.dump(2) << '\n';
  } else {
    char buf[64];
    for (const auto& [k, v] : kv) {
      std::snprintf(buf, sizeof(buf), "%.10g", v);
      *os << std::left << std::setw(40) << k << buf << '\n';
    }
  }
}

}  // namespace

std::vector<Real> parse_grid(const std::string& text, bool log_spaced) {
  const auto c1 = text.find(':');
  if (c1 == std::string::npos) {
    return {parse_number(text)};
  }
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos || text.find(':', c2 + 1) != std::string::npos) {
    throw ArgumentError("grid must be start:stop:count, got '" + text + "'");
  }
  const Real start = parse_number(text.substr(0, c1));
  const Real stop = parse_number(text.substr(c1 + 1, c2 - c1 - 1));
  const Real count_real = parse_number(text.substr(c2 + 1));
  const long count = std::lround(count_real);
  if (count < 1 || static_cast<Real>(count) != count_real) {
    throw ArgumentError("grid count must be a positive integer");
  }
  if (count == 1) return {start};
  if (log_spaced && (!(start > 0) || !(stop > 0))) {
    throw ArgumentError("log-spaced grids need positive endpoints");
  }
  std::vector<Real> grid(count);
  for (long i = 0; i < count; ++i) {
    const Real f = static_cast<Real>(i) / static_cast<Real>(count - 1);
    grid[i] = log_spaced ? start * std::pow(stop / start, f)
                         : start + (stop - start) * f;
  }
  return grid;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{
      "qreduce: quantitative study of a block code whose projection filter "
      "turns physical faults into heralded rejections. Subcommands compute "
      "closed forms, Monte Carlo estimates, station chains, and exact "
      "enumeration over discrete fault patterns."};
  app.set_config("--config", "",
                 "Read options from an INI file ([subcommand] sections); "
                 "command-line flags take precedence");
  app.allow_config_extras(false);
  app.require_subcommand(1);

  // analytic ---------------------------------------------------------------
  auto an_opts = std::make_shared<AnalyticOptions>();
  auto* an = app.add_subcommand(
      "analytic", "Closed-form acceptance and remainder-error references");
  an->add_option("--p", an_opts->p,
                 "Fault probability per carrier (dimensionless, in [0,1])")
      ->required();
  an->add_option("--n", an_opts->n, "Carriers per block")
      ->check(CLI::Range(1, 1024))
      ->capture_default_str();
  an->add_option("--M", an_opts->M, "Station count for the chain acceptance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  an->add_option("--angles", an_opts->angles,
                 "12 rotation angles in radians (theta phi eta per qubit, 4 "
                 "qubits): adds the n=2 leading-order success c_factor")
      ->expected(12);
  an->add_option("--format", an_opts->format, "Output format")
      ->check(CLI::IsMember({"table", "json"}))
      ->capture_default_str();
  an->add_option("--out", an_opts->out_path,
                 "Write results to this file instead of stdout");

  // simulate / sweep --------------------------------------------------------
  auto sim_opts = std::make_shared<McOptions>();
  auto* sim = app.add_subcommand(
      "simulate", "Monte Carlo at a single noise point (one row per n)");
  add_noise_options(sim, *sim_opts, /*grid=*/false);
  add_mc_options(sim, *sim_opts);

  auto sweep_opts = std::make_shared<McOptions>();
  auto* sweep = app.add_subcommand(
      "sweep", "Monte Carlo over a noise grid (start:stop:count)");
  add_noise_options(sweep, *sweep_opts, /*grid=*/true);
  add_mc_options(sweep, *sweep_opts);

  // zeno ---------------------------------------------------------------------
  auto zeno_opts = std::make_shared<McOptions>();
  auto zeno_extra = std::make_shared<std::pair<std::string, Real>>("", 1.0);
  auto zeno_m = std::make_shared<std::vector<int>>(std::vector<int>{1});
  auto* zeno = app.add_subcommand(
      "zeno", "Station chains: split the drift time over M filter stations");
  zeno->add_option("--w-max", zeno_extra->first,
                   "Drift-rate bound in radians per unit time; single number "
                   "or start:stop:count grid")
      ->required();
  zeno->add_option("--total-time", zeno_extra->second,
                   "Drift duration shared by the whole chain (time units)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  zeno->add_option("--M", *zeno_m, "Station counts to compare")
      ->delimiter(',')
      ->capture_default_str();
  zeno->add_flag("--log-grid", zeno_opts->log_grid,
                 "Space grid points geometrically instead of linearly");
  zeno_opts->n_values = {2};
  zeno->add_option("--n", zeno_opts->n_values, "Block sizes to run")
      ->delimiter(',')
      ->capture_default_str();
  add_mc_options(zeno, *zeno_opts);

  // oracle --------------------------------------------------------------------
  auto oracle_opts = std::make_shared<McOptions>();
  auto* oracle = app.add_subcommand(
      "oracle", "Exact enumeration of all 4^(n*n) fault patterns (n <= 3)");
  {
    auto* p = oracle->add_option(
        "--p", oracle_opts->p_text,
        "Per-channel fault probability px = py = pz = p; single number or "
        "start:stop:count grid");
    auto* triple =
        oracle->add_option("--pxyz", oracle_opts->p_triple,
                           "Explicit channel probabilities px py pz");
    triple->expected(3);
    p->excludes(triple);
    oracle->add_flag("--log-grid", oracle_opts->log_grid,
                     "Space grid points geometrically instead of linearly");
    oracle->add_option("--n", oracle_opts->n_values, "Block sizes (2 or 3)")
        ->delimiter(',')
        ->capture_default_str();
    oracle->add_option("--input", oracle_opts->input,
                       "Logical input amplitudes re(a0) im(a0) re(a1) im(a1)")
        ->expected(4);
    add_output_options(oracle, *oracle_opts);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (an->parsed()) {
      run_analytic(*an_opts, out);
      return 0;
    }
    if (sim->parsed() || sweep->parsed()) {
      const McOptions& o = sim->parsed() ? *sim_opts : *sweep_opts;
      const SweepSpec spec = build_mc_spec(o, /*allow_grid=*/sweep->parsed());
      emit(run_sweep(spec), o, out);
      return 0;
    }
    if (zeno->parsed()) {
      SweepSpec spec = build_mc_spec(
          [&] {
            McOptions o = *zeno_opts;
            o.mode = "unitary";  // reuse the unitary path for validation
            o.chi_text = zeno_extra->first;
            return o;
          }(),
          /*allow_grid=*/true);
      spec.mode = SweepMode::kZeno;
      spec.station_values = *zeno_m;
      spec.total_time = zeno_extra->second;
      spec.decoder = DecoderMode::kReduce;
      Real w_top = 0;
      for (Real v : spec.noise_values) w_top = std::max(w_top, v);
      if (outside_small_angle(DriftNoise{w_top, spec.total_time})) {
        err << "warning: w_max * total_time = "
            << w_top * spec.total_time
            << " rad leaves the small-angle regime (pi/2); the per-station "
               "error model degrades there\n";
      }
      emit(run_sweep(spec), *zeno_opts, out);
      return 0;
    }
    if (oracle->parsed()) {
      McOptions o = *oracle_opts;
      if (o.p_text.empty() && o.p_triple.empty()) {
        throw ArgumentError("oracle needs --p or --pxyz");
      }
      SweepSpec spec = build_mc_spec(o, /*allow_grid=*/true);
      spec.mode = SweepMode::kOracle;
      emit(run_sweep(spec), o, out);
      return 0;
    }
    throw InvariantError("no subcommand dispatched");
  } catch (const ArgumentError& e) {
    err << "argument error: " << e.what() << '\n';
    return 2;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << '\n';
    return 3;
  } catch (const std::bad_alloc&) {
    err << "resource error: out of memory\n";
    return 3;
  } catch (const InvariantError& e) {
    err << "invariant violated: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    err << "invariant violated: " << e.what() << '\n';
    return 4;
  }
}

}  // namespace qreduce
