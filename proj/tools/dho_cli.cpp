// Command-line front end: deterministic CSV/JSON time series and verification
// reports for the damped-oscillator library. Exit codes: 0 success, 1 usage or
// validation error, 2 verification failure.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "dho/dho.hpp"

namespace {

using dho::complex_t;
using dho::format_bool;
using dho::format_double;
using dho::format_int;

struct CommonOpts {
  double omega = 0.0;
  double gamma = 0.0;
  double hbar = 1.0;
  std::string format = "csv";
  std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool needs_gamma_pair = true) {
  if (needs_gamma_pair) {
    cmd->add_option("--omega", opts.omega, "angular frequency (> 0)")->required();
    cmd->add_option("--gamma", opts.gamma, "damping rate (>= 0, < omega)")->required();
  }
  cmd->add_option("--hbar", opts.hbar, "action scale (> 0)")->capture_default_str();
  cmd->add_option("--format", opts.format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", opts.out, "output path (default: standard output)");
}

dho::OscillatorParams make_params(const CommonOpts& opts) {
  return dho::OscillatorParams(opts.omega, opts.gamma, opts.hbar);
}

void write_payload(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::fwrite(payload.data(), 1, payload.size(), stdout);
    std::fflush(stdout);
    return;
  }
  std::FILE* file = std::fopen(out_path.c_str(), "wb");
  if (file == nullptr) {
    throw std::runtime_error("cannot open output file: " + out_path);
  }
  const std::size_t written = std::fwrite(payload.data(), 1, payload.size(), file);
  std::fclose(file);
  if (written != payload.size()) {
    throw std::runtime_error("short write to output file: " + out_path);
  }
}

double parse_number(const std::string& text, const char* what) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || !std::isfinite(value)) {
    throw std::runtime_error(std::string("invalid ") + what + ": '" + text + "'");
  }
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  return parts;
}

/// Sparse Fock-state entry syntax: "index:re[:im]" joined by commas, e.g.
/// "0:0.70710678,1:0.70710678". The parsed vector is NOT yet normalized.
std::vector<complex_t> parse_state_entries(const std::string& spec, std::size_t dim_override,
                                           std::size_t& dim_out) {
  if (spec.empty()) {
    throw std::runtime_error("state specification is empty");
  }
  std::vector<std::pair<std::size_t, complex_t>> entries;
  std::size_t max_index = 0;
  for (const std::string& token : split(spec, ',')) {
    const std::vector<std::string> fields = split(token, ':');
    if (fields.size() < 2 || fields.size() > 3) {
      throw std::runtime_error("invalid state entry '" + token + "' (want index:re[:im])");
    }
    const double index_value = parse_number(fields[0], "state index");
    if (index_value < 0.0 || index_value != std::floor(index_value) || index_value > 1e6) {
      throw std::runtime_error("invalid state index '" + fields[0] + "'");
    }
    const std::size_t index = static_cast<std::size_t>(index_value);
    const double re = parse_number(fields[1], "state amplitude");
    const double im = fields.size() == 3 ? parse_number(fields[2], "state amplitude") : 0.0;
    for (const auto& e : entries) {
      if (e.first == index) {
        throw std::runtime_error("duplicate state index " + fields[0]);
      }
    }
    entries.emplace_back(index, complex_t(re, im));
    max_index = std::max(max_index, index);
  }
  dim_out = dim_override > 0 ? dim_override : max_index + 1;
  if (dim_out <= max_index) {
    throw std::runtime_error("--dim must exceed the largest state index");
  }
  std::vector<complex_t> amplitudes(dim_out, complex_t(0.0, 0.0));
  for (const auto& e : entries) {
    amplitudes[e.first] = e.second;
  }
  return amplitudes;
}

struct ParsedState {
  dho::FockState state;
  double normalization_factor;
};

ParsedState parse_state(const std::string& spec, std::size_t dim_override) {
  std::size_t dim = 0;
  dho::FockState raw(parse_state_entries(spec, dim_override, dim));
  const double norm_sq = raw.norm_sq();
  if (norm_sq <= 0.0) {
    throw std::runtime_error("state must have nonzero norm");
  }
  return ParsedState{raw.normalized(), 1.0 / std::sqrt(norm_sq)};
}

std::vector<double> parse_times(const std::string& spec) {
  std::vector<double> times;
  for (const std::string& token : split(spec, ',')) {
    const double t = parse_number(token, "time");
    if (t < 0.0) {
      throw std::runtime_error("times must be >= 0");
    }
    times.push_back(t);
  }
  return times;
}

/// Signal syntax: "zero", "constant:F", "sin:amplitude,angular_frequency,phase",
/// "pwc:b0=l0,b1=l1,...".
dho::ControlSignal parse_signal(const std::string& spec) {
  if (spec == "zero") {
    return dho::ControlSignal::zero();
  }
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos) {
    throw std::runtime_error("invalid signal '" + spec + "'");
  }
  const std::string kind = spec.substr(0, colon);
  const std::string args = spec.substr(colon + 1);
  if (kind == "constant") {
    return dho::ControlSignal::constant(parse_number(args, "signal level"));
  }
  if (kind == "sin") {
    const std::vector<std::string> fields = split(args, ',');
    if (fields.size() != 3) {
      throw std::runtime_error("sin signal wants amplitude,angular_frequency,phase");
    }
    return dho::ControlSignal::sinusoid(parse_number(fields[0], "sin amplitude"),
                                        parse_number(fields[1], "sin frequency"),
                                        parse_number(fields[2], "sin phase"));
  }
  if (kind == "pwc") {
    std::vector<double> breakpoints;
    std::vector<double> levels;
    for (const std::string& token : split(args, ',')) {
      const std::size_t eq = token.find('=');
      if (eq == std::string::npos) {
        throw std::runtime_error("pwc entry '" + token + "' wants breakpoint=level");
      }
      breakpoints.push_back(parse_number(token.substr(0, eq), "pwc breakpoint"));
      levels.push_back(parse_number(token.substr(eq + 1), "pwc level"));
    }
    return dho::ControlSignal::piecewise_constant(std::move(breakpoints), std::move(levels));
  }
  throw std::runtime_error("unknown signal kind '" + kind + "'");
}

void json_params(dho::JsonWriter& json, const dho::OscillatorParams& params) {
  json.key("omega").value(params.omega());
  json.key("gamma").value(params.gamma());
  json.key("hbar").value(params.hbar());
  json.key("omega1").value(params.omega1());
}

// ---------------------------------------------------------------------------
// spectrum

int run_spectrum(const CommonOpts& opts, long long n_max, bool naive) {
  const dho::OscillatorParams params = make_params(opts);
  const auto lines = dho::spectrum(params, static_cast<std::size_t>(n_max));
  const auto naive_lines = dho::naive_spectrum(params, static_cast<std::size_t>(n_max));

  std::string payload;
  if (opts.format == "csv") {
    std::vector<std::string> header{"n", "re_E", "im_E"};
    if (naive) {
      header.push_back("naive_nonphysical_re_E");
      header.push_back("naive_nonphysical_im_E");
    }
    payload += dho::csv_row(header);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      std::vector<std::string> row{format_int(static_cast<long long>(lines[i].n)),
                                   format_double(lines[i].energy.real()),
                                   format_double(lines[i].energy.imag())};
      if (naive) {
        row.push_back(format_double(naive_lines[i].energy.real()));
        row.push_back(format_double(naive_lines[i].energy.imag()));
      }
      payload += dho::csv_row(row);
    }
  } else {
    dho::JsonWriter json;
    json.begin_object();
    json.key("command").value("spectrum");
    json.key("config").begin_object();
    json_params(json, params);
    json.key("n_max").value(n_max);
    json.key("naive").value(naive);
    json.end_object();
    json.key("levels").begin_array();
    for (std::size_t i = 0; i < lines.size(); ++i) {
      json.begin_object();
      json.key("n").value(lines[i].n);
      json.key("re_E").value(lines[i].energy.real());
      json.key("im_E").value(lines[i].energy.imag());
      if (naive) {
        json.key("naive_nonphysical_re_E").value(naive_lines[i].energy.real());
        json.key("naive_nonphysical_im_E").value(naive_lines[i].energy.imag());
      }
      json.end_object();
    }
    json.end_array();
    json.end_object();
    payload = json.str() + "\n";
  }
  write_payload(payload, opts.out);
  return 0;
}

// ---------------------------------------------------------------------------
// classical

int run_classical(const CommonOpts& opts, double x0, double p0, std::optional<double> amplitude,
                  double phase, double t_end, double dt) {
  const dho::OscillatorParams params = make_params(opts);
  dho::ClassicalState s0{x0, p0};
  if (amplitude.has_value()) {
    s0 = dho::analytic_solution(params, dho::AmplitudePhase{*amplitude, phase}, 0.0);
  }
  const dho::AmplitudePhase ap = dho::amplitude_phase_from_state(params, s0);
  const dho::Trajectory traj = dho::integrate_homogeneous(params, s0, t_end, dt);

  std::string payload;
  if (opts.format == "csv") {
    payload += dho::csv_row({"t", "x", "p", "x_analytic", "p_analytic"});
    for (std::size_t i = 0; i < traj.size(); ++i) {
      const dho::ClassicalState exact = dho::analytic_solution(params, ap, traj.times[i]);
      payload += dho::csv_row({format_double(traj.times[i]), format_double(traj.states[i].x),
                               format_double(traj.states[i].p), format_double(exact.x),
                               format_double(exact.p)});
    }
  } else {
    dho::JsonWriter json;
    json.begin_object();
    json.key("command").value("classical");
    json.key("config").begin_object();
    json_params(json, params);
    json.key("x0").value(s0.x);
    json.key("p0").value(s0.p);
    json.key("amplitude").value(ap.amplitude);
    json.key("phase").value(ap.phase);
    json.key("t_end").value(t_end);
    json.key("dt").value(dt);
    json.end_object();
    json.key("rows").begin_array();
    for (std::size_t i = 0; i < traj.size(); ++i) {
      const dho::ClassicalState exact = dho::analytic_solution(params, ap, traj.times[i]);
      json.begin_object();
      json.key("t").value(traj.times[i]);
      json.key("x").value(traj.states[i].x);
      json.key("p").value(traj.states[i].p);
      json.key("x_analytic").value(exact.x);
      json.key("p_analytic").value(exact.p);
      json.end_object();
    }
    json.end_array();
    json.end_object();
    payload = json.str() + "\n";
  }
  write_payload(payload, opts.out);
  return 0;
}

// ---------------------------------------------------------------------------
// evolve

int run_evolve(const CommonOpts& opts, const std::string& state_spec, std::size_t dim,
               double t_end, double dt) {
  const dho::OscillatorParams params = make_params(opts);
  const ParsedState parsed = parse_state(state_spec, dim);
  dho::detail::validate_stepping(t_end, dt, "evolve");
  const std::vector<double> times = dho::detail::time_grid(t_end, dt);

  std::fprintf(stderr, "state normalization factor: %s\n",
               format_double(parsed.normalization_factor).c_str());

  std::string payload;
  if (opts.format == "csv") {
    payload += dho::csv_row({"t", "norm_sq", "ground_overlap_re", "ground_overlap_im", "n_expect"});
    for (const double t : times) {
      const dho::EvolutionReport report = dho::evolve(params, parsed.state, t);
      payload += dho::csv_row({format_double(t), format_double(report.norm_sq),
                               format_double(report.ground_overlap.real()),
                               format_double(report.ground_overlap.imag()),
                               format_double(dho::number_expectation(report))});
    }
  } else {
    dho::JsonWriter json;
    json.begin_object();
    json.key("command").value("evolve");
    json.key("config").begin_object();
    json_params(json, params);
    json.key("state").value(state_spec);
    json.key("dim").value(parsed.state.dim());
    json.key("t_end").value(t_end);
    json.key("dt").value(dt);
    json.key("normalization_factor").value(parsed.normalization_factor);
    json.end_object();
    json.key("rows").begin_array();
    for (const double t : times) {
      const dho::EvolutionReport report = dho::evolve(params, parsed.state, t);
      json.begin_object();
      json.key("t").value(t);
      json.key("norm_sq").value(report.norm_sq);
      json.key("ground_overlap_re").value(report.ground_overlap.real());
      json.key("ground_overlap_im").value(report.ground_overlap.imag());
      json.key("n_expect").value(dho::number_expectation(report));
      json.end_object();
    }
    json.end_array();
    json.end_object();
    payload = json.str() + "\n";
  }
  write_payload(payload, opts.out);
  return 0;
}

// ---------------------------------------------------------------------------
// equivalence

int run_equivalence(const CommonOpts& opts, const std::string& state_spec, std::size_t dim,
                    const std::string& times_spec, double t_end, double dt) {
  const dho::OscillatorParams params = make_params(opts);
  const ParsedState parsed = parse_state(state_spec, dim);
  std::vector<double> times;
  if (!times_spec.empty()) {
    times = parse_times(times_spec);
  } else if (t_end > 0.0 && dt > 0.0) {
    dho::detail::validate_stepping(t_end, dt, "equivalence");
    times = dho::detail::time_grid(t_end, dt);
  } else {
    throw std::runtime_error("equivalence needs --times or both --t-end and --dt");
  }

  const auto rows = dho::picture_equivalence_report(params, parsed.state, times);

  std::string payload;
  if (opts.format == "csv") {
    payload += dho::csv_row({"t", "max_deviation", "pass"});
    for (const dho::PictureDeviation& row : rows) {
      payload += dho::csv_row(
          {format_double(row.t), format_double(row.max_deviation), format_bool(row.pass)});
    }
  } else {
    dho::JsonWriter json;
    json.begin_object();
    json.key("command").value("equivalence");
    json.key("config").begin_object();
    json_params(json, params);
    json.key("state").value(state_spec);
    json.key("dim").value(parsed.state.dim());
    json.key("tolerance").value(dho::kPictureEquivalenceTolerance);
    json.key("times").begin_array();
    for (const double t : times) {
      json.value(t);
    }
    json.end_array();
    json.end_object();
    json.key("rows").begin_array();
    for (const dho::PictureDeviation& row : rows) {
      json.begin_object();
      json.key("t").value(row.t);
      json.key("max_deviation").value(row.max_deviation);
      json.key("pass").value(row.pass);
      json.end_object();
    }
    json.end_array();
    json.end_object();
    payload = json.str() + "\n";
  }
  write_payload(payload, opts.out);
  return 0;
}

// ---------------------------------------------------------------------------
// driven

int run_driven(const CommonOpts& opts, double x0, double p0, const std::string& signal_spec,
               double t_end, double dt) {
  const dho::OscillatorParams params = make_params(opts);
  const dho::ControlSignal signal = parse_signal(signal_spec);
  const dho::DrivenTrajectory traj =
      dho::integrate_driven(params, dho::ClassicalState{x0, p0}, signal, t_end, dt);
  const dho::ResponseMetrics metrics = dho::response_metrics(traj);

  std::fprintf(stderr, "metrics: peak_abs_x=%s settling_time=%s terminal_x=%s terminal_p=%s\n",
               format_double(metrics.peak_abs_x).c_str(),
               metrics.settling_time ? format_double(*metrics.settling_time).c_str() : "none",
               format_double(metrics.terminal.x).c_str(),
               format_double(metrics.terminal.p).c_str());

  std::string payload;
  if (opts.format == "csv") {
    payload += dho::csv_row({"t", "x", "p", "f"});
    for (std::size_t i = 0; i < traj.size(); ++i) {
      payload += dho::csv_row({format_double(traj.times[i]), format_double(traj.states[i].x),
                               format_double(traj.states[i].p), format_double(traj.drive[i])});
    }
  } else {
    dho::JsonWriter json;
    json.begin_object();
    json.key("command").value("driven");
    json.key("config").begin_object();
    json_params(json, params);
    json.key("x0").value(x0);
    json.key("p0").value(p0);
    json.key("signal").value(signal_spec);
    json.key("t_end").value(t_end);
    json.key("dt").value(dt);
    json.end_object();
    json.key("metrics").begin_object();
    json.key("peak_abs_x").value(metrics.peak_abs_x);
    if (metrics.settling_time) {
      json.key("settling_time").value(*metrics.settling_time);
    } else {
      json.key("settling_time").null();
    }
    json.key("terminal_x").value(metrics.terminal.x);
    json.key("terminal_p").value(metrics.terminal.p);
    json.end_object();
    json.key("rows").begin_array();
    for (std::size_t i = 0; i < traj.size(); ++i) {
      json.begin_object();
      json.key("t").value(traj.times[i]);
      json.key("x").value(traj.states[i].x);
      json.key("p").value(traj.states[i].p);
      json.key("f").value(traj.drive[i]);
      json.end_object();
    }
    json.end_array();
    json.end_object();
    payload = json.str() + "\n";
  }
  write_payload(payload, opts.out);
  return 0;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepRow {
  double gamma = 0.0;
  double omega1 = 0.0;
  double norm_sq = 0.0;
  complex_t ground_overlap;
  double n_expect = 0.0;
  double max_picture_deviation = 0.0;
};

int run_sweep(const CommonOpts& opts, double gamma_min, double gamma_max, long long gamma_steps,
              const std::string& state_spec, std::size_t dim, double t_end) {
  if (gamma_steps < 1) {
    throw std::runtime_error("--gamma-steps must be >= 1");
  }
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
    throw std::runtime_error("--t-end must be finite and >= 0");
  }
  const std::size_t n = static_cast<std::size_t>(gamma_steps);

  // Validate the whole grid up front so a bad endpoint fails before any work.
  std::vector<dho::OscillatorParams> grid;
  grid.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double gamma =
        n == 1 ? gamma_min
               : gamma_min + (gamma_max - gamma_min) * static_cast<double>(i) /
                                 static_cast<double>(n - 1);
    grid.push_back(dho::OscillatorParams(opts.omega, gamma, opts.hbar));
  }
  const ParsedState parsed = parse_state(state_spec, dim);

  std::vector<SweepRow> rows(n);
  const auto compute = [&](std::size_t i) {
    const dho::OscillatorParams& p = grid[i];
    const dho::EvolutionReport rep = dho::evolve(p, parsed.state, t_end);
    const auto eq = dho::picture_equivalence_report(p, parsed.state, std::vector<double>{t_end});
    rows[i] = SweepRow{p.gamma(),     p.omega1(),
                       rep.norm_sq,   rep.ground_overlap,
                       dho::number_expectation(rep), eq.front().max_deviation};
  };

  // Grid points are independent pure evaluations; rows are ordered by index
  // regardless of which worker finishes first.
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) compute(i);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < n; i += workers) compute(i);
      });
    }
    for (std::thread& t : pool) t.join();
  }

  std::string payload;
  if (opts.format == "csv") {
    payload += dho::csv_row({"index", "omega", "gamma", "hbar", "omega1", "dim", "t_end", "state",
                             "norm_sq", "ground_overlap_re", "ground_overlap_im", "n_expect",
                             "max_picture_deviation"});
    for (std::size_t i = 0; i < n; ++i) {
      payload += dho::csv_row(
          {format_int(static_cast<long long>(i)), format_double(opts.omega),
           format_double(rows[i].gamma), format_double(opts.hbar), format_double(rows[i].omega1),
           format_int(static_cast<long long>(parsed.state.dim())), format_double(t_end),
           dho::csv_quote(state_spec), format_double(rows[i].norm_sq),
           format_double(rows[i].ground_overlap.real()),
           format_double(rows[i].ground_overlap.imag()), format_double(rows[i].n_expect),
           format_double(rows[i].max_picture_deviation)});
    }
  } else {
    dho::JsonWriter json;
    json.begin_object();
    json.key("command").value("sweep");
    json.key("config").begin_object();
    json.key("omega").value(opts.omega);
    json.key("hbar").value(opts.hbar);
    json.key("gamma_min").value(gamma_min);
    json.key("gamma_max").value(gamma_max);
    json.key("gamma_steps").value(gamma_steps);
    json.key("state").value(state_spec);
    json.key("dim").value(parsed.state.dim());
    json.key("t_end").value(t_end);
    json.end_object();
    json.key("rows").begin_array();
    for (std::size_t i = 0; i < n; ++i) {
      json.begin_object();
      json.key("index").value(i);
      json.key("omega").value(opts.omega);
      json.key("gamma").value(rows[i].gamma);
      json.key("hbar").value(opts.hbar);
      json.key("omega1").value(rows[i].omega1);
      json.key("dim").value(parsed.state.dim());
      json.key("t_end").value(t_end);
      json.key("state").value(state_spec);
      json.key("norm_sq").value(rows[i].norm_sq);
      json.key("ground_overlap_re").value(rows[i].ground_overlap.real());
      json.key("ground_overlap_im").value(rows[i].ground_overlap.imag());
      json.key("n_expect").value(rows[i].n_expect);
      json.key("max_picture_deviation").value(rows[i].max_picture_deviation);
      json.end_object();
    }
    json.end_array();
    json.end_object();
    payload = json.str() + "\n";
  }
  write_payload(payload, opts.out);
  return 0;
}

// ---------------------------------------------------------------------------
// verify

int run_verify(const CommonOpts& opts, std::uint64_t seed) {
  const dho::OscillatorParams params = make_params(opts);
  dho::VerifyOptions vopts;
  vopts.seed = seed;
  const dho::VerificationReport report = dho::run_verification(params, vopts);

  std::string payload;
  if (opts.format == "csv") {
    payload += dho::csv_row({"check", "value", "threshold", "relation", "pass"});
    for (const dho::Check& c : report.checks) {
      payload += dho::csv_row({c.name, format_double(c.value), format_double(c.threshold),
                               c.relation(), format_bool(c.pass)});
    }
  } else {
    dho::JsonWriter json;
    json.begin_object();
    json.key("command").value("verify");
    json.key("config").begin_object();
    json_params(json, params);
    json.key("seed").value(static_cast<long long>(seed));
    json.end_object();
    json.key("checks").begin_array();
    for (const dho::Check& c : report.checks) {
      json.begin_object();
      json.key("check").value(c.name);
      json.key("value").value(c.value);
      json.key("threshold").value(c.threshold);
      json.key("relation").value(c.relation());
      json.key("pass").value(c.pass);
      json.end_object();
    }
    json.end_array();
    json.key("all_pass").value(report.all_pass());
    json.end_object();
    payload = json.str() + "\n";
  }
  write_payload(payload, opts.out);

  int passed = 0;
  for (const dho::Check& c : report.checks) {
    if (c.pass) ++passed;
  }
  std::fprintf(stderr, "verify: %d/%zu checks passed\n", passed, report.checks.size());
  return report.all_pass() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"damped harmonic oscillator: classical, modal and quantum dynamics"};
  app.require_subcommand(1);

  CommonOpts spectrum_opts;
  long long n_max = 0;
  bool naive = false;
  CLI::App* spectrum_cmd = app.add_subcommand("spectrum", "complex energy levels E_n");
  add_common(spectrum_cmd, spectrum_opts);
  spectrum_cmd->add_option("--n-max", n_max, "highest level index")->required()
      ->check(CLI::NonNegativeNumber);
  spectrum_cmd->add_flag("--naive", naive, "also emit the uncorrected (non-physical) levels");

  CommonOpts classical_opts;
  double cl_x0 = 0.0, cl_p0 = 0.0, cl_phase = 0.0, cl_t_end = 0.0, cl_dt = 0.0;
  std::optional<double> cl_amplitude;
  CLI::App* classical_cmd =
      app.add_subcommand("classical", "RK4 trajectory of the homogeneous oscillator");
  add_common(classical_cmd, classical_opts);
  classical_cmd->add_option("--x0", cl_x0, "initial position")->capture_default_str();
  classical_cmd->add_option("--p0", cl_p0, "initial momentum")->capture_default_str();
  classical_cmd->add_option("--amplitude", cl_amplitude,
                            "start from amplitude/phase form instead of (x0, p0)");
  classical_cmd->add_option("--phase", cl_phase, "phase for --amplitude")->capture_default_str();
  classical_cmd->add_option("--t-end", cl_t_end, "horizon (> 0)")->required();
  classical_cmd->add_option("--dt", cl_dt, "step (> 0)")->required();

  CommonOpts evolve_opts;
  std::string ev_state;
  std::size_t ev_dim = 0;
  double ev_t_end = 0.0, ev_dt = 0.0;
  CLI::App* evolve_cmd =
      app.add_subcommand("evolve", "non-unitary Fock-state evolution diagnostics");
  add_common(evolve_cmd, evolve_opts);
  evolve_cmd->add_option("--state", ev_state, "sparse state, e.g. \"0:0.7,1:0.7\"")->required();
  evolve_cmd->add_option("--dim", ev_dim, "truncation dimension (default: max index + 1)")
      ->check(CLI::PositiveNumber);
  evolve_cmd->add_option("--t-end", ev_t_end, "horizon (> 0)")->required();
  evolve_cmd->add_option("--dt", ev_dt, "output grid spacing (> 0)")->required();

  CommonOpts eq_opts;
  std::string eq_state, eq_times;
  std::size_t eq_dim = 0;
  double eq_t_end = 0.0, eq_dt = 0.0;
  CLI::App* eq_cmd = app.add_subcommand(
      "equivalence", "complex-Hamiltonian vs complex-time evolution deviations");
  add_common(eq_cmd, eq_opts);
  eq_cmd->add_option("--state", eq_state, "sparse state")->required();
  eq_cmd->add_option("--dim", eq_dim, "truncation dimension")->check(CLI::PositiveNumber);
  eq_cmd->add_option("--times", eq_times, "comma-separated sample times");
  eq_cmd->add_option("--t-end", eq_t_end, "horizon (alternative to --times)");
  eq_cmd->add_option("--dt", eq_dt, "grid spacing for --t-end");

  CommonOpts driven_opts;
  double dr_x0 = 0.0, dr_p0 = 0.0, dr_t_end = 0.0, dr_dt = 0.0;
  std::string dr_signal;
  CLI::App* driven_cmd = app.add_subcommand("driven", "controlled oscillator x'' + 2 gamma x' + omega^2 x = f(t)");
  add_common(driven_cmd, driven_opts);
  driven_cmd->add_option("--x0", dr_x0, "initial position")->capture_default_str();
  driven_cmd->add_option("--p0", dr_p0, "initial momentum")->capture_default_str();
  driven_cmd->add_option("--signal", dr_signal,
                         "zero | constant:F | sin:A,W,P | pwc:b=l[,b=l...]")->required();
  driven_cmd->add_option("--t-end", dr_t_end, "horizon (> 0)")->required();
  driven_cmd->add_option("--dt", dr_dt, "step (> 0)")->required();

  CommonOpts sweep_opts;
  double sw_gamma_min = 0.0, sw_gamma_max = 0.0, sw_t_end = 0.0;
  long long sw_gamma_steps = 0;
  std::string sw_state;
  std::size_t sw_dim = 0;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "evolve diagnostics over a gamma grid");
  sweep_cmd->add_option("--omega", sweep_opts.omega, "angular frequency (> 0)")->required();
  add_common(sweep_cmd, sweep_opts, /*needs_gamma_pair=*/false);
  sweep_cmd->add_option("--gamma-min", sw_gamma_min, "first gamma")->required();
  sweep_cmd->add_option("--gamma-max", sw_gamma_max, "last gamma")->required();
  sweep_cmd->add_option("--gamma-steps", sw_gamma_steps, "grid size")->required();
  sweep_cmd->add_option("--state", sw_state, "sparse state")->required();
  sweep_cmd->add_option("--dim", sw_dim, "truncation dimension")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--t-end", sw_t_end, "evaluation time")->required();

  CommonOpts verify_opts;
  std::uint64_t verify_seed = dho::VerifyOptions{}.seed;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "run every library identity check and report deviations");
  add_common(verify_cmd, verify_opts);
  verify_cmd->add_option("--seed", verify_seed, "randomization seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help and friends
    }
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (spectrum_cmd->parsed()) {
      return run_spectrum(spectrum_opts, n_max, naive);
    }
    if (classical_cmd->parsed()) {
      return run_classical(classical_opts, cl_x0, cl_p0, cl_amplitude, cl_phase, cl_t_end, cl_dt);
    }
    if (evolve_cmd->parsed()) {
      return run_evolve(evolve_opts, ev_state, ev_dim, ev_t_end, ev_dt);
    }
    if (eq_cmd->parsed()) {
      return run_equivalence(eq_opts, eq_state, eq_dim, eq_times, eq_t_end, eq_dt);
    }
    if (driven_cmd->parsed()) {
      return run_driven(driven_opts, dr_x0, dr_p0, dr_signal, dr_t_end, dr_dt);
    }
    if (sweep_cmd->parsed()) {
      return run_sweep(sweep_opts, sw_gamma_min, sw_gamma_max, sw_gamma_steps, sw_state, sw_dim,
                       sw_t_end);
    }
    if (verify_cmd->parsed()) {
      return run_verify(verify_opts, verify_seed);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "error: no command\n";
  return 1;
}
