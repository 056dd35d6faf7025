// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dho/dho.hpp"

namespace {

using dho::ClassicalState;
using dho::complex_t;
using dho::FockState;
using dho::OscillatorParams;

struct Outcome {
  bool pass;
  std::string detail;
};

double now_seconds(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

OscillatorParams random_params(std::mt19937_64& rng, double min_ratio, double max_ratio) {
  std::uniform_real_distribution<double> omega_dist(0.5, 10.0);
  std::uniform_real_distribution<double> ratio_dist(min_ratio, max_ratio);
  const double omega = omega_dist(rng);
  return OscillatorParams(omega, ratio_dist(rng) * omega);
}

FockState random_fock(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<complex_t> amps(dim);
  for (auto& a : amps) {
    a = complex_t(gauss(rng), gauss(rng));
  }
  return FockState(std::move(amps)).normalized();
}

double max_rk4_error(const OscillatorParams& params, double t_end, double dt) {
  const dho::AmplitudePhase ap{1.0, 0.0};
  const ClassicalState s0 = dho::analytic_solution(params, ap, 0.0);
  const dho::Trajectory traj = dho::integrate_homogeneous(params, s0, t_end, dt);
  double err = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const ClassicalState exact = dho::analytic_solution(params, ap, traj.times[i]);
    err = std::max({err, std::abs(traj.states[i].x - exact.x),
                    std::abs(traj.states[i].p - exact.p)});
  }
  return err;
}

// ---------------------------------------------------------------------------
// subprocess helpers for the CLI criteria

struct CliRun {
  int exit_code;
  std::string out;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

CliRun run_cli(const std::string& args, const std::string& tag) {
  const std::string out_path = "acc_" + tag + ".out";
  const std::string cmd = std::string("\"") + DHO_CLI_PATH + "\" " + args + " > " + out_path +
                          " 2> acc_" + tag + ".err";
  const int status = std::system(cmd.c_str());
  return CliRun{WIFEXITED(status) ? WEXITSTATUS(status) : -1, read_file(out_path)};
}

// ---------------------------------------------------------------------------
// criteria

Outcome eigenstructure_and_bracket(bool bracket) {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(bracket ? 1002 : 1001);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const OscillatorParams params = random_params(rng, 0.0, 0.999);
    if (bracket) {
      worst = std::max(worst,
                       std::abs(dho::poisson_bracket_check(params) - complex_t(0.0, 1.0)));
    } else {
      const dho::TransformPair tp = dho::transform_pair(params);
      const dho::EigenData eig = dho::eigen_data(params);
      const dho::Mat2c recomposed =
          tp.forward * dho::Mat2c::diagonal(eig.lambda_minus, eig.lambda_plus) * tp.inverse;
      worst = std::max(worst, dho::max_abs_diff(recomposed, dho::companion_matrix(params)));
    }
  }
  const double elapsed = now_seconds(start);
  const bool pass = worst <= 1e-12 && elapsed < 1.0;
  return Outcome{pass, "max deviation " + fmt(worst) + " over 1000 draws, " + fmt(elapsed) + " s"};
}

Outcome classical_consistency() {
  const OscillatorParams params(5.0, 3.0);
  const double horizon = 10.0 / params.gamma();
  const double err = max_rk4_error(params, horizon, 1e-4);
  const double coarse = max_rk4_error(params, horizon, 2e-2);
  const double fine = max_rk4_error(params, horizon, 1e-2);
  const double ratio = coarse / fine;
  const bool pass = err <= 1e-8 && ratio >= 8.0;
  return Outcome{pass, "max error " + fmt(err) + " at dt=1e-4, halving ratio " + fmt(ratio)};
}

Outcome spectrum_values() {
  const OscillatorParams params(5.0, 3.0);
  const auto lines = dho::spectrum(params, 1);
  const auto naive = dho::naive_spectrum(params, 1);
  const bool ground_ok = lines[0].energy.real() == 2.5 && lines[0].energy.imag() == 0.0;
  const double e1_dev = std::abs(lines[1].energy - complex_t(6.5, -3.0));
  const complex_t offset = naive[0].energy - lines[0].energy;
  const complex_t expected_offset(0.5 * (params.omega1() - params.omega()),
                                  -0.5 * params.gamma());
  const bool offset_ok = offset == expected_offset;
  const bool pass = ground_ok && e1_dev <= 1e-15 && offset_ok;
  return Outcome{pass, "E0 = 2.5 exactly real, |E1 - (6.5-3i)| = " + fmt(e1_dev) +
                           ", naive offset exact: " + (offset_ok ? "yes" : "no")};
}

Outcome decay_and_settling() {
  const OscillatorParams params(5.0, 3.0);
  const FockState plus = FockState({complex_t(1.0), complex_t(1.0)}).normalized();
  const double norm_dev =
      std::abs(dho::evolve(params, plus, 1.0).norm_sq - 0.5 * (1.0 + std::exp(-6.0)));

  std::mt19937_64 rng(1005);
  double worst_excess = -1.0;
  for (int i = 0; i < 100; ++i) {
    const FockState psi = random_fock(rng, 32);
    for (const double t : {0.1, 1.0, 5.0, 10.0}) {
      const dho::EvolutionReport report = dho::evolve(params, psi, t);
      const complex_t limit = dho::asymptotic_state(params, psi, t);
      double dist_sq = std::norm(report.state[0] - limit);
      for (std::size_t n = 1; n < psi.dim(); ++n) {
        dist_sq += std::norm(report.state[n]);
      }
      worst_excess =
          std::max(worst_excess, std::sqrt(dist_sq) - std::exp(-params.gamma() * t));
    }
  }
  const bool pass = norm_dev <= 1e-12 && worst_excess <= 0.0;
  return Outcome{pass, "norm_sq(1) deviation " + fmt(norm_dev) + ", settling-bound excess " +
                           fmt(worst_excess) + " over 100 states"};
}

Outcome picture_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1006);
  double worst = 0.0;
  for (int ps = 0; ps < 10; ++ps) {
    const OscillatorParams params = random_params(rng, 0.1, 0.999);
    std::vector<double> times;
    for (int j = 1; j <= 20; ++j) {
      times.push_back(10.0 / params.gamma() * j / 20.0);
    }
    for (int s = 0; s < 100; ++s) {
      const FockState psi = random_fock(rng, 32);
      for (const auto& row : dho::picture_equivalence_report(params, psi, times)) {
        worst = std::max(worst, row.max_deviation);
      }
    }
  }
  const CliRun verify = run_cli("verify --omega 5 --gamma 3", "crit6_verify");
  const double elapsed = now_seconds(start);
  const bool pass = worst <= 1e-12 && verify.exit_code == 0 && elapsed < 5.0;
  return Outcome{pass, "max per-coefficient deviation " + fmt(worst) +
                           ", verify exit " + std::to_string(verify.exit_code) + ", " +
                           fmt(elapsed) + " s"};
}

Outcome limits() {
  // gamma = 0: unitary norm and real tau
  const OscillatorParams undamped(5.0, 0.0);
  std::mt19937_64 rng(1007);
  double norm_dev = 0.0;
  for (int i = 0; i < 20; ++i) {
    const FockState psi = random_fock(rng, 16);
    for (const double t : {0.5, 3.0, 12.0}) {
      norm_dev = std::max(norm_dev, std::abs(dho::evolve(undamped, psi, t).norm_sq - 1.0));
    }
  }
  const bool tau_real = dho::complex_time_of(undamped, 7.0).tau.imag() == 0.0;

  // gamma -> omega^-: criteria 1-6 style checks with omega1 small
  const OscillatorParams near_critical(5.0, 0.999 * 5.0);
  const dho::TransformPair tp = dho::transform_pair(near_critical);
  const dho::EigenData eig = dho::eigen_data(near_critical);
  const double eigen_dev = dho::max_abs_diff(
      tp.forward * dho::Mat2c::diagonal(eig.lambda_minus, eig.lambda_plus) * tp.inverse,
      dho::companion_matrix(near_critical));
  const double bracket_dev =
      std::abs(dho::poisson_bracket_check(near_critical) - complex_t(0.0, 1.0));
  const double rk4_err = max_rk4_error(near_critical, 10.0 / near_critical.gamma(), 1e-4);
  const auto lines = dho::spectrum(near_critical, 1);
  const bool spectrum_ok =
      lines[0].energy.real() == 2.5 && lines[0].energy.imag() == 0.0 &&
      lines[1].energy == complex_t(near_critical.omega1() + 2.5, -near_critical.gamma());
  const FockState plus = FockState({complex_t(1.0), complex_t(1.0)}).normalized();
  const double norm_dev_nc =
      std::abs(dho::evolve(near_critical, plus, 1.0).norm_sq -
               0.5 * (1.0 + std::exp(-2.0 * near_critical.gamma())));
  double picture_dev = 0.0;
  std::vector<double> times;
  for (int j = 1; j <= 20; ++j) {
    times.push_back(10.0 / near_critical.gamma() * j / 20.0);
  }
  for (int s = 0; s < 20; ++s) {
    const FockState psi = random_fock(rng, 32);
    for (const auto& row : dho::picture_equivalence_report(near_critical, psi, times)) {
      picture_dev = std::max(picture_dev, row.max_deviation);
    }
  }

  // gamma = omega: rejected with a diagnostic distinct from the overdamped one
  std::string critical_message;
  try {
    const OscillatorParams bad(5.0, 5.0);
    (void)bad;
  } catch (const std::invalid_argument& e) {
    critical_message = e.what();
  }
  std::string overdamped_message;
  try {
    const OscillatorParams bad(3.0, 5.0);
    (void)bad;
  } catch (const std::invalid_argument& e) {
    overdamped_message = e.what();
  }
  const bool rejection_ok = critical_message.find("critically damped") != std::string::npos &&
                            overdamped_message.find("overdamped") != std::string::npos &&
                            critical_message != overdamped_message;

  const bool pass = norm_dev <= 1e-12 && tau_real && eigen_dev <= 1e-12 &&
                    bracket_dev <= 1e-12 && rk4_err <= 1e-8 && spectrum_ok &&
                    norm_dev_nc <= 1e-12 && picture_dev <= 1e-12 && rejection_ok;
  return Outcome{pass, "gamma=0 norm deviation " + fmt(norm_dev) +
                           "; near-critical (omega1 = " + fmt(near_critical.omega1()) +
                           ") worst deviation " +
                           fmt(std::max({eigen_dev, bracket_dev, norm_dev_nc, picture_dev})) +
                           ", rk4 " + fmt(rk4_err) + "; gamma=omega rejected distinctly: " +
                           (rejection_ok ? "yes" : "no")};
}

Outcome driven_system() {
  const OscillatorParams params(5.0, 3.0);
  const ClassicalState rest{0.0, 0.0};

  const double force = 25.0;
  const dho::DrivenTrajectory step = dho::integrate_driven(
      params, rest, dho::ControlSignal::constant(force), 20.0 / params.gamma(), 1e-3);
  const double steady_err = std::abs(step.states.back().x - force / 25.0);

  const ClassicalState s0{0.0, 4.0};
  const dho::Trajectory hom = dho::integrate_homogeneous(params, s0, 2.0, 1e-3);
  const dho::DrivenTrajectory zero =
      dho::integrate_driven(params, s0, dho::ControlSignal::zero(), 2.0, 1e-3);
  bool bitwise = hom.times.size() == zero.times.size();
  if (bitwise) {
    bitwise = std::memcmp(hom.times.data(), zero.times.data(),
                          hom.times.size() * sizeof(double)) == 0 &&
              std::memcmp(hom.states.data(), zero.states.data(),
                          hom.states.size() * sizeof(ClassicalState)) == 0;
  }

  // superposition inside the two signal families closed under addition
  const dho::DrivenTrajectory a =
      dho::integrate_driven(params, rest, dho::ControlSignal::constant(2.5), 8.0, 1e-3);
  const dho::DrivenTrajectory b = dho::integrate_driven(
      params, rest, dho::ControlSignal::sinusoid(1.5, 4.0, 0.0), 8.0, 1e-3);
  const dho::DrivenTrajectory a2 =
      dho::integrate_driven(params, rest, dho::ControlSignal::constant(5.5), 8.0, 1e-3);
  const dho::DrivenTrajectory a12 =
      dho::integrate_driven(params, rest, dho::ControlSignal::constant(8.0), 8.0, 1e-3);
  const dho::DrivenTrajectory b2 = dho::integrate_driven(
      params, rest, dho::ControlSignal::sinusoid(2.5, 4.0, 0.0), 8.0, 1e-3);
  const dho::DrivenTrajectory b12 = dho::integrate_driven(
      params, rest, dho::ControlSignal::sinusoid(4.0, 4.0, 0.0), 8.0, 1e-3);
  double superpose_dev = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    superpose_dev = std::max(
        {superpose_dev, std::abs(a.states[i].x + a2.states[i].x - a12.states[i].x),
         std::abs(a.states[i].p + a2.states[i].p - a12.states[i].p),
         std::abs(b.states[i].x + b2.states[i].x - b12.states[i].x),
         std::abs(b.states[i].p + b2.states[i].p - b12.states[i].p)});
  }

  const bool pass = steady_err <= 1e-6 && bitwise && superpose_dev <= 1e-9;
  return Outcome{pass, "steady-state error " + fmt(steady_err) + ", zero-drive bitwise match: " +
                           (bitwise ? "yes" : "no") + ", superposition deviation " +
                           fmt(superpose_dev)};
}

Outcome cli_determinism() {
  const std::vector<std::pair<std::string, std::string>> commands{
      {"spectrum --omega 5 --gamma 3 --hbar 1 --n-max 2", "c9_spectrum"},
      {"evolve --omega 5 --gamma 3 --state \"0:0.70710678,1:0.70710678\" --t-end 2 --dt 0.01",
       "c9_evolve"},
      {"classical --omega 5 --gamma 3 --x0 0 --p0 4 --t-end 1 --dt 0.001", "c9_classical"},
      {"equivalence --omega 5 --gamma 3 --state \"0:1,3:0.5:-0.5\" --dim 8 --times 0.1,0.5,1,2",
       "c9_equivalence"},
      {"driven --omega 5 --gamma 3 --signal constant:25 --t-end 6.7 --dt 0.001", "c9_driven"},
      {"sweep --omega 5 --gamma-min 0.5 --gamma-max 4.5 --gamma-steps 9 --state \"0:1,1:1\" "
       "--t-end 1",
       "c9_sweep"},
      {"verify --omega 5 --gamma 3", "c9_verify"}};

  for (const auto& [args, tag] : commands) {
    const CliRun first = run_cli(args, tag + "_a");
    const CliRun second = run_cli(args, tag + "_b");
    if (first.exit_code != 0 || second.exit_code != 0) {
      return Outcome{false, "command '" + args + "' exited nonzero"};
    }
    if (first.out != second.out) {
      return Outcome{false, "command '" + args + "' output differs between runs"};
    }
  }

  const auto start = std::chrono::steady_clock::now();
  const CliRun verify = run_cli("verify --omega 5 --gamma 3", "c9_verify_timed");
  const double elapsed = now_seconds(start);
  const bool pass = verify.exit_code == 0 && elapsed < 5.0;
  return Outcome{pass, std::to_string(commands.size()) +
                           " commands byte-identical across runs; verify exit " +
                           std::to_string(verify.exit_code) + " in " + fmt(elapsed) + " s"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"eigenstructure U diag(l-,l+) U^-1 = A", [] { return eigenstructure_and_bracket(false); }},
      {"Poisson bracket {z*, z} = i", [] { return eigenstructure_and_bracket(true); }},
      {"classical RK4 vs closed form", classical_consistency},
      {"spectrum values and naive offset", spectrum_values},
      {"norm decay and settling bound", decay_and_settling},
      {"picture equivalence", picture_equivalence},
      {"limits gamma=0, gamma->omega, gamma=omega", limits},
      {"driven steady state, reduction, superposition", driven_system},
      {"CLI determinism and verify gate", cli_determinism},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Outcome outcome = criteria[i].second();
    std::printf("%s [%zu] %s: %s\n", outcome.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), outcome.detail.c_str());
    if (!outcome.pass) ++failures;
  }
  if (failures > 0) {
    std::printf("%d of %zu acceptance criteria failed\n", failures, criteria.size());
  } else {
    std::printf("all %zu acceptance criteria passed\n", criteria.size());
  }
  return failures;
}
