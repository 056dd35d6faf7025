#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "dho/complex_time.hpp"
#include "dho/driven.hpp"
#include "dho/mode_transform.hpp"
#include "dho/oscillator.hpp"
#include "dho/quantum_evolution.hpp"

namespace dho {

/// One verified identity: a measured value compared against a threshold, either
/// from below ("le", deviations) or from above ("ge", ratios).
struct Check {
  std::string name;
  double value;
  double threshold;
  bool lower_is_better;
  bool pass;

  static Check le(std::string name, double value, double threshold) {
    return Check{std::move(name), value, threshold, true, value <= threshold};
  }

  static Check ge(std::string name, double value, double threshold) {
    return Check{std::move(name), value, threshold, false, value >= threshold};
  }

  const char* relation() const { return lower_is_better ? "le" : "ge"; }
};

struct VerificationReport {
  std::vector<Check> checks;

  bool all_pass() const {
    for (const Check& c : checks) {
      if (!c.pass) return false;
    }
    return true;
  }
};

struct VerifyOptions {
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
  int param_samples = 50;      // randomized parameter sets per identity
  int state_samples = 20;      // randomized Fock states per quantum identity
  std::size_t fock_dim = 32;
  int time_samples = 12;
};

namespace detail {

inline OscillatorParams random_params(std::mt19937_64& rng, bool allow_undamped = true) {
  std::uniform_real_distribution<double> omega_dist(0.5, 8.0);
  std::uniform_real_distribution<double> ratio_dist(0.05, 0.999);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double omega = omega_dist(rng);
  const bool undamped = allow_undamped && unit(rng) < 0.1;
  const double gamma = undamped ? 0.0 : ratio_dist(rng) * omega;
  return OscillatorParams(omega, gamma);
}

inline FockState random_state(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<complex_t> amps(dim);
  for (complex_t& a : amps) {
    a = complex_t(gauss(rng), gauss(rng));
  }
  return FockState(std::move(amps)).normalized();
}

/// Reference horizon: 10 decay times, or 10 periods in the undamped limit.
inline double reference_horizon(const OscillatorParams& p) {
  return p.gamma() > 0.0 ? 10.0 / p.gamma() : 10.0 * 2.0 * std::numbers::pi / p.omega();
}

/// Central finite differences of the mode transform, used as an independent route
/// to the Poisson bracket {z*, z}.
inline complex_t poisson_bracket_finite_difference(const OscillatorParams& params,
                                                   const ClassicalState& at, double h) {
  const auto z_of = [&](double x, double p) {
    return to_modes(params, ClassicalState{x, p}).z;
  };
  const complex_t dz_dx = (z_of(at.x + h, at.p) - z_of(at.x - h, at.p)) / (2.0 * h);
  const complex_t dz_dp = (z_of(at.x, at.p + h) - z_of(at.x, at.p - h)) / (2.0 * h);
  const complex_t dzc_dx = std::conj(dz_dx);
  const complex_t dzc_dp = std::conj(dz_dp);
  return dzc_dx * dz_dp - dz_dx * dzc_dp;
}

/// Conjugate companion of evolve_tau: e^{+i tau* H~} applied to conjugated
/// coefficients, which must reproduce the coefficient-wise conjugate of evolve_tau.
inline FockState evolve_tau_conjugate_route(const OscillatorParams& params,
                                            const FockState& psi_conj, double t) {
  const ComplexTime ct = complex_time_of(params, t);
  const double angle = t * (params.hbar() * params.omega() * 0.5);
  const complex_t global(std::cos(angle), std::sin(angle));
  std::vector<complex_t> amps;
  amps.reserve(psi_conj.dim());
  for (std::size_t n = 0; n < psi_conj.dim(); ++n) {
    const double level_energy = params.hbar() * params.omega1() * static_cast<double>(n);
    const complex_t exponent = complex_t(0.0, 1.0) * ct.tau_conj() * level_energy;
    amps.push_back(global * std::exp(exponent) * psi_conj[n]);
  }
  return FockState(std::move(amps));
}

}  // namespace detail

/// Runs every identity the library asserts, at the given parameters plus randomized
/// ones, and reports the measured deviations. Deterministic for a fixed seed.
inline VerificationReport run_verification(const OscillatorParams& params,
                                           const VerifyOptions& options = {}) {
  using detail::random_params;
  using detail::random_state;
  using detail::reference_horizon;

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  std::uniform_real_distribution<double> hbar_dist(0.5, 2.0);

  std::vector<OscillatorParams> param_set;
  param_set.push_back(params);
  for (int i = 0; i < options.param_samples; ++i) {
    param_set.push_back(random_params(rng));
  }

  VerificationReport report;

  // --- linear-algebra core -------------------------------------------------
  {
    double eigen_dev = 0.0;
    double inverse_dev = 0.0;
    double similarity_dev = 0.0;
    double det_dev = 0.0;
    double bracket_dev = 0.0;
    double bracket_fd_dev = 0.0;
    for (const OscillatorParams& p : param_set) {
      const EigenData eig = eigen_data(p);
      eigen_dev = std::max(eigen_dev, std::abs(eig.lambda_plus - std::conj(eig.lambda_minus)));
      eigen_dev = std::max(eigen_dev, std::abs(eig.lambda_minus.real() + p.gamma()));
      eigen_dev = std::max(eigen_dev, std::abs(eig.lambda_plus.real() + p.gamma()));
      eigen_dev = std::max(eigen_dev, std::abs(eig.lambda_minus.imag() + p.omega1()));

      const TransformPair tp = transform_pair(p);
      inverse_dev = std::max(inverse_dev, max_abs_diff(tp.forward * tp.inverse, Mat2c::identity()));
      const Mat2c similar =
          tp.forward * Mat2c::diagonal(eig.lambda_minus, eig.lambda_plus) * tp.inverse;
      similarity_dev = std::max(similarity_dev, max_abs_diff(similar, companion_matrix(p)));
      det_dev = std::max(det_dev, std::abs(tp.forward.det() * tp.inverse.det() - 1.0));
      bracket_dev = std::max(bracket_dev, std::abs(poisson_bracket_check(p) - complex_t(0.0, 1.0)));
      bracket_fd_dev = std::max(
          bracket_fd_dev,
          std::abs(detail::poisson_bracket_finite_difference(p, ClassicalState{coord(rng), coord(rng)},
                                                             1e-4) -
                   complex_t(0.0, 1.0)));
    }
    report.checks.push_back(Check::le("eigen_conjugate_pair", eigen_dev, 0.0));
    report.checks.push_back(Check::le("transform_inverse", inverse_dev, 1e-12));
    report.checks.push_back(Check::le("similarity_companion", similarity_dev, 1e-12));
    report.checks.push_back(Check::le("det_product", det_dev, 1e-12));
    report.checks.push_back(Check::le("poisson_bracket", bracket_dev, 1e-12));
    report.checks.push_back(Check::le("poisson_bracket_finite_difference", bracket_fd_dev, 1e-7));
  }

  // --- classical solutions ---------------------------------------------------
  {
    double roundtrip_dev = 0.0;
    double ap_roundtrip_dev = 0.0;
    double envelope_dev = 0.0;
    double flow_dev = 0.0;
    double modulus_dev = 0.0;
    double tau_flow_dev = 0.0;
    for (const OscillatorParams& p : param_set) {
      const double horizon = reference_horizon(p);
      for (int k = 0; k < 4; ++k) {
        const ClassicalState s{coord(rng), coord(rng)};
        const ModePair m = to_modes(p, s);
        const ClassicalState back = from_modes(p, m);
        roundtrip_dev = std::max({roundtrip_dev, std::abs(back.x - s.x), std::abs(back.p - s.p)});

        const AmplitudePhase ap = amplitude_phase_from_state(p, s);
        const ClassicalState re0 = analytic_solution(p, ap, 0.0);
        ap_roundtrip_dev =
            std::max({ap_roundtrip_dev, std::abs(re0.x - s.x), std::abs(re0.p - s.p)});

        for (int j = 1; j <= options.time_samples; ++j) {
          const double t = horizon * static_cast<double>(j) / options.time_samples;
          const ClassicalState at = analytic_solution(p, ap, t);
          const double lhs =
              at.x * at.x + std::pow((at.p + p.gamma() * at.x) / p.omega1(), 2);
          const double rhs = ap.amplitude * ap.amplitude * std::exp(-2.0 * p.gamma() * t);
          if (rhs > 0.0) {
            envelope_dev = std::max(envelope_dev, std::abs(lhs - rhs) / rhs);
          }
          const ModePair flowed = mode_flow(p, m, t);
          const ClassicalState via_modes = from_modes(p, flowed);
          flow_dev =
              std::max({flow_dev, std::abs(via_modes.x - at.x), std::abs(via_modes.p - at.p)});
          if (std::abs(m.z) > 0.0) {
            modulus_dev = std::max(modulus_dev, std::abs(std::abs(flowed.z) / std::abs(m.z) -
                                                         std::exp(-p.gamma() * t)) /
                                                    std::exp(-p.gamma() * t));
          }
          const ModePair tau_flowed = mode_flow_tau(p, m, t);
          tau_flow_dev = std::max({tau_flow_dev, std::abs(tau_flowed.z - flowed.z),
                                   std::abs(tau_flowed.z_conj - flowed.z_conj)});
        }
      }
    }
    report.checks.push_back(Check::le("mode_roundtrip", roundtrip_dev, 1e-12));
    report.checks.push_back(Check::le("amplitude_phase_roundtrip", ap_roundtrip_dev, 1e-12));
    report.checks.push_back(Check::le("decay_envelope", envelope_dev, 1e-12));
    report.checks.push_back(Check::le("flow_consistency", flow_dev, 1e-9));
    report.checks.push_back(Check::le("mode_modulus_decay", modulus_dev, 1e-12));
    report.checks.push_back(Check::le("mode_flow_tau_equivalence", tau_flow_dev, 1e-12));
  }

  // --- integrator ------------------------------------------------------------
  {
    const double horizon = reference_horizon(params);
    const AmplitudePhase ap{1.0, 0.25};
    const ClassicalState s0 = analytic_solution(params, ap, 0.0);

    const auto max_error = [&](double dt) {
      const Trajectory traj = integrate_homogeneous(params, s0, horizon, dt);
      double err = 0.0;
      for (std::size_t i = 0; i < traj.size(); ++i) {
        const ClassicalState exact = analytic_solution(params, ap, traj.times[i]);
        err = std::max({err, std::abs(traj.states[i].x - exact.x),
                        std::abs(traj.states[i].p - exact.p)});
      }
      return err;
    };

    report.checks.push_back(Check::le("rk4_vs_analytic", max_error(1e-3), 1e-6));
    const double coarse = max_error(horizon / 500.0);
    const double fine = max_error(horizon / 1000.0);
    report.checks.push_back(
        Check::ge("rk4_convergence_ratio", fine > 0.0 ? coarse / fine : 16.0, 8.0));
  }

  // --- spectrum ----------------------------------------------------------------
  {
    double reality_dev = 0.0;
    double offset_dev = 0.0;
    for (const OscillatorParams& p : param_set) {
      const auto corrected = spectrum(p, 8);
      const auto naive = naive_spectrum(p, 8);
      reality_dev = std::max(reality_dev, std::abs(corrected[0].energy.imag()));
      for (const SpectrumLine& line : corrected) {
        reality_dev = std::max(reality_dev,
                               std::abs(line.energy.imag() -
                                        (0.0 - p.hbar() * p.gamma() * static_cast<double>(line.n))));
      }
      const complex_t offset = naive[0].energy - corrected[0].energy;
      const complex_t expected(0.5 * p.hbar() * (p.omega1() - p.omega()),
                               -0.5 * p.hbar() * p.gamma());
      offset_dev = std::max(offset_dev, std::abs(offset - expected));
    }
    report.checks.push_back(Check::le("spectrum_reality", reality_dev, 0.0));
    report.checks.push_back(Check::le("naive_correction_offset", offset_dev, 1e-14));
  }

  // --- quantum evolution ---------------------------------------------------------
  {
    double norm_formula_dev = 0.0;
    double semigroup_dev = 0.0;
    double picture_dev = 0.0;
    double conjugate_dev = 0.0;
    double settling_excess = -1.0;
    double monotonic_excess = -1.0;
    double ground_phase_dev = 0.0;
    double tau_real_part_dev = 0.0;

    std::vector<OscillatorParams> quantum_set;
    quantum_set.push_back(params);
    for (int i = 0; i + 1 < std::min(options.param_samples, 8); ++i) {
      const OscillatorParams base = random_params(rng);
      quantum_set.push_back(OscillatorParams(base.omega(), base.gamma(), hbar_dist(rng)));
    }

    for (const OscillatorParams& p : quantum_set) {
      const double horizon = reference_horizon(p);
      // For gamma = 0 nothing damps the high-level phases, so the semigroup
      // comparison is kept within one period to stay inside the 1e-12 budget.
      const double sg_horizon = p.gamma() > 0.0 ? horizon : 2.0 * std::numbers::pi / p.omega();
      for (int s = 0; s < options.state_samples; ++s) {
        const FockState psi = random_state(rng, options.fock_dim);
        double previous_norm = 1.0;
        double previous_nexp = std::numeric_limits<double>::infinity();
        for (int j = 0; j <= options.time_samples; ++j) {
          const double t = horizon * static_cast<double>(j) / options.time_samples;
          tau_real_part_dev =
              std::max(tau_real_part_dev, std::abs(complex_time_of(p, t).tau.real() - t));

          const EvolutionReport rep = evolve(p, psi, t);
          double expected_norm = 0.0;
          for (std::size_t n = 0; n < psi.dim(); ++n) {
            expected_norm += std::norm(psi[n]) *
                             std::exp(-2.0 * p.hbar() * p.gamma() * static_cast<double>(n) * t);
          }
          norm_formula_dev = std::max(norm_formula_dev, std::abs(rep.norm_sq - expected_norm));

          if (p.gamma() == 0.0) {
            norm_formula_dev = std::max(norm_formula_dev, std::abs(rep.norm_sq - 1.0));
          } else if (j > 0) {
            monotonic_excess = std::max(monotonic_excess, rep.norm_sq - previous_norm);
          }
          previous_norm = rep.norm_sq;

          const EvolutionReport rep_tau = evolve_tau(p, psi, t);
          picture_dev =
              std::max(picture_dev, max_coefficient_deviation(rep.state, rep_tau.state));

          std::vector<complex_t> conj_amps;
          conj_amps.reserve(psi.dim());
          for (std::size_t n = 0; n < psi.dim(); ++n) {
            conj_amps.push_back(std::conj(psi[n]));
          }
          const FockState conj_route =
              detail::evolve_tau_conjugate_route(p, FockState(conj_amps), t);
          for (std::size_t n = 0; n < psi.dim(); ++n) {
            conjugate_dev =
                std::max(conjugate_dev, std::abs(conj_route[n] - std::conj(rep_tau.state[n])));
          }

          if (p.gamma() > 0.0) {
            const complex_t limit = asymptotic_state(p, psi, t);
            double dist_sq = std::norm(rep.state[0] - limit);
            for (std::size_t n = 1; n < psi.dim(); ++n) {
              dist_sq += std::norm(rep.state[n]);
            }
            settling_excess = std::max(
                settling_excess, std::sqrt(dist_sq) - std::exp(-p.hbar() * p.gamma() * t));

            const double nexp = number_expectation(rep);
            monotonic_excess = std::max(monotonic_excess, nexp - previous_nexp);
            previous_nexp = nexp;
          }

          const double t_sg = sg_horizon * static_cast<double>(j) / options.time_samples;
          const double t2_sg = 0.5 * t_sg;
          const EvolutionReport two_step = evolve(p, evolve(p, psi, t_sg).state, t2_sg);
          const EvolutionReport one_step = evolve(p, psi, t_sg + t2_sg);
          semigroup_dev =
              std::max(semigroup_dev, max_coefficient_deviation(two_step.state, one_step.state));
        }
      }

      const FockState ground = FockState::basis(options.fock_dim, 0);
      for (int j = 1; j <= options.time_samples; ++j) {
        const double t = horizon * static_cast<double>(j) / options.time_samples;
        const EvolutionReport rep = evolve(p, ground, t);
        ground_phase_dev =
            std::max(ground_phase_dev, std::abs(rep.state[0] - detail::ground_phase(p, t)));
      }
    }

    report.checks.push_back(Check::le("norm_decay_formula", norm_formula_dev, 1e-12));
    report.checks.push_back(Check::le("semigroup", semigroup_dev, 1e-12));
    report.checks.push_back(Check::le("picture_equivalence", picture_dev, 1e-12));
    report.checks.push_back(Check::le("conjugate_picture", conjugate_dev, 1e-12));
    report.checks.push_back(Check::le("settling_bound_excess", settling_excess, 0.0));
    report.checks.push_back(Check::le("norm_and_number_monotonic_excess", monotonic_excess, 1e-12));
    report.checks.push_back(Check::le("ground_phase_exactness", ground_phase_dev, 1e-15));
    report.checks.push_back(Check::le("complex_time_real_part", tau_real_part_dev, 0.0));
  }

  // --- classical-quantum rate match -------------------------------------------
  {
    // |psi_0* psi_1| decays at hbar*gamma; |z| decays at gamma under the mode flow.
    const FockState plus = FockState({complex_t(1.0, 0.0), complex_t(1.0, 0.0)}).normalized();
    const double t = 1.0 / (1.0 + params.gamma());
    const EvolutionReport rep = evolve(params, plus, t);
    const double m0 = std::abs(std::conj(plus[0]) * plus[1]);
    const double mt = std::abs(std::conj(rep.state[0]) * rep.state[1]);
    const double quantum_rate = std::log(m0 / mt) / t;

    const ModePair z0{complex_t(1.0, 0.0), complex_t(1.0, 0.0)};
    const ModePair zt = mode_flow(params, z0, t);
    const double classical_rate = std::log(std::abs(z0.z) / std::abs(zt.z)) / t;

    const double rate_dev =
        std::max(std::abs(quantum_rate - params.hbar() * params.gamma()),
                 std::abs(quantum_rate - params.hbar() * classical_rate));
    report.checks.push_back(Check::le("first_moment_rate_match", rate_dev, 1e-9));
  }

  // --- tau-picture spectrum ----------------------------------------------------
  {
    double tilde_dev = 0.0;
    if (params.gamma() == 0.0) {
      for (const TildeSpectrumLine& line : tilde_spectrum(params, 8)) {
        const double usual = params.hbar() * params.omega() * (static_cast<double>(line.n) + 0.5);
        tilde_dev = std::max(tilde_dev, std::abs(line.energy - usual) / usual);
      }
    } else {
      // gamma enters only through omega1: a different (omega, gamma) pair with the
      // same omega1 must produce the same ladder.
      const double half_gamma = 0.5 * params.gamma();
      const OscillatorParams sibling(
          std::sqrt(params.omega1() * params.omega1() + half_gamma * half_gamma), half_gamma,
          params.hbar());
      const auto ours = tilde_spectrum(params, 8);
      const auto theirs = tilde_spectrum(sibling, 8);
      for (std::size_t n = 0; n < ours.size(); ++n) {
        tilde_dev = std::max(tilde_dev,
                             std::abs(ours[n].energy - theirs[n].energy) / ours[n].energy);
      }
    }
    report.checks.push_back(Check::le("tilde_spectrum_consistency", tilde_dev, 1e-14));
  }

  // --- driven system ------------------------------------------------------------
  {
    const double horizon = params.gamma() > 0.0 ? 20.0 / params.gamma() : 20.0;
    const double dt = std::min(horizon / 20000.0, 0.5 / params.omega());
    const ClassicalState rest{0.0, 0.0};

    const Trajectory hom = integrate_homogeneous(params, ClassicalState{0.3, -1.1}, 5.0, 1e-3);
    const DrivenTrajectory zero =
        integrate_driven(params, ClassicalState{0.3, -1.1}, ControlSignal::zero(), 5.0, 1e-3);
    double zero_dev = 0.0;
    for (std::size_t i = 0; i < hom.size(); ++i) {
      zero_dev = std::max({zero_dev, std::abs(zero.states[i].x - hom.states[i].x),
                           std::abs(zero.states[i].p - hom.states[i].p)});
    }
    report.checks.push_back(Check::le("driven_zero_reduction", zero_dev, 0.0));

    if (params.gamma() > 0.0) {
      const double force = params.omega() * params.omega();
      const DrivenTrajectory step =
          integrate_driven(params, rest, ControlSignal::constant(force), horizon, dt);
      report.checks.push_back(
          Check::le("driven_steady_state", std::abs(step.states.back().x - 1.0), 1e-6));
    }

    const double omega1 = params.omega1();
    const DrivenTrajectory a =
        integrate_driven(params, rest, ControlSignal::sinusoid(0.75, omega1, 0.0), 10.0, 1e-3);
    const DrivenTrajectory b =
        integrate_driven(params, rest, ControlSignal::sinusoid(1.25, omega1, 0.0), 10.0, 1e-3);
    const DrivenTrajectory ab =
        integrate_driven(params, rest, ControlSignal::sinusoid(2.0, omega1, 0.0), 10.0, 1e-3);
    double superposition_dev = 0.0;
    for (std::size_t i = 0; i < ab.size(); ++i) {
      superposition_dev =
          std::max({superposition_dev, std::abs(a.states[i].x + b.states[i].x - ab.states[i].x),
                    std::abs(a.states[i].p + b.states[i].p - ab.states[i].p)});
    }
    report.checks.push_back(Check::le("driven_superposition", superposition_dev, 1e-9));

    const ControlSignal wave = ControlSignal::sinusoid(1.5, 2.0, 0.3);
    const ClassicalState start{0.2, 1.0};
    const DrivenTrajectory coarse = integrate_driven(params, start, wave, 4.0, 0.04);
    const DrivenTrajectory fine = integrate_driven(params, start, wave, 4.0, 0.02);
    const DrivenTrajectory reference = integrate_driven(params, start, wave, 4.0, 0.005);
    double err_coarse = 0.0;
    double err_fine = 0.0;
    for (std::size_t i = 0; i < coarse.size() && 8 * i < reference.size(); ++i) {
      err_coarse =
          std::max(err_coarse, std::abs(coarse.states[i].x - reference.states[8 * i].x));
      err_fine = std::max(err_fine, std::abs(fine.states[2 * i].x - reference.states[8 * i].x));
    }
    report.checks.push_back(Check::ge("driven_convergence_ratio",
                                      err_fine > 0.0 ? err_coarse / err_fine : 16.0, 8.0));
  }

  return report;
}

}  // namespace dho
