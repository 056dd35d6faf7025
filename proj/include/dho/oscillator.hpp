#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dho {

using complex_t = std::complex<double>;

/// Physical constants of the unit-mass damped oscillator x'' + 2*gamma*x' + omega^2*x = 0.
/// Only the underdamped regime omega > gamma is representable; gamma == omega and
/// gamma > omega are rejected at construction with distinct diagnostics.
class OscillatorParams {
public:
  OscillatorParams(double omega, double gamma, double hbar = 1.0)
      : omega_(omega), gamma_(gamma), hbar_(hbar) {
    if (!std::isfinite(omega) || !std::isfinite(gamma) || !std::isfinite(hbar)) {
      throw std::invalid_argument("OscillatorParams: omega, gamma, hbar must be finite");
    }
    if (omega <= 0.0) {
      throw std::invalid_argument("OscillatorParams: omega must be > 0");
    }
    if (gamma < 0.0) {
      throw std::invalid_argument("OscillatorParams: gamma must be >= 0");
    }
    if (hbar <= 0.0) {
      throw std::invalid_argument("OscillatorParams: hbar must be > 0");
    }
    if (gamma == omega) {
      throw std::invalid_argument(
          "OscillatorParams: critically damped case gamma == omega is not supported");
    }
    if (gamma > omega) {
      throw std::invalid_argument(
          "OscillatorParams: overdamped case gamma > omega is not supported (need omega > gamma)");
    }
    omega1_ = std::sqrt(omega * omega - gamma * gamma);
  }

  double omega() const { return omega_; }
  double gamma() const { return gamma_; }
  double hbar() const { return hbar_; }

  /// Reduced frequency omega1 = sqrt(omega^2 - gamma^2), real and positive by construction.
  double omega1() const { return omega1_; }

private:
  double omega_;
  double gamma_;
  double hbar_;
  double omega1_;
};

/// Phase-space point (position, momentum) of the unit-mass oscillator.
struct ClassicalState {
  double x = 0.0;
  double p = 0.0;
};

/// Solution parameters of x(t) = A exp(-gamma t) sin(omega1 t + theta).
struct AmplitudePhase {
  double amplitude = 0.0;        // A >= 0
  double phase = 0.0;            // theta in [0, 2*pi)
};

/// Sampled classical trajectory; times strictly increasing, one state per time.
struct Trajectory {
  std::vector<double> times;
  std::vector<ClassicalState> states;

  std::size_t size() const { return times.size(); }
};

inline double derived_frequency(const OscillatorParams& params) { return params.omega1(); }

/// Closed-form solution of the homogeneous equation:
///   x(t) = A e^{-gamma t} sin(omega1 t + theta)
///   p(t) = A e^{-gamma t} (-gamma sin(omega1 t + theta) + omega1 cos(omega1 t + theta))
inline ClassicalState analytic_solution(const OscillatorParams& params, const AmplitudePhase& ap,
                                        double t) {
  if (!std::isfinite(t)) {
    throw std::invalid_argument("analytic_solution: t must be finite");
  }
  const double envelope = ap.amplitude * std::exp(-params.gamma() * t);
  const double angle = params.omega1() * t + ap.phase;
  const double s = std::sin(angle);
  const double c = std::cos(angle);
  return ClassicalState{envelope * s,
                        envelope * (-params.gamma() * s + params.omega1() * c)};
}

/// Inverts the t = 0 equations x = A sin(theta), p = A (omega1 cos(theta) - gamma sin(theta)).
/// Convention: A = 0 maps to theta = 0; theta is normalized into [0, 2*pi).
inline AmplitudePhase amplitude_phase_from_state(const OscillatorParams& params,
                                                 const ClassicalState& s0) {
  if (!std::isfinite(s0.x) || !std::isfinite(s0.p)) {
    throw std::invalid_argument("amplitude_phase_from_state: state must be finite");
  }
  // A sin(theta) = x, A cos(theta) = (p + gamma x)/omega1.
  const double a_sin = s0.x;
  const double a_cos = (s0.p + params.gamma() * s0.x) / params.omega1();
  const double amplitude = std::hypot(a_sin, a_cos);
  if (amplitude == 0.0) {
    return AmplitudePhase{0.0, 0.0};
  }
  double phase = std::atan2(a_sin, a_cos);
  if (phase < 0.0) {
    phase += 2.0 * std::numbers::pi;
  }
  if (phase >= 2.0 * std::numbers::pi) {
    phase = 0.0;
  }
  return AmplitudePhase{amplitude, phase};
}

namespace detail {

inline void validate_stepping(double t_end, double dt, const char* where) {
  if (!std::isfinite(t_end) || t_end <= 0.0) {
    throw std::invalid_argument(std::string(where) + ": t_end must be finite and > 0");
  }
  if (!std::isfinite(dt) || dt <= 0.0) {
    throw std::invalid_argument(std::string(where) + ": dt must be finite and > 0");
  }
  if (dt > t_end) {
    throw std::invalid_argument(std::string(where) + ": dt must not exceed t_end");
  }
}

/// Integration grid 0, dt, 2*dt, ... with the last step shortened to land exactly on
/// t_end. Extra points (e.g. control-signal breakpoints) inside (0, t_end) are merged
/// in so that no step straddles them.
inline std::vector<double> time_grid(double t_end, double dt, std::span<const double> extra = {}) {
  std::vector<double> grid;
  grid.push_back(0.0);
  for (std::size_t k = 1; static_cast<double>(k) * dt < t_end; ++k) {
    const double t = static_cast<double>(k) * dt;
    if (t > grid.back()) {
      grid.push_back(t);
    }
  }
  grid.push_back(t_end);
  if (!extra.empty()) {
    std::vector<double> merged;
    merged.reserve(grid.size() + extra.size());
    std::size_t gi = 0;
    std::size_t ei = 0;
    while (gi < grid.size() || ei < extra.size()) {
      const bool pick_extra =
          gi == grid.size() || (ei < extra.size() && extra[ei] <= grid[gi]);
      const double value = pick_extra ? extra[ei] : grid[gi];
      if (pick_extra) {
        ++ei;
        if (value <= 0.0 || value >= t_end) continue;  // endpoints are grid points already
      } else {
        ++gi;
      }
      if (merged.empty() || value > merged.back()) {
        merged.push_back(value);
      }
    }
    grid = std::move(merged);
  }
  return grid;
}

/// Classical fixed-step RK4 for dX/dt = A X + f(t) (0, 1)^T with
/// A = [[0, 1], [-omega^2, -2*gamma]]. The homogeneous integrator and the driven
/// integrator share this routine so that a zero drive reproduces the homogeneous
/// result bit for bit.
template <typename DriveFn>
Trajectory rk4_integrate(const OscillatorParams& params, const ClassicalState& s0, double t_end,
                         double dt, DriveFn&& drive, std::span<const double> breakpoints = {}) {
  if (!std::isfinite(s0.x) || !std::isfinite(s0.p)) {
    throw std::invalid_argument("rk4_integrate: initial state must be finite");
  }
  const double omega_sq = params.omega() * params.omega();
  const double two_gamma = 2.0 * params.gamma();
  const auto deriv = [&](double t, double x, double p, double& dx, double& dp) {
    dx = p;
    dp = -omega_sq * x - two_gamma * p + drive(t);
  };

  Trajectory traj;
  traj.times = time_grid(t_end, dt, breakpoints);
  traj.states.reserve(traj.times.size());
  ClassicalState s = s0;
  traj.states.push_back(s);
  for (std::size_t i = 1; i < traj.times.size(); ++i) {
    const double t = traj.times[i - 1];
    const double h = traj.times[i] - traj.times[i - 1];
    double k1x, k1p, k2x, k2p, k3x, k3p, k4x, k4p;
    deriv(t, s.x, s.p, k1x, k1p);
    deriv(t + 0.5 * h, s.x + 0.5 * h * k1x, s.p + 0.5 * h * k1p, k2x, k2p);
    deriv(t + 0.5 * h, s.x + 0.5 * h * k2x, s.p + 0.5 * h * k2p, k3x, k3p);
    deriv(t + h, s.x + h * k3x, s.p + h * k3p, k4x, k4p);
    s.x += (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    s.p += (h / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    traj.states.push_back(s);
  }
  return traj;
}

}  // namespace detail

/// Fixed-step RK4 trajectory of the homogeneous system from t = 0 to t_end.
inline Trajectory integrate_homogeneous(const OscillatorParams& params, const ClassicalState& s0,
                                        double t_end, double dt) {
  detail::validate_stepping(t_end, dt, "integrate_homogeneous");
  return detail::rk4_integrate(params, s0, t_end, dt, [](double) { return 0.0; });
}

}  // namespace dho
