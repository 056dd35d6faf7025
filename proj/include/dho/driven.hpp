#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dho/oscillator.hpp"

namespace dho {

/// Outer control field f(t) entering x'' + 2*gamma*x' + omega^2*x = f(t).
/// Piecewise-constant signals latch the new level at the breakpoint itself
/// (f(t) = level of the last breakpoint <= t, 0 before the first one); RK4
/// sub-stage times follow the same rule.
class ControlSignal {
public:
  enum class Kind { Zero, Constant, Sinusoid, PiecewiseConstant };

  static ControlSignal zero() { return ControlSignal(Kind::Zero); }

  static ControlSignal constant(double level) {
    require_finite(level, "constant level");
    ControlSignal s(Kind::Constant);
    s.constant_level_ = level;
    return s;
  }

  /// amplitude * sin(angular_frequency * t + phase)
  static ControlSignal sinusoid(double amplitude, double angular_frequency, double phase) {
    require_finite(amplitude, "sinusoid amplitude");
    require_finite(angular_frequency, "sinusoid frequency");
    require_finite(phase, "sinusoid phase");
    ControlSignal s(Kind::Sinusoid);
    s.amplitude_ = amplitude;
    s.angular_frequency_ = angular_frequency;
    s.phase_ = phase;
    return s;
  }

  static ControlSignal piecewise_constant(std::vector<double> breakpoints,
                                          std::vector<double> levels) {
    if (breakpoints.empty() || breakpoints.size() != levels.size()) {
      throw std::invalid_argument(
          "ControlSignal: piecewise signal needs matching, non-empty breakpoints and levels");
    }
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
      require_finite(breakpoints[i], "piecewise breakpoint");
      require_finite(levels[i], "piecewise level");
      if (i > 0 && breakpoints[i] <= breakpoints[i - 1]) {
        throw std::invalid_argument(
            "ControlSignal: piecewise breakpoints must be strictly increasing");
      }
    }
    ControlSignal s(Kind::PiecewiseConstant);
    s.breakpoints_ = std::move(breakpoints);
    s.levels_ = std::move(levels);
    return s;
  }

  Kind kind() const { return kind_; }

  double operator()(double t) const {
    switch (kind_) {
      case Kind::Zero:
        return 0.0;
      case Kind::Constant:
        return constant_level_;
      case Kind::Sinusoid:
        return amplitude_ * std::sin(angular_frequency_ * t + phase_);
      case Kind::PiecewiseConstant: {
        // Last breakpoint <= t wins; before the first breakpoint the signal is off.
        auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
        if (it == breakpoints_.begin()) {
          return 0.0;
        }
        return levels_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
      }
    }
    return 0.0;
  }

  const std::vector<double>& breakpoints() const { return breakpoints_; }

private:
  explicit ControlSignal(Kind kind) : kind_(kind) {}

  static void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument(std::string("ControlSignal: ") + what + " must be finite");
    }
  }

  Kind kind_;
  double constant_level_ = 0.0;
  double amplitude_ = 0.0;
  double angular_frequency_ = 0.0;
  double phase_ = 0.0;
  std::vector<double> breakpoints_;
  std::vector<double> levels_;
};

/// Trajectory of the driven system together with the drive samples f(t_i).
struct DrivenTrajectory {
  std::vector<double> times;
  std::vector<ClassicalState> states;
  std::vector<double> drive;

  std::size_t size() const { return times.size(); }
};

/// RK4 integration of the affine system dX/dt = A X + f(t) (0, 1)^T. Steps are
/// aligned so piecewise breakpoints fall on grid boundaries; with f == 0 the result
/// matches integrate_homogeneous bit for bit (same stepping, same arithmetic).
inline DrivenTrajectory integrate_driven(const OscillatorParams& params, const ClassicalState& s0,
                                         const ControlSignal& f, double t_end, double dt) {
  detail::validate_stepping(t_end, dt, "integrate_driven");
  Trajectory base = detail::rk4_integrate(params, s0, t_end, dt, [&f](double t) { return f(t); },
                                          f.breakpoints());
  DrivenTrajectory traj;
  traj.drive.reserve(base.times.size());
  for (const double t : base.times) {
    traj.drive.push_back(f(t));
  }
  traj.times = std::move(base.times);
  traj.states = std::move(base.states);
  return traj;
}

/// Control-engineering summary of a trajectory: grid peak of |x|, the first grid
/// time after which x stays inside the 1% band around x(t_end), and the final state.
struct ResponseMetrics {
  double peak_abs_x;
  std::optional<double> settling_time;
  ClassicalState terminal;
};

inline ResponseMetrics response_metrics(const DrivenTrajectory& traj) {
  if (traj.times.empty()) {
    throw std::invalid_argument("response_metrics: empty trajectory");
  }
  const double x_end = traj.states.back().x;
  const double band = 0.01 * std::max(std::abs(x_end), 1e-9);
  double peak = 0.0;
  for (const ClassicalState& s : traj.states) {
    peak = std::max(peak, std::abs(s.x));
  }
  std::optional<double> settling;
  for (std::size_t k = traj.states.size(); k-- > 0;) {
    if (std::abs(traj.states[k].x - x_end) > band) {
      break;
    }
    settling = traj.times[k];
  }
  return ResponseMetrics{peak, settling, traj.states.back()};
}

}  // namespace dho
