#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "dho/oscillator.hpp"

namespace dho {

/// One complex energy level E_n = hbar*(omega1 - i*gamma)*n + hbar*omega/2.
/// The ground level is purely real; imag(E_n) = -hbar*gamma*n for n >= 1.
struct SpectrumLine {
  std::size_t n;
  complex_t energy;
};

inline std::vector<SpectrumLine> spectrum(const OscillatorParams& params, std::size_t n_max) {
  std::vector<SpectrumLine> lines;
  lines.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    const double level = static_cast<double>(n);
    const double re = params.hbar() * params.omega1() * level + 0.5 * params.hbar() * params.omega();
    const double im = 0.0 - params.hbar() * params.gamma() * level;
    lines.push_back(SpectrumLine{n, complex_t(re, im)});
  }
  return lines;
}

/// The uncorrected levels hbar*(omega1 - i*gamma)*(n + 1/2) that drop out of the
/// quantized Hamiltonian before the ground-state energy is pinned to hbar*omega/2.
/// Non-physical; kept so the correction can be exhibited in tests and output.
inline std::vector<SpectrumLine> naive_spectrum(const OscillatorParams& params,
                                                std::size_t n_max) {
  std::vector<SpectrumLine> lines;
  lines.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    const double half_level = static_cast<double>(n) + 0.5;
    const double re = params.hbar() * params.omega1() * half_level;
    const double im = 0.0 - params.hbar() * params.gamma() * half_level;
    lines.push_back(SpectrumLine{n, complex_t(re, im)});
  }
  return lines;
}

/// Truncated number-basis state psi_0 ... psi_{N-1}. The evolution is diagonal in
/// this basis, so the truncation is exact for states supported below N. Values are
/// immutable after construction.
class FockState {
public:
  explicit FockState(std::vector<complex_t> amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.empty()) {
      throw std::invalid_argument("FockState: dimension must be >= 1");
    }
    for (const complex_t& a : amplitudes_) {
      if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
        throw std::invalid_argument("FockState: amplitudes must be finite");
      }
    }
  }

  /// Basis state |n> in a dim-dimensional truncation.
  static FockState basis(std::size_t dim, std::size_t n) {
    if (n >= dim) {
      throw std::invalid_argument("FockState::basis: level index out of range");
    }
    std::vector<complex_t> amps(dim, complex_t(0.0, 0.0));
    amps[n] = complex_t(1.0, 0.0);
    return FockState(std::move(amps));
  }

  std::size_t dim() const { return amplitudes_.size(); }
  const std::vector<complex_t>& amplitudes() const { return amplitudes_; }
  const complex_t& operator[](std::size_t n) const { return amplitudes_[n]; }

  double norm_sq() const {
    double sum = 0.0;
    for (const complex_t& a : amplitudes_) {
      sum += std::norm(a);
    }
    return sum;
  }

  /// Unit-norm copy. Throws for the zero vector.
  FockState normalized() const {
    const double n2 = norm_sq();
    if (n2 <= 0.0) {
      throw std::invalid_argument("FockState::normalized: zero state cannot be normalized");
    }
    const double scale = 1.0 / std::sqrt(n2);
    std::vector<complex_t> amps = amplitudes_;
    for (complex_t& a : amps) {
      a *= scale;
    }
    return FockState(std::move(amps));
  }

private:
  std::vector<complex_t> amplitudes_;
};

/// Max per-coefficient distance between two states of equal truncation.
inline double max_coefficient_deviation(const FockState& a, const FockState& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("max_coefficient_deviation: mixed truncation dimensions");
  }
  double dev = 0.0;
  for (std::size_t n = 0; n < a.dim(); ++n) {
    dev = std::max(dev, std::abs(a[n] - b[n]));
  }
  return dev;
}

/// Evolved state plus the diagnostics the evolution makes interesting: the decayed
/// norm and the surviving ground-state coefficient.
struct EvolutionReport {
  double time;
  FockState state;
  double norm_sq;
  complex_t ground_overlap;
};

namespace detail {

/// Global ground-state phase e^{-i t hbar omega / 2}; both evolution pictures carry
/// it with the real time t.
inline complex_t ground_phase(const OscillatorParams& params, double t) {
  const double angle = t * (params.hbar() * params.omega() * 0.5);
  return complex_t(std::cos(angle), -std::sin(angle));
}

}  // namespace detail

/// Non-unitary time evolution, diagonal in the number basis:
///   psi_n(t) = e^{-i t hbar omega/2} e^{-t hbar gamma n} e^{-i t hbar omega1 n} psi_n.
/// Evolved states are not renormalized; the norm decay is the physics. Forward
/// evolution only: t < 0 would amplify the truncation tail and is rejected.
inline EvolutionReport evolve(const OscillatorParams& params, const FockState& psi0, double t) {
  if (!std::isfinite(t)) {
    throw std::invalid_argument("evolve: t must be finite");
  }
  if (t < 0.0) {
    throw std::invalid_argument("evolve: backward evolution (t < 0) is not supported");
  }
  const complex_t global = detail::ground_phase(params, t);
  std::vector<complex_t> amps;
  amps.reserve(psi0.dim());
  for (std::size_t n = 0; n < psi0.dim(); ++n) {
    const double level = static_cast<double>(n);
    const double decay = std::exp(-(t * (params.hbar() * params.gamma() * level)));
    const double angle = t * (params.hbar() * params.omega1() * level);
    const complex_t rotation(std::cos(angle), -std::sin(angle));
    amps.push_back(global * (decay * rotation) * psi0[n]);
  }
  FockState state(std::move(amps));
  const double norm_sq = state.norm_sq();
  const complex_t overlap = state[0];
  return EvolutionReport{t, std::move(state), norm_sq, overlap};
}

/// Predicted t -> infinity limit coefficient e^{-i t hbar omega/2} psi_0: every state
/// settles onto the ground state, the only level whose modulus survives. Requires
/// gamma > 0 (nothing settles in the unitary limit).
inline complex_t asymptotic_state(const OscillatorParams& params, const FockState& psi0,
                                  double t) {
  if (params.gamma() == 0.0) {
    throw std::domain_error("asymptotic_state: gamma = 0 has no settling limit");
  }
  if (!std::isfinite(t) || t < 0.0) {
    throw std::invalid_argument("asymptotic_state: t must be finite and >= 0");
  }
  return detail::ground_phase(params, t) * psi0[0];
}

/// <n> under the normalized evolved state. Monotonically non-increasing in t for
/// gamma > 0. Fails once the state is numerically extinct.
inline double number_expectation(const EvolutionReport& report) {
  if (report.norm_sq < 1e-300) {
    throw std::domain_error("number_expectation: state norm underflowed (numerically extinct)");
  }
  double weighted = 0.0;
  for (std::size_t n = 0; n < report.state.dim(); ++n) {
    weighted += static_cast<double>(n) * std::norm(report.state[n]);
  }
  return weighted / report.norm_sq;
}

}  // namespace dho
