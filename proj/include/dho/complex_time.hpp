#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "dho/mode_transform.hpp"
#include "dho/quantum_evolution.hpp"

namespace dho {

/// The reparametrized time tau = (1 - i*gamma/omega1) t. Its real part is exactly
/// the physical time t; the imaginary part -(gamma/omega1) t is what turns the
/// damped dynamics into an undamped oscillator in tau.
struct ComplexTime {
  complex_t tau;
  double t;

  complex_t tau_conj() const { return std::conj(tau); }
};

inline ComplexTime complex_time_of(const OscillatorParams& params, double t) {
  if (!std::isfinite(t)) {
    throw std::invalid_argument("complex_time_of: t must be finite");
  }
  if (t < 0.0) {
    throw std::invalid_argument("complex_time_of: t < 0 is not supported (forward evolution only)");
  }
  const double slope = params.gamma() / params.omega1();
  return ComplexTime{complex_t(t, 0.0 - slope * t), t};
}

/// Real eigenvalue hbar*omega1*(n + 1/2) of the tau-picture Hamiltonian.
struct TildeSpectrumLine {
  std::size_t n;
  double energy;
};

inline std::vector<TildeSpectrumLine> tilde_spectrum(const OscillatorParams& params,
                                                     std::size_t n_max) {
  std::vector<TildeSpectrumLine> lines;
  lines.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    lines.push_back(
        TildeSpectrumLine{n, params.hbar() * params.omega1() * (static_cast<double>(n) + 0.5)});
  }
  return lines;
}

/// Mode flow in the tau picture: z(tau) = e^{-i omega1 tau} z(0) and
/// z*(tau*) = e^{+i omega1 tau*} z*(0). Algebraically identical to mode_flow since
/// -i omega1 tau = lambda- t.
inline ModePair mode_flow_tau(const OscillatorParams& params, const ModePair& m0, double t) {
  const ComplexTime ct = complex_time_of(params, t);
  const complex_t exponent = complex_t(0.0, -params.omega1()) * ct.tau;
  const complex_t exponent_conj = complex_t(0.0, params.omega1()) * ct.tau_conj();
  return ModePair{std::exp(exponent) * m0.z, std::exp(exponent_conj) * m0.z_conj};
}

/// "Time" evolution under the real Hamiltonian with complex tau:
///   psi_n(tau) = e^{-i t hbar omega/2} e^{-i tau hbar omega1 n} psi_n.
/// The ground phase uses the real time t: the ground-state energy stays
/// gamma-independent in this picture too. Coefficient-wise this equals evolve().
inline EvolutionReport evolve_tau(const OscillatorParams& params, const FockState& psi0,
                                  double t) {
  const ComplexTime ct = complex_time_of(params, t);
  const complex_t global = detail::ground_phase(params, t);
  std::vector<complex_t> amps;
  amps.reserve(psi0.dim());
  for (std::size_t n = 0; n < psi0.dim(); ++n) {
    const double level_energy = params.hbar() * params.omega1() * static_cast<double>(n);
    const complex_t exponent = complex_t(0.0, -1.0) * ct.tau * level_energy;
    amps.push_back(global * std::exp(exponent) * psi0[n]);
  }
  FockState state(std::move(amps));
  const double norm_sq = state.norm_sq();
  const complex_t overlap = state[0];
  return EvolutionReport{t, std::move(state), norm_sq, overlap};
}

/// One row of the two-picture comparison: the complex-Hamiltonian evolution and the
/// complex-time evolution at the same t, reduced to their max per-coefficient
/// distance. Disagreement is data, not an exception.
struct PictureDeviation {
  double t;
  double max_deviation;
  bool pass;
};

inline constexpr double kPictureEquivalenceTolerance = 1e-12;

inline std::vector<PictureDeviation> picture_equivalence_report(const OscillatorParams& params,
                                                                const FockState& psi0,
                                                                std::span<const double> times) {
  std::vector<PictureDeviation> rows;
  rows.reserve(times.size());
  for (const double t : times) {
    const EvolutionReport complex_h = evolve(params, psi0, t);
    const EvolutionReport complex_tau = evolve_tau(params, psi0, t);
    const double dev = max_coefficient_deviation(complex_h.state, complex_tau.state);
    rows.push_back(PictureDeviation{t, dev, dev <= kPictureEquivalenceTolerance});
  }
  return rows;
}

}  // namespace dho
