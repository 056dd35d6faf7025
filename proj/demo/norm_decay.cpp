// Evolves (|0> + |1>)/sqrt(2) under the complex Hamiltonian and prints how the
// norm decays onto the ground state, next to the closed-form prediction.

#include <cmath>
#include <cstdio>

#include "dho/dho.hpp"

int main() {
  const dho::OscillatorParams params(5.0, 3.0);
  const dho::FockState psi = dho::FockState(
      {dho::complex_t(1.0, 0.0), dho::complex_t(1.0, 0.0)}).normalized();

  std::printf("levels E_n = hbar*(omega1 - i*gamma)*n + hbar*omega/2:\n");
  for (const dho::SpectrumLine& line : dho::spectrum(params, 3)) {
    std::printf("  n=%zu  E = %+.4f %+.4fi\n", line.n, line.energy.real(), line.energy.imag());
  }

  std::printf("\n%8s %14s %14s %12s\n", "t", "norm_sq", "closed form", "<n>");
  for (double t = 0.0; t <= 2.0 + 1e-9; t += 0.25) {
    const dho::EvolutionReport report = dho::evolve(params, psi, t);
    const double predicted = 0.5 * (1.0 + std::exp(-2.0 * params.gamma() * t));
    std::printf("%8.2f %14.10f %14.10f %12.8f\n", t, report.norm_sq, predicted,
                dho::number_expectation(report));
  }
  return 0;
}
