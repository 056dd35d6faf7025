#pragma once

#include <complex>
#include <random>
#include <vector>

#include "dho/oscillator.hpp"
#include "dho/quantum_evolution.hpp"

namespace testutil {

inline std::mt19937_64 make_rng(std::uint64_t seed = 0xdeadbeefULL) {
  return std::mt19937_64(seed);
}

/// Random underdamped parameters with gamma bounded away from 0 unless asked for.
inline dho::OscillatorParams random_params(std::mt19937_64& rng, double hbar = 1.0,
                                           double min_ratio = 0.05, double max_ratio = 0.999) {
  std::uniform_real_distribution<double> omega_dist(0.5, 8.0);
  std::uniform_real_distribution<double> ratio_dist(min_ratio, max_ratio);
  const double omega = omega_dist(rng);
  return dho::OscillatorParams(omega, ratio_dist(rng) * omega, hbar);
}

inline dho::ClassicalState random_state(std::mt19937_64& rng, double span = 3.0) {
  std::uniform_real_distribution<double> dist(-span, span);
  return dho::ClassicalState{dist(rng), dist(rng)};
}

inline dho::FockState random_fock(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<dho::complex_t> amps(dim);
  for (auto& a : amps) {
    a = dho::complex_t(gauss(rng), gauss(rng));
  }
  return dho::FockState(std::move(amps)).normalized();
}

}  // namespace testutil
