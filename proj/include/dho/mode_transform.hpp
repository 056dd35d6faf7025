#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "dho/oscillator.hpp"

namespace dho {

/// 2x2 complex matrix, row-major. Everything in this library is closed form at
/// size 2, so no general linear-algebra machinery is used.
struct Mat2c {
  complex_t m00, m01, m10, m11;

  friend Mat2c operator*(const Mat2c& a, const Mat2c& b) {
    return Mat2c{a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
                 a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
  }

  complex_t det() const { return m00 * m11 - m01 * m10; }

  static Mat2c identity() { return Mat2c{1.0, 0.0, 0.0, 1.0}; }

  static Mat2c diagonal(complex_t d0, complex_t d1) { return Mat2c{d0, 0.0, 0.0, d1}; }
};

/// Entrywise max absolute difference.
inline double max_abs_diff(const Mat2c& a, const Mat2c& b) {
  double m = std::abs(a.m00 - b.m00);
  m = std::max(m, std::abs(a.m01 - b.m01));
  m = std::max(m, std::abs(a.m10 - b.m10));
  m = std::max(m, std::abs(a.m11 - b.m11));
  return m;
}

/// Companion matrix A = [[0, 1], [-omega^2, -2*gamma]] of the first-order form
/// d/dt (x, p)^T = A (x, p)^T.
inline Mat2c companion_matrix(const OscillatorParams& params) {
  return Mat2c{0.0, 1.0, -params.omega() * params.omega(), -2.0 * params.gamma()};
}

/// Eigenvalues of the companion matrix: a conjugate pair with real part -gamma and
/// imaginary parts -/+ omega1.
struct EigenData {
  complex_t lambda_minus;
  complex_t lambda_plus;
  double omega1;
};

inline EigenData eigen_data(const OscillatorParams& params) {
  const double w1 = params.omega1();
  return EigenData{complex_t(-params.gamma(), -w1), complex_t(-params.gamma(), w1), w1};
}

/// Diagonalizing matrix U and its inverse:
///   U     = (1/sqrt(2*omega1)) [[1, 1], [lambda-, lambda+]]
///   U^-1  = (-i/sqrt(2*omega1)) [[lambda+, -1], [-lambda-, 1]]
/// so that A = U diag(lambda-, lambda+) U^-1.
struct TransformPair {
  Mat2c forward;   // U
  Mat2c inverse;   // U^-1
};

inline TransformPair transform_pair(const OscillatorParams& params) {
  const EigenData eig = eigen_data(params);
  const double scale = 1.0 / std::sqrt(2.0 * eig.omega1);
  const complex_t neg_i_scale = complex_t(0.0, -scale);
  Mat2c forward{scale, scale, scale * eig.lambda_minus, scale * eig.lambda_plus};
  Mat2c inverse{neg_i_scale * eig.lambda_plus, -neg_i_scale, -neg_i_scale * eig.lambda_minus,
                neg_i_scale};
  return TransformPair{forward, inverse};
}

/// Complex mode amplitude z and its conjugate partner:
///   z  = (omega1 x + i(p + gamma x)) / sqrt(2*omega1)
/// i.e. (z, z*)^T = U^-1 (x, p)^T. For real phase-space input, z_conj = conj(z).
struct ModePair {
  complex_t z;
  complex_t z_conj;
};

inline ModePair to_modes(const OscillatorParams& params, const ClassicalState& s) {
  const double w1 = params.omega1();
  const double scale = 1.0 / std::sqrt(2.0 * w1);
  const double re = scale * (w1 * s.x);
  const double im = scale * (s.p + params.gamma() * s.x);
  return ModePair{complex_t(re, im), complex_t(re, -im)};
}

/// Applies U to the mode vector and returns the (real) phase-space point.
/// Imaginary residues are discarded; a pair with |z_conj - conj(z)| > 1e-9 is
/// rejected as inconsistent.
inline ClassicalState from_modes(const OscillatorParams& params, const ModePair& m) {
  if (std::abs(m.z_conj - std::conj(m.z)) > 1e-9) {
    throw std::invalid_argument("from_modes: inconsistent mode pair (z_conj != conj(z))");
  }
  const EigenData eig = eigen_data(params);
  const double scale = 1.0 / std::sqrt(2.0 * eig.omega1);
  const complex_t x = scale * (m.z + m.z_conj);
  const complex_t p = scale * (eig.lambda_minus * m.z + eig.lambda_plus * m.z_conj);
  return ClassicalState{x.real(), p.real()};
}

/// Exact mode flow z(t) = e^{lambda- t} z(0), z*(t) = e^{lambda+ t} z*(0).
inline ModePair mode_flow(const OscillatorParams& params, const ModePair& m0, double t) {
  if (!std::isfinite(t)) {
    throw std::invalid_argument("mode_flow: t must be finite");
  }
  const EigenData eig = eigen_data(params);
  return ModePair{std::exp(eig.lambda_minus * t) * m0.z,
                  std::exp(eig.lambda_plus * t) * m0.z_conj};
}

/// Evaluates {z*, z} = (dz*/dx)(dz/dp) - (dz/dx)(dz*/dp) from the constant partial
/// derivatives of the mode transform. The canonical structure gives exactly i.
inline complex_t poisson_bracket_check(const OscillatorParams& params) {
  const double w1 = params.omega1();
  const double scale = 1.0 / std::sqrt(2.0 * w1);
  const complex_t dz_dx = scale * complex_t(w1, params.gamma());
  const complex_t dz_dp = scale * complex_t(0.0, 1.0);
  const complex_t dzc_dx = std::conj(dz_dx);
  const complex_t dzc_dp = std::conj(dz_dp);
  return dzc_dx * dz_dp - dz_dx * dzc_dp;
}

}  // namespace dho
