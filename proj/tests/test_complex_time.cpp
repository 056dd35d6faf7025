#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "dho/complex_time.hpp"
#include "test_util.hpp"

using dho::complex_t;
using dho::ComplexTime;
using dho::FockState;
using dho::ModePair;
using dho::OscillatorParams;

TEST_CASE("complex time tau = (1 - i gamma/omega1) t", "[tau]") {
  SECTION("reference value omega=5 gamma=3 t=2") {
    const ComplexTime ct = dho::complex_time_of(OscillatorParams(5.0, 3.0), 2.0);
    CHECK(ct.tau == complex_t(2.0, -1.5));
    CHECK(ct.t == 2.0);
    CHECK(ct.tau_conj() == complex_t(2.0, 1.5));
  }

  SECTION("undamped time stays real") {
    const ComplexTime ct = dho::complex_time_of(OscillatorParams(1.0, 0.0), 3.7);
    CHECK(ct.tau == complex_t(3.7, 0.0));
  }

  SECTION("t = 0 maps to tau = 0") {
    const ComplexTime ct = dho::complex_time_of(OscillatorParams(5.0, 3.0), 0.0);
    CHECK(ct.tau == complex_t(0.0, 0.0));
  }

  SECTION("construction-level invariants: Re tau = t exactly, Im tau <= 0") {
    auto rng = testutil::make_rng(41);
    std::uniform_real_distribution<double> t_dist(0.0, 50.0);
    for (int i = 0; i < 200; ++i) {
      const OscillatorParams params = testutil::random_params(rng, 1.0, 0.0, 0.999);
      const double t = t_dist(rng);
      const ComplexTime ct = dho::complex_time_of(params, t);
      CHECK(ct.tau.real() == t);
      CHECK(ct.tau.imag() <= 0.0);
    }
  }

  SECTION("negative time is rejected") {
    CHECK_THROWS_AS(dho::complex_time_of(OscillatorParams(5.0, 3.0), -0.1),
                    std::invalid_argument);
    CHECK_THROWS_AS(dho::complex_time_of(OscillatorParams(5.0, 3.0), std::nan("")),
                    std::invalid_argument);
  }
}

TEST_CASE("tau-picture spectrum hbar omega1 (n + 1/2)", "[tau]") {
  SECTION("gamma enters only through omega1") {
    const auto lines = dho::tilde_spectrum(OscillatorParams(5.0, 3.0), 4);
    for (const auto& line : lines) {
      CHECK(line.energy == 4.0 * (static_cast<double>(line.n) + 0.5));
    }
    for (std::size_t n = 1; n < lines.size(); ++n) {
      CHECK(lines[n].energy > lines[n - 1].energy);
    }
  }

  SECTION("gamma = 0 reduces to the usual (n + 1/2) hbar omega") {
    auto rng = testutil::make_rng(42);
    std::uniform_real_distribution<double> omega_dist(0.5, 8.0);
    for (int i = 0; i < 50; ++i) {
      const double omega = omega_dist(rng);
      const auto lines = dho::tilde_spectrum(OscillatorParams(omega, 0.0), 6);
      for (const auto& line : lines) {
        const double usual = omega * (static_cast<double>(line.n) + 0.5);
        CHECK(std::abs(line.energy - usual) <= 1e-15 * usual);
      }
    }
  }
}

TEST_CASE("mode flow in tau equals mode flow in t", "[tau]") {
  SECTION("identity at t = 0") {
    const ModePair m0{complex_t(0.3, 0.8), complex_t(0.3, -0.8)};
    const ModePair m = dho::mode_flow_tau(OscillatorParams(5.0, 3.0), m0, 0.0);
    CHECK(m.z == m0.z);
    CHECK(m.z_conj == m0.z_conj);
  }

  SECTION("reference value: e^{-4i(1 - 0.75i)} = e^{-3-4i}") {
    const ModePair m = dho::mode_flow_tau(OscillatorParams(5.0, 3.0),
                                          ModePair{complex_t(1.0), complex_t(1.0)}, 1.0);
    const complex_t expected = std::exp(complex_t(-3.0, -4.0));
    CHECK(std::abs(m.z - expected) < 1e-14);
  }

  SECTION("equivalence for randomized inputs") {
    auto rng = testutil::make_rng(43);
    for (int i = 0; i < 100; ++i) {
      const OscillatorParams params = testutil::random_params(rng, 1.0, 0.05, 0.999);
      const ModePair m0 = dho::to_modes(params, testutil::random_state(rng));
      const double horizon = 10.0 / params.gamma();
      for (int j = 0; j <= 8; ++j) {
        const double t = horizon * j / 8.0;
        const ModePair via_t = dho::mode_flow(params, m0, t);
        const ModePair via_tau = dho::mode_flow_tau(params, m0, t);
        CHECK(std::abs(via_t.z - via_tau.z) < 1e-12);
        CHECK(std::abs(via_t.z_conj - via_tau.z_conj) < 1e-12);
      }
    }
  }
}

TEST_CASE("algebraic identity e^{-i tau hbar omega1 n} = e^{-i t hbar (omega1 - i gamma) n}",
          "[tau]") {
  auto rng = testutil::make_rng(44);
  std::uniform_real_distribution<double> hbar_dist(0.5, 2.0);
  std::uniform_int_distribution<int> n_dist(0, 64);
  for (int i = 0; i < 300; ++i) {
    const OscillatorParams base = testutil::random_params(rng, 1.0, 0.05, 0.999);
    const OscillatorParams params(base.omega(), base.gamma(), hbar_dist(rng));
    std::uniform_real_distribution<double> t_dist(0.0, 10.0 / params.gamma());
    const double t = t_dist(rng);
    const int n = n_dist(rng);
    const complex_t tau = dho::complex_time_of(params, t).tau;
    const complex_t lhs =
        std::exp(complex_t(0.0, -1.0) * tau * (params.hbar() * params.omega1() * n));
    const complex_t rhs = std::exp(complex_t(0.0, -1.0) * t * params.hbar() *
                                   complex_t(params.omega1(), -params.gamma()) *
                                   static_cast<double>(n));
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("evolve_tau matches evolve coefficient by coefficient", "[tau]") {
  const OscillatorParams params(5.0, 3.0);
  const FockState psi = FockState({complex_t(1.0, 0.0), complex_t(1.0, 0.0)}).normalized();

  SECTION("identity at t = 0") {
    const dho::EvolutionReport report = dho::evolve_tau(params, psi, 0.0);
    CHECK(dho::max_coefficient_deviation(report.state, psi) < 1e-15);
  }

  SECTION("the |1> coefficient keeps modulus e^{-3}/sqrt(2) at t = 1") {
    const dho::EvolutionReport report = dho::evolve_tau(params, psi, 1.0);
    CHECK(std::abs(std::abs(report.state[1]) - std::exp(-3.0) / std::sqrt(2.0)) < 1e-14);
  }

  SECTION("negative time is rejected") {
    CHECK_THROWS_AS(dho::evolve_tau(params, psi, -1.0), std::invalid_argument);
  }

  SECTION("randomized agreement within 1e-12 per coefficient") {
    auto rng = testutil::make_rng(45);
    std::uniform_real_distribution<double> hbar_dist(0.5, 2.0);
    for (int i = 0; i < 40; ++i) {
      const OscillatorParams base = testutil::random_params(rng, 1.0, 0.05, 0.999);
      const OscillatorParams p(base.omega(), base.gamma(), hbar_dist(rng));
      const FockState state = testutil::random_fock(rng, 32);
      const double horizon = 10.0 / p.gamma();
      for (int j = 0; j <= 10; ++j) {
        const double t = horizon * j / 10.0;
        const dho::EvolutionReport via_h = dho::evolve(p, state, t);
        const dho::EvolutionReport via_tau = dho::evolve_tau(p, state, t);
        CHECK(dho::max_coefficient_deviation(via_h.state, via_tau.state) < 1e-12);
      }
    }
  }
}

TEST_CASE("conjugate picture: e^{+i tau* H~} on conjugated coefficients", "[tau]") {
  auto rng = testutil::make_rng(46);
  for (int i = 0; i < 30; ++i) {
    const OscillatorParams params = testutil::random_params(rng, 1.0, 0.05, 0.999);
    const FockState psi = testutil::random_fock(rng, 24);
    std::uniform_real_distribution<double> t_dist(0.0, 10.0 / params.gamma());
    const double t = t_dist(rng);

    const dho::ComplexTime ct = dho::complex_time_of(params, t);
    const double angle = t * (params.hbar() * params.omega() * 0.5);
    const complex_t global(std::cos(angle), std::sin(angle));

    const dho::EvolutionReport forward = dho::evolve_tau(params, psi, t);
    for (std::size_t n = 0; n < psi.dim(); ++n) {
      const complex_t level_phase = std::exp(
          complex_t(0.0, 1.0) * ct.tau_conj() * (params.hbar() * params.omega1() * n));
      const complex_t conj_route = global * level_phase * std::conj(psi[n]);
      CHECK(std::abs(conj_route - std::conj(forward.state[n])) < 1e-12);
    }
  }
}

TEST_CASE("picture equivalence report", "[tau]") {
  SECTION("pure ground state: both pictures give the same phase") {
    const OscillatorParams params(5.0, 3.0);
    const std::vector<double> times{0.0, 0.5, 1.0, 4.0};
    const auto rows =
        dho::picture_equivalence_report(params, FockState::basis(8, 0), times);
    REQUIRE(rows.size() == times.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(rows[i].t == times[i]);
      CHECK(rows[i].max_deviation <= 1e-15);
      CHECK(rows[i].pass);
    }
  }

  SECTION("randomized states, N = 32, times up to 10/gamma") {
    auto rng = testutil::make_rng(47);
    const OscillatorParams params(5.0, 3.0);
    std::vector<double> times;
    for (int j = 0; j <= 20; ++j) {
      times.push_back(10.0 / params.gamma() * j / 20.0);
    }
    for (int i = 0; i < 20; ++i) {
      const FockState psi = testutil::random_fock(rng, 32);
      for (const auto& row : dho::picture_equivalence_report(params, psi, times)) {
        CHECK(row.max_deviation <= 1e-12);
        CHECK(row.pass);
      }
    }
  }

  SECTION("gamma = 0: the pictures coincide trivially") {
    auto rng = testutil::make_rng(48);
    const OscillatorParams params(2.0, 0.0);
    const std::vector<double> times{0.0, 1.0, 5.0, 25.0};
    for (int i = 0; i < 10; ++i) {
      const FockState psi = testutil::random_fock(rng, 16);
      for (const auto& row : dho::picture_equivalence_report(params, psi, times)) {
        CHECK(row.max_deviation <= 1e-15);
        CHECK(row.pass);
      }
    }
  }
}
