#include "oracles.hpp"
#include "qmetro/interferom.hpp"
#include "qmetro/linalg.hpp"
#include "qmetro/spinops.hpp"
#include "qmetro/squeeze.hpp"

#include <doctest.h>

#include <random>

using namespace qmetro;

namespace {

// Minimum perpendicular variance by scanning the in-plane angle.
double scanned_min_perp_variance(const CollectiveSpinState& s, const Vec3& msd) {
  const Vec3 ref = std::abs(msd[0]) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  const Vec3 e1 = normalized3(cross3(msd, ref));
  const Vec3 e2 = cross3(msd, e1);
  double best = 1e300;
  for (int k = 0; k < 20000; ++k) {
    const double a = M_PI * k / 20000;
    const Vec3 d{std::cos(a) * e1[0] + std::sin(a) * e2[0], std::cos(a) * e1[1] + std::sin(a) * e2[1],
                 std::cos(a) * e1[2] + std::sin(a) * e2[2]};
    best = std::min(best, moments(s, spin_component(s.n_particles(), d)).variance);
  }
  return best;
}

CollectiveSpinState twisted(int n, double chi_t) { return oat_evolve(css(n, M_PI / 2, 0.0), {1.0, 0, 0, 0, chi_t}); }

}  // namespace

TEST_CASE("coherent spin states are not squeezed") {
  for (int n : {1, 2, 9, 40, 200}) {
    for (double t : {0.2, 1.0, M_PI / 2, 2.9}) {
      for (double p : {0.0, 1.3, -2.5}) {
        const auto r = squeezing_parameters(css(n, t, p));
        CHECK(r.xi_s_sq == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(r.xi_r_sq == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(r.xi_h_sq == doctest::Approx(1.0).epsilon(1e-10));
        CHECK_FALSE(r.mean_spin_vanishes);
        CHECK(std::abs(dot3(r.msd, r.min_perp_direction)) < 1e-10);
      }
    }
  }
}

TEST_CASE("vanishing mean spin is flagged") {
  const auto r = squeezing_parameters(CollectiveSpinState::dicke(6, 0.0));
  CHECK(r.mean_spin_vanishes);
  CHECK(std::isinf(r.xi_r_sq));
  CHECK(std::isinf(r.xi_h_sq));
  CHECK(r.msd == Vec3{0, 0, 1});
  CHECK(r.xi_s_sq == doctest::Approx(4.0 * 6.0 / 6.0));
}

TEST_CASE("one-axis twisting squeezes a coherent spin state") {
  const auto s = twisted(40, 0.05);
  const auto r = squeezing_parameters(s);
  CHECK(r.xi_r_sq < 1.0);
  CHECK(r.xi_r_sq == doctest::Approx(0.196).epsilon(5e-3));
  CHECK(r.xi_s_sq < r.xi_r_sq);
  CHECK(std::abs(dot3(r.msd, r.min_perp_direction)) < 1e-10);
  CHECK(r.min_perp_variance == doctest::Approx(scanned_min_perp_variance(s, r.msd)).epsilon(1e-6));
  CHECK(r.xi_h_sq >= 0.0);
}

TEST_CASE("explicit xi_H axes") {
  const auto s = css(10, M_PI / 2, 0.0);
  const auto r = squeezing_parameters(s, XiHAxes{{0, 1, 0}, {1, 0, 0}});
  CHECK(r.xi_h_sq == doctest::Approx(1.0));
  const auto z = squeezing_parameters(s, XiHAxes{{0, 1, 0}, {0, 0, 1}});
  CHECK(std::isinf(z.xi_h_sq));
}

TEST_CASE("squeezing report co-rotates with the state") {
  std::mt19937_64 gen(21);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto s = twisted(30, 0.04);
  const auto base = squeezing_parameters(s);
  for (int trial = 0; trial < 10; ++trial) {
    const Vec3 axis = normalized3({u(gen), u(gen), u(gen)});
    const double angle = 3.0 * u(gen);
    const auto r = squeezing_parameters(rotate(s, axis, angle));
    CHECK(r.xi_s_sq == doctest::Approx(base.xi_s_sq).epsilon(1e-8));
    CHECK(r.xi_r_sq == doctest::Approx(base.xi_r_sq).epsilon(1e-8));
    CHECK(r.xi_h_sq == doctest::Approx(base.xi_h_sq).epsilon(1e-8));
    const auto msd = oracle::rodrigues(base.msd, axis, angle);
    const auto perp = oracle::rodrigues(base.min_perp_direction, axis, angle);
    for (int i = 0; i < 3; ++i) CHECK(r.msd[i] == doctest::Approx(msd[i]).epsilon(1e-8));
    // The least-variance axis is defined up to sign.
    CHECK(std::abs(dot3(r.min_perp_direction, {perp[0], perp[1], perp[2]})) == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("oat_evolve special cases") {
  const auto s = css(6, 1.1, 0.3);
  CHECK(oat_evolve(s, {0.7, 0.2, 0.1, 0.4, 0.0}).amplitudes() == s.amplitudes());

  const auto detuned = oat_evolve(s, {0.0, 0.0, 0.8, 0.0, 1.5});
  for (int k = 0; k <= 6; ++k) {
    const double m = k - 3.0;
    CHECK(std::abs(detuned.amplitudes()[k] - s.amplitudes()[k] * std::polar(1.0, -0.8 * m * 1.5)) < 1e-12);
  }

  for (double gamma : {0.0, 0.6, 2.0}) {
    const auto driven = oat_evolve(s, {0.0, 1.3, 0.0, gamma, 0.9});
    const auto rotated = rotate(s, {std::cos(gamma), -std::sin(gamma), 0.0}, 1.3 * 0.9);
    CHECK((driven.amplitudes() - rotated.amplitudes()).norm() < 1e-10);
  }
  const auto mixed = oat_evolve(s, {0.5, 0.3, 0.2, 0.1, 2.0});
  CHECK(mixed.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("two-particle twisting at chi t = pi/2") {
  // Equator CSS amplitudes (1/2, 1/sqrt2, 1/2); m = -1, 0, 1 pick up e^{-i pi/2 m^2}.
  const auto out = oat_evolve(css(2, M_PI / 2, 0.0), {1.0, 0, 0, 0, M_PI / 2});
  const cplx e = std::polar(1.0, -M_PI / 2);
  const CVector expect = canonical_phase((CVector(3) << 0.5 * e, M_SQRT1_2, 0.5 * e).finished());
  CHECK((canonical_phase(out.amplitudes()) - expect).norm() < 1e-12);
  for (int k = 0; k < 3; ++k) CHECK(std::abs(out.amplitudes()[k]) == doctest::Approx(std::abs(expect[k])));
}

TEST_CASE("squeezed Ramsey chain reaches xi_R / sqrt(N)") {
  for (double chi_t : {0.01, 0.02, 0.05}) {
    const auto s = twisted(40, chi_t);
    const double xi_r = std::sqrt(squeezing_parameters(s).xi_r_sq);
    const auto pts = phase_sweep(sss_ramsey_probe(orient_ramsey_input(s)), jz_readout(40),
                                 std::vector<double>{M_PI / 2}, 1);
    CHECK(pts[0].report.error_prop <= xi_r / std::sqrt(40.0) * (1.0 + 1e-3));
    CHECK(pts[0].report.error_prop < 1.0 / std::sqrt(40.0));
  }
}

TEST_CASE("BJJ Hamiltonian spectra") {
  const auto tunneling = ground_state(bjj_hamiltonian({6, 0.7, 0.0, 0.0}));
  for (int k = 0; k <= 6; ++k) CHECK(tunneling.energies[k] == doctest::Approx(-0.7 * (3.0 - k)));

  const auto repulsive = ground_state(bjj_hamiltonian({8, 0.0, 0.0, 1.0}));
  CHECK(std::abs(ground_spin_state(repulsive).amplitude(0.0)) == doctest::Approx(1.0));
  CHECK_FALSE(repulsive.degenerate_ground);

  const auto attractive = ground_state(bjj_hamiltonian({8, 0.0, 0.0, -1.0}));
  CHECK(attractive.degenerate_ground);
  const double range = attractive.energies[8] - attractive.energies[0];
  CHECK(attractive.gap < 1e-10 * range);
  // Both ground vectors live in span{|J,-J>, |J,J>}.
  for (int col = 0; col < 2; ++col) {
    const double w = std::norm(attractive.vectors(0, col)) + std::norm(attractive.vectors(8, col));
    CHECK(w == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(bjj_hamiltonian({0, 1.0, 0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("Rabi-regime ground state is the x-polarized coherent spin state") {
  const auto sp = ground_state(bjj_hamiltonian({20, 1.0, 0.0, 1e-4 / 20}));
  CHECK(fidelity(ground_spin_state(sp), css(20, M_PI / 2, 0.0)) > 0.999);
}

TEST_CASE("spectral decomposition reconstructs the Hamiltonian") {
  const Observable h = bjj_hamiltonian({15, 0.8, 0.3, 2.5});
  const auto sp = ground_state(h);
  const CMatrix rebuilt = sp.vectors * sp.energies.asDiagonal() * sp.vectors.adjoint();
  const double range = sp.energies.maxCoeff() - sp.energies.minCoeff();
  CHECK((rebuilt - h.to_dense()).cwiseAbs().maxCoeff() < 1e-10 * range);
  for (Eigen::Index k = 1; k < sp.energies.size(); ++k) CHECK(sp.energies[k] >= sp.energies[k - 1]);
}

TEST_CASE("one-level spectrum") {
  const auto flat = ground_state(Observable::dense(Basis::collective_spin(1), (CMatrix(2, 2) << 2.5, 0, 0, 2.5).finished()));
  CHECK(flat.degenerate_ground);
  const auto single = ground_state(Observable::diagonal(Basis::two_mode_fock(0), RVector::Constant(1, 2.5)));
  CHECK(single.energies[0] == 2.5);
  CHECK(std::isinf(single.gap));
  CHECK_FALSE(single.degenerate_ground);
  CHECK(std::abs(single.vectors(0, 0)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(ground_spin_state(single), std::invalid_argument);
  CHECK_THROWS_AS(Observable::dense(Basis::collective_spin(1), (CMatrix(2, 2) << 0, 1, 0, 0).finished()),
                  std::invalid_argument);
}

TEST_CASE("regime classification") {
  CHECK(classify_regime({10, 1.0, 0.0, 1e-3}).regime == Regime::Rabi);
  CHECK(classify_regime({10, 1.0, 0.0, 20.0}).regime == Regime::Fock);
  CHECK(classify_regime({10, -2.0, 0.0, -40.1}).regime == Regime::Fock);
  for (int n : {2, 5, 100}) CHECK(classify_regime({n, 1.0, 0.0, 1.0}).regime == Regime::Josephson);
  CHECK(classify_regime({10, 1.0, 0.0, 0.1}).regime == Regime::Josephson);
  CHECK(classify_regime({10, 1.0, 0.0, 10.0}).regime == Regime::Josephson);
  const auto zero = classify_regime({10, 0.0, 0.0, 1.0});
  CHECK(zero.regime == Regime::Fock);
  CHECK(zero.flagged);
  CHECK(std::string(regime_name(Regime::Josephson)) == "josephson");
}
