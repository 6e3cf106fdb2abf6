#pragma once

// Spin-squeezing parameters, one-axis-twisting evolution and the two-mode
// Bose-Hubbard (Bose-Josephson junction) Hamiltonian in spin form.

#include "qmetro/types.hpp"

#include <optional>
#include <utility>

namespace qmetro {

struct SqueezingReport {
  double xi_h_sq = 0.0;
  double xi_s_sq = 0.0;
  double xi_r_sq = 0.0;
  Vec3 msd{};                 // mean spin direction
  Vec3 min_perp_direction{};  // perpendicular axis of least variance
  double mean_spin_length = 0.0;
  double min_perp_variance = 0.0;
  // Set when |<J>| < 1e-10.  The msd is then +z by convention and xi_R, and
  // xi_H at its default axes, are +infinity.
  bool mean_spin_vanishes = false;
};

// (alpha, gamma) axes for xi_H^2 = 2 Var(J_alpha) / |<J_gamma>|.
using XiHAxes = std::pair<Vec3, Vec3>;

// xi_S^2 = 4 minVar / N, xi_R^2 = N minVar / |<J>|^2, where minVar is the
// smaller eigenvalue of the symmetrized covariance of two spin components
// spanning the plane perpendicular to <J>.  Default xi_H axes are
// (min_perp_direction, msd).
SqueezingReport squeezing_parameters(const CollectiveSpinState& state, std::optional<XiHAxes> xi_h_axes = {});

struct OatParams {
  double chi = 0.0;
  double omega = 0.0;
  double delta = 0.0;
  double gamma = 0.0;
  double t = 0.0;
};

// exp(-i t (Omega J_gamma + delta Jz + chi Jz^2)) |initial>,
// J_gamma = cos(gamma) Jx - sin(gamma) Jy.
CollectiveSpinState oat_evolve(const CollectiveSpinState& initial, const OatParams& params);

struct BjjParams {
  int n_particles = 1;
  double j_tun = 0.0;
  double delta = 0.0;
  double e_c = 0.0;
};

// -J_tun Jx + delta Jz + (E_c / 2) Jz^2 on the fixed-N sector.
Observable bjj_hamiltonian(const BjjParams& params);

struct Spectrum {
  RVector energies;  // ascending
  CMatrix vectors;   // column k belongs to energies[k]
  Basis basis;
  double gap;               // E1 - E0, +infinity for a single level
  bool degenerate_ground;   // gap < 1e-10 * (E_max - E_min)
};

Spectrum ground_state(const Observable& hamiltonian);
// Column 0 of a collective-spin spectrum as a state.
CollectiveSpinState ground_spin_state(const Spectrum& spectrum);

enum class Regime { Rabi, Josephson, Fock };

struct RegimeClassification {
  Regime regime;
  bool flagged;  // J_tun = 0, classified as Fock by convention
};

// r = |E_c / J_tun|: Rabi if r < 1/N, Fock if r > N, Josephson otherwise.
RegimeClassification classify_regime(const BjjParams& params);
const char* regime_name(Regime regime);

}  // namespace qmetro
