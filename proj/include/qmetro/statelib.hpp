#pragma once

// Probe-state constructors.  Every constructor returns the global-phase
// representative whose first nonzero amplitude is real and positive.

#include "qmetro/types.hpp"

#include <optional>

namespace qmetro {

struct CssParams {
  double theta = 0.0;  // polar angle; theta = 0 is |J,-J> (all particles down)
  double phi = 0.0;    // azimuthal angle
};

// Coherent spin state
//   sum_m C_m(theta) exp(-i (J+m) phi) |J,m>,
//   C_m = sqrt(binom(2J, J+m)) cos^{J-m}(theta/2) sin^{J+m}(theta/2).
// With this labelling <Jz> = -J cos(theta) and the mean spin points along
// (sin t cos p, sin t sin p, -cos t).
CollectiveSpinState css(int n_particles, double theta, double phi);
inline CollectiveSpinState css(int n_particles, const CssParams& p) { return css(n_particles, p.theta, p.phi); }

// The rotation axis for which rotate(|J,-J>, axis, theta) == css(N, theta, phi).
Vec3 css_rotation_axis(double phi);

// (|J,+J> + e^{i rel_phase} |J,-J>) / sqrt(2).
CollectiveSpinState ghz(int n_particles, double rel_phase = 0.0);

// |N>_a |N>_b in a Fock space of the given cutoff; requires cutoff >= 2N so
// a Mach-Zehnder sequence can populate |2N, 0>.
TwoModeFockState twin_fock(int n_per_mode, int cutoff);

struct EcsParams {
  cplx alpha;
  double norm_factor;  // N_alpha = 1 / sqrt(2 (1 + exp(-|alpha|^2)))

  static EcsParams from_alpha(cplx alpha);
  // Closed-form mean total particle number 2 N_alpha^2 |alpha|^2.
  double mean_particle_number() const;
};

struct EcsCutoffPolicy {
  // Per-branch Poisson tail sum_{n > cutoff} e^{-|a|^2} |a|^{2n} / n! must fall below this.
  double tail_tolerance = 1e-13;
  int hard_cap = 512;
  // When set, the cutoff is used as given and the resulting deficit is only reported.
  std::optional<int> fixed_cutoff;
};

// N_alpha (|alpha>_a |0>_b + |0>_a |alpha>_b) truncated at the selected
// cutoff.  Throws TruncationFailure when the tail bound needs a cutoff above
// the hard cap.
TwoModeFockState ecs(cplx alpha, const EcsCutoffPolicy& policy = {});

// Smallest cutoff meeting the policy's tail tolerance, or nullopt above the cap.
std::optional<int> ecs_auto_cutoff(double abs_alpha, const EcsCutoffPolicy& policy = {});

// Poisson tail sum_{n > cutoff} e^{-mu} mu^n / n! for mu = |alpha|^2.
double poisson_tail(double mu, int cutoff);

// log of the binomial coefficient, via lgamma.
double log_binomial(int n, int k);

}  // namespace qmetro
