#pragma once

// Interferometer sequences (Ramsey, Mach-Zehnder) and their readouts.
//
// Mach-Zehnder conventions on two bosonic modes a, b:
//   U_BS1 = exp[(pi/4)(a^dag b - b^dag a)]
//   phase = exp(i phi n_b)
//   U_BS2 = exp[-i (pi/4)(a^dag b + b^dag a)]
// Ramsey: U = exp(-i pi/2 Jy) exp(-i phi Jz) exp(-i pi/2 Jy), rightmost first.

#include "qmetro/estimate.hpp"
#include "qmetro/statelib.hpp"

#include <optional>
#include <span>
#include <string>

namespace qmetro {

enum class Mode { A, B };

// ---- single particle -------------------------------------------------------

struct PortProbabilities {
  double p_a;
  double p_b;
};

// Single particle entering port a, pushed through T, the relative phase
// diag(1, e^{i phi}) and T again, with T = [[1, 1], [1, -1]] / sqrt(2).
// Returned as a one-particle state in a cutoff-1 Fock space.
TwoModeFockState mz_single_particle_state(double phi);
// The state just before the second splitter.
TwoModeFockState mz_single_particle_arms(double phi);
PortProbabilities mz_single_particle(double phi);

struct SpinProbabilities {
  double p_down;
  double p_up;
};

// One two-level atom started in |down> and sent through the Ramsey propagator.
SpinProbabilities ramsey_single_particle(double phi);

// ---- collective-spin Ramsey ------------------------------------------------

// Ramsey propagator applied to `initial`; with a readout rotation alpha the
// final state is additionally rotated by alpha about its own mean spin
// direction (which leaves <J> untouched).  Families that vary phi should use
// apply_readout so the axis stays fixed.
CollectiveSpinState ramsey(const CollectiveSpinState& initial, double phi,
                           std::optional<double> readout_rotation = std::nullopt);

// Rotation by alpha about the state's mean spin direction.  Throws
// std::invalid_argument when |<J>| < 1e-10.
CollectiveSpinState rotate_about_mean_spin(const CollectiveSpinState& state, double alpha);

struct ReadoutRotation {
  double alpha;
  Vec3 axis;  // mean spin direction of the state it was optimized for
  double jz_variance;
};

// alpha in [0, pi) minimizing Var(Jz) after rotate_about_mean_spin.
ReadoutRotation optimal_readout_rotation(const CollectiveSpinState& final_state);

// Rotation by rr.alpha about the fixed axis rr.axis.
CollectiveSpinState apply_readout(const CollectiveSpinState& state, const ReadoutRotation& rr);

// Rotates the state so its mean spin points along -z.
CollectiveSpinState align_mean_spin_to_south(const CollectiveSpinState& state);

// Ramsey input pose for a squeezed state: mean spin along -z and the
// least-variance perpendicular axis along y.
CollectiveSpinState orient_ramsey_input(const CollectiveSpinState& state);

// Collective parity that flips every spin: |J,m> -> |J,-m>.
Observable spin_flip_parity(int n_particles);

// ---- two-mode Mach-Zehnder -------------------------------------------------

// Beam splitters act sector by sector in total particle number.  Every
// nonzero amplitude must satisfy n_a + n_b <= cutoff, otherwise
// std::invalid_argument is thrown.
TwoModeFockState beam_splitter_1(const TwoModeFockState& state);
TwoModeFockState beam_splitter_2(const TwoModeFockState& state);
TwoModeFockState phase_shift(const TwoModeFockState& state, double phi);

// U_BS2 * phase(phi) * U_BS1 * input.
TwoModeFockState mz_two_mode(const TwoModeFockState& input, double phi);

Observable number_operator(int cutoff, Mode mode);
// exp(i pi n_mode), diagonal with entries +-1.
Observable parity_operator(int cutoff, Mode mode);
double parity_expectation(const TwoModeFockState& state, Mode mode);

// ---- sweeps ----------------------------------------------------------------

struct Probe {
  std::string name;
  // theta -> state carrying the phase; used for the quantum Fisher information.
  StateFamily encoded;
  // Operating phase -> family of states that reach the detector near it.
  std::function<StateFamily(double)> measured_near;
};

struct ReadoutSpec {
  Observable observable;
  Povm povm;
};

struct SweepPoint {
  double phi;
  double signal;  // <O> at phi
  PrecisionReport report;
};

// For each phi: classical Fisher information of the readout POVM, quantum
// Fisher information of the encoded family, error-propagation Delta phi of
// the readout observable and both Cramer-Rao bounds at v repetitions.
std::vector<SweepPoint> phase_sweep(const Probe& probe, const ReadoutSpec& readout, std::span<const double> phis,
                                    long long repetitions);

// All particles start down; the readout is Jz with Dicke-level counting.
Probe css_ramsey_probe(int n_particles);
ReadoutSpec jz_readout(int n_particles);
// Ramsey with `initial` as input.  Near each operating phase the readout
// rotation minimizing Var(Jz) there is fixed and applied for all theta.
Probe sss_ramsey_probe(const CollectiveSpinState& initial);
// GHZ input accumulating exp(-i phi Jz); read out through spin_flip_parity.
Probe ghz_probe(int n_particles);
ReadoutSpec spin_flip_parity_readout(int n_particles);
// Twin Fock input through the full Mach-Zehnder; encoded family stops after the phase.
Probe twin_fock_probe(int n_per_mode);
// Entangled coherent state picking up exp(i phi n_b), then U_BS2.
Probe ecs_probe(cplx alpha, const EcsCutoffPolicy& policy = {});
ReadoutSpec parity_readout(int cutoff, Mode mode);
// Single particle through the 2x2 matrix pipeline; observable n_a - n_b.
Probe mz_single_probe();
ReadoutSpec port_readout();

}  // namespace qmetro
