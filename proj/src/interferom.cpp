#include "qmetro/interferom.hpp"

#include "qmetro/linalg.hpp"
#include "qmetro/numeric.hpp"
#include "qmetro/spinops.hpp"
#include "qmetro/squeeze.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace qmetro {

namespace {

constexpr double kMinMeanSpin = 1e-10;
constexpr int kReadoutGridPoints = 64;
constexpr double kReadoutWidth = 1e-10;

enum class Splitter { First, Second };

// a^dag b restricted to the sector n_a + n_b = n, basis index i = n_a.
CMatrix hop_in_sector(int n) {
  CMatrix hop = CMatrix::Zero(n + 1, n + 1);
  for (int i = 0; i < n; ++i) hop(i + 1, i) = std::sqrt(static_cast<double>(i + 1) * (n - i));
  return hop;
}

TwoModeFockState apply_splitter(const TwoModeFockState& state, Splitter which) {
  const int c = state.cutoff();
  const int top = state.max_total_number();
  if (top > c)
    throw std::invalid_argument("beam splitter: state populates total number " + std::to_string(top) +
                                " above the cutoff " + std::to_string(c));
  CVector out = CVector::Zero(state.amplitudes().size());
  for (int n = 0; n <= top; ++n) {
    CVector sector(n + 1);
    for (int na = 0; na <= n; ++na) sector[na] = state.at(na, n - na);
    if (sector.squaredNorm() == 0.0) continue;
    const CMatrix hop = hop_in_sector(n);
    // BS1: exp[(pi/4)(A - A^dag)] = exp[-i (pi/4) K] with K = i (A - A^dag).
    // BS2: exp[-i (pi/4) K] with K = A + A^dag.
    const CMatrix generator =
        which == Splitter::First ? CMatrix(cplx(0.0, 1.0) * (hop - hop.adjoint())) : CMatrix(hop + hop.adjoint());
    const CVector evolved = evolve(generator, M_PI / 4.0, sector);
    for (int na = 0; na <= n; ++na) out[state.index(na, n - na)] = evolved[na];
  }
  return TwoModeFockState(c, std::move(out), state.truncation_deficit());
}

Vec3 unit_mean_spin(const CollectiveSpinState& state) {
  const Vec3 mean = mean_spin(state);
  if (norm3(mean) < kMinMeanSpin) throw std::invalid_argument("mean spin vanishes; no mean spin direction");
  return normalized3(mean);
}

// The two pi/2 pulses of the Ramsey sequence share one propagator, built once
// per probe so sweeps do not re-diagonalize Jy at every phase.
class RamseyPulses {
 public:
  explicit RamseyPulses(int n) : n_(n), pulse_(unitary_from_generator(collective_ops(n).jy, M_PI / 2.0)) {}

  CVector first(const CollectiveSpinState& initial) const { return pulse_ * initial.amplitudes(); }

  CollectiveSpinState finish(const CVector& after_first, double phi) const {
    CVector v = after_first;
    for (Eigen::Index k = 0; k < v.size(); ++k) v[k] *= std::polar(1.0, -phi * (k - 0.5 * n_));
    return CollectiveSpinState(n_, pulse_ * v);
  }

 private:
  int n_;
  CMatrix pulse_;
};

}  // namespace

// ---- single particle -------------------------------------------------------

TwoModeFockState mz_single_particle_arms(double phi) {
  Eigen::Matrix2cd t;
  t << 1.0, 1.0, 1.0, -1.0;
  t *= M_SQRT1_2;
  const Eigen::Vector2cd in(1.0, 0.0);
  Eigen::Vector2cd arms = t * in;
  arms[1] *= std::polar(1.0, phi);
  TwoModeFockState out = TwoModeFockState::fock(1, 0, 0);
  CVector amps = CVector::Zero(4);
  amps[out.index(1, 0)] = arms[0];
  amps[out.index(0, 1)] = arms[1];
  return TwoModeFockState(1, std::move(amps));
}

TwoModeFockState mz_single_particle_state(double phi) {
  Eigen::Matrix2cd t;
  t << 1.0, 1.0, 1.0, -1.0;
  t *= M_SQRT1_2;
  const TwoModeFockState arms_state = mz_single_particle_arms(phi);
  const Eigen::Vector2cd arms(arms_state.at(1, 0), arms_state.at(0, 1));
  const Eigen::Vector2cd out = t * arms;
  CVector amps = CVector::Zero(4);
  amps[arms_state.index(1, 0)] = out[0];
  amps[arms_state.index(0, 1)] = out[1];
  return TwoModeFockState(1, std::move(amps));
}

PortProbabilities mz_single_particle(double phi) {
  const TwoModeFockState s = mz_single_particle_state(phi);
  return {std::norm(s.at(1, 0)), std::norm(s.at(0, 1))};
}

SpinProbabilities ramsey_single_particle(double phi) {
  const CollectiveSpinState out = ramsey(CollectiveSpinState::dicke(1, -0.5), phi);
  return {std::norm(out.amplitudes()[0]), std::norm(out.amplitudes()[1])};
}

// ---- collective-spin Ramsey ------------------------------------------------

CollectiveSpinState ramsey(const CollectiveSpinState& initial, double phi, std::optional<double> readout_rotation) {
  const Vec3 y{0.0, 1.0, 0.0};
  const Vec3 z{0.0, 0.0, 1.0};
  CollectiveSpinState s = rotate(initial, y, M_PI / 2.0);
  s = rotate(s, z, phi);
  s = rotate(s, y, M_PI / 2.0);
  if (readout_rotation) s = rotate_about_mean_spin(s, *readout_rotation);
  return s;
}

CollectiveSpinState rotate_about_mean_spin(const CollectiveSpinState& state, double alpha) {
  return rotate(state, unit_mean_spin(state), alpha);
}

ReadoutRotation optimal_readout_rotation(const CollectiveSpinState& final_state) {
  const int n = final_state.n_particles();
  const Vec3 axis = unit_mean_spin(final_state);
  const auto ops = collective_ops(n);
  const Eigensystem es = eigh(axis[0] * ops.jx + axis[1] * ops.jy + axis[2] * ops.jz);
  const CVector coeffs = es.vectors.adjoint() * final_state.amplitudes();
  const Observable jz = spin_component(n, {0.0, 0.0, 1.0});
  const auto jz_variance = [&](double alpha) {
    CVector c = coeffs;
    for (Eigen::Index k = 0; k < c.size(); ++k) c[k] *= std::polar(1.0, -alpha * es.values[k]);
    return moments(CollectiveSpinState(n, es.vectors * c), jz).variance;
  };
  const MinimumResult best = grid_then_golden_minimize(jz_variance, 0.0, M_PI, kReadoutGridPoints, kReadoutWidth);
  double alpha = best.x;
  if (alpha >= M_PI) alpha -= M_PI;
  return {alpha, axis, best.value};
}

CollectiveSpinState apply_readout(const CollectiveSpinState& state, const ReadoutRotation& rr) {
  return rotate(state, rr.axis, rr.alpha);
}

CollectiveSpinState align_mean_spin_to_south(const CollectiveSpinState& state) {
  const Vec3 m = unit_mean_spin(state);
  const Vec3 south{0.0, 0.0, -1.0};
  const Vec3 axis = cross3(m, south);
  const double s = norm3(axis);
  const double c = dot3(m, south);
  if (s < 1e-12) {
    if (c > 0.0) return state;
    return rotate(state, {1.0, 0.0, 0.0}, M_PI);
  }
  return rotate(state, {axis[0] / s, axis[1] / s, axis[2] / s}, std::atan2(s, c));
}

CollectiveSpinState orient_ramsey_input(const CollectiveSpinState& state) {
  const CollectiveSpinState south = align_mean_spin_to_south(state);
  const Vec3 d = squeezing_parameters(south).min_perp_direction;
  return rotate(south, {0.0, 0.0, 1.0}, M_PI / 2.0 - std::atan2(d[1], d[0]));
}

Observable spin_flip_parity(int n_particles) {
  if (n_particles < 1) throw std::invalid_argument("spin_flip_parity: N must be >= 1");
  CMatrix p = CMatrix::Zero(n_particles + 1, n_particles + 1);
  for (int k = 0; k <= n_particles; ++k) p(n_particles - k, k) = 1.0;
  return Observable::dense(Basis::collective_spin(n_particles), std::move(p));
}

// ---- two-mode Mach-Zehnder -------------------------------------------------

TwoModeFockState beam_splitter_1(const TwoModeFockState& state) { return apply_splitter(state, Splitter::First); }

TwoModeFockState beam_splitter_2(const TwoModeFockState& state) { return apply_splitter(state, Splitter::Second); }

TwoModeFockState phase_shift(const TwoModeFockState& state, double phi) {
  CVector amps = state.amplitudes();
  const int c = state.cutoff();
  for (int na = 0; na <= c; ++na)
    for (int nb = 0; nb <= c; ++nb) amps[state.index(na, nb)] *= std::polar(1.0, phi * nb);
  return TwoModeFockState(c, std::move(amps), state.truncation_deficit());
}

TwoModeFockState mz_two_mode(const TwoModeFockState& input, double phi) {
  return beam_splitter_2(phase_shift(beam_splitter_1(input), phi));
}

Observable number_operator(int cutoff, Mode mode) {
  const Basis basis = Basis::two_mode_fock(cutoff);
  RVector d(basis.dim());
  for (int na = 0; na <= cutoff; ++na)
    for (int nb = 0; nb <= cutoff; ++nb) d[na * (cutoff + 1) + nb] = mode == Mode::A ? na : nb;
  return Observable::diagonal(basis, std::move(d));
}

Observable parity_operator(int cutoff, Mode mode) {
  const Basis basis = Basis::two_mode_fock(cutoff);
  RVector d(basis.dim());
  for (int na = 0; na <= cutoff; ++na)
    for (int nb = 0; nb <= cutoff; ++nb) d[na * (cutoff + 1) + nb] = ((mode == Mode::A ? na : nb) % 2) ? -1.0 : 1.0;
  return Observable::diagonal(basis, std::move(d));
}

double parity_expectation(const TwoModeFockState& state, Mode mode) {
  return moments(state, parity_operator(state.cutoff(), mode)).mean;
}

// ---- sweeps ----------------------------------------------------------------

std::vector<SweepPoint> phase_sweep(const Probe& probe, const ReadoutSpec& readout, std::span<const double> phis,
                                    long long repetitions) {
  if (phis.empty()) throw std::invalid_argument("phase_sweep: empty phase grid");
  std::vector<SweepPoint> points;
  points.reserve(phis.size());
  for (double phi : phis) {
    const StateFamily measured = probe.measured_near(phi);
    const double fisher = classical_fisher(measured_family(measured, readout.povm), phi);
    const double qfi = qfi_from_family(probe.encoded, phi);
    const auto signal = [&](double x) { return moments(measured(x), readout.observable).mean; };
    const auto noise = [&](double x) { return std::sqrt(moments(measured(x), readout.observable).variance); };
    const ErrorPropagation ep = error_propagation(signal, noise, phi);
    points.push_back({phi, signal(phi), make_report(fisher, qfi, repetitions, ep)});
  }
  return points;
}

Probe css_ramsey_probe(int n_particles) {
  const auto pulses = std::make_shared<const RamseyPulses>(n_particles);
  const CVector after_first = pulses->first(CollectiveSpinState::dicke(n_particles, -0.5 * n_particles));
  StateFamily family = [pulses, after_first](double phi) -> State { return pulses->finish(after_first, phi); };
  return {"css-ramsey", family, [family](double) { return family; }};
}

ReadoutSpec jz_readout(int n_particles) {
  return {spin_component(n_particles, {0.0, 0.0, 1.0}), computational_povm(Basis::collective_spin(n_particles))};
}

Probe sss_ramsey_probe(const CollectiveSpinState& initial) {
  const int n = initial.n_particles();
  const auto pulses = std::make_shared<const RamseyPulses>(n);
  const CVector after_first = pulses->first(initial);
  StateFamily encoded = [pulses, after_first](double phi) -> State { return pulses->finish(after_first, phi); };
  auto near = [pulses, after_first, n](double phi0) -> StateFamily {
    const ReadoutRotation rr = optimal_readout_rotation(pulses->finish(after_first, phi0));
    const CollectiveSpinOperators ops = collective_ops(n);
    const auto readout = std::make_shared<const CMatrix>(
        unitary_from_generator(rr.axis[0] * ops.jx + rr.axis[1] * ops.jy + rr.axis[2] * ops.jz, rr.alpha));
    return [pulses, after_first, readout, n](double phi) -> State {
      return CollectiveSpinState(n, *readout * pulses->finish(after_first, phi).amplitudes());
    };
  };
  return {"sss-ramsey", encoded, near};
}

Probe ghz_probe(int n_particles) {
  const CollectiveSpinState start = ghz(n_particles);
  StateFamily family = [start](double phi) -> State { return rotate(start, {0.0, 0.0, 1.0}, phi); };
  return {"ghz", family, [family](double) { return family; }};
}

ReadoutSpec spin_flip_parity_readout(int n_particles) {
  const Observable parity = spin_flip_parity(n_particles);
  return {parity, sign_povm(parity)};
}

Probe twin_fock_probe(int n_per_mode) {
  const TwoModeFockState split = beam_splitter_1(twin_fock(n_per_mode, 2 * n_per_mode));
  StateFamily encoded = [split](double phi) -> State { return phase_shift(split, phi); };
  StateFamily measured = [split](double phi) -> State { return beam_splitter_2(phase_shift(split, phi)); };
  return {"twin-fock", encoded, [measured](double) { return measured; }};
}

Probe ecs_probe(cplx alpha, const EcsCutoffPolicy& policy) {
  const TwoModeFockState start = ecs(alpha, policy);
  StateFamily encoded = [start](double phi) -> State { return phase_shift(start, phi); };
  StateFamily measured = [start](double phi) -> State { return beam_splitter_2(phase_shift(start, phi)); };
  return {"ecs", encoded, [measured](double) { return measured; }};
}

ReadoutSpec parity_readout(int cutoff, Mode mode) {
  const Observable parity = parity_operator(cutoff, mode);
  return {parity, sign_povm(parity)};
}

Probe mz_single_probe() {
  StateFamily encoded = [](double phi) -> State { return mz_single_particle_arms(phi); };
  StateFamily measured = [](double phi) -> State { return mz_single_particle_state(phi); };
  return {"mz-single", encoded, [measured](double) { return measured; }};
}

ReadoutSpec port_readout() {
  const Basis basis = Basis::two_mode_fock(1);
  // Index (n_a, n_b) -> 2 n_a + n_b.
  const auto projector = [&](std::initializer_list<int> indices) {
    RVector d = RVector::Zero(4);
    for (int k : indices) d[k] = 1.0;
    return Observable::diagonal(basis, std::move(d));
  };
  Povm povm({projector({2}), projector({1}), projector({0, 3})}, {"a", "b", "other"});
  return {number_operator(1, Mode::A) + number_operator(1, Mode::B) * -1.0, std::move(povm)};
}

}  // namespace qmetro
