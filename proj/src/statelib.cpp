#include "qmetro/statelib.hpp"

#include <cmath>
#include <limits>

namespace qmetro {

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

CollectiveSpinState css(int n_particles, double theta, double phi) {
  if (n_particles < 1) throw std::invalid_argument("css: N must be >= 1");
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  CVector amps(n_particles + 1);
  for (int k = 0; k <= n_particles; ++k) {
    // k = J + m particles up, n - k down.
    const int down = n_particles - k;
    if ((c == 0.0 && down > 0) || (s == 0.0 && k > 0)) {
      amps[k] = 0.0;
      continue;
    }
    double log_mag = 0.5 * log_binomial(n_particles, k);
    if (down > 0) log_mag += down * std::log(std::abs(c));
    if (k > 0) log_mag += k * std::log(std::abs(s));
    const bool negative = ((c < 0.0) && (down % 2 == 1)) != ((s < 0.0) && (k % 2 == 1));
    const double mag = negative ? -std::exp(log_mag) : std::exp(log_mag);
    amps[k] = mag * std::polar(1.0, -k * phi);
  }
  return CollectiveSpinState(n_particles, canonical_phase(std::move(amps)));
}

Vec3 css_rotation_axis(double phi) { return {std::sin(phi), -std::cos(phi), 0.0}; }

CollectiveSpinState ghz(int n_particles, double rel_phase) {
  if (n_particles < 1) throw std::invalid_argument("ghz: N must be >= 1");
  CVector amps = CVector::Zero(n_particles + 1);
  amps[n_particles] = M_SQRT1_2;
  amps[0] = std::polar(M_SQRT1_2, rel_phase);
  return CollectiveSpinState(n_particles, canonical_phase(std::move(amps)));
}

TwoModeFockState twin_fock(int n_per_mode, int cutoff) {
  if (n_per_mode < 0) throw std::invalid_argument("twin_fock: particle number must be non-negative");
  if (cutoff < 2 * n_per_mode)
    throw std::invalid_argument("twin_fock: cutoff " + std::to_string(cutoff) + " is below 2N = " +
                                std::to_string(2 * n_per_mode));
  return TwoModeFockState::fock(cutoff, n_per_mode, n_per_mode);
}

EcsParams EcsParams::from_alpha(cplx alpha) {
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()))
    throw std::invalid_argument("ecs: alpha must be finite");
  return {alpha, 1.0 / std::sqrt(2.0 * (1.0 + std::exp(-std::norm(alpha))))};
}

double EcsParams::mean_particle_number() const { return 2.0 * norm_factor * norm_factor * std::norm(alpha); }

double poisson_tail(double mu, int cutoff) {
  if (mu < 0.0) throw std::invalid_argument("poisson_tail: mean must be non-negative");
  if (cutoff < 0) return 1.0;
  if (mu == 0.0) return 0.0;
  const double log_mu = std::log(mu);
  double sum = 0.0;
  for (int n = cutoff + 1;; ++n) {
    const double term = std::exp(-mu + n * log_mu - std::lgamma(n + 1.0));
    sum += term;
    // Past the Poisson mode the terms fall at least geometrically.
    if (n > mu && (term <= 1e-20 * sum || term < std::numeric_limits<double>::min())) break;
    if (n - cutoff > 1000000) break;
  }
  return sum;
}

std::optional<int> ecs_auto_cutoff(double abs_alpha, const EcsCutoffPolicy& policy) {
  const double mu = abs_alpha * abs_alpha;
  for (int c = 0; c <= policy.hard_cap; ++c)
    if (poisson_tail(mu, c) < policy.tail_tolerance) return c;
  return std::nullopt;
}

TwoModeFockState ecs(cplx alpha, const EcsCutoffPolicy& policy) {
  const EcsParams params = EcsParams::from_alpha(alpha);
  const double abs_alpha = std::abs(alpha);
  int cutoff = 0;
  if (policy.fixed_cutoff) {
    cutoff = *policy.fixed_cutoff;
    if (cutoff < 0 || cutoff > policy.hard_cap)
      throw std::invalid_argument("ecs: fixed cutoff outside [0, hard cap]");
  } else {
    const auto chosen = ecs_auto_cutoff(abs_alpha, policy);
    if (!chosen)
      throw TruncationFailure("ecs: |alpha| = " + std::to_string(abs_alpha) +
                              " needs a Fock cutoff above the hard cap of " + std::to_string(policy.hard_cap));
    cutoff = *chosen;
  }

  // Branch amplitude N_alpha e^{-|a|^2/2} a^n / sqrt(n!).
  CVector branch(cutoff + 1);
  for (int n = 0; n <= cutoff; ++n) {
    if (abs_alpha == 0.0) {
      branch[n] = n == 0 ? params.norm_factor : 0.0;
      continue;
    }
    const double log_mag = -0.5 * abs_alpha * abs_alpha + n * std::log(abs_alpha) - 0.5 * std::lgamma(n + 1.0);
    branch[n] = params.norm_factor * std::polar(std::exp(log_mag), n * std::arg(alpha));
  }

  TwoModeFockState proto(cutoff, CVector::Zero(Basis::two_mode_fock(cutoff).dim()));
  CVector amps = proto.amplitudes();
  amps[proto.index(0, 0)] = 2.0 * branch[0];
  for (int n = 1; n <= cutoff; ++n) {
    amps[proto.index(n, 0)] = branch[n];
    amps[proto.index(0, n)] = branch[n];
  }
  const double deficit =
      2.0 * params.norm_factor * params.norm_factor * poisson_tail(abs_alpha * abs_alpha, cutoff);
  return TwoModeFockState(cutoff, canonical_phase(std::move(amps)), deficit);
}

}  // namespace qmetro
