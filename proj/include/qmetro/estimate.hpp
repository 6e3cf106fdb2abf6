#pragma once

// Fisher information (classical and quantum), Cramer-Rao bounds, error
// propagation, POVM probabilities and a maximum-likelihood Monte-Carlo
// harness.

#include "qmetro/types.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace qmetro {

using ProbabilityVector = std::vector<double>;

// theta -> P(x_i | theta) over a fixed, finite outcome set.
struct DistributionFamily {
  std::vector<std::string> outcome_labels;
  std::function<ProbabilityVector(double)> prob_at;
  // Optional analytic dP/dtheta; central differences are used when empty.
  std::function<ProbabilityVector(double)> derivative_at;
};

// Evaluates the family at theta and checks P >= 0 (tiny negative round-off is
// clamped) and sum P = 1 within 1e-10; throws InvalidDistribution otherwise.
ProbabilityVector checked_probabilities(const DistributionFamily& family, double theta);

// Two-outcome family with P(heads) = theta.
DistributionFamily bernoulli_family();

// F(theta) = sum_i P_i (d ln P_i / d theta)^2, skipping outcomes with P < 1e-12.
double classical_fisher(const DistributionFamily& family, double theta);

// A validated POVM: construction checks a shared basis, positivity (minimum
// eigenvalue >= -1e-10) and completeness (sum = identity within 1e-10) and
// throws std::invalid_argument on failure.
class Povm {
 public:
  Povm(std::vector<Observable> elements, std::vector<std::string> labels = {});

  const std::vector<Observable>& elements() const { return elements_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const Basis& basis() const { return elements_.front().basis(); }
  std::size_t size() const { return elements_.size(); }

 private:
  std::vector<Observable> elements_;
  std::vector<std::string> labels_;
};

// Projectors onto the computational basis of any basis (Dicke levels or Fock pairs).
Povm computational_povm(Basis basis);

// Splits a +-1 valued observable into the projectors (1 + O)/2 and (1 - O)/2.
Povm sign_povm(const Observable& involution);

// P(x_n) = <psi| E(x_n) |psi>.
ProbabilityVector povm_probabilities(const State& state, const Povm& povm);

using StateFamily = std::function<State(double)>;

// theta -> POVM outcome distribution of the family's states.
DistributionFamily measured_family(StateFamily family, Povm povm);

// F_Q = 4 (<H^2> - <H>^2) on the initial state.
double qfi_generator(const State& initial, const Observable& generator);

struct StepPolicy {
  double h = 1e-4;
  bool richardson = true;
};

// F_Q = 4 [<psi'|psi'> - |<psi'|psi>|^2] with psi' from central differences.
// Throws InvalidFamily if any evaluated state drifts from unit norm by more
// than 1e-8.
double qfi_from_family(const StateFamily& family, double theta, const StepPolicy& step = {});

// 1 / sqrt(v F); +infinity for F = 0.  Throws for v < 1 or F < 0.
double cramer_rao(double fisher, long long repetitions);

struct ErrorPropagation {
  double delta_theta;  // +infinity at a stationary point
  double slope;        // d<O>/dtheta
  double noise;        // Delta O
  bool stationary;     // |slope| < 1e-12
};

// Delta theta = Delta O / |d<O>/dtheta|, the slope from Richardson central
// differences with h = 1e-5.
ErrorPropagation error_propagation(const std::function<double(double)>& signal,
                                   const std::function<double(double)>& noise, double theta);

struct PrecisionReport {
  double classical_fisher = 0.0;
  double quantum_fisher = 0.0;
  long long repetitions = 1;
  double crb = 0.0;
  double qcrb = 0.0;
  double error_prop = 0.0;
  bool stationary = false;
};

PrecisionReport make_report(double classical_fisher, double quantum_fisher, long long repetitions,
                            const ErrorPropagation& ep);

struct SearchInterval {
  double lo;
  double hi;
};

struct MonteCarloRun {
  std::uint64_t seed = 0;
  long long repetitions = 0;
  double theta_true = 0.0;
  std::vector<double> estimates;
  double mean_estimate = 0.0;
  double bias = 0.0;
  double mse = 0.0;
};

// Per trial: draws v outcomes from P(.|theta_true) and finds the maximum-
// likelihood theta by a 512-point grid over `interval` followed by
// golden-section refinement to width 1e-10.  Trial t draws from its own
// stream seeded from (seed, t), so results do not depend on evaluation order.
MonteCarloRun run_monte_carlo(const DistributionFamily& family, double theta_true, long long repetitions,
                              int trials, std::uint64_t seed, SearchInterval interval);

// Maximum-likelihood estimate for observed outcome counts.
double max_likelihood_estimate(const DistributionFamily& family, const std::vector<long long>& counts,
                               SearchInterval interval);

// Seed for trial `trial` of a run seeded with `seed` (SplitMix64 mixing).
std::uint64_t trial_stream_seed(std::uint64_t seed, std::uint64_t trial);

}  // namespace qmetro
