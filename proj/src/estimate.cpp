#include "qmetro/estimate.hpp"

#include "qmetro/linalg.hpp"
#include "qmetro/numeric.hpp"
#include "qmetro/spinops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace qmetro {

namespace {

constexpr double kNegativeProbabilityTolerance = 1e-12;
constexpr double kNormalizationTolerance = 1e-10;
constexpr double kZeroProbabilityCutoff = 1e-12;
constexpr double kProbabilityStep = 1e-5;
constexpr double kPovmTolerance = 1e-10;
constexpr double kFamilyNormTolerance = 1e-8;
constexpr double kStationarySlope = 1e-12;
constexpr int kMleGridPoints = 512;
constexpr double kMleWidth = 1e-10;

std::vector<double> operator-(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// 53-bit uniform double in [0, 1), identical on every platform.
double uniform01(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

}  // namespace

ProbabilityVector checked_probabilities(const DistributionFamily& family, double theta) {
  ProbabilityVector p = family.prob_at(theta);
  if (!family.outcome_labels.empty() && p.size() != family.outcome_labels.size())
    throw InvalidDistribution("distribution returned " + std::to_string(p.size()) + " probabilities for " +
                              std::to_string(family.outcome_labels.size()) + " outcomes");
  double total = 0.0;
  for (double& x : p) {
    if (!std::isfinite(x) || x < -kNegativeProbabilityTolerance)
      throw InvalidDistribution("negative or non-finite probability " + std::to_string(x) +
                                " at theta = " + std::to_string(theta));
    x = std::max(x, 0.0);
    total += x;
  }
  if (std::abs(total - 1.0) > kNormalizationTolerance)
    throw InvalidDistribution("probabilities sum to " + std::to_string(total) + " at theta = " +
                              std::to_string(theta));
  return p;
}

DistributionFamily bernoulli_family() {
  return {{"heads", "tails"},
          [](double t) { return ProbabilityVector{t, 1.0 - t}; },
          [](double) { return ProbabilityVector{1.0, -1.0}; }};
}

double classical_fisher(const DistributionFamily& family, double theta) {
  const ProbabilityVector p = checked_probabilities(family, theta);
  ProbabilityVector dp;
  if (family.derivative_at) {
    dp = family.derivative_at(theta);
    if (dp.size() != p.size()) throw InvalidDistribution("derivative size does not match outcome count");
  } else {
    const double h = kProbabilityStep;
    const auto at = [&](double x) { return checked_probabilities(family, x); };
    const ProbabilityVector wide = at(theta + h) - at(theta - h);
    const ProbabilityVector narrow = at(theta + 0.5 * h) - at(theta - 0.5 * h);
    dp.resize(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) dp[i] = (4.0 * narrow[i] / h - wide[i] / (2.0 * h)) / 3.0;
  }
  double fisher = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] >= kZeroProbabilityCutoff) fisher += dp[i] * dp[i] / p[i];
  return fisher;
}

Povm::Povm(std::vector<Observable> elements, std::vector<std::string> labels)
    : elements_(std::move(elements)), labels_(std::move(labels)) {
  if (elements_.empty()) throw std::invalid_argument("POVM needs at least one element");
  if (!labels_.empty() && labels_.size() != elements_.size())
    throw std::invalid_argument("POVM label count does not match element count");
  const Basis basis = elements_.front().basis();
  const bool all_diagonal =
      std::all_of(elements_.begin(), elements_.end(), [](const Observable& e) { return e.is_diagonal(); });
  for (std::size_t n = 0; n < elements_.size(); ++n) {
    const Observable& e = elements_[n];
    if (!(e.basis() == basis)) throw std::invalid_argument("POVM elements live on different bases");
    const double min_eig = e.is_diagonal() ? e.diagonal_entries().minCoeff() : eigh(e.to_dense()).values.minCoeff();
    if (min_eig < -kPovmTolerance)
      throw std::invalid_argument("POVM element " + std::to_string(n) + " is not positive semidefinite (min eigenvalue " +
                                  std::to_string(min_eig) + ")");
  }
  double deviation = 0.0;
  if (all_diagonal) {
    RVector sum = RVector::Zero(basis.dim());
    for (const auto& e : elements_) sum += e.diagonal_entries();
    deviation = (sum.array() - 1.0).abs().maxCoeff();
  } else {
    CMatrix sum = CMatrix::Zero(basis.dim(), basis.dim());
    for (const auto& e : elements_) sum += e.to_dense();
    deviation = (sum - CMatrix::Identity(basis.dim(), basis.dim())).cwiseAbs().maxCoeff();
  }
  if (deviation > kPovmTolerance)
    throw std::invalid_argument("POVM elements do not sum to the identity (max deviation " +
                                std::to_string(deviation) + ")");
}

Povm computational_povm(Basis basis) {
  std::vector<Observable> elements;
  std::vector<std::string> labels;
  const Eigen::Index dim = basis.dim();
  elements.reserve(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    RVector d = RVector::Zero(dim);
    d[k] = 1.0;
    elements.push_back(Observable::diagonal(basis, std::move(d)));
    if (basis.kind() == Basis::Kind::CollectiveSpin) {
      labels.push_back("m=" + std::to_string(static_cast<double>(k) - 0.5 * basis.size_parameter()));
    } else {
      const int c = basis.size_parameter();
      labels.push_back("(" + std::to_string(k / (c + 1)) + "," + std::to_string(k % (c + 1)) + ")");
    }
  }
  return Povm(std::move(elements), std::move(labels));
}

Povm sign_povm(const Observable& involution) {
  const Observable id = identity_observable(involution.basis());
  return Povm({(id + involution) * 0.5, (id + involution * -1.0) * 0.5}, {"+1", "-1"});
}

ProbabilityVector povm_probabilities(const State& state, const Povm& povm) {
  if (!(basis_of(state) == povm.basis()))
    throw std::invalid_argument("povm_probabilities: POVM on " + povm.basis().describe() + " but state on " +
                                basis_of(state).describe());
  const CVector& psi = amplitudes_of(state);
  ProbabilityVector p;
  p.reserve(povm.size());
  for (const auto& e : povm.elements()) p.push_back(psi.dot(e.apply(psi)).real());
  return p;
}

DistributionFamily measured_family(StateFamily family, Povm povm) {
  DistributionFamily out;
  out.outcome_labels = povm.labels();
  if (out.outcome_labels.empty())
    for (std::size_t n = 0; n < povm.size(); ++n) out.outcome_labels.push_back("x" + std::to_string(n));
  out.prob_at = [family = std::move(family), povm = std::move(povm)](double theta) {
    return povm_probabilities(family(theta), povm);
  };
  return out;
}

double qfi_generator(const State& initial, const Observable& generator) {
  return 4.0 * moments(initial, generator).variance;
}

double qfi_from_family(const StateFamily& family, double theta, const StepPolicy& step) {
  if (!(step.h > 0.0)) throw std::invalid_argument("qfi_from_family: step must be positive");
  const State center = family(theta);
  const Basis basis = basis_of(center);
  const auto amplitudes = [&](double x) -> CVector {
    const State s = family(x);
    if (!(basis_of(s) == basis)) throw InvalidFamily("state family changes basis between parameter values");
    const double drift = std::abs(amplitudes_of(s).squaredNorm() - 1.0);
    if (drift > kFamilyNormTolerance)
      throw InvalidFamily("state family norm drifts by " + std::to_string(drift) + " at theta = " +
                          std::to_string(x));
    return amplitudes_of(s);
  };
  const CVector psi = amplitudes(theta);
  CVector dpsi;
  if (step.richardson) {
    dpsi = richardson_derivative_vector(amplitudes, theta, step.h);
  } else {
    dpsi = (amplitudes(theta + step.h) - amplitudes(theta - step.h)) / (2.0 * step.h);
  }
  const double fq = 4.0 * (dpsi.squaredNorm() - std::norm(psi.dot(dpsi)));
  return std::max(fq, 0.0);
}

double cramer_rao(double fisher, long long repetitions) {
  if (repetitions < 1) throw std::invalid_argument("cramer_rao: repetitions must be >= 1");
  if (!(fisher >= 0.0)) throw std::invalid_argument("cramer_rao: Fisher information must be non-negative");
  if (fisher == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / std::sqrt(static_cast<double>(repetitions) * fisher);
}

ErrorPropagation error_propagation(const std::function<double(double)>& signal,
                                   const std::function<double(double)>& noise, double theta) {
  const double slope = richardson_derivative(signal, theta, kProbabilityStep);
  const double sigma = noise(theta);
  if (std::abs(slope) < kStationarySlope) return {std::numeric_limits<double>::infinity(), slope, sigma, true};
  return {sigma / std::abs(slope), slope, sigma, false};
}

PrecisionReport make_report(double classical_fisher, double quantum_fisher, long long repetitions,
                            const ErrorPropagation& ep) {
  PrecisionReport r;
  r.classical_fisher = classical_fisher;
  r.quantum_fisher = quantum_fisher;
  r.repetitions = repetitions;
  r.crb = cramer_rao(classical_fisher, repetitions);
  r.qcrb = cramer_rao(quantum_fisher, repetitions);
  r.error_prop = ep.delta_theta;
  r.stationary = ep.stationary;
  return r;
}

std::uint64_t trial_stream_seed(std::uint64_t seed, std::uint64_t trial) {
  return splitmix64(splitmix64(seed) ^ splitmix64(trial + 0x632be59bd9b4e019ULL));
}

double max_likelihood_estimate(const DistributionFamily& family, const std::vector<long long>& counts,
                               SearchInterval interval) {
  const auto neg_log_likelihood = [&](double theta) {
    const ProbabilityVector p = checked_probabilities(family, theta);
    if (p.size() != counts.size()) throw InvalidDistribution("outcome count mismatch in likelihood");
    double nll = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (counts[i] == 0) continue;
      if (p[i] <= 0.0) return std::numeric_limits<double>::infinity();
      nll -= static_cast<double>(counts[i]) * std::log(p[i]);
    }
    return nll;
  };
  return grid_then_golden_minimize(neg_log_likelihood, interval.lo, interval.hi, kMleGridPoints, kMleWidth).x;
}

MonteCarloRun run_monte_carlo(const DistributionFamily& family, double theta_true, long long repetitions,
                              int trials, std::uint64_t seed, SearchInterval interval) {
  if (repetitions < 1) throw std::invalid_argument("run_monte_carlo: repetitions must be >= 1");
  if (trials < 1) throw std::invalid_argument("run_monte_carlo: trials must be >= 1");
  if (!(interval.lo < interval.hi)) throw std::invalid_argument("run_monte_carlo: empty search interval");
  if (theta_true < interval.lo || theta_true > interval.hi)
    throw std::invalid_argument("run_monte_carlo: theta_true lies outside the search interval");

  const ProbabilityVector p = checked_probabilities(family, theta_true);
  std::vector<double> cdf(p.size());
  std::partial_sum(p.begin(), p.end(), cdf.begin());

  MonteCarloRun run;
  run.seed = seed;
  run.repetitions = repetitions;
  run.theta_true = theta_true;
  run.estimates.reserve(trials);
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 gen(trial_stream_seed(seed, static_cast<std::uint64_t>(t)));
    std::vector<long long> counts(p.size(), 0);
    for (long long k = 0; k < repetitions; ++k) {
      const double u = uniform01(gen) * cdf.back();
      auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      if (it == cdf.end()) --it;
      ++counts[static_cast<std::size_t>(it - cdf.begin())];
    }
    run.estimates.push_back(max_likelihood_estimate(family, counts, interval));
  }
  double sum = 0.0;
  double sq = 0.0;
  for (double e : run.estimates) {
    sum += e;
    sq += (e - theta_true) * (e - theta_true);
  }
  run.mean_estimate = sum / trials;
  run.bias = run.mean_estimate - theta_true;
  run.mse = sq / trials;
  return run;
}

}  // namespace qmetro
