#include "qmetro/estimate.hpp"
#include "qmetro/spinops.hpp"
#include "qmetro/statelib.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace qmetro;

namespace {

DistributionFamily binomial_family(int trials) {
  DistributionFamily f;
  for (int k = 0; k <= trials; ++k) f.outcome_labels.push_back(std::to_string(k));
  f.prob_at = [trials](double p) {
    ProbabilityVector out(trials + 1);
    for (int k = 0; k <= trials; ++k)
      out[k] = std::exp(std::lgamma(trials + 1.0) - std::lgamma(k + 1.0) - std::lgamma(trials - k + 1.0)) *
               std::pow(p, k) * std::pow(1.0 - p, trials - k);
    return out;
  };
  return f;
}

}  // namespace

TEST_CASE("Bernoulli Fisher information") {
  const auto b = bernoulli_family();
  for (double t : {0.1, 0.3, 0.5, 0.77, 0.95}) CHECK(classical_fisher(b, t) == doctest::Approx(1.0 / (t * (1 - t))).epsilon(1e-10));
}

TEST_CASE("numerical derivative for a family without an analytic one") {
  const auto f = binomial_family(5);
  for (double t : {0.2, 0.5, 0.8}) CHECK(classical_fisher(f, t) == doctest::Approx(5.0 / (t * (1 - t))).epsilon(1e-8));
}

TEST_CASE("invalid distributions are rejected") {
  DistributionFamily bad;
  bad.outcome_labels = {"a", "b"};
  bad.prob_at = [](double) { return ProbabilityVector{0.7, 0.4}; };
  CHECK_THROWS_AS(checked_probabilities(bad, 0.0), InvalidDistribution);
  CHECK_THROWS_AS(classical_fisher(bad, 0.0), InvalidDistribution);
  bad.prob_at = [](double) { return ProbabilityVector{1.1, -0.1}; };
  CHECK_THROWS_AS(checked_probabilities(bad, 0.0), InvalidDistribution);
  bad.prob_at = [](double) { return ProbabilityVector{1.0}; };
  CHECK_THROWS_AS(checked_probabilities(bad, 0.0), InvalidDistribution);
  bad.prob_at = [](double) { return ProbabilityVector{1.0 + 1e-14, -1e-14}; };
  const auto p = checked_probabilities(bad, 0.0);
  CHECK(p[1] == 0.0);
}

TEST_CASE("POVM validation") {
  const Basis b = Basis::collective_spin(1);
  RVector half = RVector::Constant(2, 0.5);
  CHECK_NOTHROW(Povm({Observable::diagonal(b, half), Observable::diagonal(b, half)}));
  CHECK_THROWS_AS(Povm({Observable::diagonal(b, half)}), std::invalid_argument);
  RVector neg(2);
  neg << 1.5, 0.5;
  RVector comp(2);
  comp << -0.5, 0.5;
  CHECK_THROWS_AS(Povm({Observable::diagonal(b, neg), Observable::diagonal(b, comp)}), std::invalid_argument);
  CHECK_THROWS_AS(Povm({Observable::diagonal(b, half), Observable::diagonal(Basis::collective_spin(2), RVector::Constant(3, 0.5))}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Povm({}), std::invalid_argument);
}

TEST_CASE("computational POVM gives squared amplitudes") {
  const auto s = css(4, 1.0, 0.3);
  const auto p = povm_probabilities(s, computational_povm(s.basis()));
  for (int k = 0; k <= 4; ++k) CHECK(p[k] == doctest::Approx(std::norm(s.amplitudes()[k])));
  CHECK_THROWS_AS(povm_probabilities(s, computational_povm(Basis::collective_spin(3))), std::invalid_argument);
}

TEST_CASE("quantum Fisher information, generator and family forms") {
  for (int n : {1, 6, 25}) {
    const Observable jz = spin_component(n, {0, 0, 1});
    const auto eq = css(n, M_PI / 2, 0.4);
    CHECK(qfi_generator(eq, jz) == doctest::Approx(n).epsilon(1e-12));
    const auto fam = [eq](double t) -> State { return rotate(eq, {0, 0, 1}, t); };
    CHECK(qfi_from_family(fam, 0.3) == doctest::Approx(n).epsilon(1e-8));
    const auto g = ghz(n);
    CHECK(qfi_generator(g, jz) == doctest::Approx(double(n) * n).epsilon(1e-12));
    const auto gfam = [g](double t) -> State { return rotate(g, {0, 0, 1}, t); };
    CHECK(qfi_from_family(gfam, -0.2) == doctest::Approx(double(n) * n).epsilon(1e-8));
    StepPolicy plain;
    plain.richardson = false;
    plain.h = 1e-5;
    CHECK(qfi_from_family(gfam, -0.2, plain) == doctest::Approx(double(n) * n).epsilon(1e-5));
  }
}

TEST_CASE("QFI rejects unnormalized or basis-changing families") {
  const auto s = css(3, 1.0, 0.0);
  const auto grow = [s](double t) -> State { return CollectiveSpinState(3, s.amplitudes() * (1.0 + t)); };
  CHECK_THROWS_AS(qfi_from_family(grow, 0.5), InvalidFamily);
  const auto hop = [](double t) -> State {
    if (t > 0) return css(3, 1.0, t);
    return css(4, 1.0, t);
  };
  CHECK_THROWS_AS(qfi_from_family(hop, 0.0), InvalidFamily);
}

TEST_CASE("Cramer-Rao bound") {
  CHECK(cramer_rao(4.0, 25) == doctest::Approx(0.1));
  CHECK(std::isinf(cramer_rao(0.0, 10)));
  CHECK_THROWS_AS(cramer_rao(1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(cramer_rao(-1.0, 1), std::invalid_argument);
}

TEST_CASE("error propagation") {
  const auto ep = error_propagation([](double x) { return std::sin(x); }, [](double) { return 0.5; }, 0.3);
  CHECK(ep.slope == doctest::Approx(std::cos(0.3)).epsilon(1e-10));
  CHECK(ep.delta_theta == doctest::Approx(0.5 / std::cos(0.3)).epsilon(1e-10));
  CHECK_FALSE(ep.stationary);
  const auto flat = error_propagation([](double x) { return std::cos(x); }, [](double) { return 0.5; }, 0.0);
  CHECK(flat.stationary);
  CHECK(std::isinf(flat.delta_theta));
}

TEST_CASE("make_report combines both bounds") {
  const auto ep = error_propagation([](double x) { return x; }, [](double) { return 1.0; }, 0.0);
  const auto r = make_report(4.0, 9.0, 100, ep);
  CHECK(r.crb == doctest::Approx(0.05));
  CHECK(r.qcrb == doctest::Approx(1.0 / 30.0));
  CHECK(r.error_prop == doctest::Approx(1.0));
  CHECK(r.repetitions == 100);
}

TEST_CASE("maximum likelihood for Bernoulli counts is the sample frequency") {
  const auto b = bernoulli_family();
  for (long long k : {1LL, 37LL, 500LL, 999LL}) {
    const double est = max_likelihood_estimate(b, {k, 1000 - k}, {1e-6, 1.0 - 1e-6});
    CHECK(est == doctest::Approx(k / 1000.0).epsilon(1e-8));
  }
}

TEST_CASE("flat likelihood returns the first grid point") {
  DistributionFamily flat;
  flat.outcome_labels = {"a", "b"};
  flat.prob_at = [](double) { return ProbabilityVector{0.5, 0.5}; };
  CHECK(max_likelihood_estimate(flat, {3, 4}, {0.2, 0.9}) == 0.2);
}

TEST_CASE("Monte Carlo runs are reproducible and seed dependent") {
  const auto b = bernoulli_family();
  const auto a1 = run_monte_carlo(b, 0.3, 200, 20, 5, {0.0, 1.0});
  const auto a2 = run_monte_carlo(b, 0.3, 200, 20, 5, {0.0, 1.0});
  const auto c = run_monte_carlo(b, 0.3, 200, 20, 6, {0.0, 1.0});
  CHECK(a1.estimates == a2.estimates);
  CHECK(a1.estimates != c.estimates);
  double mean = 0.0, mse = 0.0;
  for (double e : a1.estimates) {
    mean += e / 20.0;
    mse += (e - 0.3) * (e - 0.3) / 20.0;
  }
  CHECK(a1.mean_estimate == doctest::Approx(mean));
  CHECK(a1.bias == doctest::Approx(mean - 0.3));
  CHECK(a1.mse == doctest::Approx(mse));
  CHECK_THROWS_AS(run_monte_carlo(b, 0.3, 0, 20, 5, {0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(run_monte_carlo(b, 1.3, 10, 20, 5, {0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("trial stream seeds are distinct") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t t = 0; t < 1000; ++t) seen.insert(trial_stream_seed(42, t));
  CHECK(seen.size() == 1000);
  CHECK(trial_stream_seed(1, 0) != trial_stream_seed(2, 0));
}

TEST_CASE("Fisher information of uninformative and relabeled families") {
  DistributionFamily fixed;
  fixed.outcome_labels = {"a", "b", "c"};
  fixed.prob_at = [](double) { return ProbabilityVector{0.2, 0.5, 0.3}; };
  CHECK(classical_fisher(fixed, 0.7) == doctest::Approx(0.0).epsilon(1e-12));

  const auto base = binomial_family(5);
  DistributionFamily shuffled;
  const std::vector<int> order{3, 0, 5, 1, 4, 2};
  for (int i : order) shuffled.outcome_labels.push_back(base.outcome_labels[i]);
  shuffled.prob_at = [base, order](double p) {
    const auto q = base.prob_at(p);
    ProbabilityVector out;
    for (int i : order) out.push_back(q[i]);
    return out;
  };
  for (double p : {0.1, 0.45, 0.8}) CHECK(std::abs(classical_fisher(shuffled, p) - classical_fisher(base, p)) < 1e-8);
}

TEST_CASE("elementary POVMs") {
  const auto s = css(3, 0.9, 1.2);
  const Povm identity({identity_observable(s.basis())});
  const auto p = povm_probabilities(s, identity);
  REQUIRE(p.size() == 1);
  CHECK(p[0] == doctest::Approx(1.0).epsilon(1e-14));

  const int n = 9;
  const auto counts = povm_probabilities(css(n, M_PI / 2, 0.0), computational_povm(Basis::collective_spin(n)));
  const auto binom = binomial_family(n).prob_at(0.5);
  for (int k = 0; k <= n; ++k) CHECK(counts[k] == doctest::Approx(binom[k]).epsilon(1e-12));
}

TEST_CASE("QFI of trivial families") {
  const Observable jz = spin_component(6, {0, 0, 1});
  const auto d = CollectiveSpinState::dicke(6, 1.0);
  CHECK(qfi_generator(d, jz) == doctest::Approx(0.0).epsilon(1e-14));
  const auto s = css(6, 1.1, -0.4);
  const auto phase = [s](double t) -> State { return CollectiveSpinState(6, s.amplitudes() * std::polar(1.0, t)); };
  CHECK(std::abs(qfi_from_family(phase, 0.3)) < 1e-8);
}

TEST_CASE("Cramer-Rao bound at the standard and Heisenberg limits") {
  for (int n : {4, 100}) {
    CHECK(cramer_rao(1.0, n) == doctest::Approx(1.0 / std::sqrt(n)));
    CHECK(cramer_rao(double(n) * n, 1) == doctest::Approx(1.0 / n));
  }
}

TEST_CASE("a single-outcome family carries no information") {
  DistributionFamily certain;
  certain.outcome_labels = {"only"};
  certain.prob_at = [](double) { return ProbabilityVector{1.0}; };
  CHECK(std::isinf(cramer_rao(classical_fisher(certain, 0.5), 1)));
  const auto run = run_monte_carlo(certain, 0.5, 1, 10, 3, {0.0, 2.0});
  for (double e : run.estimates) CHECK(e == 0.0);
  CHECK(run.mse == doctest::Approx(0.25));
}
