#include "qmetro/squeeze.hpp"

#include "qmetro/linalg.hpp"
#include "qmetro/spinops.hpp"

#include <cmath>
#include <limits>

namespace qmetro {

namespace {

constexpr double kMinMeanSpin = 1e-10;
constexpr double kDegenerateRel = 1e-10;

// Unit vector perpendicular to n, built from the coordinate axis least aligned with n.
Vec3 perpendicular_to(const Vec3& n) {
  Vec3 ref{0.0, 0.0, 0.0};
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(n[i]) < std::abs(n[k])) k = i;
  ref[k] = 1.0;
  return normalized3(cross3(n, ref));
}

}  // namespace

SqueezingReport squeezing_parameters(const CollectiveSpinState& state, std::optional<XiHAxes> xi_h_axes) {
  const int n = state.n_particles();
  const auto ops = collective_ops(n);
  const CVector& psi = state.amplitudes();
  const Vec3 mean = mean_spin(state);

  SqueezingReport r;
  r.mean_spin_length = norm3(mean);
  r.mean_spin_vanishes = r.mean_spin_length < kMinMeanSpin;
  r.msd = r.mean_spin_vanishes ? Vec3{0.0, 0.0, 1.0} : normalized3(mean);

  const Vec3 e1 = perpendicular_to(r.msd);
  const Vec3 e2 = cross3(r.msd, e1);
  const auto component = [&](const Vec3& d) -> CMatrix { return d[0] * ops.jx + d[1] * ops.jy + d[2] * ops.jz; };
  const CVector v1 = component(e1) * psi;
  const CVector v2 = component(e2) * psi;
  const double m1 = psi.dot(v1).real();
  const double m2 = psi.dot(v2).real();
  const double a = v1.squaredNorm() - m1 * m1;
  const double c = v2.squaredNorm() - m2 * m2;
  const double b = v1.dot(v2).real() - m1 * m2;  // (1/2)<{J1, J2}> - <J1><J2>

  const double half_sum = 0.5 * (a + c);
  const double radius = std::hypot(0.5 * (a - c), b);
  r.min_perp_variance = std::max(0.0, half_sum - radius);
  const double lambda = half_sum - radius;
  double x = b, y = lambda - a;
  if (std::hypot(x, y) < std::hypot(lambda - c, b)) {
    x = lambda - c;
    y = b;
  }
  if (std::hypot(x, y) < 1e-300) {
    x = 1.0;
    y = 0.0;
  }
  r.min_perp_direction = normalized3({x * e1[0] + y * e2[0], x * e1[1] + y * e2[1], x * e1[2] + y * e2[2]});

  const double inf = std::numeric_limits<double>::infinity();
  r.xi_s_sq = 4.0 * r.min_perp_variance / n;
  r.xi_r_sq = r.mean_spin_vanishes ? inf : n * r.min_perp_variance / (r.mean_spin_length * r.mean_spin_length);

  const XiHAxes axes = xi_h_axes.value_or(XiHAxes{r.min_perp_direction, r.msd});
  const Vec3 alpha = normalized3(axes.first);
  const Vec3 gamma = normalized3(axes.second);
  const CVector va = component(alpha) * psi;
  const double ma = psi.dot(va).real();
  const double var_alpha = std::max(0.0, va.squaredNorm() - ma * ma);
  const double mean_gamma = std::abs(dot3(mean, gamma));
  r.xi_h_sq = mean_gamma < kMinMeanSpin ? inf : 2.0 * var_alpha / mean_gamma;
  return r;
}

CollectiveSpinState oat_evolve(const CollectiveSpinState& initial, const OatParams& p) {
  if (p.t == 0.0) return initial;
  const auto ops = collective_ops(initial.n_particles());
  const CMatrix h = p.omega * (std::cos(p.gamma) * ops.jx - std::sin(p.gamma) * ops.jy) + p.delta * ops.jz +
                    p.chi * ops.jz * ops.jz;
  return CollectiveSpinState(initial.n_particles(), evolve(h, p.t, initial.amplitudes()));
}

Observable bjj_hamiltonian(const BjjParams& p) {
  if (p.n_particles < 1) throw std::invalid_argument("bjj_hamiltonian: N must be >= 1");
  const auto ops = collective_ops(p.n_particles);
  const CMatrix h = -p.j_tun * ops.jx + p.delta * ops.jz + 0.5 * p.e_c * ops.jz * ops.jz;
  return Observable::dense(Basis::collective_spin(p.n_particles), h);
}

Spectrum ground_state(const Observable& hamiltonian) {
  const Eigensystem es = eigh(hamiltonian.to_dense());
  const Eigen::Index d = es.values.size();
  double gap = std::numeric_limits<double>::infinity();
  bool degenerate = false;
  if (d > 1) {
    gap = es.values[1] - es.values[0];
    const double range = es.values[d - 1] - es.values[0];
    degenerate = gap <= kDegenerateRel * range;
  }
  return {es.values, es.vectors, hamiltonian.basis(), gap, degenerate};
}

CollectiveSpinState ground_spin_state(const Spectrum& spectrum) {
  if (spectrum.basis.kind() != Basis::Kind::CollectiveSpin)
    throw std::invalid_argument("ground_spin_state: spectrum is not on a collective-spin basis");
  return CollectiveSpinState(spectrum.basis.size_parameter(), canonical_phase(spectrum.vectors.col(0)));
}

RegimeClassification classify_regime(const BjjParams& p) {
  if (p.n_particles < 1) throw std::invalid_argument("classify_regime: N must be >= 1");
  if (p.j_tun == 0.0) return {Regime::Fock, true};
  const double r = std::abs(p.e_c / p.j_tun);
  const double n = p.n_particles;
  if (r < 1.0 / n) return {Regime::Rabi, false};
  if (r > n) return {Regime::Fock, false};
  return {Regime::Josephson, false};
}

const char* regime_name(Regime regime) {
  switch (regime) {
    case Regime::Rabi: return "rabi";
    case Regime::Josephson: return "josephson";
    case Regime::Fock: return "fock";
  }
  return "unknown";
}

}  // namespace qmetro
