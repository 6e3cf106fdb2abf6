#include "qmetro/spinops.hpp"

#include "qmetro/linalg.hpp"

#include <cmath>

namespace qmetro {

namespace {

constexpr double kAxisNormTolerance = 1e-10;
constexpr double kVarianceClamp = 1e-12;

CMatrix raising(int n) {
  const double j = 0.5 * n;
  CMatrix jp = CMatrix::Zero(n + 1, n + 1);
  for (int k = 0; k < n; ++k) {
    const double m = k - j;
    jp(k + 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }
  return jp;
}

}  // namespace

CollectiveSpinOperators collective_ops(int n_particles) {
  if (n_particles < 1) throw std::invalid_argument("collective_ops: N must be >= 1");
  const CMatrix jp = raising(n_particles);
  const CMatrix jm = jp.adjoint();
  CollectiveSpinOperators ops{n_particles, 0.5 * (jp + jm), (jp - jm) / cplx(0.0, 2.0),
                              CMatrix::Zero(n_particles + 1, n_particles + 1)};
  for (int k = 0; k <= n_particles; ++k) ops.jz(k, k) = k - 0.5 * n_particles;
  return ops;
}

Observable spin_component(int n_particles, const Vec3& direction) {
  const auto ops = collective_ops(n_particles);
  return Observable::dense(Basis::collective_spin(n_particles),
                           direction[0] * ops.jx + direction[1] * ops.jy + direction[2] * ops.jz);
}

CollectiveSpinState rotate(const CollectiveSpinState& state, const Vec3& axis, double angle) {
  if (std::abs(norm3(axis) - 1.0) > kAxisNormTolerance)
    throw std::invalid_argument("rotate: axis must be a unit vector");
  if (angle == 0.0) return state;
  if (axis[0] == 0.0 && axis[1] == 0.0) {
    CVector amps = state.amplitudes();
    for (Eigen::Index k = 0; k < amps.size(); ++k) amps[k] *= std::polar(1.0, -angle * axis[2] * state.m_of(k));
    return CollectiveSpinState(state.n_particles(), std::move(amps));
  }
  const auto ops = collective_ops(state.n_particles());
  const CMatrix generator = axis[0] * ops.jx + axis[1] * ops.jy + axis[2] * ops.jz;
  return CollectiveSpinState(state.n_particles(), evolve(generator, angle, state.amplitudes()));
}

Moments moments(const State& state, const Observable& obs) {
  if (!(basis_of(state) == obs.basis()))
    throw std::invalid_argument("moments: observable on " + obs.basis().describe() + " but state on " +
                                basis_of(state).describe());
  const CVector& psi = amplitudes_of(state);
  const CVector o_psi = obs.apply(psi);
  const double mean = psi.dot(o_psi).real();
  // ||(O - <O>) psi||^2 equals <O^2> - <O>^2 for a normalized state and does
  // not cancel catastrophically when the variance is small next to <O>^2.
  double variance = (o_psi - mean * psi).squaredNorm();
  variance -= mean * mean * (psi.squaredNorm() - 1.0);
  if (variance < 0.0 && variance > -kVarianceClamp) variance = 0.0;
  return {mean, variance};
}

Vec3 mean_spin(const CollectiveSpinState& state) {
  const auto ops = collective_ops(state.n_particles());
  const CVector& psi = state.amplitudes();
  return {psi.dot(ops.jx * psi).real(), psi.dot(ops.jy * psi).real(), psi.dot(ops.jz * psi).real()};
}

double norm3(const Vec3& v) { return std::sqrt(dot3(v, v)); }

Vec3 normalized3(const Vec3& v) {
  const double n = norm3(v);
  if (n == 0.0) throw std::invalid_argument("cannot normalize the zero vector");
  return {v[0] / n, v[1] / n, v[2] / n};
}

double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross3(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

}  // namespace qmetro
