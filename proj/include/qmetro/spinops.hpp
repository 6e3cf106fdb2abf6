#pragma once

// Collective-spin algebra in the Dicke basis.

#include "qmetro/types.hpp"

namespace qmetro {

struct CollectiveSpinOperators {
  int n_particles;
  CMatrix jx, jy, jz;
};

// Jx, Jy, Jz for spin J = N/2 from the ladder construction
//   J+ |J,m> = sqrt(J(J+1) - m(m+1)) |J,m+1>.
// Throws std::invalid_argument for N < 1.
CollectiveSpinOperators collective_ops(int n_particles);

// n.J as an observable on the collective-spin basis of N particles.
Observable spin_component(int n_particles, const Vec3& direction);

// exp(-i angle (n.J)) |state>.  The axis must have unit norm within 1e-10.
CollectiveSpinState rotate(const CollectiveSpinState& state, const Vec3& axis, double angle);

struct Moments {
  double mean;
  double variance;
};

// <O> and <O^2> - <O>^2 on a normalized state.  Throws std::invalid_argument
// when the observable and state live on different bases.
Moments moments(const State& state, const Observable& obs);

// (<Jx>, <Jy>, <Jz>).
Vec3 mean_spin(const CollectiveSpinState& state);

double norm3(const Vec3& v);
Vec3 normalized3(const Vec3& v);
double dot3(const Vec3& a, const Vec3& b);
Vec3 cross3(const Vec3& a, const Vec3& b);

}  // namespace qmetro
