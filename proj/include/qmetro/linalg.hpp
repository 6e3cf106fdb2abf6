#pragma once

#include "qmetro/types.hpp"

namespace qmetro {

struct Eigensystem {
  RVector values;   // ascending
  CMatrix vectors;  // columns are the matching orthonormal eigenvectors
};

// Full spectral decomposition of a Hermitian matrix.
Eigensystem eigh(const CMatrix& hermitian);

// exp(-i t H) for Hermitian H, built from the spectral decomposition.
CMatrix unitary_from_generator(const CMatrix& hermitian, double t);

// exp(-i t H) |v> without forming the full propagator.
CVector evolve(const CMatrix& hermitian, double t, const CVector& v);

}  // namespace qmetro
