#include "qmetro/linalg.hpp"

#include <Eigen/Eigenvalues>

namespace qmetro {

Eigensystem eigh(const CMatrix& hermitian) {
  if (hermitian.rows() != hermitian.cols()) throw std::invalid_argument("eigh: matrix must be square");
  if (hermitian.rows() == 0) return {RVector(0), CMatrix(0, 0)};
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigh: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

CMatrix unitary_from_generator(const CMatrix& hermitian, double t) {
  const Eigensystem es = eigh(hermitian);
  CVector phases(es.values.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) phases[k] = std::polar(1.0, -t * es.values[k]);
  return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

CVector evolve(const CMatrix& hermitian, double t, const CVector& v) {
  const Eigensystem es = eigh(hermitian);
  CVector coeffs = es.vectors.adjoint() * v;
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) coeffs[k] *= std::polar(1.0, -t * es.values[k]);
  return es.vectors * coeffs;
}

}  // namespace qmetro
