#include "qmetro/types.hpp"

#include <cmath>

namespace qmetro {

namespace {

constexpr double kHermitianTolerance = 1e-14;

}  // namespace

Basis Basis::collective_spin(int n_particles) {
  if (n_particles < 1) throw std::invalid_argument("collective spin basis needs N >= 1");
  return Basis(Kind::CollectiveSpin, n_particles);
}

Basis Basis::two_mode_fock(int cutoff) {
  if (cutoff < 0) throw std::invalid_argument("Fock cutoff must be non-negative");
  return Basis(Kind::TwoModeFock, cutoff);
}

Eigen::Index Basis::dim() const {
  if (kind_ == Kind::CollectiveSpin) return size_ + 1;
  return static_cast<Eigen::Index>(size_ + 1) * (size_ + 1);
}

std::string Basis::describe() const {
  if (kind_ == Kind::CollectiveSpin) return "collective-spin(N=" + std::to_string(size_) + ")";
  return "two-mode-fock(cutoff=" + std::to_string(size_) + ")";
}

CollectiveSpinState::CollectiveSpinState(int n_particles, CVector amplitudes)
    : n_(n_particles), amps_(std::move(amplitudes)) {
  if (n_ < 1) throw std::invalid_argument("CollectiveSpinState needs N >= 1");
  if (amps_.size() != n_ + 1)
    throw std::invalid_argument("CollectiveSpinState amplitude vector must have length N + 1");
  if (!amps_.allFinite()) throw std::invalid_argument("CollectiveSpinState amplitudes must be finite");
}

CollectiveSpinState CollectiveSpinState::dicke(int n_particles, double m) {
  CVector amps = CVector::Zero(n_particles + 1);
  CollectiveSpinState s(n_particles, amps);
  s.amps_[s.index_of(m)] = 1.0;
  return s;
}

Eigen::Index CollectiveSpinState::index_of(double m) const {
  const double k = m + total_spin();
  const double kr = std::round(k);
  if (std::abs(k - kr) > 1e-9 || kr < 0 || kr > n_)
    throw std::invalid_argument("m = " + std::to_string(m) + " is not a valid Dicke label for N = " +
                                std::to_string(n_));
  return static_cast<Eigen::Index>(kr);
}

TwoModeFockState::TwoModeFockState(int cutoff, CVector amplitudes, double truncation_deficit)
    : cutoff_(cutoff), amps_(std::move(amplitudes)), deficit_(truncation_deficit) {
  if (cutoff_ < 0) throw std::invalid_argument("TwoModeFockState cutoff must be non-negative");
  if (amps_.size() != Basis::two_mode_fock(cutoff_).dim())
    throw std::invalid_argument("TwoModeFockState amplitude vector must have length (cutoff + 1)^2");
  if (!amps_.allFinite()) throw std::invalid_argument("TwoModeFockState amplitudes must be finite");
  if (!(deficit_ >= 0.0)) throw std::invalid_argument("truncation deficit must be non-negative");
}

TwoModeFockState TwoModeFockState::fock(int cutoff, int n_a, int n_b) {
  TwoModeFockState s(cutoff, CVector::Zero(Basis::two_mode_fock(cutoff).dim()));
  s.amps_[s.index(n_a, n_b)] = 1.0;
  return s;
}

Eigen::Index TwoModeFockState::index(int n_a, int n_b) const {
  if (n_a < 0 || n_b < 0 || n_a > cutoff_ || n_b > cutoff_)
    throw std::out_of_range("occupation (" + std::to_string(n_a) + ", " + std::to_string(n_b) +
                            ") outside cutoff " + std::to_string(cutoff_));
  return static_cast<Eigen::Index>(n_a) * (cutoff_ + 1) + n_b;
}

int TwoModeFockState::max_total_number() const {
  int best = -1;
  for (int na = 0; na <= cutoff_; ++na)
    for (int nb = 0; nb <= cutoff_; ++nb)
      if (amps_[index(na, nb)] != cplx(0.0) && na + nb > best) best = na + nb;
  return best;
}

Basis basis_of(const State& state) {
  return std::visit([](const auto& s) { return s.basis(); }, state);
}

const CVector& amplitudes_of(const State& state) {
  return std::visit([](const auto& s) -> const CVector& { return s.amplitudes(); }, state);
}

State with_amplitudes(const State& like, CVector amplitudes) {
  if (const auto* spin = std::get_if<CollectiveSpinState>(&like))
    return CollectiveSpinState(spin->n_particles(), std::move(amplitudes));
  const auto& fock = std::get<TwoModeFockState>(like);
  return TwoModeFockState(fock.cutoff(), std::move(amplitudes), fock.truncation_deficit());
}

Observable Observable::dense(Basis basis, CMatrix matrix) {
  if (matrix.rows() != basis.dim() || matrix.cols() != basis.dim())
    throw std::invalid_argument("observable dimension does not match " + basis.describe());
  const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
  const double asym = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  if (!(asym <= kHermitianTolerance * scale))
    throw std::invalid_argument("observable is not Hermitian (max |A - A^H| = " + std::to_string(asym) +
                                ")");
  // Remove the sub-tolerance anti-Hermitian residue so expectations are real.
  CMatrix herm = 0.5 * (matrix + matrix.adjoint());
  return Observable(basis, std::move(herm));
}

Observable Observable::diagonal(Basis basis, RVector diag) {
  if (diag.size() != basis.dim())
    throw std::invalid_argument("observable dimension does not match " + basis.describe());
  if (!diag.allFinite()) throw std::invalid_argument("observable entries must be finite");
  return Observable(basis, std::move(diag));
}

CMatrix Observable::to_dense() const {
  if (const auto* d = std::get_if<RVector>(&rep_)) return d->cast<cplx>().asDiagonal();
  return std::get<CMatrix>(rep_);
}

CVector Observable::apply(const CVector& v) const {
  if (v.size() != dim()) throw std::invalid_argument("vector dimension does not match observable");
  if (const auto* d = std::get_if<RVector>(&rep_)) return d->cast<cplx>().cwiseProduct(v);
  return std::get<CMatrix>(rep_) * v;
}

Observable Observable::operator+(const Observable& rhs) const {
  if (!(basis_ == rhs.basis_)) throw std::invalid_argument("cannot add observables on different bases");
  if (is_diagonal() && rhs.is_diagonal())
    return Observable(basis_, RVector(diagonal_entries() + rhs.diagonal_entries()));
  return Observable(basis_, CMatrix(to_dense() + rhs.to_dense()));
}

Observable Observable::operator*(double s) const {
  if (is_diagonal()) return Observable(basis_, RVector(s * diagonal_entries()));
  return Observable(basis_, CMatrix(s * std::get<CMatrix>(rep_)));
}

Observable identity_observable(Basis basis) {
  return Observable::diagonal(basis, RVector::Ones(basis.dim()));
}

double fidelity(const State& a, const State& b) {
  if (!(basis_of(a) == basis_of(b))) throw std::invalid_argument("fidelity: basis mismatch");
  return std::norm(amplitudes_of(a).dot(amplitudes_of(b)));
}

CVector canonical_phase(CVector amplitudes) {
  if (amplitudes.size() == 0) return amplitudes;
  const double peak = amplitudes.cwiseAbs().maxCoeff();
  if (peak == 0.0) return amplitudes;
  for (Eigen::Index k = 0; k < amplitudes.size(); ++k) {
    const double mag = std::abs(amplitudes[k]);
    if (mag > 1e-12 * peak) {
      const cplx phase = std::conj(amplitudes[k]) / mag;
      amplitudes *= phase;
      amplitudes[k] = mag;
      break;
    }
  }
  return amplitudes;
}

}  // namespace qmetro
