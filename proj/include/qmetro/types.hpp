#pragma once

// Core value types shared by every module: the two Hilbert-space bases, the
// pure-state containers that live in them, and Hermitian observables.
//
// Conventions (fixed project-wide, hbar = 1):
//   * Collective spin of N two-level particles has J = N/2 and is stored in
//     the Dicke basis |J,m> in ascending m, so index k <-> m = k - J.
//   * Two-mode Fock states with per-mode cutoff c store amplitude (n_a, n_b)
//     at index n_a * (c + 1) + n_b (lexicographic).

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <variant>

namespace qmetro {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using Vec3 = std::array<double, 3>;

// Error kinds.  All derive from std::invalid_argument or std::runtime_error so
// callers that only care about "bad input" vs "failed computation" can catch
// the standard bases.
struct InvalidDistribution : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct InvalidFamily : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct TruncationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Basis {
 public:
  enum class Kind { CollectiveSpin, TwoModeFock };

  static Basis collective_spin(int n_particles);
  static Basis two_mode_fock(int cutoff);

  Kind kind() const { return kind_; }
  // N for a collective-spin basis, the per-mode cutoff for a Fock basis.
  int size_parameter() const { return size_; }
  Eigen::Index dim() const;
  std::string describe() const;

  friend bool operator==(const Basis&, const Basis&) = default;

 private:
  Basis(Kind kind, int size) : kind_(kind), size_(size) {}
  Kind kind_;
  int size_;
};

class CollectiveSpinState {
 public:
  // Amplitudes in ascending-m order; length must be N + 1.
  CollectiveSpinState(int n_particles, CVector amplitudes);

  // Dicke state |J, m>; m must be one of -J, -J+1, ..., J.
  static CollectiveSpinState dicke(int n_particles, double m);

  int n_particles() const { return n_; }
  double total_spin() const { return 0.5 * n_; }
  Basis basis() const { return Basis::collective_spin(n_); }
  const CVector& amplitudes() const { return amps_; }
  double m_of(Eigen::Index k) const { return static_cast<double>(k) - total_spin(); }
  Eigen::Index index_of(double m) const;
  cplx amplitude(double m) const { return amps_[index_of(m)]; }
  double norm_squared() const { return amps_.squaredNorm(); }

 private:
  int n_;
  CVector amps_;
};

class TwoModeFockState {
 public:
  // truncation_deficit records probability weight the ideal state carries
  // outside the stored cutoff; it is never folded back by renormalization.
  TwoModeFockState(int cutoff, CVector amplitudes, double truncation_deficit = 0.0);

  static TwoModeFockState fock(int cutoff, int n_a, int n_b);

  int cutoff() const { return cutoff_; }
  Basis basis() const { return Basis::two_mode_fock(cutoff_); }
  const CVector& amplitudes() const { return amps_; }
  Eigen::Index index(int n_a, int n_b) const;
  cplx at(int n_a, int n_b) const { return amps_[index(n_a, n_b)]; }
  double norm_squared() const { return amps_.squaredNorm(); }
  double truncation_deficit() const { return deficit_; }
  // Largest n_a + n_b carrying a nonzero amplitude (-1 for the zero vector).
  int max_total_number() const;

 private:
  int cutoff_;
  CVector amps_;
  double deficit_;
};

using State = std::variant<CollectiveSpinState, TwoModeFockState>;

Basis basis_of(const State& state);
const CVector& amplitudes_of(const State& state);
// Same basis, new amplitudes (the truncation deficit of a Fock state carries over).
State with_amplitudes(const State& like, CVector amplitudes);

// Dense Hermitian matrix tagged with the basis it acts on.  Operators that
// are diagonal in the storage basis (number operators, parities, Dicke
// projectors) keep only their diagonal so that large Fock spaces stay cheap.
class Observable {
 public:
  static Observable dense(Basis basis, CMatrix matrix);
  static Observable diagonal(Basis basis, RVector diag);

  const Basis& basis() const { return basis_; }
  Eigen::Index dim() const { return basis_.dim(); }
  bool is_diagonal() const { return std::holds_alternative<RVector>(rep_); }
  const RVector& diagonal_entries() const { return std::get<RVector>(rep_); }
  CMatrix to_dense() const;
  CVector apply(const CVector& v) const;

  Observable operator+(const Observable& rhs) const;
  Observable operator*(double s) const;

 private:
  Observable(Basis basis, std::variant<CMatrix, RVector> rep)
      : basis_(basis), rep_(std::move(rep)) {}
  Basis basis_;
  std::variant<CMatrix, RVector> rep_;
};

Observable identity_observable(Basis basis);

// |<a|b>|^2 for normalized states; requires matching bases.
double fidelity(const State& a, const State& b);

// Multiplies by the global phase that makes the first amplitude with
// |c| > 1e-12 * max|c| real and positive.
CVector canonical_phase(CVector amplitudes);

}  // namespace qmetro
