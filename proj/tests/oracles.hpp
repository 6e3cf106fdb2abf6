#pragma once

// Reference implementations built independently of the library: explicit
// qubit-register operators, polynomial expansions of mode transformations and
// textbook special functions.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <utility>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// Legendre P_n(x) by the three-term recurrence.
inline double legendre(int n, double x) {
  if (n == 0) return 1.0;
  double p0 = 1.0, p1 = x;
  for (int k = 1; k < n; ++k) {
    const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

// Columns: symmetric Dicke states of n qubits ordered by number of up spins
// (bit set = up), each an equal superposition over bit strings.
inline CMatrix dicke_embedding(int n) {
  const int dim = 1 << n;
  CMatrix d = CMatrix::Zero(dim, n + 1);
  for (int s = 0; s < dim; ++s) {
    const int k = __builtin_popcount(static_cast<unsigned>(s));
    d(s, k) = 1.0 / std::sqrt(binomial(n, k));
  }
  return d;
}

// sum_i sigma_a^{(i)} / 2 on the full 2^n register; a = 0, 1, 2 for x, y, z.
inline CMatrix register_spin(int n, int a) {
  const int dim = 1 << n;
  CMatrix m = CMatrix::Zero(dim, dim);
  for (int s = 0; s < dim; ++s) {
    for (int i = 0; i < n; ++i) {
      const bool up = (s >> i) & 1;
      const int flipped = s ^ (1 << i);
      if (a == 0) m(flipped, s) += 0.5;
      if (a == 1) m(flipped, s) += up ? cplx(0.0, 0.5) : cplx(0.0, -0.5);
      if (a == 2) m(s, s) += up ? 0.5 : -0.5;
    }
  }
  return m;
}

inline CMatrix projected_spin(int n, int a) {
  const CMatrix d = dicke_embedding(n);
  return d.adjoint() * register_spin(n, a) * d;
}

// Each qubit in cos(t/2)|down> + e^{-i p} sin(t/2)|up>, projected on the
// symmetric subspace.
inline CVector product_css(int n, double theta, double phi) {
  const int dim = 1 << n;
  CVector reg(dim);
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  for (int st = 0; st < dim; ++st) {
    cplx amp = 1.0;
    for (int i = 0; i < n; ++i) amp *= ((st >> i) & 1) ? std::polar(s, -phi) : cplx(c);
    reg[st] = amp;
  }
  return dicke_embedding(n).adjoint() * reg;
}

// Applies a linear map of creation operators, a^dag -> m00 x + m01 y and
// b^dag -> m10 x + m11 y, to a two-mode Fock state given as a map
// (n_a, n_b) -> amplitude, by expanding the polynomial.
using FockMap = std::map<std::pair<int, int>, cplx>;

inline FockMap transform_modes(const FockMap& in, cplx m00, cplx m01, cplx m10, cplx m11) {
  FockMap out;
  for (const auto& [key, amp] : in) {
    if (amp == cplx(0.0)) continue;
    const auto [na, nb] = key;
    for (int i = 0; i <= na; ++i) {
      for (int j = 0; j <= nb; ++j) {
        // (m00 x + m01 y)^na -> x^i y^(na-i);  (m10 x + m11 y)^nb -> x^j y^(nb-j)
        const cplx coef = binomial(na, i) * std::pow(m00, i) * std::pow(m01, na - i) * binomial(nb, j) *
                          std::pow(m10, j) * std::pow(m11, nb - j);
        const int p = i + j, q = (na - i) + (nb - j);
        out[{p, q}] += amp * coef * std::sqrt(factorial(p) * factorial(q) / (factorial(na) * factorial(nb)));
      }
    }
  }
  return out;
}

// Coherent-state amplitudes e^{-|a|^2/2} a^n / sqrt(n!) by the ratio recursion.
inline std::vector<cplx> coherent_amplitudes(cplx alpha, int cutoff) {
  std::vector<cplx> c(cutoff + 1);
  c[0] = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n <= cutoff; ++n) c[n] = c[n - 1] * alpha / std::sqrt(static_cast<double>(n));
  return c;
}

inline double ecs_qfi_closed_form(double abs_alpha) {
  const double nn = 1.0 / (2.0 * (1.0 + std::exp(-abs_alpha * abs_alpha)));
  const double a2 = abs_alpha * abs_alpha;
  return 4.0 * a2 * nn + 4.0 * (1.0 - nn) * a2 * a2 * nn;
}

// Axis-angle rotation of a 3-vector (Rodrigues).
inline std::array<double, 3> rodrigues(const std::array<double, 3>& v, const std::array<double, 3>& k, double a) {
  const double c = std::cos(a), s = std::sin(a);
  const double kv = k[0] * v[0] + k[1] * v[1] + k[2] * v[2];
  const std::array<double, 3> kxv{k[1] * v[2] - k[2] * v[1], k[2] * v[0] - k[0] * v[2], k[0] * v[1] - k[1] * v[0]};
  std::array<double, 3> r{};
  for (int i = 0; i < 3; ++i) r[i] = v[i] * c + kxv[i] * s + k[i] * kv * (1.0 - c);
  return r;
}

}  // namespace oracle
