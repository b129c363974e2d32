#ifndef XXZ_KERNELS_HPP
#define XXZ_KERNELS_HPP

#include <cmath>
#include <complex>
#include <optional>

#include "xxz/anisotropy.hpp"

// Closed-form special functions of the XXZ chain: bare momentum p and bare
// phase theta (continuous odd branches), the Lieb kernel K = theta'/(2 pi),
// their primitives P and Theta, the infinite-interval density and resolvent,
// the bare energy and the critical fields.
//
// The meromorphic kernels are templated on the scalar so they can be fed
// complex arguments inside the analyticity strip |Im z| < kappa_Delta; the
// branchy functions (p, theta, P, Theta) are real-only.

namespace xxz {
namespace kernels {

// p'(lambda); poles sit at |Im z| = zeta/2 (gapless/gapped) or 1/2 (iso).
template <class T>
T bare_momentum_prime(T lambda, const Anisotropy& a) {
  using std::sin;
  using std::sinh;
  switch (a.regime) {
    case Regime::Gapless: {
      T s = sinh(lambda);
      double e = std::sin(a.zeta / 2.0);
      return std::sin(a.zeta) / (s * s + e * e);
    }
    case Regime::Isotropic:
      return 4.0 / (1.0 + 4.0 * lambda * lambda);
    case Regime::Gapped: {
      T s = sin(lambda);
      double e = std::sinh(a.zeta / 2.0);
      return std::sinh(a.zeta) / (s * s + e * e);
    }
  }
  return T{};
}

template <class T>
T bare_momentum_second(T lambda, const Anisotropy& a) {
  using std::sin;
  using std::sinh;
  switch (a.regime) {
    case Regime::Gapless: {
      T s = sinh(lambda);
      double e = std::sin(a.zeta / 2.0);
      T d = s * s + e * e;
      return -std::sin(a.zeta) * sinh(2.0 * lambda) / (d * d);
    }
    case Regime::Isotropic: {
      T d = 1.0 + 4.0 * lambda * lambda;
      return -32.0 * lambda / (d * d);
    }
    case Regime::Gapped: {
      T s = sin(lambda);
      double e = std::sinh(a.zeta / 2.0);
      T d = s * s + e * e;
      return -std::sinh(a.zeta) * sin(2.0 * lambda) / (d * d);
    }
  }
  return T{};
}

// Lieb kernel K = theta'/(2 pi).  Strictly negative for -1 < Delta < 0,
// identically zero at the free-fermion point zeta = pi/2.
template <class T>
T lieb_kernel(T lambda, const Anisotropy& a) {
  using std::sin;
  using std::sinh;
  switch (a.regime) {
    case Regime::Gapless: {
      T s = sinh(lambda);
      double e = std::sin(a.zeta);
      return std::sin(2.0 * a.zeta) / (2.0 * M_PI * (s * s + e * e));
    }
    case Regime::Isotropic:
      return 1.0 / (M_PI * (1.0 + lambda * lambda));
    case Regime::Gapped: {
      T s = sin(lambda);
      double e = std::sinh(a.zeta);
      return std::sinh(2.0 * a.zeta) / (2.0 * M_PI * (s * s + e * e));
    }
  }
  return T{};
}

template <class T>
T lieb_kernel_prime(T lambda, const Anisotropy& a) {
  using std::sin;
  using std::sinh;
  switch (a.regime) {
    case Regime::Gapless: {
      T s = sinh(lambda);
      double e = std::sin(a.zeta);
      T d = s * s + e * e;
      return -std::sin(2.0 * a.zeta) * sinh(2.0 * lambda) / (2.0 * M_PI * d * d);
    }
    case Regime::Isotropic: {
      T d = 1.0 + lambda * lambda;
      return -2.0 * lambda / (M_PI * d * d);
    }
    case Regime::Gapped: {
      T s = sin(lambda);
      double e = std::sinh(a.zeta);
      T d = s * s + e * e;
      return -std::sinh(2.0 * a.zeta) * sin(2.0 * lambda) / (2.0 * M_PI * d * d);
    }
  }
  return T{};
}

// Continuous odd branch of the bare momentum; strictly increasing, bounded
// by pi - zeta (gapless) / pi (isotropic), quasi-periodic p(x+pi) = p(x)+2pi
// in the gapped regime.
double bare_momentum(double lambda, const Anisotropy& a);

// Continuous odd branch of the bare phase theta; theta' = 2 pi K.
double bare_phase(double lambda, const Anisotropy& a);

// Inverse of the bare momentum on its range (open interval for Delta <= 1,
// the full line for Delta > 1).
double bare_momentum_inverse(double y, const Anisotropy& a);

// Primitives P(lambda) = int_0^lambda p, Theta(lambda) = int_0^lambda theta;
// both even, evaluated in closed form (dilogarithms / Fourier series).
double yang_yang_P(double lambda, const Anisotropy& a);
double yang_yang_Theta(double lambda, const Anisotropy& a);

// Density of roots on I_iota: rho_infinity for Delta <= 1, the pi-periodic
// rho_{pi/2} (Fourier series) for Delta > 1.
double density_closed_form(double lambda, const Anisotropy& a);

// Poisson-resummed form of rho_{pi/2}; gapped regime only, kept as a
// cross-check of the Fourier series.
double density_closed_form_poisson(double lambda, const Anisotropy& a);

// Translationally invariant resolvent R on I_iota.
double resolvent_closed_form(double lambda, const Anisotropy& a);

// p(lambda | +infinity) = int_0^lambda rho_infinity and its inverse on
// (-1/4, 1/4); gapless/isotropic only.
double momentum_infinity(double lambda, const Anisotropy& a);
double momentum_infinity_inverse(double y, const Anisotropy& a);

inline double bare_energy(double lambda, const Anisotropy& a, double J, double h) {
  return h - 2.0 * J * a.chi() * bare_momentum_prime(lambda, a);
}

inline double bare_energy_prime(double lambda, const Anisotropy& a, double J) {
  return -2.0 * J * a.chi() * bare_momentum_second(lambda, a);
}

struct CriticalFields {
  double h_c;                          // upper critical field
  std::optional<double> h_c_lower;     // h_c^(L), gapped regime only
};

CriticalFields critical_fields(const Anisotropy& a, double J);

}  // namespace kernels
}  // namespace xxz

#endif
