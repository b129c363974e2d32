#include "xxz/kernels.hpp"

#include <cmath>

#include "xxz/dilog.hpp"
#include "xxz/errors.hpp"

namespace xxz {
namespace kernels {

namespace {

// Continuous odd branch of i ln[sinh(i eta + x)/sinh(i eta - x)] for
// 0 < eta < pi/2 (covers both p and theta in the gapless regime).  With
// u = cos(eta) sinh(x), v = sin(eta) cosh(x) the ratio lies on the unit
// circle and the branch-safe form is pi - 2 atan2(v, u); v > 0 keeps the
// argument away from the atan2 cut.
double odd_log_ratio(double x, double eta) {
  // Saturates to +-(pi - 2 eta) with an O(e^{-2|x|}) defect; past |x| ~ 40
  // that is below double resolution and cosh would eventually overflow.
  if (std::fabs(x) > 300.0)
    return (x > 0.0 ? 1.0 : -1.0) * (M_PI - 2.0 * eta);
  double u = std::cos(eta) * std::sinh(x);
  double v = std::sin(eta) * std::cosh(x);
  return M_PI - 2.0 * std::atan2(v, u);
}

// vartheta(x, eta) = int_0^x sinh(2 eta) / (sin^2 mu + sinh^2 eta) d mu,
// unwrapped so that vartheta(x + pi) = vartheta(x) + 2 pi.
double gapped_theta_fn(double x, double eta) {
  double n = std::round(x / M_PI);
  double r = x - n * M_PI;  // r in [-pi/2, pi/2]
  return 2.0 * std::atan(std::tan(r) / std::tanh(eta)) + 2.0 * M_PI * n;
}

// sum_{n>=1} w^n (1 - cos(2 n x)) / n^2 for 0 < w < 1 (gapped primitives).
double gapped_primitive_series(double x, double w) {
  double sum = 0.0, wn = 1.0;
  for (int n = 1; n < 100000; ++n) {
    wn *= w;
    double term = wn / double(n) / double(n);
    sum += term * (1.0 - std::cos(2.0 * n * x));
    if (term < 5e-18) break;
  }
  return sum;
}

}  // namespace

double bare_momentum(double lambda, const Anisotropy& a) {
  switch (a.regime) {
    case Regime::Gapless:
      return odd_log_ratio(lambda, a.zeta / 2.0);
    case Regime::Isotropic:
      return 2.0 * std::atan(2.0 * lambda);
    case Regime::Gapped:
      return gapped_theta_fn(lambda, a.zeta / 2.0);
  }
  return 0.0;
}

double bare_phase(double lambda, const Anisotropy& a) {
  switch (a.regime) {
    case Regime::Gapless:
      // Free-fermion point zeta = pi/2: cos(zeta) = 0 and the branch form
      // gives identically 0.
      return odd_log_ratio(lambda, a.zeta);
    case Regime::Isotropic:
      return 2.0 * std::atan(lambda);
    case Regime::Gapped:
      return gapped_theta_fn(lambda, a.zeta);
  }
  return 0.0;
}

double bare_momentum_inverse(double y, const Anisotropy& a) {
  if (a.regime == Regime::Gapless || a.regime == Regime::Isotropic) {
    double bound = M_PI - a.zeta_or_zero();
    if (!(std::fabs(y) < bound))
      throw OutOfRange("bare_momentum_inverse: |y| must be < pi - zeta");
  }
  // p is odd and strictly increasing; Newton with bisection safeguard.
  double lo, hi;
  if (a.regime == Regime::Gapped) {
    lo = y / 2.0 - M_PI;  // p(x) = 2x + bounded periodic part
    hi = y / 2.0 + M_PI;
  } else {
    hi = 1.0;
    while (bare_momentum(hi, a) < y) hi *= 2.0;
    lo = -1.0;
    while (bare_momentum(lo, a) > y) lo *= 2.0;
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    double f = bare_momentum(x, a) - y;
    if (f > 0.0) hi = x; else lo = x;
    double dp = bare_momentum_prime(x, a);
    double step = f / dp;
    double xn = x - step;
    if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
    if (std::fabs(xn - x) < 1e-16 * (1.0 + std::fabs(x)) && std::fabs(f) < 1e-14)
      return xn;
    x = xn;
  }
  return x;
}

double yang_yang_P(double lambda, const Anisotropy& a) {
  double x = std::fabs(lambda);
  switch (a.regime) {
    case Regime::Gapless: {
      double z = a.zeta;
      return (M_PI - z) * x - clausen2(z) +
             dilog(std::exp(-2.0 * x) * std::polar(1.0, z)).imag();
    }
    case Regime::Isotropic:
      return 2.0 * x * std::atan(2.0 * x) - 0.5 * std::log1p(4.0 * x * x);
    case Regime::Gapped:
      return x * x + gapped_primitive_series(x, std::exp(-a.zeta));
  }
  return 0.0;
}

double yang_yang_Theta(double lambda, const Anisotropy& a) {
  double x = std::fabs(lambda);
  switch (a.regime) {
    case Regime::Gapless: {
      double z = a.zeta;
      return (M_PI - 2.0 * z) * x - clausen2(2.0 * z) +
             dilog(std::exp(-2.0 * x) * std::polar(1.0, 2.0 * z)).imag();
    }
    case Regime::Isotropic:
      return 2.0 * x * std::atan(x) - std::log1p(x * x);
    case Regime::Gapped:
      return x * x + gapped_primitive_series(x, std::exp(-2.0 * a.zeta));
  }
  return 0.0;
}

double density_closed_form(double lambda, const Anisotropy& a) {
  switch (a.regime) {
    case Regime::Gapless:
      return 1.0 / (2.0 * a.zeta * std::cosh(M_PI * lambda / a.zeta));
    case Regime::Isotropic:
      return 1.0 / (2.0 * std::cosh(M_PI * lambda));
    case Regime::Gapped: {
      // rho_{pi/2}(lambda) = (1/2pi) sum_n e^{2 i n lambda} / cosh(n zeta)
      double sum = 1.0;
      for (int n = 1; n < 100000; ++n) {
        double t = 2.0 * std::cos(2.0 * n * lambda) / std::cosh(n * a.zeta);
        sum += t;
        if (std::fabs(2.0 / std::cosh(n * a.zeta)) < 1e-16) break;
      }
      return sum / (2.0 * M_PI);
    }
  }
  return 0.0;
}

double density_closed_form_poisson(double lambda, const Anisotropy& a) {
  if (a.regime != Regime::Gapped)
    throw Error("poisson form only defined in the gapped regime");
  // rho_{pi/2}(lambda) = (1/2zeta) sum_n sech(pi (n pi - lambda)/zeta)
  double sum = 0.0;
  int nmax = int(a.zeta * 42.0 / (M_PI * M_PI)) + 3;
  for (int n = -nmax; n <= nmax; ++n)
    sum += 1.0 / std::cosh(M_PI * (n * M_PI - lambda) / a.zeta);
  return sum / (2.0 * a.zeta);
}

double resolvent_closed_form(double lambda, const Anisotropy& a) {
  switch (a.regime) {
    case Regime::Gapped: {
      double sum = 0.5;  // n = 0 term of (1/2pi)(1 + 2 sum ...)
      for (int n = 1; n < 100000; ++n) {
        double w = std::exp(-n * a.zeta) / std::cosh(n * a.zeta);
        sum += w * std::cos(2.0 * n * lambda);
        if (w < 1e-17) break;
      }
      return sum / M_PI;
    }
    case Regime::Isotropic:
    case Regime::Gapless: {
      // Fourier integral over k >= 0; integrand decays like e^{-rate k}.
      double z = a.zeta;
      auto integrand = [&](double k) -> double {
        if (k < 1e-12) k = 1e-12;
        double num, den;
        if (a.regime == Regime::Isotropic) {
          num = std::exp(-0.5 * k);
          den = std::cosh(0.5 * k);
        } else {
          num = std::sinh((M_PI / 2.0 - z) * k);
          den = std::cosh(0.5 * z * k) * std::sinh(0.5 * (M_PI - z) * k);
        }
        return num / den * std::cos(k * lambda);
      };
      double rate = (a.regime == Regime::Isotropic)
                        ? 1.0
                        : std::min(z, M_PI - z);
      double kmax = 42.0 / rate + 5.0;
      // Composite Gauss-Legendre; panel width limited by the oscillation.
      static const double gx[8] = {
          -0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
          -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
          0.7966664774136267,  0.9602898564975363};
      static const double gw[8] = {
          0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
          0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
          0.2223810344533745, 0.1012285362903763};
      double width = std::min(2.0, 4.0 / (1.0 + std::fabs(lambda)));
      double sum = 0.0;
      for (double a0 = 0.0; a0 < kmax; a0 += width) {
        double b0 = std::min(a0 + width, kmax);
        double c = 0.5 * (a0 + b0), hw = 0.5 * (b0 - a0);
        for (int i = 0; i < 8; ++i) sum += hw * gw[i] * integrand(c + hw * gx[i]);
      }
      return sum / (2.0 * M_PI);
    }
  }
  return 0.0;
}

double momentum_infinity(double lambda, const Anisotropy& a) {
  if (a.regime == Regime::Gapped)
    throw Error("momentum_infinity: gapless/isotropic only");
  double zt = (a.regime == Regime::Isotropic) ? 1.0 : a.zeta;
  return std::atan(std::tanh(M_PI * lambda / (2.0 * zt))) / M_PI;
}

double momentum_infinity_inverse(double y, const Anisotropy& a) {
  if (a.regime == Regime::Gapped)
    throw Error("momentum_infinity_inverse: gapless/isotropic only");
  if (!(std::fabs(y) < 0.25))
    throw OutOfRange("momentum_infinity_inverse: |y| must be < 1/4");
  double zt = (a.regime == Regime::Isotropic) ? 1.0 : a.zeta;
  return (2.0 * zt / M_PI) * std::atanh(std::tan(M_PI * y));
}

CriticalFields critical_fields(const Anisotropy& a, double J) {
  if (!(J > 0.0)) throw Error("critical_fields requires J > 0");
  switch (a.regime) {
    case Regime::Gapless:
      return {8.0 * J * std::pow(std::cos(a.zeta / 2.0), 2), std::nullopt};
    case Regime::Isotropic:
      return {8.0 * J, std::nullopt};
    case Regime::Gapped:
      return {8.0 * J * std::pow(std::cosh(a.zeta / 2.0), 2),
              8.0 * J * std::pow(std::sinh(a.zeta / 2.0), 2)};
  }
  return {0.0, std::nullopt};
}

}  // namespace kernels
}  // namespace xxz
