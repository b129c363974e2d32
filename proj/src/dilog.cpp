#include "xxz/dilog.hpp"

#include <cmath>

namespace xxz {

namespace {

using C = std::complex<double>;

constexpr double kPi2_6 = 1.6449340668482264365;  // pi^2/6

// Bernoulli series in u = -log(1-z): Li2(z) = u - u^2/4 + sum_k c_k u^{2k+1}
// with c_k = B_{2k} / (2k+1)!.  Used after reduction to |u| well below 2pi.
C dilog_series(C z) {
  static const double c[] = {
      +1.0 / 36.0,                // B_2/3!
      -1.0 / 3600.0,              // B_4/5!
      +1.0 / 211680.0,            // B_6/7!
      -1.0 / 10886400.0,          // B_8/9!
      +1.0 / 526901760.0,         // B_10/11!
      -4.0647616451442255e-11,    // B_12/13!
      +8.9216910204564526e-13,
      -1.9939295860721076e-14,
      +4.5189800296199182e-16,
      -1.0356517612181247e-17,
      +2.3952186210261867e-19,
      -5.5817858743250093e-21,
      +1.3091507554183213e-22,
      -3.0874198024267403e-24,
      +7.3159756527022034e-26,
  };
  const C u = -std::log(1.0 - z);
  const C u2 = u * u;
  C sum = u - 0.25 * u2;
  C up = u;
  for (double ck : c) {
    up *= u2;
    C term = ck * up;
    sum += term;
    if (std::abs(term) < 1e-19 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

C dilog(C z) {
  if (z == C(0.0, 0.0)) return {0.0, 0.0};
  if (z == C(1.0, 0.0)) return {kPi2_6, 0.0};

  // Maintain Li2(z0) = result + sign * Li2(z) through the reductions.
  C result(0.0, 0.0);
  double sign = 1.0;

  // Inversion maps |z| > 1 inside the unit disk:
  //   Li2(z) = -pi^2/6 - log^2(-z)/2 - Li2(1/z).
  if (std::abs(z) > 1.0) {
    C lz = std::log(-z);
    result += sign * (-kPi2_6 - 0.5 * lz * lz);
    sign = -sign;
    z = 1.0 / z;
  }
  // Reflection maps Re z > 1/2 to Re z <= 1/2:
  //   Li2(z) = pi^2/6 - log(z) log(1-z) - Li2(1-z).
  if (z.real() > 0.5) {
    result += sign * (kPi2_6 - std::log(z) * std::log(1.0 - z));
    sign = -sign;
    z = 1.0 - z;
  }
  return result + sign * dilog_series(z);
}

double clausen2(double theta) {
  // Cl2 is odd and 2pi-periodic.
  double t = std::fmod(theta, 2.0 * M_PI);
  if (t < 0.0) t += 2.0 * M_PI;
  if (t == 0.0) return 0.0;
  return dilog(std::polar(1.0, t)).imag();
}

}  // namespace xxz
