#ifndef XXZ_ANISOTROPY_HPP
#define XXZ_ANISOTROPY_HPP

#include <cmath>
#include <limits>

#include "xxz/errors.hpp"

namespace xxz {

enum class Regime { Gapless, Isotropic, Gapped };

// Regime-tagged anisotropy.  The coupling is parametrised as
//   Delta = cos(zeta),  zeta in (0, pi)    (gapless,  -1 < Delta < 1)
//   Delta = 1                              (isotropic)
//   Delta = cosh(zeta), zeta > 0           (gapped,    Delta > 1)
struct Anisotropy {
  Regime regime = Regime::Isotropic;
  double zeta = 0.0;

  static Anisotropy gapless(double z) {
    if (!(z > 0.0 && z < M_PI))
      throw Error("gapless regime requires 0 < zeta < pi");
    return {Regime::Gapless, z};
  }
  static Anisotropy isotropic() { return {Regime::Isotropic, 0.0}; }
  static Anisotropy gapped(double z) {
    if (!(z > 0.0)) throw Error("gapped regime requires zeta > 0");
    return {Regime::Gapped, z};
  }

  double delta() const {
    switch (regime) {
      case Regime::Gapless: return std::cos(zeta);
      case Regime::Isotropic: return 1.0;
      case Regime::Gapped: return std::cosh(zeta);
    }
    return 1.0;
  }

  // Half-width of the special integration interval I_iota: the full line
  // for Delta <= 1 and [-pi/2, pi/2] for Delta > 1.
  double iota() const {
    return regime == Regime::Gapped ? M_PI / 2.0
                                    : std::numeric_limits<double>::infinity();
  }

  // chi_Delta entering the bare energy e = h - 2 J chi_Delta p'.
  double chi() const {
    switch (regime) {
      case Regime::Gapless: return std::sin(zeta);
      case Regime::Isotropic: return 1.0;
      case Regime::Gapped: return std::sinh(zeta);
    }
    return 1.0;
  }

  // Half-width kappa_Delta of the strip where the counting function is
  // known to be analytic and invertible.
  double kappa() const {
    return regime == Regime::Isotropic ? 0.25 : zeta / 4.0;
  }

  bool gapped() const { return regime == Regime::Gapped; }

  // Effective zeta entering the gapless closed forms; the isotropic
  // formulas are the zeta -> 0 limits.
  double zeta_or_zero() const { return regime == Regime::Isotropic ? 0.0 : zeta; }
};

}  // namespace xxz

#endif
