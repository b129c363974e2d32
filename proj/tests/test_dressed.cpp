#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "testutil.hpp"
#include "xxz/dressed.hpp"
#include "xxz/fermi.hpp"
#include "xxz/kernels.hpp"

using namespace xxz;
namespace kn = xxz::kernels;

namespace {
const Anisotropy kFF = Anisotropy::gapless(M_PI / 2.0);
const Anisotropy kG04 = Anisotropy::gapless(0.4);
const Anisotropy kGapped = Anisotropy::gapped(1.0);
}  // namespace

TEST_CASE("density tables") {
  SUBCASE("gapped full interval matches the closed form") {
    auto rho = density(M_PI / 2.0, kGapped, 128);
    for (double l = -3.0; l <= 3.0; l += 0.17)
      CHECK(rho(l) == doctest::Approx(kn::density_closed_form(l, kGapped)).epsilon(1e-10));
  }
  SUBCASE("free fermion point: rho = p'/2pi") {
    auto rho = density(1.0, kFF, 64);
    for (double l : {-0.8, 0.0, 0.4, 2.0})
      CHECK(rho(l) ==
            doctest::Approx(kn::bare_momentum_prime(l, kFF) / (2.0 * M_PI)).epsilon(1e-14));
  }
  SUBCASE("large-Q limit approaches rho_infinity") {
    auto rho = density(5.0, kG04, 256);
    CHECK(std::fabs(rho(0.0) - 1.0 / (2.0 * 0.4)) < 0.02 * (1.0 / 0.8));
  }
  SUBCASE("positive and even") {
    auto rho = density(1.3, kG04, 128);
    for (double l = -2.0; l <= 2.0; l += 0.11) {
      CHECK(rho(l) > 0.0);
      CHECK(rho(l) == doctest::Approx(rho(-l)).epsilon(1e-13));
    }
  }
}

TEST_CASE("dressed charge") {
  auto Z0 = dressed_charge(0.0, kG04);
  CHECK(Z0(0.7) == doctest::Approx(1.0).epsilon(1e-15));
  auto Zff = dressed_charge(1.0, kFF, 64);
  CHECK(Zff(0.3) == doctest::Approx(1.0).epsilon(1e-14));
  auto Z = dressed_charge(1.0, kG04, 128);
  CHECK(Z(0.5) == doctest::Approx(Z(-0.5)).epsilon(1e-13));
}

TEST_CASE("dressed phase") {
  SUBCASE("free fermion: phi = theta/2pi = 0") {
    auto phi = dressed_phase(1.0, 0.3, kFF, 64);
    CHECK(phi(0.9) == doctest::Approx(0.0).epsilon(1e-15));
  }
  SUBCASE("joint-negation oddness phi(l,m) = -phi(-l,-m)") {
    // The exact two-argument symmetry of the defining equation (even kernel
    // on a symmetric interval, odd driving).  Plain argument swap is *not*
    // a symmetry at finite Q; it only emerges as Q -> infinity.
    const double Q = 1.0;
    for (auto [l, m] : {std::pair{0.4, -0.7}, {0.9, 0.2}}) {
      auto pl = dressed_phase(Q, m, kG04, 160);
      auto pn = dressed_phase(Q, -m, kG04, 160);
      CHECK(pl(l) == doctest::Approx(-pn(-l)).epsilon(1e-10));
    }
    // Swap antisymmetry does hold at the boundary pair (it coincides with
    // joint negation there): phi(-Q, Q) = -phi(Q, -Q).
    auto pq = dressed_phase(Q, Q, kG04, 160);
    auto pmq = dressed_phase(Q, -Q, kG04, 160);
    CHECK(pq(-Q) == doctest::Approx(-pmq(Q)).epsilon(1e-10));
  }
  SUBCASE("lambda-derivative identity") {
    // d_l phi(l,m|Q) = R(l,m) + R(l,Q) phi(Q,m|Q) - R(l,-Q) phi(-Q,m|Q).
    const double Q = 1.0, m = 0.35;
    auto phi = dressed_phase(Q, m, kG04, 160);
    ResolventKernel R(-Q, Q, kG04, 160);
    for (double l : {-0.6, 0.1, 0.8}) {
      double rhs = R(l, m) + R(l, Q) * phi(Q) - R(l, -Q) * phi(-Q);
      double h = 1e-5;
      double fd = (phi(l + h) - phi(l - h)) / (2.0 * h);
      CHECK(rhs == doctest::Approx(fd).epsilon(1e-6));
      CHECK(phi.prime(l) == doctest::Approx(rhs).epsilon(1e-9));
    }
  }
}

TEST_CASE("dressed energy") {
  SUBCASE("free fermion: eps = bare energy") {
    auto eps = dressed_energy(0.9, kFF, 1.0, 0.5, 64);
    for (double l : {-1.4, 0.0, 0.6})
      CHECK(eps(l) == doctest::Approx(kn::bare_energy(l, kFF, 1.0, 0.5)).epsilon(1e-13));
  }
  SUBCASE("gap closes at h_c") {
    double hc = kn::critical_fields(kG04, 1.0).h_c;
    auto eps = dressed_energy(0.0, kG04, 1.0, hc);
    CHECK(eps(0.0) == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("eps -> h at infinity for Delta <= 1") {
    auto eps = dressed_energy(1.0, kG04, 1.0, 0.7, 128);
    CHECK(eps(45.0) == doctest::Approx(0.7).epsilon(1e-10));
  }
  SUBCASE("linearity: eps = h Z - 4 pi J chi rho") {
    const double Q = 1.1, J = 1.3, h = 0.8;
    auto eps = dressed_energy(Q, kG04, J, h, 128);
    auto Z = dressed_charge(Q, kG04, 128);
    auto rho = density(Q, kG04, 128);
    for (double l : {-2.0, 0.3, 1.05})
      CHECK(eps(l) == doctest::Approx(h * Z(l) - 4.0 * M_PI * J * kG04.chi() * rho(l))
                          .epsilon(1e-12));
  }
}

TEST_CASE("effective dressed energy") {
  SUBCASE("free fermion: eps_eff = bare energy") {
    EffectiveEnergy ee(0.8, kFF, 1.0, 0.5, 64);
    CHECK(ee(0.37) == doctest::Approx(kn::bare_energy(0.37, kFF, 1.0, 0.5)).epsilon(1e-13));
  }
  SUBCASE("at Q_F the correction vanishes") {
    double h = field_for_density(0.25, kG04, 1.0, 192);
    auto QF = fermi_boundary_from_field(h, kG04, 1.0, 192);
    EffectiveEnergy ee(QF.Q, kG04, 1.0, h, 192);
    auto eps = dressed_energy(QF.Q, kG04, 1.0, h, 192);
    CHECK(std::fabs(ee.eps_at_boundary()) < 1e-10);
    for (double l : {0.1, 0.9})
      CHECK(ee(l) == doctest::Approx(eps(l)).epsilon(1e-9));
  }
  SUBCASE("generic Q assembled from independently solved phase tables") {
    const double Q = 0.8, J = 1.0, h = 1.1;
    EffectiveEnergy ee(Q, kG04, J, h, 192);
    auto eps = dressed_energy(Q, kG04, J, h, 192);
    for (double l : {-0.5, 0.25, 1.3}) {
      // A fresh table held at mu = l solves in its first argument, so
      // tab(+-Q) = phi(+-Q, l | Q) -- an independent route to eps_eff.
      auto tab = dressed_phase(Q, l, kG04, 192);
      double direct = eps(l) + eps(Q) * (tab(Q) - tab(-Q));
      CHECK(ee(l) == doctest::Approx(direct).epsilon(1e-10));
    }
    // Derivative against finite differences.
    for (double l : {0.2, 0.7}) {
      double hstep = 1e-5;
      double fd = (ee(l + hstep) - ee(l - hstep)) / (2.0 * hstep);
      CHECK(ee.prime(l) == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("dressed momentum and xi0") {
  SUBCASE("free fermion: p = bare momentum / 2pi") {
    auto p = dressed_momentum(0.9, 0.3, kFF, 64);
    for (double l : {-1.0, 0.2})
      CHECK(p(l) == doctest::Approx(kn::bare_momentum(l, kFF) / (2.0 * M_PI)).epsilon(1e-13));
  }
  SUBCASE("Q = 0, D = 0 reduces to the bare momentum") {
    auto p = dressed_momentum(0.0, 0.0, kG04);
    CHECK(p(0.6) == doctest::Approx(kn::bare_momentum(0.6, kG04) / (2.0 * M_PI)).epsilon(1e-15));
  }
  SUBCASE("odd and p' = rho at the consistent pair") {
    auto fp = magnetic_fermi_boundary(0.25, kG04, 192);
    auto tc = xi0(fp.Q, fp.D, kG04, 192);
    for (double l : {-1.0, -0.3, 0.55})
      CHECK(tc.p(l) == doctest::Approx(-tc.p(-l)).epsilon(1e-12));
    for (double l : {-0.8, 0.0, 0.4, 1.5}) {
      double h = 1e-5;
      double fd = (tc.p(l + h) - tc.p(l - h)) / (2.0 * h);
      CHECK(fd == doctest::Approx(tc.rho(l)).epsilon(1e-7));
    }
    // Boundary condition and counting-function anchors.
    CHECK(tc.p(fp.Q) == doctest::Approx(0.5 * fp.D).epsilon(1e-10));
    CHECK(tc(-fp.Q) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(tc(fp.Q) == doctest::Approx(fp.D).epsilon(1e-10));
    CHECK(tc(0.0) == doctest::Approx(0.5 * fp.D).epsilon(1e-12));
  }
  SUBCASE("range endpoints for Delta <= 1") {
    auto fp = magnetic_fermi_boundary(0.25, kG04, 192);
    auto tc = xi0(fp.Q, 0.25, kG04, 192);
    double expect = -(M_PI - 0.4) / M_PI * 0.25;
    CHECK(tc.range_lo(kG04) == doctest::Approx(expect).epsilon(1e-14));
    CHECK(tc(-60.0) == doctest::Approx(expect).epsilon(1e-9));
    CHECK(tc(60.0) == doctest::Approx(tc.range_hi(kG04)).epsilon(1e-9));
  }
  SUBCASE("inversion") {
    auto fp = magnetic_fermi_boundary(0.2, kG04, 192);
    auto tc = xi0(fp.Q, fp.D, kG04, 192);
    for (double y : {0.01, 0.1, 0.19}) {
      double l = tc.invert(y, kG04);
      CHECK(tc(l) == doctest::Approx(y).epsilon(1e-12));
    }
    CHECK_THROWS_AS((void)tc.invert(0.9, kG04), OutOfRange);
  }
}

TEST_CASE("Korepin-Slavnov and the first charge identity") {
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> uq(0.2, 1.5);
  const double zetas[3] = {0.4, 1.2, 2.4};
  for (int k = 0; k < 10; ++k) {
    Anisotropy a = Anisotropy::gapless(zetas[k % 3]);
    double Q = uq(rng);
    auto Z = dressed_charge(Q, a, 160);
    auto phiQ = dressed_phase(Q, Q, a, 160);  // phi(., Q | Q)
    double lhs = 1.0 + phiQ(Q) - phiQ(-Q);
    CHECK(lhs == doctest::Approx(1.0 / Z(Q)).epsilon(1e-8));
    // First identity on a lambda grid: phi(l,Q) - phi(l,-Q) + 1 = Z(l).
    auto phiM = dressed_phase(Q, -Q, a, 160);
    for (double l = -Q; l <= Q + 1e-9; l += Q / 3.0)
      CHECK(phiQ(l) - phiM(l) + 1.0 == doctest::Approx(Z(l)).epsilon(1e-8));
  }
}

TEST_CASE("monotone coupling D(Q)") {
  // Sampled where the increments stay above roundoff; D saturates at 1/2
  // exponentially fast, so past Q ~ 2 successive values are equal in
  // double precision.
  double prev = 0.0;
  for (int i = 1; i <= 20; ++i) {
    double Q = 0.08 * i;
    double D = density_integral(density(Q, kG04, 128));
    CHECK(D > prev);
    prev = D;
  }
  CHECK(prev < 0.5);
}

TEST_CASE("xi0 at q = +infinity") {
  CHECK(xi0_infinity(0.0, kG04) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(xi0_infinity(1e3, kG04) == doctest::Approx(0.5).epsilon(1e-12));
  for (double y : {0.05, 0.25, 0.47}) {
    double l = xi0_infinity_inverse(y, Anisotropy::isotropic());
    CHECK(xi0_infinity(l, Anisotropy::isotropic()) == doctest::Approx(y).epsilon(1e-13));
  }
}
