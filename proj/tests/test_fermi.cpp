#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "testutil.hpp"
#include "xxz/fermi.hpp"
#include "xxz/kernels.hpp"

using namespace xxz;
namespace kn = xxz::kernels;

namespace {
const Anisotropy kFF = Anisotropy::gapless(M_PI / 2.0);
const Anisotropy kG04 = Anisotropy::gapless(0.4);
const Anisotropy kG20 = Anisotropy::gapless(2.0);
const Anisotropy kGapped = Anisotropy::gapped(1.0);
}  // namespace

TEST_CASE("magnetic fermi boundary") {
  SUBCASE("empty sea") {
    auto fp = magnetic_fermi_boundary(0.0, kG04);
    CHECK(fp.Q == 0.0);
  }
  SUBCASE("free-fermion closed form q = p^{-1}(pi D)") {
    auto fp = magnetic_fermi_boundary(0.25, kFF, 128);
    CHECK(fp.Q == doctest::Approx(std::atanh(std::tan(M_PI / 8.0))).epsilon(1e-10));
    CHECK(fp.Q == doctest::Approx(0.4406868).epsilon(1e-6));
  }
  SUBCASE("gapped sea fills at D = 1/2") {
    auto fp = magnetic_fermi_boundary(0.5, kGapped, 128);
    CHECK(fp.Q == doctest::Approx(M_PI / 2.0).epsilon(1e-12));
  }
  SUBCASE("divergence at half filling for Delta <= 1") {
    CHECK_THROWS_AS((void)magnetic_fermi_boundary(0.5, kG04), UnboundedBoundary);
  }
  SUBCASE("round trip D -> q -> D") {
    for (double D : {0.05, 0.15, 0.25, 0.35, 0.45}) {
      auto fp = magnetic_fermi_boundary(D, kG04, 160);
      double back = density_integral(density(fp.Q, kG04, 160));
      CHECK(back == doctest::Approx(D).epsilon(1e-10));
    }
  }
  SUBCASE("gapped boundary stays inside [0, pi/2]") {
    double prev = 0.0;
    for (double D : {0.1, 0.2, 0.3, 0.4, 0.49}) {
      auto fp = magnetic_fermi_boundary(D, kGapped, 128);
      CHECK(fp.Q <= M_PI / 2.0 + 1e-12);
      CHECK(fp.Q > prev);
      prev = fp.Q;
    }
  }
}

TEST_CASE("fermi boundary from the magnetic field") {
  SUBCASE("Q_F -> 0 as h -> h_c") {
    double hc = kn::critical_fields(kG04, 1.0).h_c;
    auto fp = fermi_boundary_from_field(hc * (1.0 - 1e-8), kG04, 1.0, 96);
    CHECK(fp.Q < 5e-4);
  }
  SUBCASE("free fermion: h = 2 p'(Q_F) in closed form") {
    // eps = h - 2 J p' and no dressing, so eps(Q|Q) = 0 at h = 2 p'(Q).
    double QF = 0.7;
    double h = 2.0 * kn::bare_momentum_prime(QF, kFF);
    auto fp = fermi_boundary_from_field(h, kFF, 1.0, 96);
    CHECK(fp.Q == doctest::Approx(QF).epsilon(1e-10));
  }
  SUBCASE("monotone in h") {
    double hc = kn::critical_fields(kG04, 1.0).h_c;
    double prev = 1e9;
    for (double f : {0.15, 0.3, 0.5, 0.7, 0.9}) {
      auto fp = fermi_boundary_from_field(f * hc, kG04, 1.0, 128);
      CHECK(fp.Q < prev);
      prev = fp.Q;
    }
  }
  SUBCASE("sign pattern of eps(Q|Q) around Q_F") {
    double h = 0.5 * kn::critical_fields(kG04, 1.0).h_c;
    auto fp = fermi_boundary_from_field(h, kG04, 1.0, 128);
    CHECK(dressed_energy_at_boundary(fp.Q - 0.1, kG04, 1.0, h, 128) < 0.0);
    CHECK(dressed_energy_at_boundary(fp.Q + 0.1, kG04, 1.0, h, 128) > 0.0);
  }
  SUBCASE("field range validation") {
    CHECK_THROWS_AS((void)fermi_boundary_from_field(-1.0, kG04, 1.0), FieldOutOfRange);
    CHECK_THROWS_AS((void)fermi_boundary_from_field(100.0, kG04, 1.0), FieldOutOfRange);
    auto cfl = kn::critical_fields(kGapped, 1.0);
    CHECK_THROWS_AS((void)fermi_boundary_from_field(0.5 * *cfl.h_c_lower, kGapped, 1.0),
                    FieldOutOfRange);
  }
  SUBCASE("field_for_density inverts D_F") {
    double h = field_for_density(0.25, kG04, 1.0, 160);
    auto fp = fermi_boundary_from_field(h, kG04, 1.0, 160);
    CHECK(fp.D == doctest::Approx(0.25).epsilon(1e-9));
    auto fq = magnetic_fermi_boundary(0.25, kG04, 160);
    CHECK(fp.Q == doctest::Approx(fq.Q).epsilon(1e-9));
  }
}

TEST_CASE("two-endpoint problem") {
  SUBCASE("symmetric start is a fixed point") {
    auto fq = magnetic_fermi_boundary(0.2, kG04, 96);
    auto r = two_endpoint_solve(0.2, kG04, -fq.Q, fq.Q, 96);
    CHECK(r.Q_R == doctest::Approx(fq.Q).epsilon(1e-8));
    CHECK(std::fabs(r.Q_L + r.Q_R) < 1e-8);
  }
  SUBCASE("skewed start collapses to the symmetric solution") {
    for (const auto& a : {kG04, kG20}) {
      auto fq = magnetic_fermi_boundary(0.2, a, 96);
      auto r = two_endpoint_solve(0.2, a, -0.3 * fq.Q, 1.6 * fq.Q, 96);
      CHECK(std::fabs(r.Q_L + r.Q_R) < 1e-8);
      CHECK(r.Q_R == doctest::Approx(fq.Q).epsilon(1e-8));
      CHECK(r.f.extend(r.Q_R) == doctest::Approx(0.1).epsilon(1e-9));
      CHECK(r.f.extend(r.Q_L) == doctest::Approx(-0.1).epsilon(1e-9));
    }
  }
  SUBCASE("free fermion closed form") {
    // K = 0: f = p/2pi, so the boundary conditions give p(Q_R) = pi D.
    auto r = two_endpoint_solve(0.3, kFF, -0.2, 0.9, 96);
    CHECK(r.Q_R == doctest::Approx(kn::bare_momentum_inverse(M_PI * 0.3, kFF)).epsilon(1e-9));
  }
}

TEST_CASE("E0 stationarity") {
  double h = field_for_density(0.25, kG04, 1.0, 160);
  auto QF = fermi_boundary_from_field(h, kG04, 1.0, 160);
  auto rows = e0_stationarity_check(kG04, 1.0, h,
                                    {0.5 * QF.Q, QF.Q, 1.5 * QF.Q}, 160);
  // Derivative negative below Q_F, ~0 at Q_F, positive above.
  CHECK(rows[0].analytic_derivative < 0.0);
  CHECK(rows[0].fd_derivative < 0.0);
  CHECK(std::fabs(rows[1].analytic_derivative) < 1e-8);
  CHECK(rows[2].analytic_derivative > 0.0);
  CHECK(rows[2].fd_derivative > 0.0);
  CHECK(rows[0].rel_error < 1e-4);
  CHECK(rows[2].rel_error < 1e-4);
}
