#include "xxz/fermi.hpp"

#include <cmath>

#include "xxz/errors.hpp"
#include "xxz/kernels.hpp"

namespace xxz {

namespace kn = kernels;

namespace {

// Brent's method on a bracketed monotone function.
template <class F>
double brent(F&& f, double lo, double hi, double flo, double fhi,
             double xtol, int maxit = 120) {
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo * fhi > 0.0) throw Error("brent: root not bracketed");
  double a = lo, b = hi, fa = flo, fb = fhi;
  double c = a, fc = fa, d = b - a, e = d;
  for (int it = 0; it < maxit; ++it) {
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    double tol1 = 2.0 * 1e-16 * std::fabs(b) + 0.5 * xtol;
    double xm = 0.5 * (c - b);
    if (std::fabs(xm) <= tol1 || fb == 0.0) return b;
    if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
      double s = fb / fa, p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        double qq = fa / fc, r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::fabs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::fabs(tol1 * q), std::fabs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::fabs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = f(b);
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
  }
  return b;
}

}  // namespace

double density_integral(const DressedTable& rho) {
  if (rho.table.empty()) return 0.0;
  const auto& g = rho.table.grid;
  double s = 0.0;
  for (int i = 0; i < g.size(); ++i) s += g.weights[i] * rho.table.values[i];
  return s;
}

FermiPoint magnetic_fermi_boundary(double D, const Anisotropy& a, int n_nodes) {
  if (!(D >= 0.0 && D <= 0.5))
    throw Error("magnetic_fermi_boundary: D must lie in [0, 1/2]");
  if (D == 0.0) return {0.0, 0.0, FermiKind::Magnetic};
  if (!a.gapped() && D >= 0.5)
    throw UnboundedBoundary(
        "magnetic_fermi_boundary: q(1/2) = +infinity for Delta <= 1");

  auto G = [&](double Q) {
    return density_integral(density(Q, a, n_nodes)) - D;
  };

  double hi, fhi;
  if (a.gapped()) {
    hi = M_PI / 2.0;
    fhi = G(hi);  // = 1/2 - D >= 0
    if (D == 0.5) return {M_PI / 2.0, 0.5, FermiKind::Magnetic};
  } else {
    hi = 1.0;
    fhi = G(hi);
    while (fhi < 0.0) {
      hi *= 2.0;
      fhi = G(hi);
      if (hi > 1e6) throw Error("magnetic_fermi_boundary: bracket failure");
    }
  }
  double q = brent(G, 0.0, hi, -D, fhi, 1e-13);
  if (std::fabs(G(q)) > 1e-11)
    throw NoConvergence("magnetic_fermi_boundary: |int rho - D| > 1e-11");
  return {q, D, FermiKind::Magnetic};
}

double dressed_energy_at_boundary(double Q, const Anisotropy& a, double J,
                                  double h, int n_nodes) {
  auto eps = dressed_energy(Q, a, J, h, n_nodes);
  return eps(Q);
}

FermiPoint fermi_boundary_from_field(double h, const Anisotropy& a, double J,
                                     int n_nodes) {
  auto cf = kn::critical_fields(a, J);
  if (a.gapped()) {
    if (!(h >= *cf.h_c_lower && h < cf.h_c))
      throw FieldOutOfRange(
          h < *cf.h_c_lower
              ? "fermi_boundary_from_field: h below h_c^(L) (massive phase)"
              : "fermi_boundary_from_field: h >= h_c (saturated phase)");
  } else {
    if (!(h > 0.0 && h < cf.h_c))
      throw FieldOutOfRange(
          h <= 0.0 ? "fermi_boundary_from_field: h must be positive"
                   : "fermi_boundary_from_field: h >= h_c (saturated phase)");
  }

  auto E = [&](double Q) {
    return dressed_energy_at_boundary(Q, a, J, h, n_nodes);
  };
  // eps(0|0) = h - h_c < 0; eps(Q|Q) grows through 0 at Q_F.
  double flo = h - cf.h_c;
  double hi, fhi;
  if (a.gapped()) {
    hi = M_PI / 2.0;
    fhi = E(hi);
    if (fhi < 0.0) {
      // h = h_c^(L) exactly: the gap closes at the zone boundary.
      return {M_PI / 2.0, 0.5, FermiKind::Energetic};
    }
  } else {
    hi = 1.0;
    fhi = E(hi);
    while (fhi < 0.0) {
      hi *= 2.0;
      fhi = E(hi);
      if (hi > 1e6)
        throw NoConvergence("fermi_boundary_from_field: bracket failure");
    }
  }
  double QF = brent(E, 0.0, hi, flo, fhi, 1e-13);
  double DF = density_integral(density(QF, a, n_nodes));
  return {QF, DF, FermiKind::Energetic};
}

double field_for_density(double D, const Anisotropy& a, double J, int n_nodes) {
  auto fp = magnetic_fermi_boundary(D, a, n_nodes);
  if (fp.Q == 0.0) return kn::critical_fields(a, J).h_c;
  // eps(l|Q) = h Z(l|Q) - 4 pi J chi rho(l|Q); set eps(Q|Q) = 0.
  auto rho = density(fp.Q, a, n_nodes);
  auto Z = dressed_charge(fp.Q, a, n_nodes);
  return 4.0 * M_PI * J * a.chi() * rho(fp.Q) / Z(fp.Q);
}

namespace {

NystromSolution two_endpoint_inner(double D, const Anisotropy& a, double QL,
                                   double QR, int n) {
  return solve_second_kind(
      [&, QL, QR, D](double l) {
        return kn::bare_momentum(l, a) / (2.0 * M_PI) -
               D / (4.0 * M_PI) *
                   (kn::bare_phase(l - QR, a) + kn::bare_phase(l - QL, a));
      },
      [&, QL, QR, D](double l) {
        return kn::bare_momentum_prime(l, a) / (2.0 * M_PI) -
               0.5 * D * (kn::lieb_kernel(l - QR, a) + kn::lieb_kernel(l - QL, a));
      },
      QL, QR, a, n);
}

}  // namespace

TwoEndpointResult two_endpoint_solve(double D, const Anisotropy& a, double QL0,
                                     double QR0, int n_nodes) {
  if (!(QL0 < QR0)) throw Error("two_endpoint_solve: need QL0 < QR0");
  if (a.gapped() && QR0 - QL0 >= M_PI)
    throw Error("two_endpoint_solve: gapped interval must be shorter than pi");

  double QL = QL0, QR = QR0;
  auto F = [&](double ql, double qr, double& f1, double& f2) {
    auto sol = two_endpoint_inner(D, a, ql, qr, n_nodes);
    f1 = sol.extend(qr) - 0.5 * D;
    f2 = sol.extend(ql) + 0.5 * D;
    return sol;
  };

  const int max_steps = 60;
  for (int it = 0; it < max_steps; ++it) {
    double f1, f2;
    auto sol = F(QL, QR, f1, f2);
    double res = std::max(std::fabs(f1), std::fabs(f2));
    if (res < 1e-12) return {QL, QR, std::move(sol), it};

    // Finite-difference Jacobian of (f1, f2) in (QL, QR).
    double dq = 1e-6;
    double a11, a12, a21, a22, g1, g2;
    F(QL + dq, QR, g1, g2);
    a11 = (g1 - f1) / dq;
    a21 = (g2 - f2) / dq;
    F(QL, QR + dq, g1, g2);
    a12 = (g1 - f1) / dq;
    a22 = (g2 - f2) / dq;
    double det = a11 * a22 - a12 * a21;
    if (std::fabs(det) < 1e-14)
      throw NoConvergence("two_endpoint_solve: singular Jacobian");
    double dL = -(a22 * f1 - a12 * f2) / det;
    double dR = -(a11 * f2 - a21 * f1) / det;
    // Damping keeps the interval ordered.
    double t = 1.0;
    while (!(QL + t * dL < QR + t * dR) ||
           (a.gapped() && (QR + t * dR) - (QL + t * dL) >= M_PI)) {
      t *= 0.5;
      if (t < 1e-8) throw NoConvergence("two_endpoint_solve: step collapse");
    }
    QL += t * dL;
    QR += t * dR;
  }
  throw NoConvergence("two_endpoint_solve: no convergence after 60 steps");
}

double e0_value(double Q, const Anisotropy& a, double J, double h, int n_nodes) {
  auto rho = density(Q, a, n_nodes);
  double s = J * a.delta() - 0.5 * h;
  const auto& g = rho.table.grid;
  for (int i = 0; i < g.size(); ++i)
    s += g.weights[i] * kn::bare_energy(g.nodes[i], a, J, h) * rho.table.values[i];
  return s;
}

std::vector<StationarityRow> e0_stationarity_check(
    const Anisotropy& a, double J, double h, const std::vector<double>& Q_grid,
    int n_nodes) {
  std::vector<StationarityRow> rows;
  for (double Q : Q_grid) {
    double dq = 1e-4 * std::max(1.0, Q);
    double fd = (e0_value(Q + dq, a, J, h, n_nodes) -
                 e0_value(Q - dq, a, J, h, n_nodes)) /
                (2.0 * dq);
    auto rho = density(Q, a, n_nodes);
    auto eps = dressed_energy(Q, a, J, h, n_nodes);
    // Boundary terms of d/dQ int_{-Q}^{Q} e rho give 2 e(Q) rho(Q); the
    // kernel response d_Q rho = -rho(Q)[R(.,Q)+R(.,-Q)] integrates against e
    // to -2 rho(Q)[e(Q) - eps(Q|Q)], so (E_0)'(Q) = 2 eps(Q|Q) rho(Q|Q).
    double an = 2.0 * eps(Q) * rho(Q);
    double rel = std::fabs(fd - an) / std::max(1e-12, std::fabs(an));
    rows.push_back({Q, fd, an, rel});
  }
  return rows;
}

}  // namespace xxz
