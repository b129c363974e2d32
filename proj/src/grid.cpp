#include "xxz/grid.hpp"

#include <cmath>

namespace xxz {

void gauss_legendre_reference(int n, Vector& x, Vector& w) {
  x.resize(n);
  w.resize(n);
  // Newton iteration on P_n with the three-term recurrence; standard
  // Chebyshev-based initial guesses.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::fabs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    double wi = 2.0 / ((1.0 - z * z) * pp * pp);
    w[i] = wi;
    w[n - 1 - i] = wi;
  }
  if (n % 2 == 1) x[n / 2] = 0.0;
}

QuadGrid QuadGrid::gauss_legendre(double a, double b, int n) {
  if (!(b > a)) throw Error("gauss_legendre: need a < b");
  if (n < 1) throw Error("gauss_legendre: need n >= 1");
  Vector xr, wr;
  gauss_legendre_reference(n, xr, wr);
  QuadGrid g;
  g.a = a;
  g.b = b;
  g.scheme = QuadScheme::GaussLegendre;
  g.nodes = 0.5 * (a + b) + 0.5 * (b - a) * xr.array();
  g.weights = 0.5 * (b - a) * wr.array();
  return g;
}

QuadGrid QuadGrid::periodic_trapezoid(double a, double b, int n) {
  if (!(b > a)) throw Error("periodic_trapezoid: need a < b");
  if (n < 1) throw Error("periodic_trapezoid: need n >= 1");
  QuadGrid g;
  g.a = a;
  g.b = b;
  g.scheme = QuadScheme::PeriodicTrapezoid;
  double h = (b - a) / n;
  g.nodes.resize(n);
  g.weights = Vector::Constant(n, h);
  for (int i = 0; i < n; ++i) g.nodes[i] = a + (i + 0.5) * h;
  return g;
}

}  // namespace xxz
