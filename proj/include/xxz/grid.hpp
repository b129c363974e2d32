#ifndef XXZ_GRID_HPP
#define XXZ_GRID_HPP

#include "xxz/errors.hpp"
#include "xxz/types.hpp"

namespace xxz {

enum class QuadScheme { GaussLegendre, PeriodicTrapezoid };

// Quadrature rule on a compact interval.  Nodes are strictly inside (a, b),
// weights are positive and sum to b - a.
struct QuadGrid {
  double a = 0.0, b = 0.0;
  Vector nodes;
  Vector weights;
  QuadScheme scheme = QuadScheme::GaussLegendre;

  int size() const { return int(nodes.size()); }
  double length() const { return b - a; }

  static QuadGrid gauss_legendre(double a, double b, int n);

  // Midpoint-offset trapezoid rule; reserved for gapped full-interval
  // problems where the integrand is pi-periodic.
  static QuadGrid periodic_trapezoid(double a, double b, int n);

  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (int i = 0; i < size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

// Nodes/weights of the n-point Gauss-Legendre rule on [-1, 1].
void gauss_legendre_reference(int n, Vector& x, Vector& w);

}  // namespace xxz

#endif
