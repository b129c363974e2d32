#ifndef XXZ_FERMI_HPP
#define XXZ_FERMI_HPP

#include <vector>

#include "xxz/dressed.hpp"

// Root-finding layer tying the dressed tables to physical parameters: the
// magnetic Fermi boundary q(D), the energetic Fermi boundary Q_F(h), the
// two-endpoint problem, and the stationarity of the bulk energy E_0(Q).

namespace xxz {

enum class FermiKind { Magnetic, Energetic };

struct FermiPoint {
  double Q = 0.0;
  double D = 0.0;
  FermiKind kind = FermiKind::Magnetic;
};

// int_{-Q}^{Q} rho(l|Q) dl on the density grid.
double density_integral(const DressedTable& rho);

// Unique Q >= 0 with int_{-Q}^{Q} rho(.|Q) = D.  Throws UnboundedBoundary at
// D = 1/2 in the gapless/isotropic regimes (q diverges; closed forms apply).
FermiPoint magnetic_fermi_boundary(double D, const Anisotropy& a,
                                   int n_nodes = 0);

// eps(Q|Q) as a function of Q, one Nystrom solve per evaluation.
double dressed_energy_at_boundary(double Q, const Anisotropy& a, double J,
                                  double h, int n_nodes = 0);

// Unique Q_F with eps(Q_F|Q_F) = 0 for h in the antiferromagnetic massless
// window; D of the returned point is the Fermi density int rho(.|Q_F).
FermiPoint fermi_boundary_from_field(double h, const Anisotropy& a, double J,
                                     int n_nodes = 0);

// Magnetic field for which the Fermi boundary sits exactly at q(D), i.e.
// D_F(h) = D; uses the linearity eps = h Z - 4 pi J chi rho.
double field_for_density(double D, const Anisotropy& a, double J,
                         int n_nodes = 0);

struct TwoEndpointResult {
  double Q_L = 0.0;
  double Q_R = 0.0;
  NystromSolution f;
  int iterations = 0;
};

// Newton solve of the two-endpoint problem
//   (id + K_{[Q_L,Q_R]}) f = p/(2pi) - D/(4pi)[theta(.-Q_R) + theta(.-Q_L)],
//   f(Q_R) = D/2,  f(Q_L) = -D/2,
// started from (QL0, QR0).  The solution collapses onto (-q, q, p(.|q)).
TwoEndpointResult two_endpoint_solve(double D, const Anisotropy& a, double QL0,
                                     double QR0, int n_nodes = 96);

// Bulk energy per site E_0(Q) = J Delta - h/2 + int_{-Q}^{Q} e rho(.|Q).
double e0_value(double Q, const Anisotropy& a, double J, double h,
                int n_nodes = 0);

struct StationarityRow {
  double Q;
  double fd_derivative;        // central difference of E_0
  double analytic_derivative;  // eps(Q|Q) rho(Q|Q)
  double rel_error;
};

// Checks (E_0)'(Q) = eps(Q|Q) rho(Q|Q) over a Q grid.
std::vector<StationarityRow> e0_stationarity_check(const Anisotropy& a,
                                                   double J, double h,
                                                   const std::vector<double>& Q_grid,
                                                   int n_nodes = 0);

}  // namespace xxz

#endif
