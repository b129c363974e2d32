#ifndef XXZ_COUNTING_HPP
#define XXZ_COUNTING_HPP

#include <functional>
#include <vector>

#include "xxz/bae.hpp"
#include "xxz/fermi.hpp"

// The finite-size counting function xi_hat built from a solved Bethe state,
// its complex continuation on the analyticity strip, the non-linear integral
// equation it satisfies, and the large-L asymptotic expansion coefficients
// xi_1, xi_2 and q_+-^(1,2).

namespace xxz {

class CountingFn {
 public:
  CountingFn(const BetheState& state, const ChainParams& params,
             const Anisotropy& a);

  double operator()(double lambda) const;
  double prime(double lambda) const;

  // Continuation off the real axis by integrating xi' along the vertical
  // segment; branch-free since xi' is meromorphic with poles outside the
  // strip |Im z| < 2 kappa_Delta.
  Complex evaluate(Complex z) const;
  Complex prime(Complex z) const;

  // Range of xi_hat over the real line (tight analytic limits for
  // Delta <= 1; unbounded in the gapped regime).
  double range_lo() const;
  double range_hi() const;

  // Monotone inversion on the real line; throws OutOfRange outside the range.
  double invert(double y) const;

  // Complex Newton seeded from the nearest real inversion.
  Complex invert(Complex z, double seed) const;

  int sector() const { return int(roots_.size()); }
  const std::vector<double>& roots() const { return roots_; }
  const std::vector<int>& integers() const { return integers_; }
  const ChainParams& params() const { return params_; }
  const Anisotropy& anisotropy() const { return a_; }

 private:
  std::vector<double> roots_;
  std::vector<int> integers_;
  ChainParams params_;
  Anisotropy a_;
};

struct ExpansionBundle {
  double q_hat = 0.0;
  double rho_qq = 0.0;                     // xi_0'(q|q)
  std::vector<double> x_particles;         // augmented set {p_a} U {N+a}_1^s
  std::vector<double> x_holes;
  std::function<double(double)> xi1;
  std::function<double(double)> xi1_prime;
  std::function<double(double)> xi2;
  double q_plus_1 = 0.0, q_minus_1 = 0.0;
  double q_plus_2 = 0.0, q_minus_2 = 0.0;
};

// Expansion coefficients around the magnetic boundary q_hat at
// D_hat = N/L (the fermi point of the *base* sector; spec.s is absorbed by
// the augmented particle set and the s Z/2 term of xi_1).
ExpansionBundle expansion(const CountingFn& cf, const FermiPoint& fermi,
                          const ExcitationSpec& spec, int n_nodes = 0);

struct NlieReport {
  double sup_residual = 0.0;       // with the remainder operator included
  double sup_no_remainder = 0.0;   // | xi - xi0 - Phi/L | only
  double alpha = 0.0;              // contour half-height used
  int n_contour = 0;
  double q_hat_R = 0.0, q_hat_L = 0.0;
};

// Residual of the non-linear integral equation
//   xi = xi0(.|q) + Phi^{(s)}/L + (R_{N;1} + R_{N;2} + R_{N;3})[xi]
// over a real test grid.  alpha = 0 selects min(kappa/2, 0.8 kappa); any
// explicit alpha >= kappa_Delta is rejected as ContourTooClose.
NlieReport nlie_residual(const CountingFn& cf, const FermiPoint& fermi,
                         const ExcitationSpec& spec, int n_contour,
                         double alpha = 0.0, int n_nodes = 0);

struct ConvergenceRow {
  int L = 0;
  double sup_dev = 0.0;                // sup over I_{2q} of |xi - xi0(.|q)|
  std::vector<double> compact_devs;    // D = 1/2 only: per Lambda in {1,2,4}
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  double fitted_exponent = 0.0;        // of sup_dev ~ L^{-p} (D < 1/2)
  std::vector<double> lambdas;         // the compacts used at D = 1/2
};

ConvergenceReport convergence_report(const ExcitationSpec& spec,
                                     const Anisotropy& a, double D,
                                     const std::vector<int>& L_list,
                                     double J = 1.0, double h = 0.0);

// Fraction (1/L) #{a : |lambda_a| > Lambda}.
double tail_fraction(const BetheState& state, int L, double Lambda);

}  // namespace xxz

#endif
