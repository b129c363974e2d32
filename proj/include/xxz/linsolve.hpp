#ifndef XXZ_LINSOLVE_HPP
#define XXZ_LINSOLVE_HPP

#include <functional>

#include "xxz/anisotropy.hpp"
#include "xxz/grid.hpp"
#include "xxz/types.hpp"

// Nystrom machinery for second-kind Fredholm equations
//   f(lambda) + sign * int_J K(lambda - mu) f(mu) dmu = g(lambda)
// on compact intervals J = [Q_L, Q_R], with the natural Nystrom extension
// off the quadrature nodes, and the resolvent kernel R_J(lambda, mu).

namespace xxz {

using RealFn = std::function<double(double)>;

struct NystromSolution {
  QuadGrid grid;
  Vector values;
  RealFn driving;        // g
  RealFn driving_prime;  // g', used by the derivative extension
  RealFn kernel;         // difference kernel K
  RealFn kernel_prime;   // K'
  double kernel_sign = 1.0;

  bool empty() const { return grid.size() == 0; }

  // Nystrom natural interpolation f(l) = g(l) - sign * sum_j w_j K(l-x_j) f_j;
  // reproduces the node values exactly and solves the integral equation
  // pointwise to quadrature accuracy.
  double extend(double lambda) const;

  // d/dlambda of the extension (exact derivative of the interpolant).
  double extend_prime(double lambda) const;

  // Max-norm defect of the discrete system at the nodes.
  double node_residual() const;
};

// Low-level solve on a fixed grid.
NystromSolution solve_fredholm(RealFn kernel, RealFn kernel_prime,
                               double kernel_sign, RealFn g, RealFn g_prime,
                               const QuadGrid& grid);

// Solve (id + K_{[Q_L,Q_R]}) f = g with the Lieb kernel of `a`.
// n_nodes = 0 selects the refinement policy: start at 128 nodes and double
// until two successive extensions agree below 1e-10 (capped at 2048).
// Q_L = Q_R yields the empty-interval convention f = g.
NystromSolution solve_second_kind(RealFn g, RealFn g_prime, double Q_L,
                                  double Q_R, const Anisotropy& a,
                                  int n_nodes = 0);

// Resolvent kernel R_J(lambda, mu):
//   R_J(l, m) + int_J K(l - nu) R_J(nu, m) dnu = K(l - m),
// stored at the nodes and Nystrom-extendable in both arguments (columns for
// off-grid mu come from one back-substitution against the cached LU).
class ResolventKernel {
 public:
  ResolventKernel(double Q_L, double Q_R, const Anisotropy& a, int n_nodes);

  const QuadGrid& grid() const { return grid_; }
  const Matrix& node_matrix() const { return R_; }
  const Anisotropy& anisotropy() const { return a_; }

  // Values R(x_i, mu) at the nodes, for any real or complex mu.
  Vector column(double mu) const;
  CVector column(Complex mu) const;

  // (I + K W)^{-1} rhs against the cached factorisation.
  Vector apply_inverse(const Vector& rhs) const { return lu_.solve(rhs); }

  // Extension in the first argument given a precomputed column.
  double extend_first(double lambda, const Vector& col, double mu) const;
  Complex extend_first(Complex lambda, const CVector& col, Complex mu) const;

  double operator()(double lambda, double mu) const {
    return extend_first(lambda, column(mu), mu);
  }

 private:
  QuadGrid grid_;
  Anisotropy a_;
  Matrix K_;  // K(x_i - x_j)
  Matrix R_;
  Eigen::PartialPivLU<Matrix> lu_;
};

}  // namespace xxz

#endif
