#include "xxz/linsolve.hpp"

#include <cmath>

#include "xxz/errors.hpp"
#include "xxz/kernels.hpp"

namespace xxz {

namespace {

QuadGrid make_grid(double Q_L, double Q_R, const Anisotropy& a, int n) {
  // Periodic trapezoid only for the gapped full-interval problem, where the
  // solution is pi-periodic and the rule is spectrally accurate.
  if (a.gapped() && std::fabs((Q_R - Q_L) - M_PI) < 1e-13)
    return QuadGrid::periodic_trapezoid(Q_L, Q_R, n);
  return QuadGrid::gauss_legendre(Q_L, Q_R, n);
}

Matrix system_matrix(const QuadGrid& g, const RealFn& kernel, double sign) {
  int n = g.size();
  Matrix A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      A(i, j) = (i == j ? 1.0 : 0.0) + sign * g.weights[j] * kernel(g.nodes[i] - g.nodes[j]);
  return A;
}

void check_conditioning(const Eigen::PartialPivLU<Matrix>& lu) {
  if (!(lu.rcond() > 1e-14))
    throw SingularSystem("discrete Fredholm operator is numerically singular");
}

}  // namespace

double NystromSolution::extend(double lambda) const {
  double s = driving(lambda);
  for (int j = 0; j < grid.size(); ++j)
    s -= kernel_sign * grid.weights[j] * kernel(lambda - grid.nodes[j]) * values[j];
  return s;
}

double NystromSolution::extend_prime(double lambda) const {
  double s = driving_prime(lambda);
  for (int j = 0; j < grid.size(); ++j)
    s -= kernel_sign * grid.weights[j] * kernel_prime(lambda - grid.nodes[j]) * values[j];
  return s;
}

double NystromSolution::node_residual() const {
  double r = 0.0;
  for (int i = 0; i < grid.size(); ++i) {
    double s = values[i] - driving(grid.nodes[i]);
    for (int j = 0; j < grid.size(); ++j)
      s += kernel_sign * grid.weights[j] * kernel(grid.nodes[i] - grid.nodes[j]) * values[j];
    r = std::max(r, std::fabs(s));
  }
  return r;
}

NystromSolution solve_fredholm(RealFn kernel, RealFn kernel_prime,
                               double kernel_sign, RealFn g, RealFn g_prime,
                               const QuadGrid& grid) {
  NystromSolution sol;
  sol.grid = grid;
  sol.driving = std::move(g);
  sol.driving_prime = std::move(g_prime);
  sol.kernel = std::move(kernel);
  sol.kernel_prime = std::move(kernel_prime);
  sol.kernel_sign = kernel_sign;
  int n = grid.size();
  if (n == 0) {
    sol.values.resize(0);
    return sol;
  }
  Matrix A = system_matrix(grid, sol.kernel, kernel_sign);
  Vector rhs(n);
  for (int i = 0; i < n; ++i) rhs[i] = sol.driving(grid.nodes[i]);
  Eigen::PartialPivLU<Matrix> lu(A);
  check_conditioning(lu);
  sol.values = lu.solve(rhs);
  return sol;
}

NystromSolution solve_second_kind(RealFn g, RealFn g_prime, double Q_L,
                                  double Q_R, const Anisotropy& a,
                                  int n_nodes) {
  if (!(Q_L <= Q_R)) throw Error("solve_second_kind: need Q_L <= Q_R");
  if (a.gapped() && Q_R - Q_L > M_PI + 1e-12)
    throw Error("solve_second_kind: gapped interval longer than pi");

  RealFn K = [a](double x) { return kernels::lieb_kernel(x, a); };
  RealFn Kp = [a](double x) { return kernels::lieb_kernel_prime(x, a); };

  if (Q_R - Q_L < 1e-14) {
    // Empty-interval convention: all integral terms vanish.
    NystromSolution sol;
    sol.driving = std::move(g);
    sol.driving_prime = std::move(g_prime);
    sol.kernel = K;
    sol.kernel_prime = Kp;
    return sol;
  }

  if (n_nodes > 0) {
    if (n_nodes < 8) throw Error("solve_second_kind: need n_nodes >= 8");
    return solve_fredholm(K, Kp, 1.0, std::move(g), std::move(g_prime),
                          make_grid(Q_L, Q_R, a, n_nodes));
  }

  // Refinement policy: double from 128 until successive extensions agree.
  Vector probe(17);
  for (int i = 0; i < 17; ++i)
    probe[i] = Q_L + (Q_R - Q_L) * (0.5 - 0.5 * std::cos(M_PI * i / 16.0));
  NystromSolution prev =
      solve_fredholm(K, Kp, 1.0, g, g_prime, make_grid(Q_L, Q_R, a, 128));
  for (int n = 256; n <= 2048; n *= 2) {
    NystromSolution next =
        solve_fredholm(K, Kp, 1.0, g, g_prime, make_grid(Q_L, Q_R, a, n));
    double diff = 0.0;
    for (int i = 0; i < probe.size(); ++i)
      diff = std::max(diff, std::fabs(next.extend(probe[i]) - prev.extend(probe[i])));
    prev = std::move(next);
    if (diff < 1e-10) break;
  }
  return prev;
}

ResolventKernel::ResolventKernel(double Q_L, double Q_R, const Anisotropy& a,
                                 int n_nodes)
    : a_(a) {
  if (!(Q_L < Q_R)) throw Error("resolvent_kernel: need Q_L < Q_R");
  if (a.gapped() && Q_R - Q_L > M_PI + 1e-12)
    throw Error("resolvent_kernel: gapped interval longer than pi");
  if (n_nodes < 8) n_nodes = 128;
  grid_ = make_grid(Q_L, Q_R, a, n_nodes);
  int n = grid_.size();
  K_.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      K_(i, j) = kernels::lieb_kernel(grid_.nodes[i] - grid_.nodes[j], a_);
  Matrix A = K_ * grid_.weights.asDiagonal();
  A += Matrix::Identity(n, n);
  lu_.compute(A);
  if (!(lu_.rcond() > 1e-14))
    throw SingularSystem("resolvent kernel: singular discrete operator");
  R_ = lu_.solve(K_);
}

Vector ResolventKernel::column(double mu) const {
  int n = grid_.size();
  Vector rhs(n);
  for (int i = 0; i < n; ++i)
    rhs[i] = kernels::lieb_kernel(grid_.nodes[i] - mu, a_);
  return lu_.solve(rhs);
}

CVector ResolventKernel::column(Complex mu) const {
  int n = grid_.size();
  Vector re(n), im(n);
  for (int i = 0; i < n; ++i) {
    Complex k = kernels::lieb_kernel(Complex(grid_.nodes[i]) - mu, a_);
    re[i] = k.real();
    im[i] = k.imag();
  }
  CVector out(n);
  out.real() = lu_.solve(re);
  out.imag() = lu_.solve(im);
  return out;
}

double ResolventKernel::extend_first(double lambda, const Vector& col,
                                     double mu) const {
  double s = kernels::lieb_kernel(lambda - mu, a_);
  for (int j = 0; j < grid_.size(); ++j)
    s -= grid_.weights[j] *
         kernels::lieb_kernel(lambda - grid_.nodes[j], a_) * col[j];
  return s;
}

Complex ResolventKernel::extend_first(Complex lambda, const CVector& col,
                                      Complex mu) const {
  Complex s = kernels::lieb_kernel(lambda - mu, a_);
  for (int j = 0; j < grid_.size(); ++j)
    s -= grid_.weights[j] *
         kernels::lieb_kernel(lambda - Complex(grid_.nodes[j]), a_) * col[j];
  return s;
}

}  // namespace xxz
