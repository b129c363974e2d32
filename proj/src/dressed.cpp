#include "xxz/dressed.hpp"

#include <cmath>

#include "xxz/errors.hpp"
#include "xxz/kernels.hpp"

namespace xxz {

namespace kn = kernels;

DressedTable density(double Q, const Anisotropy& a, int n_nodes) {
  if (Q < 0.0) throw Error("density: Q must be >= 0");
  DressedTable t;
  t.which = DressedKind::Density;
  t.Q = Q;
  t.table = solve_second_kind(
      [a](double l) { return kn::bare_momentum_prime(l, a) / (2.0 * M_PI); },
      [a](double l) { return kn::bare_momentum_second(l, a) / (2.0 * M_PI); },
      -Q, Q, a, n_nodes);
  return t;
}

DressedTable dressed_charge(double Q, const Anisotropy& a, int n_nodes) {
  if (Q < 0.0) throw Error("dressed_charge: Q must be >= 0");
  DressedTable t;
  t.which = DressedKind::Charge;
  t.Q = Q;
  t.table = solve_second_kind([](double) { return 1.0; },
                              [](double) { return 0.0; }, -Q, Q, a, n_nodes);
  return t;
}

DressedTable dressed_phase(double Q, double mu, const Anisotropy& a,
                           int n_nodes) {
  if (Q < 0.0) throw Error("dressed_phase: Q must be >= 0");
  DressedTable t;
  t.which = DressedKind::Phase;
  t.Q = Q;
  t.mu = mu;
  t.table = solve_second_kind(
      [a, mu](double l) { return kn::bare_phase(l - mu, a) / (2.0 * M_PI); },
      [a, mu](double l) { return kn::lieb_kernel(l - mu, a); }, -Q, Q, a,
      n_nodes);
  return t;
}

DressedTable dressed_energy(double Q, const Anisotropy& a, double J, double h,
                            int n_nodes) {
  if (Q < 0.0) throw Error("dressed_energy: Q must be >= 0");
  if (!(J > 0.0)) throw Error("dressed_energy: J must be > 0");
  DressedTable t;
  t.which = DressedKind::Energy;
  t.Q = Q;
  t.table = solve_second_kind(
      [a, J, h](double l) { return kn::bare_energy(l, a, J, h); },
      [a, J](double l) { return kn::bare_energy_prime(l, a, J); }, -Q, Q, a,
      n_nodes);
  return t;
}

DressedTable dressed_momentum(double Q, double D, const Anisotropy& a,
                              int n_nodes) {
  if (Q < 0.0) throw Error("dressed_momentum: Q must be >= 0");
  if (!(D >= 0.0 && D <= 0.5)) throw Error("dressed_momentum: D in [0, 1/2]");
  DressedTable t;
  t.which = DressedKind::Momentum;
  t.Q = Q;
  t.table = solve_second_kind(
      [a, Q, D](double l) {
        return kn::bare_momentum(l, a) / (2.0 * M_PI) -
               D / (4.0 * M_PI) *
                   (kn::bare_phase(l - Q, a) + kn::bare_phase(l + Q, a));
      },
      [a, Q, D](double l) {
        return kn::bare_momentum_prime(l, a) / (2.0 * M_PI) -
               0.5 * D * (kn::lieb_kernel(l - Q, a) + kn::lieb_kernel(l + Q, a));
      },
      -Q, Q, a, n_nodes);
  return t;
}

EffectiveEnergy::EffectiveEnergy(double Q, const Anisotropy& a, double J,
                                 double h, int n_nodes)
    : Q_(Q), a_(a), eps_(dressed_energy(Q, a, J, h, n_nodes)) {
  if (Q > 0.0) {
    R_ = std::make_shared<ResolventKernel>(-Q, Q, a,
                                           n_nodes > 0 ? n_nodes : 256);
    const auto& g = R_->grid();
    row_plus_.resize(g.size());
    row_minus_.resize(g.size());
    // Rows R(+-Q, x_j): extend the node matrix in the first argument.
    for (int j = 0; j < g.size(); ++j) {
      Vector col = R_->node_matrix().col(j);
      row_plus_[j] = R_->extend_first(Q, col, g.nodes[j]);
      row_minus_[j] = R_->extend_first(-Q, col, g.nodes[j]);
    }
    col_plus_ = R_->column(Q);
    col_minus_ = R_->column(-Q);
    eps_QQ_ = eps_(Q);
  }
}

double EffectiveEnergy::phi_second_arg(double sign_q, double lambda) const {
  // phi(sq*Q, lambda | Q) through the resolvent representation.
  double sq = sign_q;
  double s = kn::bare_phase(sq * Q_ - lambda, a_) / (2.0 * M_PI);
  const auto& g = R_->grid();
  const Vector& row = sq > 0.0 ? row_plus_ : row_minus_;
  for (int j = 0; j < g.size(); ++j)
    s -= g.weights[j] * row[j] *
         kn::bare_phase(g.nodes[j] - lambda, a_) / (2.0 * M_PI);
  return s;
}

double EffectiveEnergy::operator()(double lambda) const {
  if (!R_) return eps_(lambda);
  return eps_(lambda) +
         eps_QQ_ * (phi_second_arg(+1.0, lambda) - phi_second_arg(-1.0, lambda));
}

double EffectiveEnergy::prime(double lambda) const {
  if (!R_) return eps_.prime(lambda);
  // d/dl phi(+-Q, l|Q) = -R(+-Q, l); R is symmetric in its arguments, so
  // evaluate through the cached columns at mu = +-Q.
  double Rpl = R_->extend_first(lambda, col_plus_, Q_);
  double Rml = R_->extend_first(lambda, col_minus_, -Q_);
  return eps_.prime(lambda) - eps_QQ_ * (Rpl - Rml);
}

double ThermoCounting::range_lo(const Anisotropy& a) const {
  if (a.gapped()) return -std::numeric_limits<double>::infinity();
  return -(M_PI - a.zeta_or_zero()) / M_PI * (0.5 - D);
}

double ThermoCounting::range_hi(const Anisotropy& a) const {
  if (a.gapped()) return std::numeric_limits<double>::infinity();
  return (M_PI - a.zeta_or_zero()) / M_PI * (0.5 - D) + D;
}

double ThermoCounting::invert(double y, const Anisotropy& a) const {
  if (!a.gapped()) {
    if (!(y > range_lo(a) && y < range_hi(a)))
      throw OutOfRange("xi0 inverse: y outside the range of xi0");
  }
  // Bracket, then safeguarded Newton.
  double lo = -1.0, hi = 1.0;
  while ((*this)(lo) > y) lo *= 2.0;
  while ((*this)(hi) < y) hi *= 2.0;
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    double f = (*this)(x)-y;
    if (f > 0.0) hi = x; else lo = x;
    double d = prime(x);
    double xn = (d > 0.0) ? x - f / d : 0.5 * (lo + hi);
    if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
    if (std::fabs(xn - x) < 1e-15 * (1.0 + std::fabs(x)) && std::fabs(f) < 1e-13)
      return xn;
    x = xn;
  }
  return x;
}

ThermoCounting xi0(double q_hat, double D_hat, const Anisotropy& a,
                   int n_nodes) {
  ThermoCounting tc;
  tc.q = q_hat;
  tc.D = D_hat;
  tc.p = dressed_momentum(q_hat, D_hat, a, n_nodes);
  tc.rho = density(q_hat, a, n_nodes);
  return tc;
}

double xi0_infinity(double lambda, const Anisotropy& a, double D_hat) {
  return kn::momentum_infinity(lambda, a) + 0.5 * D_hat;
}

double xi0_infinity_inverse(double y, const Anisotropy& a, double D_hat) {
  return kn::momentum_infinity_inverse(y - 0.5 * D_hat, a);
}

}  // namespace xxz
