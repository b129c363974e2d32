#ifndef XXZ_DRESSED_HPP
#define XXZ_DRESSED_HPP

#include <cmath>
#include <memory>

#include "xxz/anisotropy.hpp"
#include "xxz/linsolve.hpp"

// Dressed thermodynamic functions on the Fermi interval I_Q: root density
// rho(.|Q), dressed charge Z(.|Q), dressed phase phi(.,mu|Q), dressed energy
// eps(.|Q), dressed momentum p(.|Q) and the thermodynamic counting function
// xi_0(.|q) = p(.|q) + D/2.  All are Nystrom tables evaluable anywhere on the
// real line through the natural extension.

namespace xxz {

enum class DressedKind { Density, Charge, Phase, Energy, Momentum };

struct DressedTable {
  DressedKind which = DressedKind::Density;
  double Q = 0.0;
  double mu = 0.0;  // dressed phase only: the held second argument
  NystromSolution table;

  double operator()(double lambda) const { return table.extend(lambda); }
  double prime(double lambda) const { return table.extend_prime(lambda); }
};

// (id + K_{I_Q})[rho] = p'/(2 pi).  Q = 0 reduces to the bare p'/(2 pi).
DressedTable density(double Q, const Anisotropy& a, int n_nodes = 0);

// (id + K_{I_Q})[Z] = 1.
DressedTable dressed_charge(double Q, const Anisotropy& a, int n_nodes = 0);

// (id + K_{I_Q})[phi(., mu)] = theta(. - mu)/(2 pi).
DressedTable dressed_phase(double Q, double mu, const Anisotropy& a,
                           int n_nodes = 0);

// (id + K_{I_Q})[eps] = e = h - 2 J chi p'.
DressedTable dressed_energy(double Q, const Anisotropy& a, double J, double h,
                            int n_nodes = 0);

// (id + K_{I_Q})[p] = p_bare/(2 pi) - D/(4 pi) [theta(.-Q) + theta(.+Q)].
DressedTable dressed_momentum(double Q, double D, const Anisotropy& a,
                              int n_nodes = 0);

// Effective dressed energy
//   eps_eff(l|Q) = eps(l|Q) + eps(Q|Q) [phi(Q, l|Q) - phi(-Q, l|Q)].
// The second-argument dependence of phi is evaluated through the resolvent
// representation phi(Q, l|Q) = theta(Q-l)/(2pi) - int R(Q,nu) theta(nu-l)/(2pi),
// and d/dl phi(+-Q, l|Q) = -R(+-Q, l); both are exact identities of the
// defining equations, no finite differences involved.
class EffectiveEnergy {
 public:
  EffectiveEnergy(double Q, const Anisotropy& a, double J, double h,
                  int n_nodes = 0);

  double operator()(double lambda) const;
  double prime(double lambda) const;

  double eps_at_boundary() const { return eps_QQ_; }
  const DressedTable& bare_dressed_energy() const { return eps_; }

 private:
  double phi_second_arg(double sign_q, double lambda) const;

  double Q_;
  Anisotropy a_;
  DressedTable eps_;
  std::shared_ptr<ResolventKernel> R_;
  Vector row_plus_, row_minus_;  // R(+-Q, x_j) on the resolvent grid
  Vector col_plus_, col_minus_;  // R(x_j, +-Q)
  double eps_QQ_ = 0.0;
};

// xi_0(.|q) together with its first two derivatives (rho and rho'), built at
// a consistent pair (q, D) so that p' = rho exactly.
struct ThermoCounting {
  double q = 0.0;
  double D = 0.0;
  DressedTable p;
  DressedTable rho;

  double operator()(double lambda) const { return p(lambda) + 0.5 * D; }
  double prime(double lambda) const { return rho(lambda); }
  double second(double lambda) const { return rho.prime(lambda); }

  // Range of xi_0 over the real line (open bounds for Delta <= 1).
  double range_lo(const Anisotropy& a) const;
  double range_hi(const Anisotropy& a) const;

  // Monotone inversion; throws OutOfRange for y outside the range.
  double invert(double y, const Anisotropy& a) const;
};

ThermoCounting xi0(double q_hat, double D_hat, const Anisotropy& a,
                   int n_nodes = 0);

// Closed-form q = +infinity counting function for the D = 1/2 gapless and
// isotropic regimes: xi_0(l|+inf) = int_0^l rho_inf + D/2.
double xi0_infinity(double lambda, const Anisotropy& a, double D_hat = 0.5);
double xi0_infinity_inverse(double y, const Anisotropy& a, double D_hat = 0.5);

}  // namespace xxz

#endif
