#ifndef XXZ_BAE_HPP
#define XXZ_BAE_HPP

#include <vector>

#include "xxz/anisotropy.hpp"
#include "xxz/types.hpp"

// Finite-size machinery: admissibility of particle-hole integer sets, the
// Yang-Yang action S with gradient and Hessian, and the Newton solver for
// real Bethe roots.

namespace xxz {

struct ChainParams {
  int L = 0;     // even number of sites
  int N = 0;     // down spins, 0 <= N <= L/2
  double J = 1.0;
  double h = 0.0;

  double density() const { return double(N) / double(L); }
  void validate() const;
};

// Particle-hole excitation data on top of the ground-state integer
// configuration of the sector with N' = N + s down spins.
struct ExcitationSpec {
  std::vector<int> holes;      // strictly increasing, in [1, N']
  std::vector<int> particles;  // strictly increasing, outside [1, N']
  int s = 0;                   // spin offset: the state actually has N + s roots
  int umklapp_ell = 0;         // enters only the conformal prediction

  int n() const { return int(holes.size()); }
};

struct BetheState {
  std::vector<double> roots;  // sorted increasing
  std::vector<int> integers;  // ell_a, matching the sorted roots
  double residual = 0.0;      // sup norm of the logarithmic-BAE defect
  double action_value = 0.0;  // S at the solution
};

// ell_a = a for a in [1, N'] \ {h}, ell_{h_a} = p_a (position order).
// Throws InvalidSpec naming the violated admissibility inequality.
std::vector<int> resolve_integers(const ChainParams& params,
                                  const ExcitationSpec& spec,
                                  const Anisotropy& a);

struct YangYangData {
  double S;
  Vector grad;
  Matrix hess;
};

// Action, gradient and Hessian at the point mu for the integer set ells.
// grad_a coincides with the logarithmic-BAE defect xi_hat(mu_a) - ell_a/L.
YangYangData yang_yang(const Vector& mu, const ChainParams& params,
                       const std::vector<int>& ells, const Anisotropy& a);

struct SolveOptions {
  double tol_request = 1e-13;
  double tol_accept = 1e-10;
  int max_newton = 100;
  int max_fallback_descent = 200;
  int n_nodes = 0;  // dressed-table resolution for the initial guess
};

BetheState solve_state(const ChainParams& params, const ExcitationSpec& spec,
                       const Anisotropy& a, const SolveOptions& opts = {});

// Maps gapped roots into (-pi/2, pi/2] and rewrites the integers to the
// equivalent set; no-op for Delta <= 1.
BetheState normalize_gapped(const BetheState& st, const ChainParams& params,
                            const Anisotropy& a);

}  // namespace xxz

#endif
