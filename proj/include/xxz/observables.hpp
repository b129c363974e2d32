#ifndef XXZ_OBSERVABLES_HPP
#define XXZ_OBSERVABLES_HPP

#include <string>
#include <vector>

#include "xxz/counting.hpp"

// Physical outputs: densification sums, the energy decomposition
// E = L E_0 + E_1 + E_2/L, the Fermi velocity and the conformal finite-size
// spectrum of the massless regime.

namespace xxz {

struct DensifyResult {
  double sum = 0.0;       // sum_a f(lambda_a)
  double integral = 0.0;  // int_{-q}^{q} f rho(.|q)
  double gap = 0.0;       // |sum/L - integral|
};

DensifyResult densify(const BetheState& state, const ChainParams& params,
                      const RealFn& f, const FermiPoint& fermi,
                      const Anisotropy& a, int n_nodes = 0);

// E({lambda}) = (J Delta - h/2) L + sum_a e(lambda_a).
double raw_energy(const BetheState& state, const ChainParams& params,
                  const Anisotropy& a);

// v_F = eps'(Q_F|Q_F) / p'(Q_F|Q_F); derivatives are the exact lambda
// derivatives of the Nystrom representations (p' = rho at the consistent
// pair).  Throws ZeroDensity if the dressed momentum degenerates.
double fermi_velocity(const FermiPoint& fermi, const Anisotropy& a, double J,
                      double h, int n_nodes = 0);

struct SpectrumRecord {
  int L = 0, N = 0;
  ExcitationSpec spec;
  double E_raw = 0.0;
  double E0 = 0.0, E1 = 0.0, E2 = 0.0;
  double v_F = 0.0;
  double conformal_prediction = 0.0;  // predicted value of L (E - L E0)
  double defect = 0.0;                // |E_raw - (L E0 + E1 + E2/L)|
};

SpectrumRecord energy_decomposition(const BetheState& state,
                                    const ChainParams& params,
                                    const FermiPoint& fermi,
                                    const ExcitationSpec& spec,
                                    const Anisotropy& a, int n_nodes = 0);

// Edge excitation family: labels p^eps, h^eps (all >= 1) fixed in L, plus
// spin offset s and umklapp ell.  Rendered into an ExcitationSpec once the
// sector size is known.
struct EdgeFamily {
  std::string label = "ground";
  std::vector<int> p_plus, p_minus;
  std::vector<int> h_plus, h_minus;
  int s = 0;
  int ell = 0;

  ExcitationSpec render(int sector) const;
  // -1/12 + ell^2 (Z^2-1) + s^2/(4 Z^2) + sum_eps (sum [p-1/2] + sum [h-1/2])
  double bracket(double Z_QF) const;
};

struct ConformalRow {
  int L = 0;
  std::string label;
  double E_raw = 0.0;
  double measured = 0.0;    // L (E_raw - L E0)
  double prediction = 0.0;  // v_F * bracket
  double defect = 0.0;      // |measured - prediction|
};

struct ConformalReport {
  double h = 0.0, Q_F = 0.0, D_F = 0.0;
  double E0 = 0.0, v_F = 0.0, Z_QF = 0.0;
  std::vector<ConformalRow> rows;
  double ground_residual_slope = 0.0;  // fitted decay of the ground defect
};

// The field is tuned so that D_F equals D_target exactly; N = L D_target
// must be an integer for every L in the list, which pins q_hat = Q_F and
// absorbs the D - D_hat drift.
ConformalReport conformal_check(const Anisotropy& a, double J, double D_target,
                                const std::vector<EdgeFamily>& families,
                                const std::vector<int>& L_list,
                                int n_nodes = 0);

}  // namespace xxz

#endif
