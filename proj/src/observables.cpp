#include "xxz/observables.hpp"

#include <cmath>

#include "xxz/errors.hpp"
#include "xxz/kernels.hpp"

namespace xxz {

namespace kn = kernels;

DensifyResult densify(const BetheState& state, const ChainParams& params,
                      const RealFn& f, const FermiPoint& fermi,
                      const Anisotropy& a, int n_nodes) {
  DensifyResult out;
  for (double r : state.roots) out.sum += f(r);
  auto rho = density(fermi.Q, a, n_nodes);
  const auto& g = rho.table.grid;
  for (int i = 0; i < g.size(); ++i)
    out.integral += g.weights[i] * f(g.nodes[i]) * rho.table.values[i];
  out.gap = std::fabs(out.sum / params.L - out.integral);
  return out;
}

double raw_energy(const BetheState& state, const ChainParams& params,
                  const Anisotropy& a) {
  double s = (params.J * a.delta() - 0.5 * params.h) * params.L;
  for (double r : state.roots)
    s += kn::bare_energy(r, a, params.J, params.h);
  return s;
}

double fermi_velocity(const FermiPoint& fermi, const Anisotropy& a, double J,
                      double h, int n_nodes) {
  auto rho = density(fermi.Q, a, n_nodes);
  double p_prime = rho(fermi.Q);
  if (!(p_prime > 1e-12))
    throw ZeroDensity("fermi_velocity: p'(Q_F|Q_F) below 1e-12");
  auto eps = dressed_energy(fermi.Q, a, J, h, n_nodes);
  return eps.prime(fermi.Q) / p_prime;
}

ExcitationSpec EdgeFamily::render(int sector) const {
  ExcitationSpec sp;
  sp.s = s;
  sp.umklapp_ell = ell;
  for (int hm : h_minus) sp.holes.push_back(hm);
  for (int hp : h_plus) sp.holes.push_back(sector + 1 - hp);
  std::sort(sp.holes.begin(), sp.holes.end());
  for (int pm : p_minus) sp.particles.push_back(1 - pm);
  for (int pp : p_plus) sp.particles.push_back(sector + pp);
  std::sort(sp.particles.begin(), sp.particles.end());
  return sp;
}

double EdgeFamily::bracket(double Z_QF) const {
  double b = -1.0 / 12.0;
  b += double(ell) * double(ell) * (Z_QF * Z_QF - 1.0);
  b += double(s) * double(s) / (4.0 * Z_QF * Z_QF);
  for (int p : p_plus) b += p - 0.5;
  for (int p : p_minus) b += p - 0.5;
  for (int hh : h_plus) b += hh - 0.5;
  for (int hh : h_minus) b += hh - 0.5;
  return b;
}

SpectrumRecord energy_decomposition(const BetheState& state,
                                    const ChainParams& params,
                                    const FermiPoint& fermi,
                                    const ExcitationSpec& spec,
                                    const Anisotropy& a, int n_nodes) {
  SpectrumRecord rec;
  rec.L = params.L;
  rec.N = params.N;
  rec.spec = spec;
  rec.E_raw = raw_energy(state, params, a);
  rec.E0 = e0_value(fermi.Q, a, params.J, params.h, n_nodes);

  CountingFn cf(state, params, a);
  auto ex = expansion(cf, fermi, spec, n_nodes);
  EffectiveEnergy ee(fermi.Q, a, params.J, params.h, n_nodes);

  rec.E1 = 0.0;
  for (double x : ex.x_particles) rec.E1 += ee(x);
  for (double x : ex.x_holes) rec.E1 -= ee(x);

  double ee_prime_q = ee.prime(fermi.Q);
  rec.E2 = -ee_prime_q / (12.0 * ex.rho_qq) +
           0.5 * ee_prime_q * ex.rho_qq *
               (ex.q_plus_1 * ex.q_plus_1 + ex.q_minus_1 * ex.q_minus_1);
  rec.v_F = ee_prime_q / ex.rho_qq;
  rec.defect = std::fabs(rec.E_raw -
                         (params.L * rec.E0 + rec.E1 + rec.E2 / params.L));
  return rec;
}

ConformalReport conformal_check(const Anisotropy& a, double J, double D_target,
                                const std::vector<EdgeFamily>& families,
                                const std::vector<int>& L_list, int n_nodes) {
  ConformalReport rep;
  auto fq = magnetic_fermi_boundary(D_target, a, n_nodes);
  rep.h = field_for_density(D_target, a, J, n_nodes);
  rep.Q_F = fq.Q;
  rep.D_F = D_target;
  rep.E0 = e0_value(fq.Q, a, J, rep.h, n_nodes);
  {
    auto Z = dressed_charge(fq.Q, a, n_nodes);
    rep.Z_QF = Z(fq.Q);
  }
  rep.v_F = fermi_velocity({fq.Q, D_target, FermiKind::Energetic}, a, J,
                           rep.h, n_nodes);

  std::vector<double> Ls, devs;
  for (int L : L_list) {
    double NL = D_target * L;
    int N = int(std::lround(NL));
    if (std::fabs(NL - N) > 1e-9)
      throw Error("conformal_check: L * D_target must be an integer");
    ChainParams cp{L, N, J, rep.h};
    for (const auto& fam : families) {
      auto sp = fam.render(N + fam.s);
      auto st = solve_state(cp, sp, a);
      ConformalRow row;
      row.L = L;
      row.label = fam.label;
      row.E_raw = raw_energy(st, cp, a);
      row.measured = L * (row.E_raw - L * rep.E0);
      row.prediction = rep.v_F * fam.bracket(rep.Z_QF);
      row.defect = std::fabs(row.measured - row.prediction);
      if (fam.label == "ground") {
        Ls.push_back(L);
        devs.push_back(std::max(row.defect, 1e-300));
      }
      rep.rows.push_back(std::move(row));
    }
  }
  if (Ls.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < Ls.size(); ++i) {
      double lx = std::log(Ls[i]), ly = std::log(devs[i]);
      sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    double n = double(Ls.size());
    rep.ground_residual_slope = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  return rep;
}

}  // namespace xxz
