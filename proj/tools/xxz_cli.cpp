// Batch CLI over the xxz library: plot-ready CSV/JSON for the dressed
// tables, Fermi boundaries, Bethe states, counting-function ladders,
// densification sums and the conformal spectrum.  Deterministic for a fixed
// configuration: fixed quadrature orders, no randomness.

#include <CLI11.hpp>
#include <json.hpp>

#include <clocale>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "xxz/counting.hpp"
#include "xxz/kernels.hpp"
#include "xxz/observables.hpp"

using json = nlohmann::json;
using namespace xxz;
namespace kn = xxz::kernels;

namespace {

struct RunConfig {
  std::string regime = "gapless";
  double zeta = 0.4;
  double J = 1.0;
  double h = std::numeric_limits<double>::quiet_NaN();
  double D = std::numeric_limits<double>::quiet_NaN();
  std::vector<int> L = {64};
  int N = -1;
  std::vector<int> holes, particles;
  std::vector<int> hplus, pplus;  // edge labels for multi-L families
  std::vector<int> hminus, pminus;
  int s = 0;
  int ell = 0;
  int nodes = 0;
  int contour = 512;
  double tol = 1e-10;
  int samples = 201;
  std::string f_name = "one";
  std::string out;
  std::string format = "csv";

  bool has_h() const { return !std::isnan(h); }
  bool has_D() const { return !std::isnan(D); }

  Anisotropy anisotropy() const {
    if (regime == "gapless") return Anisotropy::gapless(zeta);
    if (regime == "isotropic") return Anisotropy::isotropic();
    if (regime == "gapped") return Anisotropy::gapped(zeta);
    throw Error("unknown regime '" + regime + "'");
  }
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(cfg.out, std::ios::trunc);
    if (!f) throw Error("cannot open output file " + cfg.out);
    f << text;
  }
}

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open config file " + path);
  json j = json::parse(f);
  auto get = [&](const char* key, auto& slot) {
    if (j.contains(key)) slot = j[key].get<std::decay_t<decltype(slot)>>();
  };
  get("regime", cfg.regime);
  get("zeta", cfg.zeta);
  get("J", cfg.J);
  get("h", cfg.h);
  get("D", cfg.D);
  get("L", cfg.L);
  get("N", cfg.N);
  get("holes", cfg.holes);
  get("particles", cfg.particles);
  get("hplus", cfg.hplus);
  get("pplus", cfg.pplus);
  get("hminus", cfg.hminus);
  get("pminus", cfg.pminus);
  get("s", cfg.s);
  get("ell", cfg.ell);
  get("nodes", cfg.nodes);
  get("contour", cfg.contour);
  get("tol", cfg.tol);
  get("samples", cfg.samples);
  get("f", cfg.f_name);
  get("out", cfg.out);
  get("format", cfg.format);
}

// The fermi point selected by the config: magnetic boundary for --D,
// energetic boundary for --h.
FermiPoint select_fermi(const RunConfig& cfg, const Anisotropy& a) {
  if (cfg.has_D()) return magnetic_fermi_boundary(cfg.D, a, cfg.nodes);
  if (cfg.has_h()) return fermi_boundary_from_field(cfg.h, a, cfg.J, cfg.nodes);
  throw InvalidSpec("need --D or --h to fix the Fermi interval");
}

RealFn densify_function(const RunConfig& cfg, const Anisotropy& a) {
  if (cfg.f_name == "one") return [](double) { return 1.0; };
  if (cfg.f_name == "tanh") return [](double l) { return std::tanh(l); };
  if (cfg.f_name == "gauss")
    return [](double l) { return std::exp(-l * l); };
  if (cfg.f_name == "bare_energy") {
    double J = cfg.J, h = cfg.has_h() ? cfg.h : 0.0;
    return [a, J, h](double l) { return kn::bare_energy(l, a, J, h); };
  }
  throw InvalidSpec("unknown densify function '" + cfg.f_name +
                    "' (catalog: one, tanh, gauss, bare_energy)");
}

int cmd_dressed(const RunConfig& cfg) {
  auto a = cfg.anisotropy();
  auto fp = select_fermi(cfg, a);
  double h = cfg.has_h() ? cfg.h : 0.0;
  auto rho = density(fp.Q, a, cfg.nodes);
  auto Z = dressed_charge(fp.Q, a, cfg.nodes);
  auto eps = dressed_energy(fp.Q, a, cfg.J, h, cfg.nodes);
  auto tc = xi0(fp.Q, fp.D, a, cfg.nodes);
  std::ostringstream os;
  os << "lambda,rho,Z,eps,p,xi0\n";
  double span = fp.Q > 0.0 ? 2.0 * fp.Q : 2.0;
  for (int k = 0; k < cfg.samples; ++k) {
    double l = -span + 2.0 * span * k / (cfg.samples - 1);
    os << fmt(l) << ',' << fmt(rho(l)) << ',' << fmt(Z(l)) << ','
       << fmt(eps(l)) << ',' << fmt(tc.p(l)) << ',' << fmt(tc(l)) << '\n';
  }
  emit(cfg, os.str());
  return 0;
}

int cmd_fermi(const RunConfig& cfg) {
  auto a = cfg.anisotropy();
  auto cf = kn::critical_fields(a, cfg.J);
  json j;
  j["h_c"] = cf.h_c;
  if (cf.h_c_lower) j["h_c_lower"] = *cf.h_c_lower;
  if (cfg.has_D()) {
    auto fp = magnetic_fermi_boundary(cfg.D, a, cfg.nodes);
    j["q"] = fp.Q;
    j["D"] = fp.D;
    j["h_of_D"] = field_for_density(cfg.D, a, cfg.J, cfg.nodes);
  }
  if (cfg.has_h()) {
    auto fp = fermi_boundary_from_field(cfg.h, a, cfg.J, cfg.nodes);
    j["Q_F"] = fp.Q;
    j["D_F"] = fp.D;
  }
  emit(cfg, j.dump(2) + "\n");
  return 0;
}

int cmd_solve(const RunConfig& cfg) {
  auto a = cfg.anisotropy();
  if (cfg.L.size() != 1) throw InvalidSpec("solve expects a single --L");
  int L = cfg.L[0];
  int N = cfg.N >= 0 ? cfg.N : int(std::lround(cfg.has_D() ? cfg.D * L : L / 4));
  ChainParams cp{L, N, cfg.J, cfg.has_h() ? cfg.h : 0.0};
  ExcitationSpec sp{cfg.holes, cfg.particles, cfg.s, cfg.ell};
  SolveOptions opts;
  opts.tol_accept = cfg.tol;
  opts.n_nodes = cfg.nodes;
  auto st = solve_state(cp, sp, a, opts);
  json j;
  j["L"] = L;
  j["N"] = N;
  j["roots"] = st.roots;
  j["integers"] = st.integers;
  j["residual"] = st.residual;
  j["action"] = st.action_value;
  emit(cfg, j.dump(2) + "\n");
  return 0;
}

ExcitationSpec edge_spec(const RunConfig& cfg, int sector) {
  EdgeFamily fam;
  fam.p_plus = cfg.pplus;
  fam.h_plus = cfg.hplus;
  fam.p_minus = cfg.pminus;
  fam.h_minus = cfg.hminus;
  fam.s = cfg.s;
  fam.ell = cfg.ell;
  return fam.render(sector);
}

int cmd_counting(const RunConfig& cfg) {
  auto a = cfg.anisotropy();
  if (!cfg.has_D()) throw InvalidSpec("counting requires --D");
  std::ostringstream os;
  os << "L,sup_xi_minus_xi0,sup_minus_xi1,sup_minus_xi2,qR_minus_q,"
        "L_qR_dev,q_plus_1,nlie_residual,exp1,exp2,exp3\n";
  std::vector<double> Ls, d0, d1, d2;
  struct Row {
    int L;
    double s0, s1, s2, dq, ldq, qp1, nlie;
  };
  std::vector<Row> rows;
  for (int L : cfg.L) {
    int N = int(std::lround(cfg.D * L));
    ChainParams cp{L, N, cfg.J, cfg.has_h() ? cfg.h : 0.0};
    auto sp = edge_spec(cfg, N + cfg.s);
    SolveOptions opts;
    opts.n_nodes = cfg.nodes;
    auto st = solve_state(cp, sp, a, opts);
    CountingFn cf(st, cp, a);
    auto fp = magnetic_fermi_boundary(cp.density(), a, cfg.nodes);
    auto tc = xi0(fp.Q, fp.D, a, cfg.nodes);
    auto ex = expansion(cf, fp, sp, cfg.nodes);
    double s0 = 0, s1 = 0, s2 = 0;
    for (int k = 0; k <= 160; ++k) {
      double l = -fp.Q + 2.0 * fp.Q * k / 160.0;
      double base = cf(l) - tc(l);
      s0 = std::max(s0, std::fabs(base));
      s1 = std::max(s1, std::fabs(base - ex.xi1(l) / L));
      s2 = std::max(s2, std::fabs(base - ex.xi1(l) / L - ex.xi2(l) / (double(L) * L)));
    }
    double qR = cf.invert((N + 0.5) / L);
    double nlie = 0.0;
    if (cfg.contour > 0)
      nlie = nlie_residual(cf, fp, sp, cfg.contour, 0.0, cfg.nodes).sup_residual;
    rows.push_back({L, s0, s1, s2, qR - fp.Q, L * (qR - fp.Q), ex.q_plus_1, nlie});
    Ls.push_back(L);
    d0.push_back(s0);
    d1.push_back(s1);
    d2.push_back(s2);
  }
  auto slope = [&](const std::vector<double>& v) {
    if (Ls.size() < 2) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < Ls.size(); ++i) {
      double lx = std::log(Ls[i]), ly = std::log(v[i]);
      sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    double n = double(Ls.size());
    return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
  };
  double e1 = slope(d0), e2 = slope(d1), e3 = slope(d2);
  for (const auto& r : rows)
    os << r.L << ',' << fmt(r.s0) << ',' << fmt(r.s1) << ',' << fmt(r.s2)
       << ',' << fmt(r.dq) << ',' << fmt(r.ldq) << ',' << fmt(r.qp1) << ','
       << fmt(r.nlie) << ',' << fmt(e1) << ',' << fmt(e2) << ',' << fmt(e3)
       << '\n';
  emit(cfg, os.str());
  return 0;
}

int cmd_densify(const RunConfig& cfg) {
  auto a = cfg.anisotropy();
  if (!cfg.has_D()) throw InvalidSpec("densify requires --D");
  auto fp = magnetic_fermi_boundary(cfg.D, a, cfg.nodes);
  auto f = densify_function(cfg, a);
  std::ostringstream os;
  os << "L,mean,integral,gap\n";
  for (int L : cfg.L) {
    int N = int(std::lround(cfg.D * L));
    ChainParams cp{L, N, cfg.J, cfg.has_h() ? cfg.h : 0.0};
    auto sp = edge_spec(cfg, N + cfg.s);
    SolveOptions opts;
    opts.n_nodes = cfg.nodes;
    auto st = solve_state(cp, sp, a, opts);
    auto r = densify(st, cp, f, fp, a, cfg.nodes);
    os << L << ',' << fmt(r.sum / L) << ',' << fmt(r.integral) << ','
       << fmt(r.gap) << '\n';
  }
  emit(cfg, os.str());
  return 0;
}

int cmd_spectrum(const RunConfig& cfg) {
  auto a = cfg.anisotropy();
  if (!cfg.has_D()) throw InvalidSpec("spectrum requires --D (target D_F)");
  std::vector<EdgeFamily> fams;
  {
    EdgeFamily ground;
    fams.push_back(ground);
    EdgeFamily ph;
    ph.label = "ph+";
    ph.p_plus = {1};
    ph.h_plus = {1};
    fams.push_back(ph);
    if (!cfg.pplus.empty() || !cfg.hplus.empty() || !cfg.pminus.empty() ||
        !cfg.hminus.empty() || cfg.s != 0 || cfg.ell != 0) {
      EdgeFamily user;
      user.label = "user";
      user.p_plus = cfg.pplus;
      user.h_plus = cfg.hplus;
      user.p_minus = cfg.pminus;
      user.h_minus = cfg.hminus;
      user.s = cfg.s;
      user.ell = cfg.ell;
      fams.push_back(user);
    }
  }
  auto rep = conformal_check(a, cfg.J, cfg.D, fams, cfg.L, cfg.nodes);
  std::ostringstream os;
  os << "L,state,E_raw,measured,prediction,defect,v_F,Z_QF\n";
  for (const auto& row : rep.rows)
    os << row.L << ',' << row.label << ',' << fmt(row.E_raw) << ','
       << fmt(row.measured) << ',' << fmt(row.prediction) << ','
       << fmt(row.defect) << ',' << fmt(rep.v_F) << ',' << fmt(rep.Z_QF)
       << '\n';
  emit(cfg, os.str());
  return 0;
}

int error_exit_code(const std::exception& e) {
  if (dynamic_cast<const InvalidSpec*>(&e)) return 2;
  if (dynamic_cast<const FieldOutOfRange*>(&e)) return 2;
  if (dynamic_cast<const OutOfRange*>(&e)) return 2;
  if (dynamic_cast<const NoConvergence*>(&e)) return 3;
  return 1;
}

const char* error_type_name(const std::exception& e) {
  if (dynamic_cast<const InvalidSpec*>(&e)) return "InvalidSpec";
  if (dynamic_cast<const FieldOutOfRange*>(&e)) return "FieldOutOfRange";
  if (dynamic_cast<const OutOfRange*>(&e)) return "OutOfRange";
  if (dynamic_cast<const NoConvergence*>(&e)) return "NoConvergence";
  if (dynamic_cast<const SingularSystem*>(&e)) return "SingularSystem";
  if (dynamic_cast<const UnboundedBoundary*>(&e)) return "UnboundedBoundary";
  if (dynamic_cast<const ContourTooClose*>(&e)) return "ContourTooClose";
  if (dynamic_cast<const ZeroDensity*>(&e)) return "ZeroDensity";
  return "Error";
}

}  // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_NUMERIC, "C");
  CLI::App app{"XXZ Bethe-root machinery: dressed tables, Fermi boundaries, "
               "finite-size solver, counting-function ladders, spectra"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;

  // Pre-scan for --config so that explicit flags override file values.
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
  try {
    if (!config_path.empty()) load_config_file(cfg, config_path);
  } catch (const std::exception& e) {
    json err{{"error", {{"type", "Error"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 1;
  }

  app.set_help_flag("--help", "print help");  // frees -h for the field flag

  auto add_common = [&](CLI::App* sub) {
    sub->set_help_flag("--help", "print help");
    sub->add_option("--regime", cfg.regime,
                    "gapless | isotropic | gapped");
    sub->add_option("--zeta", cfg.zeta, "anisotropy parameter");
    sub->add_option("--J", cfg.J, "exchange coupling (> 0)");
    sub->add_option("--h", cfg.h, "magnetic field");
    sub->add_option("--D", cfg.D, "density N/L or target D");
    sub->add_option("--L", cfg.L, "chain lengths")->expected(-1);
    sub->add_option("--N", cfg.N, "down spins (solve only)");
    sub->add_option("--holes", cfg.holes, "hole integers (solve)")->expected(-1);
    sub->add_option("--particles", cfg.particles, "particle integers (solve)")
        ->expected(-1);
    sub->add_option("--hplus", cfg.hplus, "right-edge hole labels")->expected(-1);
    sub->add_option("--pplus", cfg.pplus, "right-edge particle labels")->expected(-1);
    sub->add_option("--hminus", cfg.hminus, "left-edge hole labels")->expected(-1);
    sub->add_option("--pminus", cfg.pminus, "left-edge particle labels")->expected(-1);
    sub->add_option("--s", cfg.s, "spin offset");
    sub->add_option("--ell", cfg.ell, "umklapp integer");
    sub->add_option("--nodes", cfg.nodes, "quadrature nodes (0 = auto)");
    sub->add_option("--contour", cfg.contour, "NLIE contour nodes (0 = skip)");
    sub->add_option("--tol", cfg.tol, "solver acceptance tolerance");
    sub->add_option("--samples", cfg.samples, "output grid size");
    sub->add_option("--f", cfg.f_name, "densify catalog function");
    sub->add_option("--out", cfg.out, "output path (default stdout)");
    sub->add_option("--format", cfg.format, "csv | json");
    sub->add_option("--config", config_path, "JSON config file")
        ->configurable(false);
  };

  auto* c_dressed = app.add_subcommand("dressed", "dressed tables on a lambda grid");
  auto* c_fermi = app.add_subcommand("fermi", "Fermi boundaries and critical fields");
  auto* c_solve = app.add_subcommand("solve", "solve one Bethe state");
  auto* c_counting = app.add_subcommand("counting", "counting-function expansion ladder");
  auto* c_densify = app.add_subcommand("densify", "densification sums vs integrals");
  auto* c_spectrum = app.add_subcommand("spectrum", "conformal finite-size spectrum");
  for (auto* sub : {c_dressed, c_fermi, c_solve, c_counting, c_densify, c_spectrum})
    add_common(sub);

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_dressed->parsed()) return cmd_dressed(cfg);
    if (c_fermi->parsed()) return cmd_fermi(cfg);
    if (c_solve->parsed()) return cmd_solve(cfg);
    if (c_counting->parsed()) return cmd_counting(cfg);
    if (c_densify->parsed()) return cmd_densify(cfg);
    if (c_spectrum->parsed()) return cmd_spectrum(cfg);
  } catch (const std::exception& e) {
    json err{{"error",
              {{"type", error_type_name(e)}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return error_exit_code(e);
  }
  return 0;
}
