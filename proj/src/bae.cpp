#include "xxz/bae.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "xxz/dressed.hpp"
#include "xxz/errors.hpp"
#include "xxz/fermi.hpp"
#include "xxz/kernels.hpp"

namespace xxz {

namespace kn = kernels;

namespace {
// L-independent bound |p_a / L| <= C accepted in the gapped regime.
constexpr double kGappedParticleBound = 10.0;
}  // namespace

void ChainParams::validate() const {
  if (L <= 0 || L % 2 != 0) throw InvalidSpec("ChainParams: L must be even and positive");
  if (N < 0 || 2 * N > L) throw InvalidSpec("ChainParams: need 0 <= N <= L/2");
  if (!(J > 0.0)) throw InvalidSpec("ChainParams: J must be > 0");
}

std::vector<int> resolve_integers(const ChainParams& params,
                                  const ExcitationSpec& spec,
                                  const Anisotropy& a) {
  params.validate();
  const int M = params.N + spec.s;  // sector size
  if (M < 0 || 2 * M > params.L)
    throw InvalidSpec("ExcitationSpec: N + s outside [0, L/2]");
  if (spec.holes.size() != spec.particles.size())
    throw InvalidSpec("ExcitationSpec: need as many particles as holes");

  for (size_t k = 0; k < spec.holes.size(); ++k) {
    int hk = spec.holes[k];
    if (hk < 1 || hk > M)
      throw InvalidSpec("ExcitationSpec: hole integers must lie in [1, N+s]");
    if (k > 0 && spec.holes[k - 1] >= hk)
      throw InvalidSpec("ExcitationSpec: holes must be strictly increasing");
    int pk = spec.particles[k];
    if (pk >= 1 && pk <= M)
      throw InvalidSpec("ExcitationSpec: particle integers must avoid [1, N+s]");
    if (k > 0 && spec.particles[k - 1] >= pk)
      throw InvalidSpec("ExcitationSpec: particles must be strictly increasing");
  }

  const double L = params.L;
  const int n = spec.n();
  if (!a.gapped()) {
    double b = (M_PI - a.zeta_or_zero()) / M_PI;
    double edge = b * (0.5 - double(M - 1) / L);
    if (n > 0) {
      double pn = spec.particles.back(), p1 = spec.particles.front();
      if (!(edge > (pn - M) / L)) {
        std::ostringstream os;
        os << "ExcitationSpec: (pi-zeta)/pi (1/2-(N'-1)/L) > (p_n-N')/L violated: "
           << edge << " <= " << (pn - M) / L;
        throw InvalidSpec(os.str());
      }
      if (!((p1 - 1.0) / L > -edge)) {
        std::ostringstream os;
        os << "ExcitationSpec: (p_1-1)/L > -(pi-zeta)/pi (1/2-(N'-1)/L) violated: "
           << (p1 - 1.0) / L << " <= " << -edge;
        throw InvalidSpec(os.str());
      }
    }
    if (!(b * (0.5 - double(M) / L) >= double(n) / L - 1e-15))
      throw InvalidSpec(
          "ExcitationSpec: (pi-zeta)/pi (1/2-N'/L) >= n/L violated");
  } else {
    for (int pk : spec.particles)
      if (std::fabs(double(pk) / L) > kGappedParticleBound)
        throw InvalidSpec("ExcitationSpec: |p_a/L| exceeds the fixed bound");
  }

  std::vector<int> ells(M);
  std::iota(ells.begin(), ells.end(), 1);
  for (size_t k = 0; k < spec.holes.size(); ++k)
    ells[spec.holes[k] - 1] = spec.particles[k];
  return ells;
}

namespace detail {

// Gradient only; this is the inner loop of the solver.
Vector bae_gradient(const Vector& mu, const ChainParams& params,
                    const std::vector<int>& ells, const Anisotropy& a) {
  const int M = int(mu.size());
  const double L = params.L;
  const double mid = 0.5 * (M + 1);
  Vector g(M);
  for (int i = 0; i < M; ++i)
    g[i] = kn::bare_momentum(mu[i], a) / (2.0 * M_PI) - (ells[i] - mid) / L;
  for (int i = 0; i < M; ++i)
    for (int j = i + 1; j < M; ++j) {
      double t = kn::bare_phase(mu[i] - mu[j], a) / (2.0 * M_PI * L);
      g[i] -= t;
      g[j] += t;  // theta is odd
    }
  return g;
}

double bae_action(const Vector& mu, const ChainParams& params,
                  const std::vector<int>& ells, const Anisotropy& a) {
  const int M = int(mu.size());
  const double L = params.L;
  const double mid = 0.5 * (M + 1);
  double S = 0.0;
  for (int i = 0; i < M; ++i)
    S += kn::yang_yang_P(mu[i], a) / (2.0 * M_PI) - mu[i] * (ells[i] - mid) / L;
  for (int i = 0; i < M; ++i)
    for (int j = i + 1; j < M; ++j)
      S -= kn::yang_yang_Theta(mu[i] - mu[j], a) / (2.0 * M_PI * L);  // Theta even
  return S;
}

Matrix bae_hessian(const Vector& mu, const ChainParams& params,
                   const Anisotropy& a) {
  const int M = int(mu.size());
  const double L = params.L;
  Matrix H = Matrix::Zero(M, M);
  for (int i = 0; i < M; ++i)
    H(i, i) = kn::bare_momentum_prime(mu[i], a) / (2.0 * M_PI);
  for (int i = 0; i < M; ++i)
    for (int j = i + 1; j < M; ++j) {
      double k = kn::lieb_kernel(mu[i] - mu[j], a) / L;  // K is even
      H(i, j) = k;
      H(j, i) = k;
      H(i, i) -= k;
      H(j, j) -= k;
    }
  return H;
}

}  // namespace detail

YangYangData yang_yang(const Vector& mu, const ChainParams& params,
                       const std::vector<int>& ells, const Anisotropy& a) {
  if (int(ells.size()) != int(mu.size())) throw Error("yang_yang: size mismatch");
  YangYangData out;
  out.S = detail::bae_action(mu, params, ells, a);
  out.grad = detail::bae_gradient(mu, params, ells, a);
  out.hess = detail::bae_hessian(mu, params, a);
  return out;
}

namespace {

Vector initial_roots(const ChainParams& params, const std::vector<int>& ells,
                     const Anisotropy& a, int n_nodes) {
  const int M = int(ells.size());
  const double L = params.L;
  const double Dhat = double(M) / L;
  Vector mu(M);

  if (!a.gapped() && 2 * M == params.L) {
    // Half filling: the thermodynamic boundary is at infinity; use the
    // closed-form counting function and clamp into its open range.
    for (int i = 0; i < M; ++i) {
      double y = ells[i] / L;
      y = std::min(std::max(y, 1e-6), 0.5 - 1e-6);
      mu[i] = xi0_infinity_inverse(y, a, Dhat);
    }
  } else {
    auto fp = magnetic_fermi_boundary(Dhat, a, n_nodes);
    auto tc = xi0(fp.Q, Dhat, a, n_nodes);
    double lo = tc.range_lo(a), hi = tc.range_hi(a);
    for (int i = 0; i < M; ++i) {
      double y = ells[i] / L;
      if (!a.gapped()) y = std::min(std::max(y, lo + 1e-6), hi - 1e-6);
      mu[i] = tc.invert(y, a);
    }
  }

  // The clamp can collapse edge particles onto the same point; spread them.
  std::vector<int> order(M);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return mu[i] < mu[j]; });
  for (int k = 1; k < M; ++k) {
    int i = order[k], j = order[k - 1];
    if (mu[i] - mu[j] < 1e-6) mu[i] = mu[j] + 1e-6;
  }
  return mu;
}

void check_distinct(const Vector& mu) {
  Vector s = mu;
  std::sort(s.data(), s.data() + s.size());
  for (int i = 1; i < s.size(); ++i)
    if (s[i] - s[i - 1] < 1e-9)
      throw NoConvergence("solve_state: two roots collided (must be distinct)");
}

}  // namespace

BetheState solve_state(const ChainParams& params, const ExcitationSpec& spec,
                       const Anisotropy& a, const SolveOptions& opts) {
  auto ells = resolve_integers(params, spec, a);
  const int M = int(ells.size());
  if (!a.gapped() && 2 * M == params.L && spec.n() > 0)
    throw InvalidSpec("solve_state: excited states at half filling are outside "
                      "the real-root regime for Delta <= 1");

  Vector mu = initial_roots(params, ells, a, opts.n_nodes);
  auto grad_only = [&](const Vector& m) {
    return detail::bae_gradient(m, params, ells, a);
  };

  double best_res = std::numeric_limits<double>::infinity();
  Vector best_mu = mu;

  auto sup = [](const Vector& v) { return v.cwiseAbs().maxCoeff(); };

  int descent_budget = opts.max_fallback_descent;
  for (int it = 0; it < opts.max_newton; ++it) {
    Vector grad = grad_only(mu);
    double res = sup(grad);
    if (res < best_res) {
      best_res = res;
      best_mu = mu;
    }
    if (res < opts.tol_request) break;

    // Newton direction; regularise if the Hessian is near singular.
    Matrix H0 = detail::bae_hessian(mu, params, a);
    Vector delta;
    double tau = 0.0;
    for (;;) {
      Matrix H = H0;
      if (tau > 0.0) H.diagonal().array() += tau;
      Eigen::PartialPivLU<Matrix> lu(H);
      if (lu.rcond() > 1e-13) {
        delta = lu.solve(-grad);
        break;
      }
      tau = (tau == 0.0) ? 1e-8 * H0.diagonal().cwiseAbs().maxCoeff()
                         : 10.0 * tau;
      if (tau > 1e6) throw NoConvergence("solve_state: Hessian breakdown");
    }

    // Armijo backtracking on |grad|^2; the Newton direction is a descent
    // direction for it whenever the (symmetric) Hessian is nonsingular.
    double f0 = grad.squaredNorm();
    double t = 1.0;
    bool accepted = false;
    while (t > 1e-12) {
      Vector trial = mu + t * delta;
      double f1 = grad_only(trial).squaredNorm();
      if (f1 <= f0 * (1.0 - 1e-4 * t)) {
        mu = trial;
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      // Newton stalled (possible for Delta > 0 where convexity fails):
      // descend on the action itself, which is coercive for admissible
      // integers, then resume Newton.
      if (descent_budget <= 0)
        throw NoConvergence("solve_state: stalled; residual " +
                            std::to_string(best_res));
      double S0 = detail::bae_action(mu, params, ells, a);
      Vector g = grad;
      double eta = 1.0;
      int steps = std::min(descent_budget, 50);
      for (int k = 0; k < steps; ++k) {
        Vector trial = mu - eta * g;
        double S1 = detail::bae_action(trial, params, ells, a);
        if (S1 < S0) {
          mu = trial;
          S0 = S1;
          g = grad_only(mu);
          eta *= 1.3;
        } else {
          eta *= 0.4;
          if (eta < 1e-14) break;
        }
      }
      descent_budget -= steps;
    }
    check_distinct(mu);
  }

  {
    double res = sup(grad_only(mu));
    if (res < best_res) {
      best_res = res;
      best_mu = mu;
    }
  }
  if (!(best_res < opts.tol_accept))
    throw NoConvergence("solve_state: residual " + std::to_string(best_res) +
                        " above acceptance threshold");

  BetheState st;
  st.residual = best_res;
  std::vector<int> order(M);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return best_mu[i] < best_mu[j]; });
  st.roots.resize(M);
  st.integers.resize(M);
  for (int k = 0; k < M; ++k) {
    st.roots[k] = best_mu[order[k]];
    st.integers[k] = ells[order[k]];
  }
  st.action_value = detail::bae_action(best_mu, params, ells, a);
  if (a.gapped()) st = normalize_gapped(st, params, a);
  return st;
}

BetheState normalize_gapped(const BetheState& st, const ChainParams& params,
                            const Anisotropy& a) {
  if (!a.gapped()) return st;
  const int M = int(st.roots.size());
  std::vector<int> m(M, 0);
  bool moved = false;
  BetheState out = st;
  for (int i = 0; i < M; ++i) {
    double r = st.roots[i];
    int shift = int(std::floor((r + M_PI / 2.0) / M_PI));
    if (r - shift * M_PI == -M_PI / 2.0) --shift;  // land in (-pi/2, pi/2]
    if (shift != 0) moved = true;
    m[i] = shift;
    out.roots[i] = r - shift * M_PI;
  }
  if (!moved) return out;
  // lambda_a -> lambda_a - m_a pi maps the solution onto the equivalent one
  // with ell'_a = ell_a - m_a (L - N') - sum_b m_b.
  int msum = 0;
  for (int v : m) msum += v;
  for (int i = 0; i < M; ++i)
    out.integers[i] = st.integers[i] - m[i] * (params.L - M) - msum;
  std::vector<int> order(M);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return out.roots[i] < out.roots[j]; });
  BetheState sorted = out;
  for (int k = 0; k < M; ++k) {
    sorted.roots[k] = out.roots[order[k]];
    sorted.integers[k] = out.integers[order[k]];
  }
  // Residual of the re-indexed solution.
  Vector mu(M);
  for (int i = 0; i < M; ++i) mu[i] = sorted.roots[i];
  auto yy = yang_yang(mu, params, sorted.integers, a);
  sorted.residual = yy.grad.cwiseAbs().maxCoeff();
  sorted.action_value = yy.S;
  return sorted;
}

}  // namespace xxz
