#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "testutil.hpp"
#include "xxz/kernels.hpp"
#include "xxz/linsolve.hpp"

using namespace xxz;
namespace kn = xxz::kernels;

namespace {
const Anisotropy kFF = Anisotropy::gapless(M_PI / 2.0);
const Anisotropy kG04 = Anisotropy::gapless(0.4);
const Anisotropy kG24 = Anisotropy::gapless(2.4);
const Anisotropy kGapped = Anisotropy::gapped(1.0);

RealFn momentum_prime_over_2pi(const Anisotropy& a) {
  return [a](double l) { return kn::bare_momentum_prime(l, a) / (2.0 * M_PI); };
}
RealFn momentum_second_over_2pi(const Anisotropy& a) {
  return [a](double l) { return kn::bare_momentum_second(l, a) / (2.0 * M_PI); };
}
}  // namespace

TEST_CASE("free-fermion kernel gives the identity operator") {
  auto g = [](double l) { return std::cos(l); };
  auto sol = solve_second_kind(g, [](double l) { return -std::sin(l); }, -1.0,
                               1.0, kFF, 64);
  for (int i = 0; i < sol.grid.size(); ++i)
    CHECK(sol.values[i] == doctest::Approx(g(sol.grid.nodes[i])).epsilon(1e-14));
}

TEST_CASE("gapped full-interval solve reproduces the closed-form density") {
  auto sol = solve_second_kind(momentum_prime_over_2pi(kGapped),
                               momentum_second_over_2pi(kGapped), -M_PI / 2.0,
                               M_PI / 2.0, kGapped, 128);
  CHECK(sol.grid.scheme == QuadScheme::PeriodicTrapezoid);
  CHECK(sol.node_residual() < 1e-12);
  for (double l : {-1.5, -0.6, 0.0, 0.31, 1.2, 2.8})
    CHECK(sol.extend(l) ==
          doctest::Approx(kn::density_closed_form(l, kGapped)).epsilon(1e-10));
  // The exact solution is pi-periodic; so is the extension.
  for (double l : {-0.9, 0.2, 1.0})
    CHECK(sol.extend(l + M_PI) == doctest::Approx(sol.extend(l)).epsilon(1e-12));
}

TEST_CASE("Neumann series oracle at contraction coupling") {
  // zeta = 0.4, Q = 1, g = 1: ||K||_{L^1} ~ 0.68 < 1, so the alternating
  // Neumann series contracts by ~0.61 per term; 40 terms reach 1e-9.
  const double Q = 1.0;
  auto grid = QuadGrid::gauss_legendre(-Q, Q, 200);
  int n = grid.size();
  Vector g = Vector::Ones(n), acc = g, term = g;
  Matrix KW(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      KW(i, j) = grid.weights[j] * kn::lieb_kernel(grid.nodes[i] - grid.nodes[j], kG04);
  for (int k = 0; k < 40; ++k) {
    term = -(KW * term).eval();
    acc += term;
  }
  auto sol = solve_second_kind([](double) { return 1.0; },
                               [](double) { return 0.0; }, -Q, Q, kG04, 200);
  for (int i = 0; i < n; i += 13)
    CHECK(sol.values[i] == doctest::Approx(acc[i]).epsilon(1e-8));
}

TEST_CASE("nystrom extension") {
  auto sol = solve_second_kind(momentum_prime_over_2pi(kG04),
                               momentum_second_over_2pi(kG04), -1.0, 1.0, kG04, 128);
  // At a node the extension returns the stored value.
  for (int i : {0, 31, 127})
    CHECK(sol.extend(sol.grid.nodes[i]) == doctest::Approx(sol.values[i]).epsilon(1e-15));
  // Midpoint stability under grid doubling.
  auto sol2 = solve_second_kind(momentum_prime_over_2pi(kG04),
                                momentum_second_over_2pi(kG04), -1.0, 1.0, kG04, 256);
  for (double l : {-0.73, 0.111, 0.52})
    CHECK(std::fabs(sol.extend(l) - sol2.extend(l)) < 1e-10);
  // Derivative extension against central differences.
  for (double l : {-0.4, 0.25}) {
    double h = 1e-5;
    double fd = (sol.extend(l + h) - sol.extend(l - h)) / (2.0 * h);
    CHECK(sol.extend_prime(l) == doctest::Approx(fd).epsilon(1e-7));
  }
}

TEST_CASE("grid refinement converges monotonically for the shipped drivings") {
  std::vector<std::pair<RealFn, RealFn>> drivings;
  drivings.emplace_back(momentum_prime_over_2pi(kG04),
                        momentum_second_over_2pi(kG04));  // density
  drivings.emplace_back([](double) { return 1.0; },
                        [](double) { return 0.0; });  // charge
  drivings.emplace_back(
      [](double l) { return kn::bare_phase(l - 0.3, kG04) / (2.0 * M_PI); },
      [](double l) { return kn::lieb_kernel(l - 0.3, kG04); });  // phase
  drivings.emplace_back(
      [](double l) { return kn::bare_energy(l, kG04, 1.0, 0.5); },
      [](double l) { return kn::bare_energy_prime(l, kG04, 1.0); });  // energy
  for (const auto& [g, gp] : drivings) {
    double prev = 1.0;
    NystromSolution last;
    for (int n : {64, 128, 256}) {
      auto sol = solve_second_kind(g, gp, -1.0, 1.0, kG04, n);
      if (n > 64) {
        double diff = 0.0;
        for (double l = -1.0; l <= 1.0; l += 0.05)
          diff = std::max(diff, std::fabs(sol.extend(l) - last.extend(l)));
        // Monotone until the roundoff floor (the constant driving converges
        // in one step and then jitters at ~1e-16).
        CHECK((diff <= prev || diff < 1e-13));
        prev = diff;
      }
      last = sol;
    }
    CHECK(prev < 1e-10);
  }
}

TEST_CASE("resolvent kernel") {
  SUBCASE("vanishes at the free-fermion point") {
    ResolventKernel R(-1.0, 1.0, kFF, 32);
    CHECK(std::fabs(R(0.3, -0.2)) < 1e-15);
  }

  SUBCASE("sign sandwich, Delta > 0 and Delta < 0") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ResolventKernel Rp(-1.0, 1.0, kG04, 128);
    ResolventKernel Rm(-1.0, 1.0, kG24, 128);
    for (int k = 0; k < 50; ++k) {
      double l = u(rng), m = u(rng);
      double rp = Rp(l, m);
      CHECK(kn::lieb_kernel(l - m, kG04) > rp);
      CHECK(rp > kn::resolvent_closed_form(l - m, kG04));
      CHECK(kn::resolvent_closed_form(l - m, kG04) > 0.0);
      double rm = Rm(l, m);
      CHECK(kn::resolvent_closed_form(l - m, kG24) < rm);
      CHECK(rm < kn::lieb_kernel(l - m, kG24));
      CHECK(kn::lieb_kernel(l - m, kG24) < 0.0);
    }
  }

  SUBCASE("symmetry") {
    ResolventKernel R(-1.0, 1.0, kG04, 128);
    for (auto [l, m] : {std::pair{0.3, -0.6}, {0.9, 0.1}, {-0.2, 0.7}})
      CHECK(R(l, m) == doctest::Approx(R(m, l)).epsilon(1e-12));
  }

  SUBCASE("resolvent identity (id - RW)(id + KW) = id") {
    ResolventKernel R(-1.0, 1.0, kG04, 96);
    const auto& g = R.grid();
    int n = g.size();
    Matrix K(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        K(i, j) = kn::lieb_kernel(g.nodes[i] - g.nodes[j], kG04);
    Matrix lhs = (Matrix::Identity(n, n) - R.node_matrix() * g.weights.asDiagonal()) *
                 (Matrix::Identity(n, n) + K * g.weights.asDiagonal());
    CHECK((lhs - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("complement identity on a gapped instance") {
  // L_{J^c}(l, m) = R_J(l, m) with J = I_Q inside I_{pi/2}, Delta > 1.
  const double Q = 0.8;
  ResolventKernel RJ(-Q, Q, kGapped, 128);

  // Union grid on J^c = [-pi/2, -Q] U [Q, pi/2].
  auto gl = QuadGrid::gauss_legendre(-M_PI / 2.0, -Q, 48);
  auto gr = QuadGrid::gauss_legendre(Q, M_PI / 2.0, 48);
  int n = gl.size() + gr.size();
  Vector x(n), w(n);
  x << gl.nodes, gr.nodes;
  w << gl.weights, gr.weights;

  Matrix A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      A(i, j) = (i == j ? 1.0 : 0.0) -
                w[j] * kn::resolvent_closed_form(x[i] - x[j], kGapped);
  Matrix rhs(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      rhs(i, j) = kn::resolvent_closed_form(x[i] - x[j], kGapped);
  Matrix Lfrak = A.partialPivLu().solve(rhs);

  for (int i = 0; i < n; i += 17)
    for (int j = 0; j < n; j += 23)
      CHECK(Lfrak(i, j) == doctest::Approx(RJ(x[i], x[j])).epsilon(1e-6));
}

TEST_CASE("singular discrete operator is reported") {
  // Constant kernel -1/(b-a) annihilates constants under (id + K).
  auto grid = QuadGrid::gauss_legendre(0.0, 1.0, 32);
  CHECK_THROWS_AS(
      solve_fredholm([](double) { return -1.0; }, [](double) { return 0.0; },
                     1.0, [](double) { return 1.0; }, [](double) { return 0.0; },
                     grid),
      SingularSystem);
}

TEST_CASE("empty interval convention") {
  auto sol = solve_second_kind([](double l) { return std::sin(l); },
                               [](double l) { return std::cos(l); }, 0.3, 0.3,
                               kG04);
  CHECK(sol.empty());
  CHECK(sol.extend(1.1) == doctest::Approx(std::sin(1.1)).epsilon(1e-15));
}

TEST_CASE("preconditions") {
  CHECK_THROWS(solve_second_kind([](double) { return 1.0; },
                                 [](double) { return 0.0; }, -2.0, 2.0, kGapped, 64));
  CHECK_THROWS(solve_second_kind([](double) { return 1.0; },
                                 [](double) { return 0.0; }, -1.0, 1.0, kG04, 4));
}
