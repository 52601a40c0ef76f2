#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "shiftgreen/errors.hpp"
#include "shiftgreen/lalg.hpp"
#include "shiftgreen/nystrom.hpp"
#include "shiftgreen/woodsolve.hpp"

using namespace shiftgreen;
using namespace shiftgreen::woodsolve;

namespace {

WaveConfig littrow_k(double k, double L = 2 * kPi) {
  WaveConfig w;
  w.period = L;
  w.k = k;
  w.theta = std::asin(kPi / (k * L));
  return w;
}

struct Setup {
  geometry::NystromMesh mesh;
  ShiftConfig shift;
};

Setup circle_setup(double R_factor, int n, int j, double n_per, int n_ev, double gamma) {
  const double L = 2 * kPi;
  Setup s{geometry::build_mesh(geometry::make_circle(R_factor * L), n), {}};
  s.shift.j = j;
  s.shift.h = 1.5 * s.mesh.height();
  s.shift.window = n_per * L;
  s.shift.n_ev = n_ev;
  s.shift.gamma = gamma;
  return s;
}

double relative(const ComplexVector& a, const ComplexVector& b) { return (a - b).norm() / b.norm(); }

}  // namespace

TEST(Woodbury, RankOneDiagonal) {
  const ComplexMatrix a = 2.0 * ComplexMatrix::Identity(4, 4);
  ComplexVector l = ComplexVector::Zero(4), w = ComplexVector::Zero(4);
  l[0] = 1.0;
  w[0] = 1.0;
  const ComplexVector f = ComplexVector::LinSpaced(4, 1.0, 4.0);
  const SolveFn a_solve = [&](const ComplexVector& v) { return ComplexVector(v / 2.0); };
  const ComplexVector x = woodbury_apply(a_solve, {l}, {w}, {5.0}, f);
  const ComplexMatrix direct = a + w * l.transpose() / 5.0;
  EXPECT_LE(relative(x, lalg::lu_solve(direct, f)), 1e-13);
}

TEST(Woodbury, VanishingPerturbation) {
  testing_support::Gen gen(1);
  const ComplexMatrix a = gen.matrix(10, 10) + 3.0 * ComplexMatrix::Identity(10, 10);
  const lalg::LuFactorization lu(a);
  const SolveFn a_solve = [&](const ComplexVector& v) { return lu.solve(v); };
  const ComplexVector f = gen.vector(10);
  const ComplexVector x = woodbury_apply(a_solve, {gen.vector(10)}, {gen.vector(10)}, {1e12}, f);
  EXPECT_LE(relative(x, lu.solve(f)), 1e-10);
}

TEST(Woodbury, RandomRankTwoAgainstDenseInverse) {
  testing_support::Gen gen(2);
  const ComplexMatrix a = gen.matrix(20, 20) + 3.0 * ComplexMatrix::Identity(20, 20);
  const lalg::LuFactorization lu(a);
  const SolveFn a_solve = [&](const ComplexVector& v) { return lu.solve(v); };
  const std::vector<ComplexVector> l{gen.vector(20), gen.vector(20)}, w{gen.vector(20), gen.vector(20)};
  const ComplexVector f = gen.vector(20);
  for (double bv : {1e-8, 1.0}) {
    const std::vector<Complex> b{bv, Complex(0.0, bv)};
    const ComplexVector x = woodbury_apply(a_solve, l, w, b, f);
    EXPECT_LE(relative(x, testing_support::bordered_solve(a, l, w, b, f)), 1e-9) << bv;
    if (bv == 1.0) {
      ComplexMatrix direct = a;
      for (int j = 0; j < 2; ++j) direct += w[j] * l[j].transpose() / b[j];
      EXPECT_LE(relative(x, lalg::lu_solve(direct, f)), 1e-9);
    }
  }
}

TEST(Woodbury, ExactZeroDenominator) {
  testing_support::Gen gen(3);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = gen.integer(3, 30), r = gen.integer(1, 2);
    const ComplexMatrix a = gen.matrix(n, n) + 3.0 * ComplexMatrix::Identity(n, n);
    const lalg::LuFactorization lu(a);
    const SolveFn a_solve = [&](const ComplexVector& v) { return lu.solve(v); };
    std::vector<ComplexVector> l, w;
    std::vector<Complex> b;
    for (int j = 0; j < r; ++j) {
      l.push_back(gen.vector(n));
      w.push_back(gen.vector(n));
      b.push_back(0.0);
    }
    const ComplexVector f = gen.vector(n);
    const ComplexVector x = woodbury_apply(a_solve, l, w, b, f);
    EXPECT_LE(relative(x, testing_support::bordered_solve(a, l, w, b, f)), 1e-9);
    // the limit solution annihilates every functional
    for (int j = 0; j < r; ++j) EXPECT_LE(std::abs(Complex(l[j].transpose() * x)), 1e-12 * x.norm() * l[j].norm());
  }
}

TEST(Woodbury, DegenerateSystemRaises) {
  const SolveFn identity = [](const ComplexVector& v) { return v; };
  const ComplexVector zero = ComplexVector::Zero(3), one = ComplexVector::Ones(3);
  EXPECT_THROW(woodbury_apply(identity, {zero}, {one}, {0.0}, one), DegenerateWoodError);
  EXPECT_THROW(woodbury_apply(identity, {zero, one}, {one}, {0.0}, one), ContractViolation);
  EXPECT_EQ(woodbury_apply(identity, {}, {}, {}, one), one);
}

TEST(Solve, ExactWoodTakesWoodburyPath) {
  const auto s = circle_setup(0.1, 18, 5, 200, 20, 1.5);
  const auto w = littrow_k(1.5);
  const auto sol = solve(s.mesh, w, s.shift);
  EXPECT_EQ(sol.diagnostics.path, SolverPath::woodbury);
  EXPECT_EQ(sol.wood_indices.size(), 2u);
  EXPECT_LE(sol.energy_error, 1e-7);
  EXPECT_LE(sol.diagnostics.residual, 1e-12);
  EXPECT_STREQ(to_string(sol.diagnostics.path), "woodbury");
}

TEST(Solve, RadiatingConditionAtWood) {
  const auto s = circle_setup(0.1, 18, 5, 200, 20, 1.5);
  const auto w = littrow_k(1.5);
  const auto sol = solve(s.mesh, w, s.shift);
  const double psi_norm = sol.psi.cwiseAbs().maxCoeff();
  for (const auto& m : sol.modes.wood) {
    const Complex ip = rayleigh::functional_I(rayleigh::Side::plus, s.mesh, sol.psi, m, s.shift.gamma);
    EXPECT_LE(std::abs(ip), 1e-8 * psi_norm) << m.n;
  }
}

TEST(Solve, ContinuousAcrossExactWood) {
  const auto s = circle_setup(0.1, 18, 5, 100, 20, 1.5);
  const auto base = solve(s.mesh, littrow_k(1.5), s.shift);
  for (double f : {1.0 - 1e-9, 1.0 + 1e-9}) {
    const auto near = solve(s.mesh, littrow_k(1.5 * f), s.shift);
    EXPECT_EQ(near.diagnostics.path, SolverPath::woodbury);
    EXPECT_LE((near.psi - base.psi).cwiseAbs().maxCoeff(), 1e-6) << f;
  }
}

TEST(Solve, PathsAgreeNearWood) {
  const auto w = littrow_k(1.495);
  auto s = circle_setup(0.1, 18, 3, 100, 20, 1.495);
  const auto modes = rayleigh::build_modes(w, s.shift);
  double min_beta = 1e300;
  for (int n = modes.prop_min - 2; n <= modes.prop_max + 2; ++n) min_beta = std::min(min_beta, std::abs(modes.mode(n).beta));
  ASSERT_GE(min_beta / w.k, 0.01);
  ASSERT_LE(min_beta / w.k, 0.1);
  s.shift.tau_wa = 0.2;
  const auto wood = solve(s.mesh, w, s.shift);
  s.shift.tau_wa = 1e-3;
  const auto direct = solve(s.mesh, w, s.shift);
  ASSERT_EQ(wood.diagnostics.path, SolverPath::woodbury);
  ASSERT_EQ(direct.diagnostics.path, SolverPath::direct);
  EXPECT_LE((wood.psi - direct.psi).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_NEAR(wood.total_efficiency, direct.total_efficiency, 1e-10);
}

TEST(Solve, WoodburyIdentityResidual) {
  const auto w = littrow_k(1.495);
  auto s = circle_setup(0.1, 18, 3, 100, 20, 1.495);
  s.shift.tau_wa = 0.2;
  const auto sol = solve(s.mesh, w, s.shift);
  const ComplexMatrix full = nystrom::assemble_Ak(s.mesh, w, s.shift, sol.modes, nystrom::WoodTerms::include);
  const ComplexVector f = nystrom::assemble_rhs(s.mesh, w);
  EXPECT_LE((full * sol.psi - f).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Solve, PlusQuotientMatchesNaiveNearWood) {
  // beta_1 = 1e-3 k; Littrow keeps alpha_1 = 1.5 for L = 2 pi.
  const double k = 1.5 / std::sqrt(1.0 - 1e-6);
  const auto w = littrow_k(k);
  auto s = circle_setup(0.1, 18, 5, 100, 20, k);
  const auto sol = solve(s.mesh, w, s.shift);
  ASSERT_EQ(sol.diagnostics.path, SolverPath::woodbury);
  const auto q = wood_coefficient_quotients(sol);
  for (std::size_t j = 0; j < q.size(); ++j) {
    const auto& m = sol.modes.wood[j];
    EXPECT_NEAR(std::abs(m.beta) / k, 1e-3, 1e-9);
    const Complex ip = rayleigh::functional_I(rayleigh::Side::plus, s.mesh, sol.psi, m, s.shift.gamma);
    const Complex naive = -kI / (2.0 * w.period) * m.sigma * ip / m.beta;
    EXPECT_LE(std::abs(q[j].plus - naive), 1e-6 * std::abs(naive)) << m.n;
    const Complex im = rayleigh::functional_I(rayleigh::Side::minus, s.mesh, sol.psi, m, s.shift.gamma);
    const Complex naive_minus = kI / (2.0 * w.period) * im / m.beta;
    EXPECT_LE(std::abs(q[j].minus - naive_minus), 1e-6 * std::abs(naive_minus)) << m.n;
  }
}

TEST(Solve, QuotientsAtExactWood) {
  const auto s = circle_setup(0.1, 18, 5, 100, 20, 1.5);
  const auto sol = solve(s.mesh, littrow_k(1.5), s.shift);
  const auto q = wood_coefficient_quotients(sol);
  ASSERT_EQ(q.size(), 2u);
  for (std::size_t j = 0; j < q.size(); ++j) {
    const auto& m = sol.modes.wood[j];
    EXPECT_EQ(m.sigma, Complex(-1.0));
    const Complex d = sol.d[static_cast<Eigen::Index>(j)];
    const Complex tilde = rayleigh::functional_I_tilde(s.mesh, sol.psi, m, s.shift.gamma);
    EXPECT_LE(std::abs(q[j].minus - (-d - tilde / (2 * kPi))), 1e-14 * std::abs(q[j].minus));
    EXPECT_EQ(q[j].plus, -d);
  }
}

TEST(Solve, QuotientsContinuousOnDeltaGrid) {
  const auto s = circle_setup(0.1, 18, 5, 100, 20, 1.5);
  const double k0 = 1.5;
  const auto base = wood_coefficient_quotients(solve(s.mesh, littrow_k(k0), s.shift));
  for (int i = 0; i <= 40; ++i) {
    const double delta = -0.1 + 0.005 * i;
    const double k = k0 + (delta < 0 ? -1.0 : 1.0) * std::pow(std::abs(delta), 8);
    const auto sol = solve(s.mesh, littrow_k(k), s.shift);
    ASSERT_EQ(sol.diagnostics.path, SolverPath::woodbury);
    EXPECT_LE(sol.diagnostics.wood_condition, 1e6);
    const auto q = wood_coefficient_quotients(sol);
    for (std::size_t j = 0; j < q.size(); ++j) {
      EXPECT_TRUE(std::isfinite(std::abs(q[j].plus)) && std::isfinite(std::abs(q[j].minus)));
      EXPECT_LE(std::abs(q[j].plus - base[j].plus), 1e-4 + 100 * std::abs(k - k0)) << delta;
      EXPECT_LE(std::abs(q[j].minus - base[j].minus), 1e-4 + 100 * std::abs(k - k0)) << delta;
    }
  }
}

TEST(Solve, DirectPathAwayFromWood) {
  const auto s = circle_setup(0.1, 16, 1, 38, 20, 1.0);
  const auto sol = solve(s.mesh, littrow_k(1.0), s.shift);
  EXPECT_EQ(sol.diagnostics.path, SolverPath::direct);
  EXPECT_LE(sol.energy_error, 1e-7);
  EXPECT_THROW(wood_coefficient_quotients(sol), ContractViolation);
  EXPECT_FALSE(sol.diagnostics.singular_values.has_value());
  SolveOptions opt;
  opt.singular_values = true;
  const auto with_svd = solve(s.mesh, littrow_k(1.0), s.shift, opt);
  ASSERT_TRUE(with_svd.diagnostics.singular_values.has_value());
  EXPECT_GT(with_svd.diagnostics.singular_values->sigma_min, 0.0);
}

TEST(Solve, UnshiftedAlwaysDirect) {
  auto s = circle_setup(0.1, 16, 0, 100, 20, 1.5);
  const auto sol = solve(s.mesh, littrow_k(1.5), s.shift);
  EXPECT_EQ(sol.diagnostics.path, SolverPath::direct);
  EXPECT_TRUE(sol.psi.allFinite());
}

TEST(Solve, EvanescentTruncationConverged) {
  // R = 0.1 L, k = 1, j = 1 table row
  auto s = circle_setup(0.1, 16, 1, 38, 20, 1.0);
  s.shift.h = 2.0 * s.mesh.height();
  s.shift.flat = 0.3;
  const auto w = littrow_k(1.0);
  const auto a = solve(s.mesh, w, s.shift);
  s.shift.n_ev = 40;
  const auto b = solve(s.mesh, w, s.shift);
  for (std::size_t i = 0; i < a.coefficients.size(); ++i) {
    if (!a.coefficients[i].propagating) continue;
    const auto& ca = a.coefficients[i];
    const auto it = std::find_if(b.coefficients.begin(), b.coefficients.end(), [&](const auto& c) { return c.n == ca.n; });
    ASSERT_NE(it, b.coefficients.end());
    EXPECT_NEAR(ca.e_plus, it->e_plus, 1e-10);
    EXPECT_NEAR(ca.e_minus, it->e_minus, 1e-10);
  }
}

TEST(Solve, AssumptionViolationRaises) {
  auto s = circle_setup(0.1, 16, 2, 38, 20, 1.0);
  s.shift.h = 0.5 * s.mesh.height();
  EXPECT_THROW(solve(s.mesh, littrow_k(1.0), s.shift), ConfigurationError);
}
