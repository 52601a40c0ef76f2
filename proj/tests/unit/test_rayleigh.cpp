#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "shiftgreen/errors.hpp"
#include "shiftgreen/rayleigh.hpp"

using namespace shiftgreen;
using namespace shiftgreen::rayleigh;

namespace {

WaveConfig littrow(double k_factor, double L = 2 * kPi) {
  WaveConfig w;
  w.period = L;
  w.k = k_factor * 2 * kPi / L;
  w.theta = std::asin(kPi / (w.k * L));
  return w;
}

std::vector<int> wood_indices(const ModeSet& m) {
  std::vector<int> out;
  for (const auto& w : m.wood) out.push_back(w.n);
  std::sort(out.begin(), out.end());
  return out;
}

// Oversampled quadrature of (d/dnu' - i gamma) exp(-i alpha x' -+ i beta y') against psi(t).
template <class Psi>
Complex fine_functional(Side side, const geometry::ParametricCurve& curve, const Mode& m, double gamma, Psi psi,
                        int points) {
  const Complex b = side == Side::plus ? m.beta : -m.beta;
  return testing_support::periodic_quadrature(
      [&](double t) {
        const auto s = curve.sample(t);
        const double jac = norm(s.d1);
        const Point2 nu{s.d1.y / jac, -s.d1.x / jac};
        const Complex f = std::exp(-kI * (m.alpha * s.position.x + b * s.position.y));
        const Complex dn = -kI * (m.alpha * nu.x + b * nu.y) * f;
        return (dn - kI * gamma * f) * psi(t) * jac;
      },
      points);
}

}  // namespace

TEST(Rayleigh, NormalIncidenceModes) {
  WaveConfig w{1.0, 0.0, 2 * kPi};
  ShiftConfig s;
  const auto m0 = make_mode(w, s, 0), m2 = make_mode(w, s, 2);
  EXPECT_EQ(m0.alpha, 0.0);
  EXPECT_NEAR(m0.beta.real(), 1.0, 1e-15);
  EXPECT_EQ(m0.beta.imag(), 0.0);
  EXPECT_NEAR(m2.alpha, 2.0, 1e-15);
  EXPECT_EQ(m2.beta.real(), 0.0);
  EXPECT_NEAR(m2.beta.imag(), std::sqrt(3.0), 1e-15);
  const auto set = build_modes(w, s);
  EXPECT_EQ(set.prop_min, 0);
  EXPECT_EQ(set.prop_max, 0);
  // k L / 2 pi = 1 puts n = -1 and n = 1 exactly at grazing
  EXPECT_EQ(wood_indices(set), (std::vector<int>{-1, 1}));
}

TEST(Rayleigh, LittrowWoodSet) {
  ShiftConfig s;
  s.j = 3;
  s.h = 1.0;
  const auto set = build_modes(littrow(1.5), s);
  EXPECT_EQ(wood_indices(set), (std::vector<int>{-2, 1}));
  for (const auto& m : set.wood) {
    EXPECT_EQ(m.beta, Complex(0.0));
    EXPECT_EQ(m.sigma, Complex(-1.0));
  }
  EXPECT_TRUE(set.is_wood(1));
  EXPECT_FALSE(set.is_wood(0));
}

TEST(Rayleigh, StarConfigurationWoodSet) {
  ShiftConfig s;
  const auto set = build_modes(WaveConfig{kPi, 0.0, 4.0}, s);
  EXPECT_EQ(wood_indices(set), (std::vector<int>{-2, 2}));
  EXPECT_EQ(set.prop_min, -1);
  EXPECT_EQ(set.prop_max, 1);
}

TEST(Rayleigh, WoodThresholdIsRelative) {
  ShiftConfig s;
  auto w = littrow(1.49);
  EXPECT_TRUE(build_modes(w, s).wood.empty());
  s.tau_wa = 0.5;
  EXPECT_FALSE(build_modes(w, s).wood.empty());
}

TEST(Rayleigh, TruncationListCoversPropagatingAndEvanescent) {
  ShiftConfig s;
  s.n_ev = 7;
  const auto w = littrow(1.5);
  const auto set = build_modes(w, s);
  std::vector<int> tail;
  for (const auto& m : set.tail) tail.push_back(m.n);
  for (int n = set.prop_min - 7; n <= set.prop_max + 7; ++n) {
    const bool listed = std::find(tail.begin(), tail.end(), n) != tail.end();
    EXPECT_EQ(listed, !set.is_wood(n)) << n;
  }
  EXPECT_EQ(set.truncation().size(), tail.size() + set.wood.size());
  EXPECT_EQ(set.trunc_min(), set.prop_min - 7);
}

TEST(Rayleigh, BetaBranchProperty) {
  testing_support::Gen gen(5);
  for (int i = 0; i < 500; ++i) {
    WaveConfig w{gen.uniform(0.1, 20.0), gen.uniform(-1.5, 1.5), gen.uniform(0.5, 10.0)};
    ShiftConfig s;
    s.j = gen.integer(0, 6);
    s.h = gen.uniform(0.5, 5.0);
    for (int n = -30; n <= 30; ++n) {
      const auto m = make_mode(w, s, n);
      EXPECT_GE(m.beta.real(), 0.0);
      EXPECT_GE(m.beta.imag(), 0.0);
      if (m.beta != 0.0) {
        const double target = w.k * w.k - m.alpha * m.alpha;
        EXPECT_LE(std::abs(m.beta * m.beta - target), 1e-13 * std::max(std::abs(target), w.k * w.k));
      }
      EXPECT_EQ(m.propagating, m.beta.imag() == 0.0 && m.beta.real() > 0.0);
    }
  }
}

TEST(Rayleigh, SigmaTendsToMinusOneAtGrazing) {
  for (int j = 1; j <= 6; ++j) {
    EXPECT_LE(std::abs(sigma_factor(1e-9, 3.5, j) + 1.0), 1e-7) << j;
    EXPECT_EQ(sigma_factor(0.0, 3.5, j), Complex(-1.0));
  }
  EXPECT_EQ(sigma_factor(0.7, 3.5, 0), Complex(0.0));
  EXPECT_NEAR(std::abs(sigma_factor(Complex(0, 50.0), 3.5, 5)), 0.0, 1e-15);
}

TEST(Rayleigh, QuasiMomentumShiftRelabelsModes) {
  testing_support::Gen gen(9);
  for (int i = 0; i < 100; ++i) {
    const double L = gen.uniform(1.0, 8.0);
    const double k = gen.uniform(2 * kPi / L + 0.1, 4 * kPi / L);
    const double alpha = gen.uniform(-k + 0.01, k - 2 * kPi / L - 0.01);
    WaveConfig a{k, std::asin(alpha / k), L};
    WaveConfig b{k, std::asin((alpha + 2 * kPi / L) / k), L};
    ShiftConfig s;
    s.j = 2;
    s.h = 2.0;
    for (int n = -10; n <= 10; ++n) {
      const auto ma = make_mode(a, s, n + 1), mb = make_mode(b, s, n);
      EXPECT_NEAR(ma.alpha, mb.alpha, 1e-12);
      EXPECT_LE(std::abs(ma.beta - mb.beta), 1e-10);
      EXPECT_EQ(ma.propagating, mb.propagating);
    }
  }
}

TEST(Rayleigh, MoreThanTwoWoodModesRejected) {
  ShiftConfig s;
  s.tau_wa = 0.99;
  EXPECT_THROW(build_modes(WaveConfig{3.0, 0.2, 2 * kPi}, s), ConfigurationError);
}

TEST(Rayleigh, Sinc) {
  EXPECT_EQ(sinc(0.0), Complex(1.0));
  for (double z : {1e-8, 5e-5, 9.9e-5, 1.01e-4, 1e-3, 0.5}) {
    EXPECT_LE(std::abs(sinc(z) - std::sin(z) / z), 1e-15) << z;
  }
  const Complex zi(0.0, 2.0);
  EXPECT_LE(std::abs(sinc(zi) - std::sinh(2.0) / 2.0), 1e-14);
}

TEST(Rayleigh, PlusMinusIdentity) {
  testing_support::Gen gen(21);
  const auto mesh = geometry::build_mesh(geometry::make_star(0.4, {0.1, -0.2}), 24);
  WaveConfig w{2.0, 0.3, 2 * kPi};
  ShiftConfig s;
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexVector psi = gen.vector(24);
    for (int n = -3; n <= 3; ++n) {
      const double gamma = gen.uniform(0.0, 3.0);
      const auto m = make_mode(w, s, n);
      const Complex lhs = functional_I(Side::plus, mesh, psi, m, gamma) - functional_I(Side::minus, mesh, psi, m, gamma);
      const Complex rhs = -2.0 * kI * m.beta * functional_I_tilde(mesh, psi, m, gamma);
      EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::max(1.0, std::abs(lhs))) << n;
    }
  }
}

TEST(Rayleigh, IdentityAtBetaPointThree) {
  const auto mesh = geometry::build_mesh(geometry::make_circle(0.5), 16);
  testing_support::Gen gen(4);
  const ComplexVector psi = gen.vector(16);
  Mode m;
  m.alpha = std::sqrt(1.0 - 0.09);
  m.beta = 0.3;
  const Complex lhs = functional_I(Side::plus, mesh, psi, m, 1.0) - functional_I(Side::minus, mesh, psi, m, 1.0);
  const Complex rhs = -2.0 * kI * 0.3 * functional_I_tilde(mesh, psi, m, 1.0);
  EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::abs(lhs));
}

TEST(Rayleigh, PlusEqualsMinusAtGrazing) {
  const auto set = build_modes(littrow(1.5), ShiftConfig{});
  const auto mesh = geometry::build_mesh(geometry::make_circle(0.6), 20);
  testing_support::Gen gen(8);
  const ComplexVector psi = gen.vector(20);
  for (const auto& m : set.wood) {
    EXPECT_EQ(functional_I(Side::plus, mesh, psi, m, 1.5), functional_I(Side::minus, mesh, psi, m, 1.5));
  }
}

TEST(Rayleigh, FunctionalMatchesOversampledQuadrature) {
  const auto curve = geometry::make_circle(1.0);
  const auto mesh = geometry::build_mesh(curve, 32);
  const WaveConfig w{1.0, 0.0, 2 * kPi};
  const auto m = make_mode(w, ShiftConfig{}, 0);
  const ComplexVector ones = ComplexVector::Ones(32);
  const auto one = [](double) { return Complex(1.0); };
  for (auto side : {Side::plus, Side::minus}) {
    const Complex oracle = fine_functional(side, curve, m, 0.0, one, 320);
    EXPECT_LE(std::abs(functional_I(side, mesh, ones, m, 0.0) - oracle), 1e-10);
  }
}

TEST(Rayleigh, FunctionalsMatchOversampledQuadratureOnStar) {
  const auto curve = geometry::make_star(0.5, {0.2, 0.1});
  const auto mesh = geometry::build_mesh(curve, 128);
  const WaveConfig w{2.5, 0.4, 2 * kPi};
  const auto psi_f = [](double t) { return std::exp(Complex(0.0, 2.0 * t)) + 0.5 * std::cos(3 * t); };
  ComplexVector psi(128);
  for (int i = 0; i < 128; ++i) psi[i] = psi_f(mesh.t[i]);
  for (int n = -2; n <= 2; ++n) {
    const auto m = make_mode(w, ShiftConfig{}, n);
    for (auto side : {Side::plus, Side::minus}) {
      const Complex oracle = fine_functional(side, curve, m, 1.3, psi_f, 640);
      EXPECT_LE(std::abs(functional_I(side, mesh, psi, m, 1.3) - oracle), 1e-10) << n;
    }
    if (m.beta != 0.0) {
      const Complex oracle_tilde = (fine_functional(Side::plus, curve, m, 1.3, psi_f, 640) -
                                    fine_functional(Side::minus, curve, m, 1.3, psi_f, 640)) /
                                   (-2.0 * kI * m.beta);
      EXPECT_LE(std::abs(functional_I_tilde(mesh, psi, m, 1.3) - oracle_tilde), 1e-10) << n;
    }
  }
}

TEST(Rayleigh, SizeMismatchIsContractViolation) {
  const auto mesh = geometry::build_mesh(geometry::make_circle(1.0), 8);
  const ComplexVector psi = ComplexVector::Zero(6);
  const WaveConfig w;
  EXPECT_THROW(functional_I(Side::plus, mesh, psi, 0, w, 1.0), ContractViolation);
  EXPECT_THROW(functional_I_tilde(mesh, psi, 0, w, 1.0), ContractViolation);
}

TEST(Rayleigh, InvalidWaveRejected) {
  EXPECT_THROW(build_modes(WaveConfig{-1.0, 0.0, 1.0}, ShiftConfig{}), ConfigurationError);
  EXPECT_THROW(build_modes(WaveConfig{1.0, 2.0, 1.0}, ShiftConfig{}), ConfigurationError);
  EXPECT_THROW(build_modes(WaveConfig{1.0, 0.0, 0.0}, ShiftConfig{}), ConfigurationError);
}
