#include "shiftgreen/greens.hpp"

#include <cmath>
#include <string>

#include "shiftgreen/errors.hpp"
#include "shiftgreen/rayleigh.hpp"
#include "shiftgreen/specfun.hpp"

namespace shiftgreen {

void ShiftConfig::validate() const {
  if (j < 0) throw ConfigurationError("shift count j must be nonnegative");
  if (j > 0 && !(h > 0.0)) throw ConfigurationError("shift spacing h must be positive");
  if (!(window > 0.0) || !std::isfinite(window)) throw ConfigurationError("window half-width A must be positive");
  if (!(flat > 0.0 && flat < 1.0)) throw ConfigurationError("window parameter c must lie in (0, 1)");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ConfigurationError("coupling gamma must be nonnegative");
  if (n_ev < 0) throw ConfigurationError("N_ev must be nonnegative");
  if (!(tau_wa >= 0.0)) throw ConfigurationError("Wood threshold tau_wa must be nonnegative");
}

namespace greens {
namespace {

std::vector<double> signed_binomials(int j) {
  std::vector<double> b(static_cast<std::size_t>(j) + 1);
  double c = 1.0;
  for (int l = 0; l <= j; ++l) {
    b[static_cast<std::size_t>(l)] = (l % 2 == 0) ? c : -c;
    c = c * (j - l) / (l + 1);
  }
  return b;
}

struct Accumulated {
  Complex value, gx, gy;
};

// Shift column at horizontal offset X, without the i/4 and -ik/4 prefactors.
Accumulated shift_column(double k, double X, double Y, double h, const std::vector<double>& binomial,
                         bool skip_first, double guard) {
  Accumulated acc{};
  for (std::size_t l = skip_first ? 1 : 0; l < binomial.size(); ++l) {
    const double yl = Y + double(l) * h;
    const double rho = std::sqrt(X * X + yl * yl);
    if (rho <= guard) throw SingularPointError("Green function evaluated at a pole");
    const specfun::HankelPair hp = specfun::hankel1_01(k * rho);
    acc.value += binomial[l] * hp.h0;
    const Complex g = binomial[l] * hp.h1 / rho;
    acc.gx += g * X;
    acc.gy += g * yl;
  }
  return acc;
}

GreenValue finish(double k, const Accumulated& a) {
  const Complex cv = 0.25 * kI;
  const Complex cg = -0.25 * kI * k;
  return {cv * a.value, cg * a.gx, cg * a.gy};
}

}  // namespace

GreenValue free_green(double k, double X, double Y) {
  if (X == 0.0 && Y == 0.0) throw SingularPointError("free_green: evaluated at the origin");
  return finish(k, shift_column(k, X, Y, 0.0, {1.0}, false, 0.0));
}

GreenValue shifted_green(const ShiftConfig& shift, double k, double X, double Y) {
  return finish(k, shift_column(k, X, Y, shift.h, signed_binomials(shift.j), false, 0.0));
}

double window(double t, double c) {
  const double a = std::abs(t);
  if (a <= c) return 1.0;
  if (a >= 1.0) return 0.0;
  const double u = (a - c) / (1.0 - c);
  return std::exp(2.0 * std::exp(-1.0 / u) / (u - 1.0));
}

double window_derivative(double t, double c) {
  const double a = std::abs(t);
  if (a <= c || a >= 1.0) return 0.0;
  const double u = (a - c) / (1.0 - c);
  const double e = std::exp(-1.0 / u);
  const double g = 2.0 * e / (u - 1.0);
  const double dg = 2.0 * e * (1.0 / (u * u * (u - 1.0)) - 1.0 / ((u - 1.0) * (u - 1.0)));
  const double d = std::exp(g) * dg / (1.0 - c);
  return t < 0.0 ? -d : d;
}

WindowedLattice::WindowedLattice(const ShiftConfig& shift, const WaveConfig& wave)
    : k_(wave.k),
      L_(wave.period),
      A_(shift.window),
      c_(shift.flat),
      h_(shift.h),
      alpha_(wave.alpha()),
      j_(shift.j),
      binomial_(signed_binomials(shift.j)) {
  shift.validate();
  wave.validate();
  const int span = static_cast<int>(std::ceil(A_ / L_)) + 64;
  phase_offset_ = span;
  phases_.resize(static_cast<std::size_t>(2 * span + 1));
  for (int n = -span; n <= span; ++n)
    phases_[static_cast<std::size_t>(n + span)] = std::polar(1.0, -alpha_ * n * L_);
}

Complex WindowedLattice::phase(int n) const {
  const int idx = n + phase_offset_;
  if (idx >= 0 && idx < static_cast<int>(phases_.size())) return phases_[static_cast<std::size_t>(idx)];
  return std::polar(1.0, -alpha_ * n * L_);
}

GreenValue WindowedLattice::evaluate(double X, double Y, bool skip_self) const {
  const int n_lo = static_cast<int>(std::ceil((-A_ - X) / L_));
  const int n_hi = static_cast<int>(std::floor((A_ - X) / L_));
  const double guard = 1e-8 * L_;
  Complex value, dx, dy;
  for (int n = n_lo; n <= n_hi; ++n) {
    const double xn = X + n * L_;
    const double t = xn / A_;
    const double w = window(t, c_);
    if (w == 0.0) continue;
    const Accumulated a = shift_column(k_, xn, Y, h_, binomial_, skip_self && n == 0, guard);
    const GreenValue g = finish(k_, a);
    const double dw = window_derivative(t, c_) / A_;
    const Complex p = phase(n);
    value += p * (w * g.value);
    dx += p * (w * g.dx + dw * g.value);
    dy += p * (w * g.dy);
  }
  return {value, dx, dy};
}

GreenValue windowed_qp_green(const ShiftConfig& shift, const WaveConfig& wave, double X, double Y) {
  return WindowedLattice(shift, wave).evaluate(X, Y);
}

GreenValue truncated_qp_green(const ShiftConfig& shift, const WaveConfig& wave, double X, double Y, long N) {
  const auto binomial = signed_binomials(shift.j);
  const double L = wave.period;
  const double alpha = wave.alpha();
  Complex value, dx, dy;
  for (long n = -N; n <= N; ++n) {
    const GreenValue g = finish(wave.k, shift_column(wave.k, X + n * L, Y, shift.h, binomial, false, 0.0));
    const Complex p = std::polar(1.0, -alpha * double(n) * L);
    value += p * g.value;
    dx += p * g.dx;
    dy += p * g.dy;
  }
  return {value, dx, dy};
}

Complex spectral_qp_green(const WaveConfig& wave, double X, double Y, int n_max) {
  wave.validate();
  Complex sum;
  for (int n = -n_max; n <= n_max; ++n) {
    const double alpha_n = wave.alpha() + 2.0 * kPi * n / wave.period;
    const Complex beta = rayleigh::mode_beta(wave.k, alpha_n);
    if (std::abs(beta) <= 1e-8 * wave.k)
      throw WoodConfigurationError("spectral_qp_green: Wood mode n=" + std::to_string(n) + " in the truncation");
    sum += std::exp(kI * (alpha_n * X + beta * std::abs(Y))) / beta;
  }
  return kI / (2.0 * wave.period) * sum;
}

}  // namespace greens
}  // namespace shiftgreen
