#include "shiftgreen/rayleigh.hpp"

#include <algorithm>
#include <cmath>

#include "shiftgreen/errors.hpp"

namespace shiftgreen {

void WaveConfig::validate() const {
  if (!(k > 0.0) || !std::isfinite(k)) throw ConfigurationError("wavenumber k must be positive");
  if (!(period > 0.0) || !std::isfinite(period)) throw ConfigurationError("period L must be positive");
  if (!(std::abs(theta) < kPi / 2)) throw ConfigurationError("incidence angle must satisfy |theta| < pi/2");
}

namespace rayleigh {
namespace {

constexpr double kGrazingSnap = 1e-14;

void check_size(const geometry::NystromMesh& mesh, const ComplexVector& psi) {
  if (static_cast<std::size_t>(psi.size()) != mesh.size())
    throw ContractViolation("density size does not match the mesh");
}

Mode plain_mode(const WaveConfig& wave, int n) {
  Mode m;
  m.n = n;
  m.alpha = wave.alpha() + 2.0 * kPi * n / wave.period;
  m.beta = mode_beta(wave.k, m.alpha);
  m.propagating = m.beta.imag() == 0.0 && m.beta.real() > 0.0;
  return m;
}

}  // namespace

Complex sigma_factor(Complex beta, double h, int j) {
  if (j == 0) return 0.0;
  return std::pow(1.0 - std::exp(kI * beta * h), j) - 1.0;
}

Complex mode_beta(double k, double alpha) {
  const double a = std::abs(alpha);
  if (std::abs(k - a) <= kGrazingSnap * k) return 0.0;
  const double b2 = (k - a) * (k + a);
  return b2 > 0.0 ? Complex(std::sqrt(b2), 0.0) : Complex(0.0, std::sqrt(-b2));
}

Mode make_mode(const WaveConfig& wave, const ShiftConfig& shift, int n) {
  Mode m = plain_mode(wave, n);
  m.sigma = sigma_factor(m.beta, shift.h, shift.j);
  m.wood = std::abs(m.beta) <= shift.tau_wa * wave.k;
  return m;
}

bool ModeSet::is_wood(int n) const {
  return std::any_of(wood.begin(), wood.end(), [n](const Mode& m) { return m.n == n; });
}

std::vector<Mode> ModeSet::truncation() const {
  std::vector<Mode> all = tail;
  all.insert(all.end(), wood.begin(), wood.end());
  std::sort(all.begin(), all.end(), [](const Mode& a, const Mode& b) { return a.n < b.n; });
  return all;
}

ModeSet build_modes(const WaveConfig& wave, const ShiftConfig& shift) {
  wave.validate();
  ModeSet set;
  set.wave = wave;
  set.shift = shift;
  const double scale = wave.period / (2.0 * kPi);
  const int lo = static_cast<int>(std::floor((-wave.k - wave.alpha()) * scale)) - 1;
  const int hi = static_cast<int>(std::ceil((wave.k - wave.alpha()) * scale)) + 1;
  bool found = false;
  for (int n = lo; n <= hi; ++n) {
    if (!plain_mode(wave, n).propagating) continue;
    if (!found) set.prop_min = n;
    set.prop_max = n;
    found = true;
  }
  if (!found) throw NumericalFailure("build_modes: no propagating mode found");
  for (int n = set.prop_min - 2; n <= set.prop_max + 2; ++n) {
    const Mode m = make_mode(wave, shift, n);
    if (m.wood) set.wood.push_back(m);
  }
  if (set.wood.size() > 2)
    throw ConfigurationError("build_modes: Wood threshold selects more than two modes; reduce tau_wa");
  for (int n = set.trunc_min(); n <= set.trunc_max(); ++n) {
    const Mode m = make_mode(wave, shift, n);
    if (!m.wood) set.tail.push_back(m);
  }
  return set;
}

Complex sinc(Complex z) {
  if (std::abs(z) < 1e-4) {
    const Complex z2 = z * z;
    return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sin(z) / z;
}

ComplexVector functional_I_weights(Side side, const geometry::NystromMesh& mesh, const Mode& mode, double gamma) {
  const std::size_t n = mesh.size();
  const double w = 2.0 * kPi / double(n);
  const Complex beta = side == Side::plus ? mode.beta : -mode.beta;
  ComplexVector q(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    const Point2 nv = mesh.scaled_normal(j);
    const Point2 p = mesh.position[j];
    const Complex bracket = -kI * (mode.alpha * nv.x + beta * nv.y) - kI * gamma * mesh.jacobian[j];
    q[static_cast<Eigen::Index>(j)] = w * bracket * std::exp(-kI * (mode.alpha * p.x + beta * p.y));
  }
  return q;
}

ComplexVector functional_I_tilde_weights(const geometry::NystromMesh& mesh, const Mode& mode, double gamma) {
  const std::size_t n = mesh.size();
  const double w = 2.0 * kPi / double(n);
  ComplexVector q(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    const Point2 nv = mesh.scaled_normal(j);
    const Point2 p = mesh.position[j];
    const Complex s = p.y * sinc(mode.beta * p.y);
    const Complex bracket = -kI * mode.alpha * nv.x * s + nv.y * std::cos(mode.beta * p.y) -
                            kI * gamma * mesh.jacobian[j] * s;
    q[static_cast<Eigen::Index>(j)] = w * bracket * std::exp(-kI * mode.alpha * p.x);
  }
  return q;
}

Complex functional_I(Side side, const geometry::NystromMesh& mesh, const ComplexVector& psi, const Mode& mode,
                     double gamma) {
  check_size(mesh, psi);
  return functional_I_weights(side, mesh, mode, gamma).transpose() * psi;
}

Complex functional_I(Side side, const geometry::NystromMesh& mesh, const ComplexVector& psi, int n,
                     const WaveConfig& wave, double gamma) {
  return functional_I(side, mesh, psi, plain_mode(wave, n), gamma);
}

Complex functional_I_tilde(const geometry::NystromMesh& mesh, const ComplexVector& psi, const Mode& mode,
                           double gamma) {
  check_size(mesh, psi);
  return functional_I_tilde_weights(mesh, mode, gamma).transpose() * psi;
}

Complex functional_I_tilde(const geometry::NystromMesh& mesh, const ComplexVector& psi, int n,
                           const WaveConfig& wave, double gamma) {
  return functional_I_tilde(mesh, psi, plain_mode(wave, n), gamma);
}

}  // namespace rayleigh
}  // namespace shiftgreen
