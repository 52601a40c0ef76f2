#include "shiftgreen/nystrom.hpp"

#include <cmath>

#include "shiftgreen/errors.hpp"
#include "shiftgreen/parallel.hpp"
#include "shiftgreen/specfun.hpp"

namespace shiftgreen::nystrom {
namespace {

constexpr double kEuler = 0.57721566490153286061;
constexpr double kCoincident = 1e-10;

double wrapped(double d) {
  d = std::remainder(d, 2.0 * kPi);
  return d;
}

}  // namespace

double log_weight(int n, double d) {
  const int half = n / 2;
  double s = 0.0;
  for (int m = 1; m < half; ++m) s += std::cos(m * d) / m;
  return -4.0 * kPi / n * s - 4.0 * kPi / (double(n) * n) * std::cos(half * d);
}

Eigen::MatrixXd log_quadrature_weights(int n) {
  if (n < 2 || n % 2 != 0) throw ConfigurationError("log_quadrature_weights: node count must be even");
  std::vector<double> r(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) r[static_cast<std::size_t>(m)] = log_weight(n, 2.0 * kPi * m / n);
  Eigen::MatrixXd w(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w(i, j) = r[static_cast<std::size_t>((i - j + n) % n)];
  return w;
}

KernelSplit free_kernel_split(const geometry::NystromMesh& mesh, double t, Point2 target, std::size_t j,
                              double k, double gamma) {
  const Point2 d = target - mesh.position[j];
  const double rho = norm(d);
  if (rho == 0.0) throw SingularPointError("free_kernel_split: coincident target and source");
  const double dn = dot(mesh.scaled_normal(j), d);
  const double jac = mesh.jacobian[j];
  const specfun::HankelPair hp = specfun::hankel1_01(k * rho);
  const Complex dbl = 0.25 * kI * k * hp.h1 * dn / rho;
  const Complex sgl = 0.25 * kI * hp.h0 * jac;
  const double dbl1 = -k / (4.0 * kPi) * hp.h1.real() * dn / rho;
  const double sgl1 = -1.0 / (4.0 * kPi) * hp.h0.real() * jac;
  const Complex k1 = dbl1 - kI * gamma * sgl1;
  const double s = std::sin(0.5 * (t - mesh.t[j]));
  const double lg = std::log(4.0 * s * s);
  return {k1, dbl - kI * gamma * sgl - k1 * lg};
}

KernelSplit free_kernel_diagonal(const geometry::NystromMesh& mesh, std::size_t i, double k, double gamma) {
  const double jac = mesh.jacobian[i];
  const double dbl2 = dot(mesh.scaled_normal(i), mesh.second[i]) / (4.0 * kPi * jac * jac);
  const Complex sgl2 = (0.25 * kI - kEuler / (2.0 * kPi) - std::log(0.5 * k * jac) / (2.0 * kPi)) * jac;
  const Complex k1 = kI * gamma * jac / (4.0 * kPi);
  return {k1, dbl2 - kI * gamma * sgl2};
}

void check_assumptions(const geometry::NystromMesh& mesh, const ShiftConfig& shift) {
  shift.validate();
  if (shift.j > 0 && !(shift.h > mesh.height()))
    throw ConfigurationError("shift spacing h must exceed the vertical extent of the obstacle");
  if (!(mesh.width() < shift.flat * shift.window))
    throw ConfigurationError("window flat region c*A must exceed the horizontal extent of the obstacle");
}

BoundaryOperator::BoundaryOperator(const geometry::NystromMesh& mesh, const WaveConfig& wave,
                                   const ShiftConfig& shift)
    : mesh_(mesh), wave_(wave), shift_(shift), lattice_(shift, wave) {
  check_assumptions(mesh, shift);
  const int n = static_cast<int>(mesh.size());
  node_log_weights_.resize(mesh.size());
  for (int m = 0; m < n; ++m) node_log_weights_[static_cast<std::size_t>(m)] = log_weight(n, 2.0 * kPi * m / n);
  double c = 1.0;
  for (int l = 0; l <= shift.j; ++l) {
    binomial_.push_back(l % 2 == 0 ? c : -c);
    c = c * (shift.j - l) / (l + 1);
  }
}

void BoundaryOperator::integral_row(double t, std::optional<std::size_t> node, std::span<Complex> row) const {
  const std::size_t n = mesh_.size();
  const double w = 2.0 * kPi / double(n);
  const double k = wave_.k;
  const double gamma = shift_.gamma;
  if (!node) {
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(wrapped(t - mesh_.t[j])) < kCoincident) node = j;
  }
  const Point2 target = node ? mesh_.position[*node] : mesh_.curve.position(t);
  for (std::size_t j = 0; j < n; ++j) {
    KernelSplit ks;
    double r;
    if (node && *node == j) {
      ks = free_kernel_diagonal(mesh_, j, k, gamma);
    } else {
      ks = free_kernel_split(mesh_, node ? mesh_.t[*node] : t, target, j, k, gamma);
    }
    if (node) {
      r = node_log_weights_[(*node + n - j) % n];
    } else {
      r = log_weight(static_cast<int>(n), t - mesh_.t[j]);
    }
    const Point2 d = target - mesh_.position[j];
    const greens::GreenValue g = lattice_.evaluate(d.x, d.y, true);
    const Point2 nv = mesh_.scaled_normal(j);
    const Complex smooth = -(nv.x * g.dx + nv.y * g.dy) - kI * gamma * mesh_.jacobian[j] * g.value;
    row[j] = r * ks.log_part + w * (ks.smooth_part + smooth);
  }
}

void BoundaryOperator::add_tail_row(std::span<const rayleigh::Mode> modes, Point2 p, std::span<Complex> row) const {
  if (shift_.j == 0) return;
  const std::size_t n = mesh_.size();
  const double w = 2.0 * kPi / double(n);
  const double L = wave_.period;
  const double h = shift_.h;
  for (const rayleigh::Mode& mode : modes) {
    if (mode.beta == 0.0) throw WoodConfigurationError("Rayleigh tail contains a mode with beta = 0");
    const Complex factor = -kI / (2.0 * L) / mode.beta * w;
    const Complex ratio = std::exp(kI * mode.beta * h);
    for (std::size_t j = 0; j < n; ++j) {
      const Point2 src = mesh_.position[j];
      const Point2 nv = mesh_.scaled_normal(j);
      const Complex bracket = -kI * (mode.alpha * nv.x + mode.beta * nv.y) - kI * shift_.gamma * mesh_.jacobian[j];
      Complex e = std::exp(kI * mode.beta * (p.y - src.y + h));
      Complex vertical;
      for (std::size_t l = 1; l < binomial_.size(); ++l) {
        vertical += binomial_[l] * e;
        e *= ratio;
      }
      row[j] += factor * bracket * std::polar(1.0, mode.alpha * (p.x - src.x)) * vertical;
    }
  }
}

void BoundaryOperator::potential_row(Point2 p, std::span<Complex> row) const {
  const std::size_t n = mesh_.size();
  const double w = 2.0 * kPi / double(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Point2 d = p - mesh_.position[j];
    const greens::GreenValue g = lattice_.evaluate(d.x, d.y, false);
    const Point2 nv = mesh_.scaled_normal(j);
    row[j] = w * (-(nv.x * g.dx + nv.y * g.dy) - kI * shift_.gamma * mesh_.jacobian[j] * g.value);
  }
}

ComplexMatrix assemble_Ak(const geometry::NystromMesh& mesh, const WaveConfig& wave, const ShiftConfig& shift,
                          const rayleigh::ModeSet& modes, WoodTerms wood) {
  const BoundaryOperator op(mesh, wave, shift);
  std::vector<rayleigh::Mode> tail = modes.tail;
  if (wood == WoodTerms::include) tail = modes.truncation();
  const auto n = static_cast<Eigen::Index>(mesh.size());
  // row-major scratch, one contiguous block per worker
  std::vector<Complex> rows(static_cast<std::size_t>(n * n));
  parallel_for(mesh.size(), [&](std::size_t i) {
    std::span<Complex> row(rows.data() + i * mesh.size(), mesh.size());
    op.integral_row(mesh.t[i], i, row);
    row[i] += 0.5;
    op.add_tail_row(tail, mesh.position[i], row);
  });
  return Eigen::Map<Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(rows.data(), n, n);
}

ComplexMatrix wood_terms_matrix(const geometry::NystromMesh& mesh, const WaveConfig& wave,
                                const ShiftConfig& shift, const rayleigh::ModeSet& modes) {
  const BoundaryOperator op(mesh, wave, shift);
  const auto n = static_cast<Eigen::Index>(mesh.size());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  std::vector<Complex> row(mesh.size());
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    std::fill(row.begin(), row.end(), Complex{});
    op.add_tail_row(modes.wood, mesh.position[i], row);
    for (std::size_t j = 0; j < mesh.size(); ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j];
  }
  return m;
}

Complex incident_field(const WaveConfig& wave, Point2 p) {
  return std::exp(kI * (wave.alpha() * p.x - wave.beta() * p.y));
}

ComplexVector assemble_rhs(const geometry::NystromMesh& mesh, const WaveConfig& wave) {
  ComplexVector f(static_cast<Eigen::Index>(mesh.size()));
  for (std::size_t i = 0; i < mesh.size(); ++i) f[static_cast<Eigen::Index>(i)] = -incident_field(wave, mesh.position[i]);
  return f;
}

}  // namespace shiftgreen::nystrom
