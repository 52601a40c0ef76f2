#include "shiftgreen/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "shiftgreen/errors.hpp"
#include "shiftgreen/nystrom.hpp"

namespace shiftgreen::fields {
namespace {

using rayleigh::Mode;
using woodsolve::SolverPath;

bool uses_wood_terms(const ScatterSolution& s) { return s.diagnostics.path == SolverPath::woodbury; }

std::ptrdiff_t wood_slot(const ScatterSolution& s, int n) {
  for (std::size_t j = 0; j < s.wood_indices.size(); ++j)
    if (s.wood_indices[j] == n) return static_cast<std::ptrdiff_t>(j);
  return -1;
}

Complex wood_plus(const ScatterSolution& s, std::size_t j) { return -s.d[static_cast<Eigen::Index>(j)]; }

Complex wood_minus(const ScatterSolution& s, std::size_t j) {
  const Mode& m = s.modes.wood[j];
  const Complex tilde = rayleigh::functional_I_tilde(s.mesh, s.psi, m, s.shift.gamma);
  return s.d[static_cast<Eigen::Index>(j)] / m.sigma - tilde / s.wave.period;
}

double node_top(const geometry::NystromMesh& mesh) {
  double y = -std::numeric_limits<double>::infinity();
  for (const auto& p : mesh.position) y = std::max(y, p.y);
  return y;
}

double node_bottom(const geometry::NystromMesh& mesh) {
  double y = std::numeric_limits<double>::infinity();
  for (const auto& p : mesh.position) y = std::min(y, p.y);
  return y;
}

enum class Face { upper, lower };

// Rayleigh modes beyond the Wood terms, with node exponentials referenced to the
// extreme node height so that no factor grows.
class Expansion {
 public:
  Expansion(const ScatterSolution& s, Face face, double gap, const NearFieldOptions& options) : s_(s), face_(face) {
    if (!(gap > 0.0)) throw DomainError("near field point outside the validity region of the expansion");
    reference_ = face == Face::upper ? node_top(s.mesh) : node_bottom(s.mesh);
    int lo = s.modes.trunc_min();
    int hi = s.modes.trunc_max();
    auto decayed = [&](int n) { return std::abs(rayleigh::mode_beta(s.wave.k, s.modes.mode(n).alpha)) * gap >= options.mode_decay; };
    for (int extra = 0; extra < options.max_extra_modes && !decayed(lo); ++extra) --lo;
    for (int extra = 0; extra < options.max_extra_modes && !decayed(hi); ++extra) ++hi;
    const bool skip_wood = uses_wood_terms(s);
    for (int n = lo; n <= hi; ++n) {
      const Mode m = s.modes.mode(n);
      if (skip_wood && m.wood) continue;
      if (face == Face::upper && s.shift.j == 0) continue;
      if (m.beta == 0.0) throw WoodConfigurationError("near field: Rayleigh mode with beta = 0 and no Wood correction");
      modes_.push_back(m);
      coefficient_.push_back(coefficient(m));
    }
    for (std::size_t l = 0; l <= static_cast<std::size_t>(s.shift.j); ++l) {
      binomial_.push_back(l == 0 ? 1.0 : -binomial_.back() * double(s.shift.j - int(l) + 1) / double(l));
    }
  }

  Complex evaluate(Point2 p) const {
    Complex sum;
    for (std::size_t i = 0; i < modes_.size(); ++i) {
      const Mode& m = modes_[i];
      const Complex horizontal = std::polar(1.0, m.alpha * p.x);
      if (face_ == Face::upper) {
        const Complex ratio = std::exp(kI * m.beta * s_.shift.h);
        Complex e = std::exp(kI * m.beta * (p.y - reference_ + s_.shift.h));
        Complex vertical;
        for (std::size_t l = 1; l < binomial_.size(); ++l) {
          vertical += binomial_[l] * e;
          e *= ratio;
        }
        sum += coefficient_[i] * horizontal * vertical;
      } else {
        sum += coefficient_[i] * horizontal * std::exp(-kI * m.beta * (p.y - reference_));
      }
    }
    return sum;
  }

 private:
  Complex coefficient(const Mode& m) const {
    const auto& mesh = s_.mesh;
    const double w = 2.0 * kPi / double(mesh.size());
    const Complex beta = face_ == Face::upper ? m.beta : -m.beta;
    Complex acc;
    for (std::size_t j = 0; j < mesh.size(); ++j) {
      const Point2 nv = mesh.scaled_normal(j);
      const Point2 q = mesh.position[j];
      const Complex bracket = -kI * (m.alpha * nv.x + beta * nv.y) - kI * s_.shift.gamma * mesh.jacobian[j];
      acc += w * bracket * std::polar(1.0, -m.alpha * q.x) * std::exp(-kI * beta * (q.y - reference_)) *
             s_.psi[static_cast<Eigen::Index>(j)];
    }
    const Complex scale = kI / (2.0 * s_.wave.period) / m.beta;
    return face_ == Face::upper ? -scale * acc : scale * acc;
  }

  const ScatterSolution& s_;
  Face face_;
  double reference_ = 0.0;
  std::vector<Mode> modes_;
  std::vector<Complex> coefficient_;
  std::vector<double> binomial_;
};

Complex wood_upper_terms(const ScatterSolution& s, Point2 p) {
  Complex sum;
  if (!uses_wood_terms(s)) return sum;
  for (std::size_t j = 0; j < s.modes.wood.size(); ++j) {
    const Mode& m = s.modes.wood[j];
    sum += wood_plus(s, j) * std::exp(kI * (m.alpha * p.x + m.beta * p.y));
  }
  return sum;
}

double upper_gap(const ScatterSolution& s, std::span<const Point2> points) {
  double g = std::numeric_limits<double>::infinity();
  const double top = node_top(s.mesh);
  for (const Point2& p : points) g = std::min(g, p.y + s.shift.h - top);
  return g;
}

double lower_gap(const ScatterSolution& s, std::span<const Point2> points) {
  double g = std::numeric_limits<double>::infinity();
  const double bottom = node_bottom(s.mesh);
  for (const Point2& p : points) g = std::min(g, bottom - p.y);
  return g;
}

}  // namespace

std::vector<RayleighCoefficient> rayleigh_coefficients(const ScatterSolution& s) {
  std::vector<RayleighCoefficient> out;
  const double L = s.wave.period;
  const double beta0 = s.wave.beta();
  for (const Mode& m : s.modes.truncation()) {
    RayleighCoefficient c;
    c.n = m.n;
    c.alpha = m.alpha;
    c.beta = m.beta;
    c.propagating = m.propagating;
    c.wood = m.wood;
    const std::ptrdiff_t slot = uses_wood_terms(s) ? wood_slot(s, m.n) : -1;
    if (slot >= 0) {
      c.plus = s.d[slot] / m.sigma;
      c.minus = wood_minus(s, static_cast<std::size_t>(slot));
    } else if (m.beta == 0.0) {
      c.plus = c.minus = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
    } else {
      const Complex scale = kI / (2.0 * L) / m.beta;
      c.plus = scale * rayleigh::functional_I(rayleigh::Side::plus, s.mesh, s.psi, m, s.shift.gamma);
      c.minus = scale * rayleigh::functional_I(rayleigh::Side::minus, s.mesh, s.psi, m, s.shift.gamma);
    }
    if (m.propagating) {
      c.e_plus = std::norm(c.plus) * m.beta.real() / beta0;
      c.e_minus = std::norm(c.minus) * m.beta.real() / beta0;
    }
    out.push_back(c);
  }
  return out;
}

double energy_balance_error(std::span<const RayleighCoefficient> coefficients, const WaveConfig&) {
  double sum = 0.0;
  for (const auto& c : coefficients) {
    if (c.n == 0) sum += 2.0 * c.minus.real();
    if (c.propagating) sum += c.e_plus + c.e_minus;
  }
  return std::abs(sum);
}

double total_efficiency(std::span<const RayleighCoefficient> coefficients, const WaveConfig&) {
  double sum = 0.0;
  for (const auto& c : coefficients) {
    if (!c.propagating) continue;
    sum += c.e_plus;
    sum += c.n == 0 ? std::norm(1.0 + c.minus) : c.e_minus;
  }
  return sum;
}

const char* to_string(Region region) {
  switch (region) {
    case Region::omega_plus: return "omega_plus";
    case Region::omega_minus: return "omega_minus";
    default: return "boundary_strip";
  }
}

bool inside_obstacle(const ScatterSolution& s, Point2 p) {
  const double L = s.wave.period;
  const auto lo = static_cast<long>(std::floor((p.x - s.mesh.x_max) / L));
  const auto hi = static_cast<long>(std::ceil((p.x - s.mesh.x_min) / L));
  for (long n = lo; n <= hi; ++n)
    if (geometry::contains(s.mesh, {p.x - double(n) * L, p.y})) return true;
  return false;
}

Region classify(const ScatterSolution& s, Point2 p) {
  if (p.y >= s.mesh.y_min) return Region::omega_plus;
  if (s.shift.j > 0 && p.y > s.mesh.y_max - s.shift.h) return Region::boundary_strip;
  return Region::omega_minus;
}

std::vector<Complex> omega_plus_field(const ScatterSolution& s, std::span<const Point2> points,
                                      const NearFieldOptions& options) {
  std::vector<Complex> out;
  if (points.empty()) return out;
  for (const Point2& p : points) {
    if (s.shift.j > 0 && !(p.y > s.mesh.y_max - s.shift.h))
      throw DomainError("upper representation requires points above the first shifted image");
  }
  const nystrom::BoundaryOperator op(s.mesh, s.wave, s.shift);
  const Expansion tail(s, Face::upper, s.shift.j > 0 ? upper_gap(s, points) : 1.0, options);
  std::vector<Complex> row(s.mesh.size());
  for (const Point2& p : points) {
    op.potential_row(p, row);
    Complex v;
    for (std::size_t j = 0; j < row.size(); ++j) v += row[j] * s.psi[static_cast<Eigen::Index>(j)];
    out.push_back(v + tail.evaluate(p) + wood_upper_terms(s, p));
  }
  return out;
}

std::vector<Complex> omega_minus_field(const ScatterSolution& s, std::span<const Point2> points,
                                       const NearFieldOptions& options) {
  std::vector<Complex> out;
  if (points.empty()) return out;
  for (const Point2& p : points)
    if (!(p.y < s.mesh.y_min)) throw DomainError("lower representation requires points below the obstacle");
  const Expansion series(s, Face::lower, lower_gap(s, points), options);
  std::vector<Complex> wood;
  if (uses_wood_terms(s))
    for (std::size_t j = 0; j < s.modes.wood.size(); ++j) wood.push_back(wood_minus(s, j));
  for (const Point2& p : points) {
    Complex v = series.evaluate(p);
    for (std::size_t j = 0; j < wood.size(); ++j) {
      const Mode& m = s.modes.wood[j];
      v += wood[j] * std::exp(kI * (m.alpha * p.x - m.beta * p.y));
    }
    out.push_back(v);
  }
  return out;
}

std::vector<FieldSample> near_field(const ScatterSolution& s, std::span<const Point2> points,
                                    const NearFieldOptions& options) {
  std::vector<Point2> upper, lower;
  std::vector<FieldSample> out;
  for (const Point2& p : points) {
    if (inside_obstacle(s, p)) throw DomainError("near_field: point lies inside an obstacle");
    const Region r = classify(s, p);
    out.push_back({p, {}, r});
    (r == Region::omega_minus ? lower : upper).push_back(p);
  }
  const auto up = omega_plus_field(s, upper, options);
  const auto down = omega_minus_field(s, lower, options);
  std::size_t iu = 0, id = 0;
  for (auto& sample : out) sample.value = sample.region == Region::omega_minus ? down[id++] : up[iu++];
  return out;
}

Complex interpolate_density(const ScatterSolution& s, double t) {
  const std::size_t n = s.mesh.size();
  const int half = static_cast<int>(n / 2);
  Complex v;
  for (std::size_t j = 0; j < n; ++j) {
    const double d = t - s.mesh.t[j];
    double basis = 1.0 + std::cos(half * d);
    for (int m = 1; m < half; ++m) basis += 2.0 * std::cos(m * d);
    v += basis / double(n) * s.psi[static_cast<Eigen::Index>(j)];
  }
  return v;
}

std::vector<Complex> boundary_trace(const ScatterSolution& s, std::span<const double> t,
                                    const NearFieldOptions& options) {
  std::vector<Complex> out;
  if (t.empty()) return out;
  if (options.trace_upsample < 1) throw ConfigurationError("boundary_trace: trace_upsample must be >= 1");
  const auto fine = geometry::build_mesh(s.mesh.curve, s.mesh.size() * static_cast<std::size_t>(options.trace_upsample));
  std::vector<Complex> psi(fine.size());
  for (std::size_t j = 0; j < fine.size(); ++j) psi[j] = interpolate_density(s, fine.t[j]);
  const nystrom::BoundaryOperator op(fine, s.wave, s.shift);
  std::vector<Point2> targets;
  for (double ti : t) targets.push_back(s.mesh.curve.position(ti));
  const Expansion tail(s, Face::upper, s.shift.j > 0 ? upper_gap(s, targets) : 1.0, options);
  std::vector<Complex> row(fine.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    op.integral_row(t[i], std::nullopt, row);
    Complex v = 0.5 * interpolate_density(s, t[i]);
    for (std::size_t j = 0; j < row.size(); ++j) v += row[j] * psi[j];
    out.push_back(v + tail.evaluate(targets[i]) + wood_upper_terms(s, targets[i]));
  }
  return out;
}

}  // namespace shiftgreen::fields
