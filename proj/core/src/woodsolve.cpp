#include "shiftgreen/woodsolve.hpp"

#include <chrono>
#include <cmath>

#include "shiftgreen/errors.hpp"
#include "shiftgreen/fields.hpp"
#include "shiftgreen/nystrom.hpp"

namespace shiftgreen::woodsolve {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct SmallSolve {
  ComplexVector x;
  double condition;
};

SmallSolve solve_small(const ComplexMatrix& m, const ComplexVector& rhs) {
  const Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const auto& s = svd.singularValues();
  const double smax = s.maxCoeff();
  const double smin = s.minCoeff();
  if (!(smin > 1e-14 * smax) || !(smax > 0.0))
    throw DegenerateWoodError("Wood system D + T is singular to working precision");
  ComplexVector x;
  if (m.rows() == 1) {
    x = rhs / m(0, 0);
  } else {
    x = m.partialPivLu().solve(rhs);
  }
  return {x, smax / smin};
}

}  // namespace

const char* to_string(SolverPath path) { return path == SolverPath::direct ? "direct" : "woodbury"; }

ComplexVector woodbury_apply(const SolveFn& a_solve, const std::vector<ComplexVector>& functionals,
                             const std::vector<ComplexVector>& basis, const std::vector<Complex>& b,
                             const ComplexVector& f) {
  const std::size_t r = basis.size();
  if (functionals.size() != r || b.size() != r) throw ContractViolation("woodbury_apply: rank mismatch");
  const ComplexVector a_f = a_solve(f);
  if (r == 0) return a_f;
  std::vector<ComplexVector> a_w;
  for (const auto& w : basis) a_w.push_back(a_solve(w));
  const auto ri = static_cast<Eigen::Index>(r);
  ComplexMatrix system(ri, ri);
  ComplexVector c(ri);
  for (Eigen::Index i = 0; i < ri; ++i) {
    const ComplexVector& l = functionals[static_cast<std::size_t>(i)];
    if (l.size() != f.size()) throw ContractViolation("woodbury_apply: functional size mismatch");
    c[i] = l.transpose() * a_f;
    for (Eigen::Index j = 0; j < ri; ++j) system(i, j) = l.transpose() * a_w[static_cast<std::size_t>(j)];
    system(i, i) += b[static_cast<std::size_t>(i)];
  }
  const ComplexVector d = solve_small(system, c).x;
  ComplexVector x = a_f;
  for (Eigen::Index j = 0; j < ri; ++j) x -= d[j] * a_w[static_cast<std::size_t>(j)];
  return x;
}

WoodSpace wood_space(const geometry::NystromMesh& mesh, const rayleigh::ModeSet& modes) {
  WoodSpace space;
  for (const auto& m : modes.wood) {
    ComplexVector w(static_cast<Eigen::Index>(mesh.size()));
    for (std::size_t i = 0; i < mesh.size(); ++i) {
      const Point2 p = mesh.position[i];
      w[static_cast<Eigen::Index>(i)] = std::exp(kI * (m.alpha * p.x + m.beta * p.y));
    }
    space.indices.push_back(m.n);
    space.basis.push_back(std::move(w));
    space.beta.push_back(m.beta);
  }
  return space;
}

ScatterSolution solve(const geometry::NystromMesh& mesh, const WaveConfig& wave, const ShiftConfig& shift,
                      const SolveOptions& options) {
  wave.validate();
  nystrom::check_assumptions(mesh, shift);
  ScatterSolution sol{mesh, wave, shift, rayleigh::build_modes(wave, shift), {}, {}, {}, {}, {}, 0.0, 0.0};
  const bool woodbury = !sol.modes.wood.empty() && shift.j > 0;
  sol.diagnostics.path = woodbury ? SolverPath::woodbury : SolverPath::direct;

  auto start = Clock::now();
  const ComplexMatrix a = nystrom::assemble_Ak(mesh, wave, shift, sol.modes,
                                               woodbury ? nystrom::WoodTerms::exclude : nystrom::WoodTerms::include);
  sol.diagnostics.assembly_seconds = seconds_since(start);
  if (options.singular_values) sol.diagnostics.singular_values = lalg::svd_extremes(a);

  start = Clock::now();
  const ComplexVector u_inc = -nystrom::assemble_rhs(mesh, wave);
  const lalg::LuFactorization lu(a);
  if (!woodbury) {
    sol.psi = lu.solve(ComplexVector(-u_inc));
    sol.diagnostics.residual = (a * sol.psi + u_inc).cwiseAbs().maxCoeff();
  } else {
    const WoodSpace space = wood_space(mesh, sol.modes);
    const auto r = static_cast<Eigen::Index>(space.basis.size());
    const auto n = static_cast<Eigen::Index>(mesh.size());
    ComplexMatrix rhs(n, r + 1);
    rhs.col(0) = u_inc;
    for (Eigen::Index j = 0; j < r; ++j) rhs.col(j + 1) = space.basis[static_cast<std::size_t>(j)];
    const ComplexMatrix solved = lu.solve(rhs);
    ComplexMatrix system(r, r);
    ComplexVector c(r);
    for (Eigen::Index i = 0; i < r; ++i) {
      const rayleigh::Mode& m = sol.modes.wood[static_cast<std::size_t>(i)];
      const ComplexVector l = (-kI / (2.0 * wave.period) * m.sigma) *
                              rayleigh::functional_I_weights(rayleigh::Side::plus, mesh, m, shift.gamma);
      c[i] = l.transpose() * solved.col(0);
      for (Eigen::Index j = 0; j < r; ++j) system(i, j) = l.transpose() * solved.col(j + 1);
      system(i, i) += m.beta;
    }
    const SmallSolve small = solve_small(system, c);
    sol.d = small.x;
    sol.diagnostics.wood_condition = small.condition;
    sol.wood_indices = space.indices;
    sol.psi = -solved.col(0);
    ComplexVector correction = ComplexVector::Zero(n);
    for (Eigen::Index j = 0; j < r; ++j) {
      sol.psi += sol.d[j] * solved.col(j + 1);
      correction += sol.d[j] * space.basis[static_cast<std::size_t>(j)];
    }
    sol.diagnostics.residual = (a * sol.psi + u_inc - correction).cwiseAbs().maxCoeff();
  }
  sol.diagnostics.solve_seconds = seconds_since(start);
  if (!sol.psi.allFinite()) throw NumericalFailure("solve: density has non-finite entries");

  sol.coefficients = fields::rayleigh_coefficients(sol);
  sol.energy_error = fields::energy_balance_error(sol.coefficients, wave);
  sol.total_efficiency = fields::total_efficiency(sol.coefficients, wave);
  return sol;
}

std::vector<WoodQuotient> wood_coefficient_quotients(const ScatterSolution& solution) {
  if (solution.diagnostics.path != SolverPath::woodbury)
    throw ContractViolation("wood_coefficient_quotients: solution did not take the Woodbury path");
  std::vector<WoodQuotient> out;
  for (std::size_t j = 0; j < solution.modes.wood.size(); ++j) {
    const rayleigh::Mode& m = solution.modes.wood[j];
    const Complex d = solution.d[static_cast<Eigen::Index>(j)];
    const Complex tilde = rayleigh::functional_I_tilde(solution.mesh, solution.psi, m, solution.shift.gamma);
    out.push_back({m.n, -d, d / m.sigma - tilde / solution.wave.period});
  }
  return out;
}

}  // namespace shiftgreen::woodsolve
