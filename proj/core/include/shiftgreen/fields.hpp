#pragma once

#include <span>
#include <vector>

#include "shiftgreen/woodsolve.hpp"

namespace shiftgreen::fields {

using woodsolve::RayleighCoefficient;
using woodsolve::ScatterSolution;

// C_n^+ and C_n^- over the truncation list, Wood modes included.
std::vector<RayleighCoefficient> rayleigh_coefficients(const ScatterSolution& solution);

// |2 Re C_0^- + sum_{n propagating} (e_n^+ + e_n^-)|, i.e. |total efficiency - 1|.
double energy_balance_error(std::span<const RayleighCoefficient> coefficients, const WaveConfig& wave);

// sum e_n^+ + sum_{n != 0} e_n^- + |1 + C_0^-|^2
double total_efficiency(std::span<const RayleighCoefficient> coefficients, const WaveConfig& wave);

enum class Region { omega_plus, omega_minus, boundary_strip };
const char* to_string(Region region);

struct FieldSample {
  Point2 point;
  Complex value;
  Region region = Region::omega_plus;
};

struct NearFieldOptions {
  double mode_decay = 40.0;  // Rayleigh terms are kept until |beta_n| * gap exceeds this
  int max_extra_modes = 4000;
  int trace_upsample = 4;  // boundary_trace integrates on a mesh this many times finer
};

// Region used by near_field: omega_plus above the obstacle, boundary_strip
// between the first shifted image and the obstacle, omega_minus below.
Region classify(const ScatterSolution& solution, Point2 p);

bool inside_obstacle(const ScatterSolution& solution, Point2 p);

std::vector<FieldSample> near_field(const ScatterSolution& solution, std::span<const Point2> points,
                                    const NearFieldOptions& options = {});

// Upper representation: windowed layer potential, Rayleigh tail and Wood terms.
// Valid above the first shifted image of the obstacle.
std::vector<Complex> omega_plus_field(const ScatterSolution& solution, std::span<const Point2> points,
                                      const NearFieldOptions& options = {});

// Lower Rayleigh series, valid below the obstacle.
std::vector<Complex> omega_minus_field(const ScatterSolution& solution, std::span<const Point2> points,
                                       const NearFieldOptions& options = {});

// Scattered field on the boundary at curve parameters t. The density is
// interpolated onto a mesh trace_upsample times finer and the Nystrom rule is
// applied there at the off-node targets.
std::vector<Complex> boundary_trace(const ScatterSolution& solution, std::span<const double> t,
                                    const NearFieldOptions& options = {});

Complex interpolate_density(const ScatterSolution& solution, double t);

}  // namespace shiftgreen::fields
