#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "shiftgreen/geometry.hpp"
#include "shiftgreen/types.hpp"

namespace shiftgreen::cli {

// Schema violations and unresolvable configurations.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Study { solve, sweep, convergence, svd };
const char* to_string(Study study);

struct GeometrySpec {
  std::string kind = "circle";  // circle | star
  double radius = 1.0;          // circle
  double base = 1.0;            // star
  double cx = 0.0;
  double cy = 0.0;
};

struct FrequencySpec {
  std::vector<double> k;                // explicit list, used when wood_order is empty
  std::optional<int> wood_order;        // p of the grazing mode anchoring a delta grid
  std::optional<double> k0;             // overrides the anchor computed from (L, theta, p)
  int delta_points = 41;
  double delta_max = 0.1;
};

struct GridAxis {
  double lo = 0.0;
  double hi = 0.0;
  int count = 0;
};

struct RunConfig {
  GeometrySpec geometry;
  double L = 2.0 * kPi;
  bool littrow = false;
  double theta = 0.0;
  FrequencySpec frequency;
  int j = 1;
  std::optional<double> h;      // empty: 1.5 x vertical extent
  double n_per = 38.0;          // window half-width A = N_per L
  double c = 0.5;
  int n_ev = 20;
  std::optional<double> gamma;  // empty: gamma = k
  double tau_wa = 1e-2;
  int n_i = 32;
  std::string axis;             // convergence study
  std::vector<double> axis_values;
  std::optional<GridAxis> field_x;
  std::optional<GridAxis> field_y;
};

RunConfig parse_config(const nlohmann::json& doc);
nlohmann::ordered_json to_json(const RunConfig& config);

// Grazing frequency of mode p: |alpha_p| = k.
double wood_frequency(const RunConfig& config, int p);

struct FrequencyPoint {
  double k = 0.0;
  double delta = 0.0;  // zero for explicit lists
};

// k = k0 + sign(delta) |delta|^8 on a uniform delta grid, or the explicit list.
std::vector<FrequencyPoint> frequency_points(const RunConfig& config);

geometry::ParametricCurve make_curve(const RunConfig& config);
WaveConfig wave_for(const RunConfig& config, double k);
ShiftConfig shift_for(const RunConfig& config, const geometry::NystromMesh& mesh, double k);

// Entry point shared by the executable and the tests. Returns the process exit code:
// 0 success, 1 usage, 2 configuration error, 3 numerical failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shiftgreen::cli
