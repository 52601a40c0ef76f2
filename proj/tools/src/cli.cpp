#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "shiftgreen/cli/cli.hpp"
#include "shiftgreen/errors.hpp"
#include "shiftgreen/fields.hpp"
#include "shiftgreen/lalg.hpp"
#include "shiftgreen/nystrom.hpp"
#include "shiftgreen/parallel.hpp"
#include "shiftgreen/rayleigh.hpp"
#include "shiftgreen/woodsolve.hpp"

namespace shiftgreen::cli {
namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

struct Job {
  RunConfig config;  // per-job copy, axis value applied
  FrequencyPoint freq;
  double axis_value = 0.0;
};

struct Outcome {
  std::optional<woodsolve::ScatterSolution> solution;
  lalg::SingularValueExtremes svd;
  double wall_seconds = 0.0;
};

RunConfig read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

RunConfig with_axis(RunConfig c, const std::string& axis, double v) {
  if (axis == "N_per") c.n_per = v;
  if (axis == "n_i") c.n_i = static_cast<int>(v);
  if (axis == "N_ev") c.n_ev = static_cast<int>(v);
  if (axis == "j") c.j = static_cast<int>(v);
  return c;
}

std::vector<Job> plan(const RunConfig& config, Study study) {
  const auto freqs = frequency_points(config);
  if (study == Study::solve && freqs.size() != 1) throw ConfigError("solve: expects a single frequency");
  if (study == Study::svd && !config.frequency.wood_order) throw ConfigError("svd: expects a Wood delta grid");
  if (study == Study::convergence && config.axis.empty()) throw ConfigError("convergence: missing 'convergence' block");
  if (study != Study::solve && config.field_x) throw ConfigError("field: only supported by solve");
  std::vector<Job> jobs;
  const std::vector<double> values = study == Study::convergence ? config.axis_values : std::vector<double>{0.0};
  for (double v : values) {
    const RunConfig c = study == Study::convergence ? with_axis(config, config.axis, v) : config;
    for (const auto& f : freqs) jobs.push_back({c, f, v});
  }
  return jobs;
}

// Everything that can be rejected without solving.
void validate(const Job& job) {
  if (job.config.n_i < 4 || job.config.n_i % 2 != 0) throw ConfigError("n_i: must be even and >= 4");
  const auto mesh = geometry::build_mesh(make_curve(job.config), job.config.n_i);
  const WaveConfig w = wave_for(job.config, job.freq.k);
  const ShiftConfig s = shift_for(job.config, mesh, job.freq.k);
  w.validate();
  s.validate();
  nystrom::check_assumptions(mesh, s);
  rayleigh::build_modes(w, s);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome execute(const Job& job, Study study) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  const auto mesh = geometry::build_mesh(make_curve(job.config), job.config.n_i);
  const WaveConfig w = wave_for(job.config, job.freq.k);
  const ShiftConfig s = shift_for(job.config, mesh, job.freq.k);
  if (study == Study::svd) {
    const auto modes = rayleigh::build_modes(w, s);
    o.svd = lalg::svd_extremes(nystrom::assemble_Ak(mesh, w, s, modes));
  } else {
    o.solution = woodsolve::solve(mesh, w, s);
  }
  o.wall_seconds = seconds_since(t0);
  return o;
}

ojson complex_json(Complex z) { return ojson::array({z.real(), z.imag()}); }

ojson point_json(const Job& job, const Outcome& o, Study study) {
  ojson p;
  if (study == Study::convergence) p[job.config.axis] = job.axis_value;
  p["k"] = job.freq.k;
  p["delta"] = job.freq.delta;
  if (study == Study::svd) {
    p["sigma_min"] = o.svd.sigma_min;
    p["sigma_max"] = o.svd.sigma_max;
    p["condition"] = o.svd.condition();
    p["timings"] = {{"wall_seconds", o.wall_seconds}};
    return p;
  }
  const auto& s = *o.solution;
  p["theta"] = s.wave.theta;
  p["alpha"] = s.wave.alpha();
  p["resolved"] = {{"h", s.shift.h}, {"gamma", s.shift.gamma}, {"A", s.shift.window}, {"n_i", s.mesh.size()},
                   {"j", s.shift.j}, {"N_ev", s.shift.n_ev}};
  p["path"] = woodsolve::to_string(s.diagnostics.path);
  p["wood_modes"] = s.wood_indices;
  p["energy_balance_error"] = s.energy_error;
  p["total_efficiency"] = s.total_efficiency;
  p["residual"] = s.diagnostics.residual;
  if (s.diagnostics.path == woodsolve::SolverPath::woodbury) p["wood_condition"] = s.diagnostics.wood_condition;
  ojson coeffs = ojson::array();
  for (const auto& c : s.coefficients) {
    coeffs.push_back({{"n", c.n},
                      {"alpha", c.alpha},
                      {"beta", complex_json(c.beta)},
                      {"C_plus", complex_json(c.plus)},
                      {"C_minus", complex_json(c.minus)},
                      {"e_plus", c.e_plus},
                      {"e_minus", c.e_minus},
                      {"propagating", c.propagating},
                      {"wood", c.wood}});
  }
  p["coefficients"] = coeffs;
  p["timings"] = {{"assembly_seconds", s.diagnostics.assembly_seconds},
                  {"solve_seconds", s.diagnostics.solve_seconds},
                  {"wall_seconds", o.wall_seconds}};
  return p;
}

class Csv {
 public:
  explicit Csv(std::ostream& os) : os_(os) { os_ << std::setprecision(17); }
  template <typename... T>
  void row(const T&... cells) {
    bool first = true;
    ((os_ << (first ? "" : ",") << cells, first = false), ...);
    os_ << '\n';
  }

 private:
  std::ostream& os_;
};

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p);
  f.imbue(std::locale::classic());
  if (!f) throw std::runtime_error("cannot write '" + p.string() + "'");
  return f;
}

void write_csv(const fs::path& dir, Study study, const std::vector<Job>& jobs, const std::vector<Outcome>& out) {
  if (study == Study::solve) {
    auto f = open_out(dir / "coefficients.csv");
    Csv csv(f);
    csv.row("n", "alpha", "re_beta", "im_beta", "re_c_plus", "im_c_plus", "re_c_minus", "im_c_minus", "e_plus",
            "e_minus", "propagating", "wood");
    for (const auto& c : out[0].solution->coefficients)
      csv.row(c.n, c.alpha, c.beta.real(), c.beta.imag(), c.plus.real(), c.plus.imag(), c.minus.real(),
              c.minus.imag(), c.e_plus, c.e_minus, int(c.propagating), int(c.wood));
    return;
  }
  const char* name = study == Study::sweep ? "sweep.csv" : study == Study::svd ? "svd.csv" : "convergence.csv";
  auto f = open_out(dir / name);
  Csv csv(f);
  if (study == Study::svd) {
    csv.row("delta", "k", "sigma_min", "sigma_max");
    for (std::size_t i = 0; i < jobs.size(); ++i)
      csv.row(jobs[i].freq.delta, jobs[i].freq.k, out[i].svd.sigma_min, out[i].svd.sigma_max);
  } else if (study == Study::sweep) {
    csv.row("k", "delta", "path", "energy_balance_error", "total_efficiency");
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      const auto& s = *out[i].solution;
      csv.row(jobs[i].freq.k, jobs[i].freq.delta, woodsolve::to_string(s.diagnostics.path), s.energy_error,
              s.total_efficiency);
    }
  } else {
    csv.row("parameter", "value", "k", "delta", "energy_balance_error");
    for (std::size_t i = 0; i < jobs.size(); ++i)
      csv.row(jobs[i].config.axis, jobs[i].axis_value, jobs[i].freq.k, jobs[i].freq.delta,
              out[i].solution->energy_error);
  }
}

void write_field(const fs::path& dir, const RunConfig& config, const woodsolve::ScatterSolution& s) {
  std::vector<Point2> pts;
  const auto coord = [](const GridAxis& a, int i) { return a.count == 1 ? a.lo : a.lo + (a.hi - a.lo) * i / (a.count - 1); };
  for (int iy = 0; iy < config.field_y->count; ++iy)
    for (int ix = 0; ix < config.field_x->count; ++ix) {
      const Point2 p{coord(*config.field_x, ix), coord(*config.field_y, iy)};
      if (!fields::inside_obstacle(s, p)) pts.push_back(p);
    }
  const auto samples = fields::near_field(s, pts);
  auto f = open_out(dir / "field.csv");
  Csv csv(f);
  csv.row("x", "y", "re_u", "im_u", "region");
  for (const auto& v : samples) csv.row(v.point.x, v.point.y, v.value.real(), v.value.imag(), fields::to_string(v.region));
}

bool is_config_error(const std::exception& e) {
  return dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const ConfigurationError*>(&e) ||
         dynamic_cast<const WoodConfigurationError*>(&e) || dynamic_cast<const ContractViolation*>(&e);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Scattering by periodic arrays of PEC cylinders near Wood anomalies"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir = ".";
  unsigned threads = 0;
  const std::vector<std::pair<Study, const char*>> studies{
      {Study::solve, "single solve with coefficients, efficiencies and an optional field grid"},
      {Study::sweep, "solves over a frequency list or a Wood delta grid"},
      {Study::convergence, "energy-balance error while one parameter varies"},
      {Study::svd, "extreme singular values of A_k over a Wood delta grid"}};
  std::vector<std::pair<Study, CLI::App*>> subs;
  for (const auto& [study, help] : studies) {
    CLI::App* sub = app.add_subcommand(to_string(study), help);
    sub->add_option("--config", config_path, "JSON configuration file")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--threads", threads, "worker threads (default: SHIFTGREEN_THREADS or all cores)");
    subs.emplace_back(study, sub);
  }
  std::vector<const char*> argv{"shiftgreen"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  Study study = Study::solve;
  for (const auto& [st, sub] : subs)
    if (sub->parsed()) study = st;

  RunConfig config;
  std::vector<Job> jobs;
  try {
    config = read_config(config_path);
    jobs = plan(config, study);
    for (const auto& job : jobs) validate(job);
  } catch (const std::exception& e) {
    err << "configuration error: " << e.what() << '\n';
    return 2;
  }
  if (threads > 0) set_thread_count(threads);

  std::vector<Outcome> outcomes(jobs.size());
  try {
    parallel_for(jobs.size(), [&](std::size_t i) { outcomes[i] = execute(jobs[i], study); });
  } catch (const std::exception& e) {
    err << (is_config_error(e) ? "configuration error: " : "numerical failure: ") << e.what() << '\n';
    return is_config_error(e) ? 2 : 3;
  }

  try {
    const fs::path dir(out_dir);
    fs::create_directories(dir);
    ojson doc;
    doc["study"] = to_string(study);
    doc["config"] = to_json(config);
    doc["curve"] = make_curve(config).description();
    ojson points = ojson::array();
    for (std::size_t i = 0; i < jobs.size(); ++i) points.push_back(point_json(jobs[i], outcomes[i], study));
    doc["points"] = points;
    if (study == Study::solve && config.field_x) write_field(dir, config, *outcomes[0].solution);
    write_csv(dir, study, jobs, outcomes);
    auto f = open_out(dir / (std::string(to_string(study)) + ".json"));
    f << doc.dump(2) << '\n';
    out << "wrote " << (dir / (std::string(to_string(study)) + ".json")).string() << '\n';
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "output error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace shiftgreen::cli
