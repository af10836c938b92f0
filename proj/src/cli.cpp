#include "simdiag/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "simdiag/simfinder.hpp"
#include "simdiag/stretching.hpp"
#include "simdiag/verify.hpp"
#include "simdiag/version.hpp"

namespace simdiag {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

double to_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse number '" + s + "' in " + what);
  }
}

int to_count(const std::string& s, const std::string& what) {
  const double v = to_double(s, what);
  const int c = static_cast<int>(std::lround(v));
  if (c != v) throw ConfigError("expected an integer in " + what + ", got '" + s + "'");
  return c;
}

Vec parse_vec(const std::string& s, const std::string& what) {
  Vec out;
  for (const std::string& p : split(s, ',')) out.push_back(to_double(p, what));
  return out;
}

std::size_t model_dimension(const RunConfig& cfg) {
  if (cfg.model == "davis-skodje") return 2;
  if (cfg.model == "linear") {
    const auto k = static_cast<std::size_t>(std::lround(std::sqrt(
        static_cast<double>(cfg.linear_a.size()))));
    return k;
  }
  if (cfg.model == "constant") return cfg.constant_c.size();
  return 0;
}

VectorFieldModel build_model(const RunConfig& cfg) {
  VectorFieldModel m;
  if (cfg.model == "davis-skodje") {
    m = make_davis_skodje(cfg.gamma);
  } else if (cfg.model == "linear") {
    const std::size_t k = model_dimension(cfg);
    Mat A(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) A(i, j) = cfg.linear_a[i * k + j];
    m = make_linear(A);
  } else if (cfg.model == "constant") {
    m = make_constant(cfg.constant_c);
  } else {
    throw ConfigError("unknown model '" + cfg.model + "'");
  }
  if (cfg.fd_step > 0.0) m.fd_step = cfg.fd_step;
  return m;
}

Objective parse_objective(const std::string& s) {
  if (s == "geodesic") return Objective::geodesic_ratio;
  if (s == "classical") return Objective::classical_ratio;
  throw ConfigError("objective must be 'geodesic' or 'classical'");
}

Vec rpv_values(const RunConfig& cfg) {
  Vec values;
  if (cfg.rpv_start == cfg.rpv_stop) {
    values.push_back(cfg.rpv_start);
    return values;
  }
  const double span = cfg.rpv_stop - cfg.rpv_start;
  if (cfg.rpv_step == 0.0 || span * cfg.rpv_step < 0.0)
    throw ConfigError("--rpv step must advance from start toward stop");
  const long count = static_cast<long>(std::floor(span / cfg.rpv_step + 1e-9)) + 1;
  for (long i = 0; i < count; ++i) values.push_back(cfg.rpv_start + i * cfg.rpv_step);
  return values;
}

std::function<std::pair<double, double>(double)> fiber_bounds_fn(const RunConfig& cfg) {
  if (cfg.fiber_auto) {
    // davis-skodje demo band around the reference graph, clipped to y >= 0
    return [](double r) {
      const double h = davis_skodje_sim(r);
      return std::pair<double, double>{std::max(0.0, h - 0.3), h + 0.3};
    };
  }
  return [lo = cfg.fiber_low, hi = cfg.fiber_high](double) {
    return std::pair<double, double>{lo, hi};
  };
}

json config_json(const RunConfig& cfg) {
  json j;
  j["command"] = cfg.command;
  j["model"] = cfg.model;
  j["gamma"] = cfg.gamma;
  j["linear_a"] = cfg.linear_a;
  j["constant_c"] = cfg.constant_c;
  j["grid"] = {{"x0", cfg.grid.x0}, {"x1", cfg.grid.x1}, {"nx", cfg.grid.nx},
               {"y0", cfg.grid.y0}, {"y1", cfg.grid.y1}, {"ny", cfg.grid.ny}};
  j["rpv_index"] = cfg.rpv_index;
  j["rpv_start"] = cfg.rpv_start;
  j["rpv_stop"] = cfg.rpv_stop;
  j["rpv_step"] = cfg.rpv_step;
  j["fiber_auto"] = cfg.fiber_auto;
  j["fiber_low"] = cfg.fiber_low;
  j["fiber_high"] = cfg.fiber_high;
  j["objective"] = cfg.objective;
  j["fd_step"] = cfg.fd_step;
  j["tol"] = cfg.tol;
  j["coarse_points"] = cfg.coarse_points;
  j["x0"] = cfg.x0;
  j["t_end"] = cfg.t_end;
  j["dt"] = cfg.dt;
  j["out"] = cfg.out;
  j["format"] = cfg.format;
  return j;
}

RunConfig config_from_json(const json& j) {
  RunConfig d; // defaults
  RunConfig cfg;
  cfg.command = j.value("command", d.command);
  cfg.model = j.value("model", d.model);
  cfg.gamma = j.value("gamma", d.gamma);
  cfg.linear_a = j.value("linear_a", d.linear_a);
  cfg.constant_c = j.value("constant_c", d.constant_c);
  if (j.contains("grid")) {
    const json& g = j["grid"];
    cfg.grid.x0 = g.value("x0", d.grid.x0);
    cfg.grid.x1 = g.value("x1", d.grid.x1);
    cfg.grid.nx = g.value("nx", d.grid.nx);
    cfg.grid.y0 = g.value("y0", d.grid.y0);
    cfg.grid.y1 = g.value("y1", d.grid.y1);
    cfg.grid.ny = g.value("ny", d.grid.ny);
  }
  cfg.rpv_index = j.value("rpv_index", d.rpv_index);
  cfg.rpv_start = j.value("rpv_start", d.rpv_start);
  cfg.rpv_stop = j.value("rpv_stop", d.rpv_stop);
  cfg.rpv_step = j.value("rpv_step", d.rpv_step);
  cfg.fiber_auto = j.value("fiber_auto", d.fiber_auto);
  cfg.fiber_low = j.value("fiber_low", d.fiber_low);
  cfg.fiber_high = j.value("fiber_high", d.fiber_high);
  cfg.objective = j.value("objective", d.objective);
  cfg.fd_step = j.value("fd_step", d.fd_step);
  cfg.tol = j.value("tol", d.tol);
  cfg.coarse_points = j.value("coarse_points", d.coarse_points);
  cfg.x0 = j.value("x0", d.x0);
  cfg.t_end = j.value("t_end", d.t_end);
  cfg.dt = j.value("dt", d.dt);
  cfg.out = j.value("out", d.out);
  cfg.format = j.value("format", d.format);
  return cfg;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  out << content;
  if (!out) throw ConfigError("failed writing output file '" + path + "'");
}

void write_sidecar(const RunConfig& cfg, double seconds) {
  json meta;
  meta["tool"] = "simdiag";
  meta["version"] = kVersion;
  meta["command"] = cfg.command;
  meta["config"] = config_json(cfg);
  meta["timing_seconds"] = seconds;
  write_file(cfg.out + ".meta.json", meta.dump(2) + "\n");
}

json ratio_json(const std::optional<double>& r) {
  if (!r) return json("singular");
  return json(*r);
}

} // namespace

void validate(const RunConfig& cfg) {
  if (cfg.command != "field" && cfg.command != "sim" && cfg.command != "check" &&
      cfg.command != "trajectory")
    throw ConfigError("unknown command '" + cfg.command + "'");
  if (cfg.model != "davis-skodje" && cfg.model != "linear" && cfg.model != "constant")
    throw ConfigError("unknown model '" + cfg.model + "'");
  if (cfg.model == "davis-skodje" && !(cfg.gamma > 1.0))
    throw ConfigError("--gamma must be > 1 for davis-skodje");
  if (cfg.model == "linear") {
    const std::size_t k = model_dimension(cfg);
    if (k == 0 || k * k != cfg.linear_a.size())
      throw ConfigError("--A must hold a square matrix, row-major");
  }
  if (cfg.model == "constant" && cfg.constant_c.empty())
    throw ConfigError("--c must hold at least one component");
  if (cfg.format != "csv" && cfg.format != "json")
    throw ConfigError("--format must be 'csv' or 'json'");
  if (cfg.fd_step < 0.0) throw ConfigError("--fd-step must be positive");

  if (cfg.command == "field") {
    if (cfg.grid.nx < 2 || cfg.grid.ny < 2)
      throw ConfigError("--grid counts must be at least 2");
    if (!(cfg.grid.x0 < cfg.grid.x1) || !(cfg.grid.y0 < cfg.grid.y1))
      throw ConfigError("--grid ranges must be non-degenerate");
    if (model_dimension(cfg) != 2)
      throw ConfigError("field requires a two-dimensional model");
  }
  if (cfg.command == "sim") {
    if (model_dimension(cfg) != 2)
      throw ConfigError("sim requires a two-dimensional model");
    if (cfg.rpv_index > 1) throw ConfigError("--rpv-index must be 0 or 1");
    if (!(cfg.tol > 0.0)) throw ConfigError("--tol must be positive");
    if (cfg.coarse_points < 8) throw ConfigError("--coarse-points must be at least 8");
    if (cfg.fiber_auto) {
      // the reference band is the davis-skodje graph over x, so it only
      // applies when x is the progress variable
      if (cfg.model != "davis-skodje" || cfg.rpv_index != 0)
        throw ConfigError("--fiber-bounds lo:hi is required for model '" + cfg.model +
                          "' with rpv index " + std::to_string(cfg.rpv_index) +
                          " (no reference band)");
    } else if (!(cfg.fiber_low < cfg.fiber_high)) {
      throw ConfigError("--fiber-bounds must satisfy lo < hi");
    }
    rpv_values(cfg); // validates the step direction
  }
  if (cfg.command == "trajectory") {
    if (cfg.x0.size() != model_dimension(cfg))
      throw ConfigError("--x0 length must match the model dimension");
    if (!(cfg.t_end > 0.0) || !(cfg.dt > 0.0))
      throw ConfigError("--t-end and --dt must be positive");
    if (cfg.dt > cfg.t_end * (1.0 + 1e-12))
      throw ConfigError("--dt must not exceed --t-end");
  }
  if (cfg.command != "check" && cfg.out.empty())
    throw ConfigError("--out is required");
}

std::string config_to_json(const RunConfig& cfg) { return config_json(cfg).dump(2); }

RunConfig config_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("cannot parse config file '" + path + "': " + e.what());
  }
  if (j.contains("config")) return config_from_json(j["config"]);
  return config_from_json(j);
}

int run_field(const RunConfig& cfg) {
  validate(cfg);
  const VectorFieldModel model = build_model(cfg);
  const auto t0 = std::chrono::steady_clock::now();

  const GridSpec& g = cfg.grid;
  Vec xs(g.nx), ys(g.ny);
  for (int i = 0; i < g.nx; ++i) xs[i] = g.x0 + (g.x1 - g.x0) * i / (g.nx - 1);
  for (int j = 0; j < g.ny; ++j) ys[j] = g.y0 + (g.y1 - g.y0) * j / (g.ny - 1);

  const double nan = std::numeric_limits<double>::quiet_NaN();
  struct Cell {
    StretchingReport rep;
    bool ok = false;
  };
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(g.nx) * g.ny);
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      Cell cell;
      try {
        cell.rep = full_report(model, Vec{xs[i], ys[j]});
        cell.ok = true;
      } catch (const DomainError&) {
      } catch (const EquilibriumError&) {
      } catch (const NumericalError&) {
      }
      cells.push_back(std::move(cell));
    }
  }

  std::string payload;
  if (cfg.format == "csv") {
    std::ostringstream out;
    out << "x,y,classical_tangent,classical_normal,classical_ratio,"
           "geodesic_tangent,geodesic_normal,geodesic_ratio\n";
    std::size_t idx = 0;
    for (int i = 0; i < g.nx; ++i) {
      for (int j = 0; j < g.ny; ++j) {
        const Cell& cell = cells[idx++];
        const StretchingReport& r = cell.rep;
        out << fmt17(xs[i]) << ',' << fmt17(ys[j]) << ','
            << fmt17(cell.ok ? r.classical_tangent : nan) << ','
            << fmt17(cell.ok ? r.classical_normal : nan) << ','
            << fmt17(cell.ok && r.classical_ratio ? *r.classical_ratio : nan) << ','
            << fmt17(cell.ok ? r.geodesic_tangent : nan) << ','
            << fmt17(cell.ok ? r.geodesic_normal : nan) << ','
            << fmt17(cell.ok && r.geodesic_ratio ? *r.geodesic_ratio : nan) << '\n';
      }
    }
    payload = out.str();
  } else {
    json doc;
    doc["x"] = xs;
    doc["y"] = ys;
    json jcells = json::array();
    std::size_t idx = 0;
    for (int i = 0; i < g.nx; ++i) {
      for (int j = 0; j < g.ny; ++j) {
        const Cell& cell = cells[idx++];
        json c;
        c["x"] = xs[i];
        c["y"] = ys[j];
        if (cell.ok) {
          c["status"] = "ok";
          c["classical_tangent"] = cell.rep.classical_tangent;
          c["classical_normal"] = cell.rep.classical_normal;
          c["classical_ratio"] = ratio_json(cell.rep.classical_ratio);
          c["geodesic_tangent"] = cell.rep.geodesic_tangent;
          c["geodesic_normal"] = cell.rep.geodesic_normal;
          c["geodesic_ratio"] = ratio_json(cell.rep.geodesic_ratio);
        } else {
          c["status"] = "error";
        }
        jcells.push_back(std::move(c));
      }
    }
    doc["cells"] = std::move(jcells);
    payload = doc.dump(2) + "\n";
  }
  write_file(cfg.out, payload);

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_sidecar(cfg, seconds);
  return kExitOk;
}

int run_sim(const RunConfig& cfg, std::ostream& out_stream) {
  validate(cfg);
  const VectorFieldModel model = build_model(cfg);
  const auto t0 = std::chrono::steady_clock::now();

  TraceOptions opts;
  opts.coarse_points = cfg.coarse_points;
  opts.tol = cfg.tol;
  const SimCurve curve = trace_sim(model, cfg.rpv_index, rpv_values(cfg),
                                   fiber_bounds_fn(cfg), parse_objective(cfg.objective),
                                   opts);

  const bool with_reference = cfg.model == "davis-skodje" && cfg.rpv_index == 0;
  const double nan = std::numeric_limits<double>::quiet_NaN();

  std::string payload;
  if (cfg.format == "csv") {
    std::ostringstream out;
    out << "rpv_value,maximizer,objective_value,status";
    if (with_reference) out << ",reference_value,abs_error";
    out << '\n';
    for (const SimEntry& e : curve.entries) {
      out << fmt17(e.rpv_value) << ',' << fmt17(e.maximizer) << ','
          << fmt17(e.objective_value) << ',' << to_string(e.status);
      if (with_reference) {
        const double ref = davis_skodje_sim(e.rpv_value);
        const double err =
            e.status == FiberStatus::converged ? std::abs(e.maximizer - ref) : nan;
        out << ',' << fmt17(ref) << ',' << fmt17(err);
      }
      out << '\n';
    }
    payload = out.str();
  } else {
    json doc;
    json entries = json::array();
    for (const SimEntry& e : curve.entries) {
      json je;
      je["rpv_value"] = e.rpv_value;
      je["maximizer"] = std::isnan(e.maximizer) ? json() : json(e.maximizer);
      je["objective_value"] =
          std::isnan(e.objective_value) ? json() : json(e.objective_value);
      je["status"] = to_string(e.status);
      if (with_reference) {
        const double ref = davis_skodje_sim(e.rpv_value);
        je["reference_value"] = ref;
        je["abs_error"] = e.status == FiberStatus::converged
                              ? json(std::abs(e.maximizer - ref))
                              : json();
      }
      entries.push_back(std::move(je));
    }
    doc["entries"] = std::move(entries);
    payload = doc.dump(2) + "\n";
  }
  write_file(cfg.out, payload);

  std::size_t converged = 0;
  for (const SimEntry& e : curve.entries)
    if (e.status == FiberStatus::converged) ++converged;
  out_stream << "entries=" << curve.entries.size() << " converged=" << converged;
  if (with_reference && converged > 0) {
    const ReferenceError err = compare_reference(curve, davis_skodje_sim);
    out_stream << " max_abs_error=" << fmt17(err.max_abs)
               << " mean_abs_error=" << fmt17(err.mean_abs);
  }
  out_stream << '\n';

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_sidecar(cfg, seconds);
  return kExitOk;
}

int run_check(const RunConfig& cfg, std::ostream& out_stream) {
  validate(cfg);
  const VectorFieldModel model = build_model(cfg);
  CheckOptions opts;
  opts.corrupt_metric_sign = cfg.corrupt_metric;
  const std::vector<CheckResult> results = run_checks(model, opts);
  for (const CheckResult& r : results) {
    out_stream << (r.pass ? "PASS" : "FAIL") << "  " << r.name
               << "  measured=" << fmt17(r.measured) << "  tol=" << fmt17(r.tolerance)
               << '\n';
  }
  const bool ok = all_passed(results);
  out_stream << (ok ? "all checks passed" : "verification FAILED") << '\n';
  return ok ? kExitOk : kExitVerify;
}

int run_trajectory(const RunConfig& cfg) {
  validate(cfg);
  const VectorFieldModel model = build_model(cfg);
  const auto t0 = std::chrono::steady_clock::now();

  const Trajectory tr = integrate(model, cfg.x0, cfg.t_end, cfg.dt);
  Vec residual_max(tr.points.size(), 0.0);
  for (std::size_t p = 0; p < tr.points.size(); ++p) {
    const Vec res = geodesic_residual(model, tr.points[p]);
    double m = 0.0;
    for (double c : res) m = std::max(m, std::abs(c));
    residual_max[p] = m;
  }

  std::string payload;
  if (cfg.format == "csv") {
    std::ostringstream out;
    out << 't';
    for (std::size_t i = 0; i < model.dimension; ++i) out << ",x" << (i + 1);
    out << ",residual_max\n";
    for (std::size_t p = 0; p < tr.points.size(); ++p) {
      out << fmt17(tr.times[p]);
      for (double c : tr.points[p]) out << ',' << fmt17(c);
      out << ',' << fmt17(residual_max[p]) << '\n';
    }
    payload = out.str();
  } else {
    json doc;
    doc["times"] = tr.times;
    doc["points"] = tr.points;
    doc["residual_max"] = residual_max;
    payload = doc.dump(2) + "\n";
  }
  write_file(cfg.out, payload);

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_sidecar(cfg, seconds);
  return kExitOk;
}

namespace {

struct CliVars {
  std::string config_path;
  std::string model;
  double gamma = 0.0;
  std::string linear_a, constant_c;
  std::string grid;
  std::string rpv;
  std::size_t rpv_index = 0;
  std::string fiber_bounds;
  std::string objective;
  double fd_step = 0.0;
  double tol = 0.0;
  int coarse_points = 0;
  std::string x0;
  double t_end = 0.0, dt = 0.0;
  std::string out;
  std::string format;
  bool corrupt_metric = false;
};

void add_model_options(CLI::App* sub, CliVars& v) {
  sub->add_option("--config", v.config_path,
                  "Load configuration from a JSON file (a .meta.json sidecar works); "
                  "explicit flags override");
  sub->add_option("--model", v.model, "Model: davis-skodje | linear | constant");
  sub->add_option("--gamma", v.gamma, "Davis-Skodje gamma (> 1)");
  sub->add_option("--A", v.linear_a, "Row-major matrix entries for --model linear");
  sub->add_option("--c", v.constant_c, "Components of c for --model constant");
  sub->add_option("--fd-step", v.fd_step, "Finite-difference step (default: model's)");
}

void apply_model_options(const CLI::App* sub, const CliVars& v, RunConfig& cfg) {
  if (sub->count("--model")) cfg.model = v.model;
  if (sub->count("--gamma")) cfg.gamma = v.gamma;
  if (sub->count("--A")) cfg.linear_a = parse_vec(v.linear_a, "--A");
  if (sub->count("--c")) cfg.constant_c = parse_vec(v.constant_c, "--c");
  if (sub->count("--fd-step")) cfg.fd_step = v.fd_step;
  if (cfg.model == "constant" && cfg.constant_c.empty()) cfg.constant_c = {1.0, 0.0};
}

void parse_grid(const std::string& s, RunConfig& cfg) {
  const auto axes = split(s, ',');
  if (axes.size() != 2) throw ConfigError("--grid expects x0:x1:nx,y0:y1:ny");
  const auto xp = split(axes[0], ':');
  const auto yp = split(axes[1], ':');
  if (xp.size() != 3 || yp.size() != 3)
    throw ConfigError("--grid expects x0:x1:nx,y0:y1:ny");
  cfg.grid.x0 = to_double(xp[0], "--grid");
  cfg.grid.x1 = to_double(xp[1], "--grid");
  cfg.grid.nx = to_count(xp[2], "--grid");
  cfg.grid.y0 = to_double(yp[0], "--grid");
  cfg.grid.y1 = to_double(yp[1], "--grid");
  cfg.grid.ny = to_count(yp[2], "--grid");
}

void parse_rpv(const std::string& s, RunConfig& cfg) {
  const auto parts = split(s, ':');
  if (parts.size() == 1) {
    cfg.rpv_start = cfg.rpv_stop = to_double(parts[0], "--rpv");
    cfg.rpv_step = 1.0;
  } else if (parts.size() == 3) {
    cfg.rpv_start = to_double(parts[0], "--rpv");
    cfg.rpv_stop = to_double(parts[1], "--rpv");
    cfg.rpv_step = to_double(parts[2], "--rpv");
  } else {
    throw ConfigError("--rpv expects start:stop:step or a single value");
  }
}

void parse_fiber_bounds(const std::string& s, RunConfig& cfg) {
  if (s == "auto") {
    cfg.fiber_auto = true;
    return;
  }
  const auto parts = split(s, ':');
  if (parts.size() != 2) throw ConfigError("--fiber-bounds expects lo:hi or 'auto'");
  cfg.fiber_auto = false;
  cfg.fiber_low = to_double(parts[0], "--fiber-bounds");
  cfg.fiber_high = to_double(parts[1], "--fiber-bounds");
}

} // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"simdiag - curvature-based stretching diagnostics and slow-manifold "
               "location for ODE vector fields"};
  app.require_subcommand(1);

  CliVars vf, vs, vc, vt;

  CLI::App* field = app.add_subcommand(
      "field", "Evaluate stretching rates/ratios on a grid and export them");
  add_model_options(field, vf);
  field->add_option("--grid", vf.grid, "Grid spec x0:x1:nx,y0:y1:ny");
  field->add_option("--out", vf.out, "Output file path");
  field->add_option("--format", vf.format, "Output format: csv | json");

  CLI::App* sim = app.add_subcommand(
      "sim", "Trace a slow-manifold approximation by per-fiber ratio maximization");
  add_model_options(sim, vs);
  sim->add_option("--rpv", vs.rpv, "RPV values start:stop:step (or a single value)");
  sim->add_option("--rpv-index", vs.rpv_index, "Coordinate index held fixed (default 0)");
  sim->add_option("--fiber-bounds", vs.fiber_bounds,
                  "Fiber bounds lo:hi, or 'auto' for the davis-skodje band");
  sim->add_option("--objective", vs.objective, "Objective: geodesic | classical");
  sim->add_option("--tol", vs.tol, "Golden-section bracket tolerance");
  sim->add_option("--coarse-points", vs.coarse_points, "Coarse scan samples (>= 8)");
  sim->add_option("--out", vs.out, "Output file path");
  sim->add_option("--format", vs.format, "Output format: csv | json");

  CLI::App* check = app.add_subcommand(
      "check", "Run the geometric invariant suite and report pass/fail per check");
  add_model_options(check, vc);
  check->add_flag("--corrupt-metric", vc.corrupt_metric)->group("");

  CLI::App* traj = app.add_subcommand(
      "trajectory", "Integrate a trajectory and report per-point geodesic residuals");
  add_model_options(traj, vt);
  traj->add_option("--x0", vt.x0, "Initial state, comma-separated");
  traj->add_option("--t-end", vt.t_end, "Final time");
  traj->add_option("--dt", vt.dt, "Fixed RK4 step");
  traj->add_option("--out", vt.out, "Output file path");
  traj->add_option("--format", vt.format, "Output format: csv | json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << "run with --help for usage\n";
    return kExitConfig;
  }

  try {
    RunConfig cfg;
    if (field->parsed()) {
      if (field->count("--config")) cfg = config_from_json_file(vf.config_path);
      cfg.command = "field";
      apply_model_options(field, vf, cfg);
      if (field->count("--grid")) parse_grid(vf.grid, cfg);
      if (field->count("--out")) cfg.out = vf.out;
      if (field->count("--format")) cfg.format = vf.format;
      return run_field(cfg);
    }
    if (sim->parsed()) {
      if (sim->count("--config")) cfg = config_from_json_file(vs.config_path);
      cfg.command = "sim";
      apply_model_options(sim, vs, cfg);
      if (sim->count("--rpv")) parse_rpv(vs.rpv, cfg);
      if (sim->count("--rpv-index")) cfg.rpv_index = vs.rpv_index;
      if (sim->count("--fiber-bounds")) parse_fiber_bounds(vs.fiber_bounds, cfg);
      if (sim->count("--objective")) cfg.objective = vs.objective;
      if (sim->count("--tol")) cfg.tol = vs.tol;
      if (sim->count("--coarse-points")) cfg.coarse_points = vs.coarse_points;
      if (sim->count("--out")) cfg.out = vs.out;
      if (sim->count("--format")) cfg.format = vs.format;
      return run_sim(cfg, std::cout);
    }
    if (check->parsed()) {
      if (check->count("--config")) cfg = config_from_json_file(vc.config_path);
      cfg.command = "check";
      apply_model_options(check, vc, cfg);
      cfg.corrupt_metric = vc.corrupt_metric;
      return run_check(cfg, std::cout);
    }
    if (traj->parsed()) {
      if (traj->count("--config")) cfg = config_from_json_file(vt.config_path);
      cfg.command = "trajectory";
      apply_model_options(traj, vt, cfg);
      if (traj->count("--x0")) cfg.x0 = parse_vec(vt.x0, "--x0");
      if (traj->count("--t-end")) cfg.t_end = vt.t_end;
      if (traj->count("--dt")) cfg.dt = vt.dt;
      if (traj->count("--out")) cfg.out = vt.out;
      if (traj->count("--format")) cfg.format = vt.format;
      return run_trajectory(cfg);
    }
    throw ConfigError("no subcommand given");
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}

} // namespace simdiag
