#include "qmfs/driver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <ostream>
#include <sstream>

#include "qmfs/verify.hpp"

namespace qmfs::driver {

namespace {

using nlohmann::json;

[[noreturn]] void config_fail(const std::string& path, const std::string& msg) {
  throw ConfigError(path + ": " + msg);
}

const json& need(const json& j, const char* key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) config_fail(path + "." + key, "missing field");
  return *it;
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) config_fail(path, "expected a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) config_fail(path, "expected an integer");
  return j.get<int>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) config_fail(path, "expected a string");
  return j.get<std::string>();
}

Eigen::Vector3d as_vector3(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) config_fail(path, "expected an array of 3 numbers");
  return {as_number(j[0], path + "[0]"), as_number(j[1], path + "[1]"), as_number(j[2], path + "[2]")};
}

// a number or a [re, im] pair
cplx as_complex(const json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2)
    return {as_number(j[0], path + "[0]"), as_number(j[1], path + "[1]")};
  config_fail(path, "expected a number or [re, im]");
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> known, const std::string& path) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known)
      if (it.key() == k) ok = true;
    if (!ok) config_fail(path + "." + it.key(), "unknown field");
  }
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string sci3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3E", v);
  return buf;
}

// deterministic off-surface probe points for the finite-difference checks
std::vector<Eigen::Vector3d> probe_points(int count, double r_min, double r_max) {
  auto dirs = sample_surface(SurfaceGeometry::sphere(Eigen::Vector3d::Zero(), 1.0), count, 0.25);
  std::vector<Eigen::Vector3d> pts;
  pts.reserve(count);
  for (int i = 0; i < count; ++i) {
    double r = r_min + (r_max - r_min) * (i + 0.5) / count;
    pts.push_back(r * dirs[i].point);
  }
  return pts;
}

}  // namespace

ProblemConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be an object");

  reject_unknown_keys(j,
                      {"surface", "medium", "mode", "boundary", "N", "aux_scale", "collocation",
                       "eval", "solver", "output", "verify"},
                      "config");

  ProblemConfig cfg;

  {
    const json& s = need(j, "surface", "config");
    reject_unknown_keys(s, {"kind", "center", "radius", "radii"}, "surface");
    std::string kind = as_string(need(s, "kind", "surface"), "surface.kind");
    Eigen::Vector3d center = s.contains("center") ? as_vector3(s["center"], "surface.center")
                                                  : Eigen::Vector3d::Zero().eval();
    if (kind == "sphere") {
      double radius = as_number(need(s, "radius", "surface"), "surface.radius");
      if (radius <= 0.0) config_fail("surface.radius", "must be positive");
      cfg.surface = SurfaceGeometry::sphere(center, radius);
    } else if (kind == "ellipsoid") {
      Eigen::Vector3d radii = as_vector3(need(s, "radii", "surface"), "surface.radii");
      if ((radii.array() <= 0.0).any()) config_fail("surface.radii", "must be positive");
      cfg.surface = SurfaceGeometry::ellipsoid(center, radii);
    } else {
      config_fail("surface.kind", "expected \"sphere\" or \"ellipsoid\"");
    }
  }

  if (j.contains("medium")) {
    const json& m = j["medium"];
    reject_unknown_keys(m, {"omega", "epsilon", "mu", "beta"}, "medium");
    if (m.contains("omega")) cfg.medium.omega = as_number(m["omega"], "medium.omega");
    if (cfg.medium.omega <= 0.0) config_fail("medium.omega", "must be positive");
    if (m.contains("epsilon")) cfg.medium.epsilon = as_complex(m["epsilon"], "medium.epsilon");
    if (m.contains("mu")) cfg.medium.mu = as_complex(m["mu"], "medium.mu");
    if (m.contains("beta")) cfg.medium.beta = as_number(m["beta"], "medium.beta");
  }

  if (j.contains("mode")) {
    std::string mode = as_string(j["mode"], "mode");
    if (mode == "exterior")
      cfg.mode = ProblemMode::exterior;
    else if (mode == "interior")
      cfg.mode = ProblemMode::interior;
    else
      config_fail("mode", "expected \"exterior\" or \"interior\"");
  }

  if (j.contains("boundary")) {
    const json& b = j["boundary"];
    reject_unknown_keys(b, {"type", "c", "position", "path"}, "boundary");
    std::string type = as_string(need(b, "type", "boundary"), "boundary.type");
    if (type == "dipole") {
      cfg.boundary = BoundarySpec::dipole;
      if (b.contains("c")) cfg.dipole_moment = as_vector3(b["c"], "boundary.c");
      if (cfg.dipole_moment.norm() == 0.0) config_fail("boundary.c", "dipole moment must be nonzero");
      if (b.contains("position")) cfg.dipole_position = as_vector3(b["position"], "boundary.position");
    } else if (type == "samples") {
      cfg.boundary = BoundarySpec::samples;
      cfg.samples_path = as_string(need(b, "path", "boundary"), "boundary.path");
    } else {
      config_fail("boundary.type", "expected \"dipole\" or \"samples\"");
    }
  }

  {
    const json& n = need(j, "N", "config");
    if (n.is_number_integer()) {
      cfg.n_values = {as_int(n, "N")};
    } else if (n.is_array() && !n.empty()) {
      for (size_t i = 0; i < n.size(); ++i)
        cfg.n_values.push_back(as_int(n[i], "N[" + std::to_string(i) + "]"));
    } else {
      config_fail("N", "expected an integer or a non-empty integer array");
    }
    for (int v : cfg.n_values)
      if (v < 1) config_fail("N", "source counts must be >= 1");
  }

  if (j.contains("aux_scale")) cfg.aux_scale = as_number(j["aux_scale"], "aux_scale");
  if (cfg.aux_scale <= 0.0) config_fail("aux_scale", "must be positive");

  if (j.contains("collocation")) {
    const json& c = j["collocation"];
    reject_unknown_keys(c, {"per_source"}, "collocation");
    if (c.contains("per_source")) cfg.nodes_per_source = as_int(c["per_source"], "collocation.per_source");
    if (cfg.nodes_per_source < 2) config_fail("collocation.per_source", "must be >= 2");
  }

  if (j.contains("eval")) {
    const json& e = j["eval"];
    reject_unknown_keys(e, {"radius", "samples"}, "eval");
    if (e.contains("radius")) cfg.eval_radius = as_number(e["radius"], "eval.radius");
    if (cfg.eval_radius <= 0.0) config_fail("eval.radius", "must be positive");
    if (e.contains("samples")) cfg.eval_samples = as_int(e["samples"], "eval.samples");
    if (cfg.eval_samples < 1) config_fail("eval.samples", "must be >= 1");
  }

  if (j.contains("solver")) {
    const json& s = j["solver"];
    reject_unknown_keys(s, {"mode", "overdetermination"}, "solver");
    if (s.contains("mode")) {
      std::string mode = as_string(s["mode"], "solver.mode");
      if (mode == "square")
        cfg.solver_mode = SolverMode::square;
      else if (mode == "least-squares")
        cfg.solver_mode = SolverMode::least_squares;
      else
        config_fail("solver.mode", "expected \"square\" or \"least-squares\"");
    }
    if (s.contains("overdetermination"))
      cfg.overdetermination = as_number(s["overdetermination"], "solver.overdetermination");
    if (cfg.overdetermination < 1.0) config_fail("solver.overdetermination", "must be >= 1");
  }

  if (j.contains("output")) cfg.output = as_string(j["output"], "output");

  if (j.contains("verify")) {
    const json& v = j["verify"];
    reject_unknown_keys(v, {"checks", "wrong_sign_control"}, "verify");
    if (v.contains("checks")) {
      if (!v["checks"].is_array()) config_fail("verify.checks", "expected an array");
      cfg.checks.clear();
      for (size_t i = 0; i < v["checks"].size(); ++i) {
        std::string name = as_string(v["checks"][i], "verify.checks[" + std::to_string(i) + "]");
        if (name != "factorization" && name != "kernel_annihilation" && name != "cauchy" &&
            name != "radiation")
          config_fail("verify.checks[" + std::to_string(i) + "]", "unknown check \"" + name + "\"");
        cfg.checks.push_back(name);
      }
    }
    if (v.contains("wrong_sign_control")) {
      if (!v["wrong_sign_control"].is_boolean()) config_fail("verify.wrong_sign_control", "expected a boolean");
      cfg.wrong_sign_control = v["wrong_sign_control"].get<bool>();
    }
  }

  cfg.echo = j.dump();
  return cfg;
}

ProblemConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

namespace {

// f samples file: {"f": [[[re,im],[re,im],[re,im]], ...]} with one entry per node
std::vector<ComplexVector3> load_boundary_samples(const std::filesystem::path& path, size_t expected) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read samples file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid samples JSON: ") + e.what());
  }
  const json& f = need(j, "f", "samples");
  if (!f.is_array() || f.size() != expected)
    config_fail("samples.f", "expected " + std::to_string(expected) + " boundary vectors");
  std::vector<ComplexVector3> out;
  out.reserve(expected);
  for (size_t i = 0; i < f.size(); ++i) {
    const std::string path_i = "samples.f[" + std::to_string(i) + "]";
    if (!f[i].is_array() || f[i].size() != 3) config_fail(path_i, "expected 3 complex components");
    out.emplace_back(as_complex(f[i][0], path_i), as_complex(f[i][1], path_i), as_complex(f[i][2], path_i));
  }
  return out;
}

}  // namespace

std::vector<ResultRecord> run_problem(const ProblemConfig& config, std::ostream& log) {
  MediumWaveNumbers wn = derive_wave_numbers(config.medium);
  const bool exact_known = config.boundary == BoundarySpec::dipole && config.medium.beta == 0.0;
  const PoolSide side = config.mode == ProblemMode::exterior ? PoolSide::interior : PoolSide::exterior;

  std::vector<ResultRecord> records;
  records.reserve(config.n_values.size());

  for (int N : config.n_values) {
    auto t0 = std::chrono::steady_clock::now();

    SourcePool pool = make_source_pool(config.surface, side, config.aux_scale, N);
    double node_factor = config.solver_mode == SolverMode::least_squares ? config.overdetermination : 1.0;
    int M = static_cast<int>(std::lround(N * config.nodes_per_source * node_factor));
    std::vector<SurfaceSample> nodes = sample_surface(config.surface, M, 0.5);

    MfsAnsatz ansatz{wn.pair.alpha1, wn.pair.alpha2, pool, pool, {}, {}};

    BoundaryData data;
    if (config.boundary == BoundarySpec::dipole) {
      data = BoundaryData::tangential_only([&](const SurfaceSample& s) {
        EMField exact = dipole_field(wn.alpha, config.dipole_moment, s.point - config.dipole_position);
        return cross(exact.E, ComplexVector3(s.normal));
      });
    } else {
      auto samples = load_boundary_samples(config.samples_path, nodes.size());
      auto points = std::make_shared<std::vector<Eigen::Vector3d>>();
      for (const auto& n : nodes) points->push_back(n.point);
      data = BoundaryData::tangential_only(
          [samples = std::move(samples), points](const SurfaceSample& s) {
            for (size_t i = 0; i < points->size(); ++i)
              if ((points->at(i) - s.point).norm() < 1e-12) return samples[i];
            throw ConfigError("boundary samples are bound to the collocation nodes");
          });
    }

    SolveReport report =
        solve(assemble(nodes, ansatz, data), ansatz, config.solver_mode == SolverMode::least_squares);

    ResultRecord rec;
    rec.N = N;
    rec.residual = report.residual_norm;
    rec.cond = report.condition_estimate;
    if (exact_known) {
      rec.errE = 0.0;
      rec.errH = 0.0;
      auto eval_pts = sample_surface(SurfaceGeometry::sphere(config.surface.center(), config.eval_radius),
                                     config.eval_samples);
      for (const auto& s : eval_pts) {
        FieldEval approx = evaluate(report.ansatz, s.point);
        EMField exact = dipole_field(wn.alpha, config.dipole_moment, s.point - config.dipole_position);
        ComplexVector3 dE = approx.E - exact.E;
        ComplexVector3 dH = approx.H - exact.H;
        for (cplx d : {dE.x, dE.y, dE.z}) rec.errE = std::max(rec.errE, std::abs(d));
        for (cplx d : {dH.x, dH.y, dH.z}) rec.errH = std::max(rec.errH, std::abs(d));
      }
    } else {
      rec.errE = std::numeric_limits<double>::quiet_NaN();
      rec.errH = std::numeric_limits<double>::quiet_NaN();
    }

    auto t1 = std::chrono::steady_clock::now();
    rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    rec.config_echo = config.echo;

    log << "record N=" << rec.N << " errE=" << g17(rec.errE) << " errH=" << g17(rec.errH)
        << " residual=" << g17(rec.residual) << " cond=" << g17(rec.cond) << " wall_ms=" << g17(rec.wall_ms)
        << " config=" << rec.config_echo << "\n";
    records.push_back(std::move(rec));
  }
  return records;
}

void write_csv(const std::vector<ResultRecord>& records, std::ostream& out) {
  out << "N,errE,errH,residual,cond,wall_ms\n";
  for (const auto& r : records) {
    char wall[32];
    std::snprintf(wall, sizeof wall, "%.3f", r.wall_ms);
    out << r.N << ',' << g17(r.errE) << ',' << g17(r.errH) << ',' << g17(r.residual) << ','
        << g17(r.cond) << ',' << wall << "\n";
  }
}

int run(const std::filesystem::path& config_path, const std::optional<std::filesystem::path>& output_override,
        std::ostream& diag, std::optional<int> single_n) {
  try {
    ProblemConfig cfg = load_config(config_path);
    if (output_override) cfg.output = *output_override;
    if (single_n) cfg.n_values = {*single_n};
    auto records = run_problem(cfg, diag);
    std::ofstream out(cfg.output);
    if (!out) throw ConfigError("cannot open output file " + cfg.output.string());
    write_csv(records, out);
    return 0;
  } catch (const std::exception& e) {
    diag << e.what() << "\n";
    return 1;
  }
}

std::vector<CheckRow> run_verify_checks(const ProblemConfig& config) {
  MediumWaveNumbers wn = derive_wave_numbers(config.medium);
  const WaveNumber& a1 = wn.pair.alpha1;
  const WaveNumber& a2 = wn.pair.alpha2;

  std::vector<CheckRow> rows;
  for (const std::string& name : config.checks) {
    CheckRow row{name, 0.0, 0.0, false};
    if (name == "factorization") {
      FdCheckConfig cfg{1e-3, probe_points(12, 0.8, 2.3), 1e-3};
      cplx a = a1.value();
      BiquatField plane_wave = [a](const Eigen::Vector3d& x) {
        return Biquaternion::scalar(std::exp(cplx(0, 1) * a * x[2]));
      };
      Eigen::Vector3d y0(0.1, -0.05, 0.2);
      BiquatField point_source = [&, y0](const Eigen::Vector3d& x) {
        return Biquaternion::scalar(theta(a1, x - y0));
      };
      row.measured = std::max(check_factorization(a1, plane_wave, cfg),
                              check_factorization(a1, point_source, cfg));
      row.threshold = 1e-3;
      row.pass = row.measured < row.threshold;
    } else if (name == "kernel_annihilation") {
      auto points = probe_points(50, 0.5, 3.0);
      std::vector<WaveNumber> alphas{a1, a2, WaveNumber(cplx(2.0, 0.5))};
      double worst = 0.0;
      for (const auto& alpha : alphas)
        for (KernelSign sign : {KernelSign::plus, KernelSign::minus}) {
          BiquatField f = [&alpha, sign](const Eigen::Vector3d& x) {
            return fundamental_solution(alpha, sign, x);
          };
          for (const auto& x : points) {
            Biquaternion res = dirac_apply_fd(alpha, sign, f, x, 1e-4);
            worst = std::max(worst, res.norm() / f(x).norm());
          }
        }
      row.measured = worst;
      row.threshold = 1e-6;
      row.pass = row.measured < row.threshold;
    } else if (name == "cauchy") {
      double r_min = config.surface.radii().minCoeff();
      double r_max = config.surface.radii().maxCoeff();
      auto samples = sample_surface(config.surface, 2000);
      Eigen::Vector3d source = config.surface.center() + Eigen::Vector3d(0, 0, 0.1 * r_min);
      Eigen::Vector3d x = config.surface.center() + Eigen::Vector3d(0, 0, 3.0 * r_max);
      row.measured = cauchy_reproduce(a1, KernelSign::plus, source, samples, x).error;
      row.threshold = 1e-3;
      row.pass = row.measured < row.threshold;
    } else if (name == "radiation") {
      BiquatField f = [&a1](const Eigen::Vector3d& x) {
        return fundamental_solution(a1, KernelSign::plus, x);
      };
      KernelSign factor = config.wrong_sign_control ? KernelSign::minus : KernelSign::plus;
      double base = std::max(1.0, config.surface.radii().maxCoeff());
      std::vector<double> radii{10.0 * base, 20.0 * base, 40.0 * base};
      auto table = radiation_decay(f, factor, radii, 32);
      double min_shrink = std::numeric_limits<double>::infinity();
      for (size_t i = 0; i + 1 < table.size(); ++i)
        min_shrink = std::min(min_shrink, table[i].max_product / table[i + 1].max_product);
      row.measured = min_shrink;
      row.threshold = 1.5;
      row.pass = row.measured >= row.threshold;
    }
    rows.push_back(row);
  }
  return rows;
}

int verify_suite(const std::filesystem::path& config_path, std::ostream& out, std::ostream& diag) {
  try {
    ProblemConfig cfg = load_config(config_path);
    auto rows = run_verify_checks(cfg);
    bool all_pass = true;
    if (!rows.empty()) {
      char header[96];
      std::snprintf(header, sizeof header, "%-22s %-12s %-12s %s", "check", "measured", "threshold", "result");
      out << header << "\n";
      for (const auto& row : rows) {
        char line[96];
        std::snprintf(line, sizeof line, "%-22s %-12s %-12s %s", row.name.c_str(),
                      sci3(row.measured).c_str(), sci3(row.threshold).c_str(), row.pass ? "PASS" : "FAIL");
        out << line << "\n";
        all_pass = all_pass && row.pass;
      }
    }
    return all_pass ? 0 : 1;
  } catch (const std::exception& e) {
    diag << e.what() << "\n";
    return 1;
  }
}

}  // namespace qmfs::driver
