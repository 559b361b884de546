#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qmfs/chiral.hpp"
#include "qmfs/geometry.hpp"
#include "qmfs/solver.hpp"

namespace qmfs::driver {

enum class ProblemMode { exterior, interior };
enum class BoundarySpec { dipole, samples };
enum class SolverMode { square, least_squares };

// Batch problem description, normally parsed from a JSON config file.
struct ProblemConfig {
  SurfaceGeometry surface = SurfaceGeometry::sphere(Eigen::Vector3d::Zero(), 1.0);
  MediumParams medium;
  ProblemMode mode = ProblemMode::exterior;

  BoundarySpec boundary = BoundarySpec::dipole;
  Eigen::Vector3d dipole_moment{0.0, 0.0, 1.0};
  Eigen::Vector3d dipole_position{0.0, 0.0, 0.0};
  std::filesystem::path samples_path;  // boundary = samples

  std::vector<int> n_values;
  double aux_scale = 0.15;
  int nodes_per_source = 2;

  double eval_radius = 5.0;
  int eval_samples = 200;

  SolverMode solver_mode = SolverMode::square;
  double overdetermination = 1.0;  // node count factor for least-squares mode

  std::filesystem::path output = "results.csv";

  // verify subcommand
  std::vector<std::string> checks{"factorization", "kernel_annihilation", "cauchy", "radiation"};
  bool wrong_sign_control = false;  // debug: mismatch the radiation factor on purpose

  std::string echo;  // compact JSON of the parsed config
};

ProblemConfig load_config(const std::filesystem::path& path);
ProblemConfig parse_config(const std::string& json_text);

struct ResultRecord {
  int N = 0;
  double errE = 0;
  double errH = 0;
  double residual = 0;
  double cond = 0;
  double wall_ms = 0;
  std::string config_echo;
};

// One solve per N in the config; throws library errors on failure. Writes a
// structured line per record to `log`.
std::vector<ResultRecord> run_problem(const ProblemConfig& config, std::ostream& log);

// header is fixed: N,errE,errH,residual,cond,wall_ms
void write_csv(const std::vector<ResultRecord>& records, std::ostream& out);

// Full `solve`/`sweep` entry point: loads the config, runs, writes the CSV.
// Returns 0 on success; on error prints the error name to `diag` and returns 1.
int run(const std::filesystem::path& config_path, const std::optional<std::filesystem::path>& output_override,
        std::ostream& diag, std::optional<int> single_n = std::nullopt);

struct CheckRow {
  std::string name;
  double measured = 0;
  double threshold = 0;
  bool pass = false;
};

std::vector<CheckRow> run_verify_checks(const ProblemConfig& config);

// Runs the configured verification checks and prints a pass/fail table.
// Returns 0 iff every check passes.
int verify_suite(const std::filesystem::path& config_path, std::ostream& out, std::ostream& diag);

}  // namespace qmfs::driver
