#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <vector>

#include "qmfs/biquat.hpp"
#include "qmfs/chiral.hpp"
#include "qmfs/geometry.hpp"
#include "qmfs/kernels.hpp"

namespace qmfs {

// Boundary data for the tangential-trace problem [E x n] = f. The scalar
// samplers target Sc(phi) and Sc(psi) on the boundary; the physical problem
// drives both to zero, which is the default.
struct BoundaryData {
  std::function<ComplexVector3(const SurfaceSample&)> tangential;
  std::function<cplx(const SurfaceSample&)> scalar_phi;  // empty => 0
  std::function<cplx(const SurfaceSample&)> scalar_psi;  // empty => 0

  static BoundaryData tangential_only(std::function<ComplexVector3(const SurfaceSample&)> f) {
    return {std::move(f), {}, {}};
  }
};

// Trial space: phi_N = sum_j K_{alpha1}(x - y_j) a_j  (sign +),
//              psi_N = sum_j K_{-alpha2}(x - y_j) b_j (sign -),
// with right quaternionic coefficients a_j, b_j.
struct MfsAnsatz {
  WaveNumber alpha1;
  WaveNumber alpha2;
  SourcePool pool1;
  SourcePool pool2;
  std::vector<Biquaternion> coeff_a;  // filled by solve()
  std::vector<Biquaternion> coeff_b;

  int source_count() const { return pool1.count(); }
};

// Dense collocation system. Rows per node: [t1 component of the cross
// condition, t2 component, Sc phi, Sc psi]. Columns: four components of each
// a_j (j-major), then four components of each b_j.
struct CollocationSystem {
  Eigen::MatrixXcd matrix;
  Eigen::VectorXcd rhs;
  int nodes = 0;
  int sources = 0;
};

enum class SolverPath { square_lu, least_squares };

struct SolveReport {
  MfsAnsatz ansatz;           // with coefficients filled
  double residual_norm = 0;   // ||A x - b|| at the collocation nodes
  double condition_estimate = 0;
  SolverPath path = SolverPath::square_lu;
};

CollocationSystem assemble(std::span<const SurfaceSample> nodes, const MfsAnsatz& ansatz,
                           const BoundaryData& data);

// Square systems go through LU with partial pivoting; overdetermined or badly
// conditioned ones (estimate > 1e12) through a rank-revealing least-squares
// factorization. `force_least_squares` skips the LU path.
SolveReport solve(const CollocationSystem& system, const MfsAnsatz& ansatz,
                  bool force_least_squares = false);

struct FieldEval {
  ComplexVector3 E, H;
  Biquaternion phi, psi;  // full quaternions, scalar parts reported
};

FieldEval evaluate(const MfsAnsatz& ansatz, const Eigen::Vector3d& x);

// max over check nodes of |(1/2)[(phi+psi) x n] - f| + |Sc phi - s_phi| + |Sc psi - s_psi|
double boundary_residual(const MfsAnsatz& ansatz, const BoundaryData& data,
                         std::span<const SurfaceSample> check_nodes);

struct BenchmarkResult {
  double errE = 0;
  double errH = 0;
  SolveReport report;
};

// End-to-end magnetic-dipole benchmark on the unit sphere: sources on the
// auxiliary sphere of radius aux_scale, data f = [E x n] from the exact
// dipole, errors measured as the max absolute difference against the exact
// fields over eval_samples spiral points at eval_radius.
BenchmarkResult solve_dipole_benchmark(int N, const WaveNumber& alpha, const Eigen::Vector3d& moment,
                                       double aux_scale, double eval_radius, int eval_samples = 200);

}  // namespace qmfs
