#include "qmfs/solver.hpp"

#include <cmath>
#include <limits>

namespace qmfs {

namespace {

constexpr double kIllConditionedThreshold = 1e12;

cplx eval_or_zero(const std::function<cplx(const SurfaceSample&)>& fn, const SurfaceSample& node) {
  return fn ? fn(node) : cplx{};
}

}  // namespace

CollocationSystem assemble(std::span<const SurfaceSample> nodes, const MfsAnsatz& ansatz,
                           const BoundaryData& data) {
  const int M = static_cast<int>(nodes.size());
  const int N = ansatz.source_count();
  if (ansatz.pool2.count() != N)
    throw std::invalid_argument("both source pools must have the same size");
  if (!data.tangential) throw std::invalid_argument("boundary data has no tangential field");

  // node/source separation relative to the node set's bounding radius
  double scale = 0.0;
  for (const auto& node : nodes) scale = std::max(scale, node.point.norm());
  for (const auto& node : nodes) {
    for (const auto* pool : {&ansatz.pool1, &ansatz.pool2})
      for (const auto& y : pool->points)
        if ((node.point - y).norm() <= 1e-6 * scale)
          throw NodeSourceCollisionError("collocation node coincides with a source point");
  }

  CollocationSystem sys;
  sys.nodes = M;
  sys.sources = N;
  sys.matrix = Eigen::MatrixXcd::Zero(4 * M, 8 * N);
  sys.rhs = Eigen::VectorXcd::Zero(4 * M);

  for (int i = 0; i < M; ++i) {
    const SurfaceSample& node = nodes[i];
    const ComplexVector3 n(node.normal);
    const ComplexVector3 t1(node.tangent1);
    const ComplexVector3 t2(node.tangent2);

    ComplexVector3 f = data.tangential(node);
    if (std::abs(dot(f, n)) > 1e-10 * (1.0 + f.norm()))
      throw TangentialityError("boundary data is not tangential at a collocation node");

    for (int j = 0; j < N; ++j) {
      Biquaternion k1 = fundamental_solution(ansatz.alpha1, KernelSign::plus, node.point - ansatz.pool1.points[j]);
      Biquaternion k2 = fundamental_solution(ansatz.alpha2, KernelSign::minus, node.point - ansatz.pool2.points[j]);
      for (int k = 0; k < 4; ++k) {
        Biquaternion qa = qmul(k1, Biquaternion::unit(k));
        Biquaternion qb = qmul(k2, Biquaternion::unit(k));
        ComplexVector3 ca = cross(0.5 * qa.v, n);
        ComplexVector3 cb = cross(0.5 * qb.v, n);
        sys.matrix(4 * i + 0, 4 * j + k) = dot(ca, t1);
        sys.matrix(4 * i + 1, 4 * j + k) = dot(ca, t2);
        sys.matrix(4 * i + 2, 4 * j + k) = qa.s;
        sys.matrix(4 * i + 0, 4 * N + 4 * j + k) = dot(cb, t1);
        sys.matrix(4 * i + 1, 4 * N + 4 * j + k) = dot(cb, t2);
        sys.matrix(4 * i + 3, 4 * N + 4 * j + k) = qb.s;
      }
    }

    sys.rhs(4 * i + 0) = dot(f, t1);
    sys.rhs(4 * i + 1) = dot(f, t2);
    sys.rhs(4 * i + 2) = eval_or_zero(data.scalar_phi, node);
    sys.rhs(4 * i + 3) = eval_or_zero(data.scalar_psi, node);
  }
  return sys;
}

SolveReport solve(const CollocationSystem& system, const MfsAnsatz& ansatz, bool force_least_squares) {
  const auto& A = system.matrix;

  Eigen::BDCSVD<Eigen::MatrixXcd> svd(A);
  const auto& sv = svd.singularValues();
  double smin = sv(sv.size() - 1);
  double cond = smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();

  SolveReport report{ansatz, 0.0, cond, SolverPath::square_lu};

  Eigen::VectorXcd x;
  if (!force_least_squares && A.rows() == A.cols() && cond <= kIllConditionedThreshold) {
    x = Eigen::PartialPivLU<Eigen::MatrixXcd>(A).solve(system.rhs);
  } else {
    report.path = SolverPath::least_squares;
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(A);
    x = cod.solve(system.rhs);
  }
  if (!x.allFinite()) throw SingularSystemError("factorization produced non-finite coefficients");

  report.residual_norm = (A * x - system.rhs).norm();

  const int N = system.sources;
  report.ansatz.coeff_a.resize(N);
  report.ansatz.coeff_b.resize(N);
  for (int j = 0; j < N; ++j) {
    report.ansatz.coeff_a[j] = Biquaternion(x(4 * j + 0), x(4 * j + 1), x(4 * j + 2), x(4 * j + 3));
    report.ansatz.coeff_b[j] =
        Biquaternion(x(4 * N + 4 * j + 0), x(4 * N + 4 * j + 1), x(4 * N + 4 * j + 2), x(4 * N + 4 * j + 3));
  }
  return report;
}

FieldEval evaluate(const MfsAnsatz& ansatz, const Eigen::Vector3d& x) {
  const int N = ansatz.source_count();
  if (static_cast<int>(ansatz.coeff_a.size()) != N || static_cast<int>(ansatz.coeff_b.size()) != N)
    throw std::invalid_argument("ansatz has no coefficients; solve first");

  Biquaternion phi, psi;
  for (int j = 0; j < N; ++j) {
    phi += qmul(fundamental_solution(ansatz.alpha1, KernelSign::plus, x - ansatz.pool1.points[j]),
                ansatz.coeff_a[j]);
    psi += qmul(fundamental_solution(ansatz.alpha2, KernelSign::minus, x - ansatz.pool2.points[j]),
                ansatz.coeff_b[j]);
  }
  // E/H come from the vector parts; the scalar parts stay visible on phi/psi
  EMField eh = recover_EH(Biquaternion::pure(phi.v), Biquaternion::pure(psi.v));
  return {eh.E, eh.H, phi, psi};
}

double boundary_residual(const MfsAnsatz& ansatz, const BoundaryData& data,
                         std::span<const SurfaceSample> check_nodes) {
  double worst = 0.0;
  for (const auto& node : check_nodes) {
    FieldEval fe = evaluate(ansatz, node.point);
    ComplexVector3 traced = cross(0.5 * (fe.phi.v + fe.psi.v), ComplexVector3(node.normal));
    double r = (traced - data.tangential(node)).norm() +
               std::abs(fe.phi.s - eval_or_zero(data.scalar_phi, node)) +
               std::abs(fe.psi.s - eval_or_zero(data.scalar_psi, node));
    worst = std::max(worst, r);
  }
  return worst;
}

BenchmarkResult solve_dipole_benchmark(int N, const WaveNumber& alpha, const Eigen::Vector3d& moment,
                                       double aux_scale, double eval_radius, int eval_samples) {
  SurfaceGeometry gamma = SurfaceGeometry::sphere(Eigen::Vector3d::Zero(), 1.0);
  SourcePool sources = make_source_pool(gamma, PoolSide::interior, aux_scale, N);
  std::vector<SurfaceSample> nodes = sample_surface(gamma, 2 * N, 0.5);

  MfsAnsatz ansatz{alpha, alpha, sources, sources, {}, {}};
  BoundaryData data = BoundaryData::tangential_only([&](const SurfaceSample& s) {
    EMField exact = dipole_field(alpha, moment, s.point);
    return cross(exact.E, ComplexVector3(s.normal));
  });

  SolveReport report = solve(assemble(nodes, ansatz, data), ansatz);

  BenchmarkResult result;
  std::vector<SurfaceSample> eval_pts =
      sample_surface(SurfaceGeometry::sphere(Eigen::Vector3d::Zero(), eval_radius), eval_samples);
  for (const auto& s : eval_pts) {
    FieldEval approx = evaluate(report.ansatz, s.point);
    EMField exact = dipole_field(alpha, moment, s.point);
    ComplexVector3 dE = approx.E - exact.E;
    ComplexVector3 dH = approx.H - exact.H;
    for (cplx d : {dE.x, dE.y, dE.z}) result.errE = std::max(result.errE, std::abs(d));
    for (cplx d : {dH.x, dH.y, dH.z}) result.errH = std::max(result.errH, std::abs(d));
  }
  result.report = std::move(report);
  return result;
}

}  // namespace qmfs
