#include "qmfs/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace qmfs {

namespace {

// golden angle, 2*pi*(2 - golden ratio)
const double kGoldenAngle = M_PI * (3.0 - std::sqrt(5.0));

// unit-sphere spiral node i of m, with azimuthal phase offset
Eigen::Vector3d spiral_direction(int i, int m, double offset) {
  double z = 1.0 - (2.0 * i + 1.0) / m;
  double az = kGoldenAngle * (i + offset);
  double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {rho * std::cos(az), rho * std::sin(az), z};
}

Eigen::Vector3d orthonormal_tangent(const Eigen::Vector3d& seed, const Eigen::Vector3d& n) {
  Eigen::Vector3d t = seed - seed.dot(n) * n;
  double len = t.norm();
  if (len < 1e-8) {
    // azimuthal seed degenerate against this normal; fall back to a fixed axis
    Eigen::Vector3d alt = std::abs(n.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
    t = alt - alt.dot(n) * n;
    len = t.norm();
  }
  return t / len;
}

}  // namespace

SurfaceGeometry SurfaceGeometry::sphere(const Eigen::Vector3d& center, double radius) {
  if (radius <= 0.0) throw std::invalid_argument("sphere radius must be positive");
  SurfaceGeometry s;
  s.kind_ = SurfaceKind::sphere;
  s.center_ = center;
  s.radii_ = Eigen::Vector3d::Constant(radius);
  return s;
}

SurfaceGeometry SurfaceGeometry::ellipsoid(const Eigen::Vector3d& center, const Eigen::Vector3d& radii) {
  if ((radii.array() <= 0.0).any()) throw std::invalid_argument("ellipsoid radii must be positive");
  SurfaceGeometry s;
  s.kind_ = SurfaceKind::ellipsoid;
  s.center_ = center;
  s.radii_ = radii;
  return s;
}

SurfaceGeometry SurfaceGeometry::parametric(ParametricSurface surface) {
  if (!surface.position) throw std::invalid_argument("parametric surface needs a position map");
  SurfaceGeometry s;
  s.kind_ = SurfaceKind::parametric;
  s.param_ = std::move(surface);
  return s;
}

double SurfaceGeometry::implicit_value(const Eigen::Vector3d& p) const {
  if (kind_ == SurfaceKind::parametric)
    throw UnsupportedSurfaceError("no implicit function for a parametric surface");
  Eigen::Vector3d u = (p - center_).array() / radii_.array();
  return u.squaredNorm() - 1.0;
}

SurfaceGeometry SurfaceGeometry::scaled(double factor) const {
  if (kind_ == SurfaceKind::parametric)
    throw UnsupportedSurfaceError("cannot form a homothetic copy of a parametric surface");
  SurfaceGeometry s = *this;
  s.radii_ *= factor;
  return s;
}

std::vector<SurfaceSample> sample_surface(const SurfaceGeometry& surface, int m, double spiral_offset) {
  if (m < 4) throw std::invalid_argument("surface sampling needs at least 4 points");

  std::vector<SurfaceSample> samples;
  samples.reserve(m);

  const bool parametric = surface.kind() == SurfaceKind::parametric;
  if (parametric && !surface.param().normal)
    throw UnsupportedSurfaceError("parametric surface without a normal map");

  const Eigen::Vector3d r = surface.radii();
  const double jac_scale = r.prod();  // det of the sphere-to-ellipsoid map

  for (int i = 0; i < m; ++i) {
    Eigen::Vector3d u = spiral_direction(i, m, spiral_offset);
    SurfaceSample s;
    if (parametric) {
      s.point = surface.param().position(u);
      s.normal = surface.param().normal(u).normalized();
      // area element from the parameterization, by central differences of the
      // position map along two tangent directions of the parameter sphere
      Eigen::Vector3d ta = orthonormal_tangent(Eigen::Vector3d(-u.y(), u.x(), 0.0), u);
      Eigen::Vector3d tb = u.cross(ta);
      const double h = 1e-5;
      auto on_sphere = [&](const Eigen::Vector3d& w) { return surface.param().position(w.normalized()); };
      Eigen::Vector3d dpa = (on_sphere(u + h * ta) - on_sphere(u - h * ta)) / (2.0 * h);
      Eigen::Vector3d dpb = (on_sphere(u + h * tb) - on_sphere(u - h * tb)) / (2.0 * h);
      s.weight = (4.0 * M_PI / m) * dpa.cross(dpb).norm();
    } else {
      s.point = surface.center() + (r.array() * u.array()).matrix();
      // gradient of the implicit function: n ~ (u1/r1, u2/r2, u3/r3)
      s.normal = (u.array() / r.array()).matrix().normalized();
      // area element of the linear map diag(r): |det| * |diag(1/r) u|
      s.weight = (4.0 * M_PI / m) * jac_scale * (u.array() / r.array()).matrix().norm();
    }
    Eigen::Vector3d azimuthal(-u.y(), u.x(), 0.0);
    s.tangent1 = orthonormal_tangent(azimuthal, s.normal);
    s.tangent2 = s.normal.cross(s.tangent1);
    samples.push_back(s);
  }
  return samples;
}

SourcePool make_source_pool(const SurfaceGeometry& surface, PoolSide side, double scale, int n) {
  if (n < 1) throw std::invalid_argument("source pool needs at least one point");
  if (side == PoolSide::interior && !(scale > 0.0 && scale < 1.0))
    throw ScaleError("interior pool requires 0 < scale < 1");
  if (side == PoolSide::exterior && !(scale > 1.0))
    throw ScaleError("exterior pool requires scale > 1");

  SurfaceGeometry aux = surface.scaled(scale);
  SourcePool pool;
  pool.side = side;
  pool.points.reserve(n);
  for (int i = 0; i < n; ++i) {
    Eigen::Vector3d u = spiral_direction(i, n, 0.0);
    pool.points.push_back(aux.center() + (aux.radii().array() * u.array()).matrix());
  }
  return pool;
}

}  // namespace qmfs
