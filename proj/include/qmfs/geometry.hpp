#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "qmfs/errors.hpp"

namespace qmfs {

enum class SurfaceKind { sphere, ellipsoid, parametric };

// Maps a unit direction to a point on the surface (and optionally to the
// outward unit normal there).
struct ParametricSurface {
  std::function<Eigen::Vector3d(const Eigen::Vector3d&)> position;
  std::function<Eigen::Vector3d(const Eigen::Vector3d&)> normal;  // may be empty
};

// Closed star-shaped surface, outward oriented.
class SurfaceGeometry {
 public:
  static SurfaceGeometry sphere(const Eigen::Vector3d& center, double radius);
  static SurfaceGeometry ellipsoid(const Eigen::Vector3d& center, const Eigen::Vector3d& radii);
  static SurfaceGeometry parametric(ParametricSurface surface);

  SurfaceKind kind() const { return kind_; }
  const Eigen::Vector3d& center() const { return center_; }
  const Eigen::Vector3d& radii() const { return radii_; }
  const ParametricSurface& param() const { return param_; }

  // < 0 inside, 0 on the surface, > 0 outside (sphere/ellipsoid only)
  double implicit_value(const Eigen::Vector3d& p) const;

  // homothetic copy about the center (sphere/ellipsoid only)
  SurfaceGeometry scaled(double factor) const;

 private:
  SurfaceGeometry() = default;

  SurfaceKind kind_ = SurfaceKind::sphere;
  Eigen::Vector3d center_ = Eigen::Vector3d::Zero();
  Eigen::Vector3d radii_ = Eigen::Vector3d::Ones();
  ParametricSurface param_;
};

struct SurfaceSample {
  Eigen::Vector3d point;
  Eigen::Vector3d normal;    // outward, unit length
  Eigen::Vector3d tangent1;  // {t1, t2, n} is right-handed orthonormal
  Eigen::Vector3d tangent2;
  double weight;             // quadrature weight, area units
};

// m quasi-uniform samples via a golden-angle spiral mapped through the surface
// parameterization; deterministic for fixed arguments. `spiral_offset` shifts
// the azimuthal phase so that independently sampled point sets do not line up.
std::vector<SurfaceSample> sample_surface(const SurfaceGeometry& surface, int m,
                                          double spiral_offset = 0.0);

enum class PoolSide { interior, exterior };

// Source locations {y_n} on an auxiliary copy of the boundary surface.
struct SourcePool {
  std::vector<Eigen::Vector3d> points;
  PoolSide side = PoolSide::interior;

  int count() const { return static_cast<int>(points.size()); }
};

// n points on the homothetic copy of `surface` scaled by `scale`; interior
// pools require 0 < scale < 1, exterior pools scale > 1.
SourcePool make_source_pool(const SurfaceGeometry& surface, PoolSide side, double scale, int n);

}  // namespace qmfs
