#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <limits>

#include "qmfs/geometry.hpp"

using namespace qmfs;

namespace {

double nearest_neighbor_ratio(const std::vector<SurfaceSample>& samples) {
  double dmin = std::numeric_limits<double>::infinity();
  double dmax = 0.0;
  for (size_t i = 0; i < samples.size(); ++i) {
    double nn = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < samples.size(); ++j) {
      if (i == j) continue;
      nn = std::min(nn, (samples[i].point - samples[j].point).norm());
    }
    dmin = std::min(dmin, nn);
    dmax = std::max(dmax, nn);
  }
  return dmax / dmin;
}

}  // namespace

TEST_CASE("sphere samples: radial normals, exact area weights") {
  auto samples = sample_surface(SurfaceGeometry::sphere(Eigen::Vector3d::Zero(), 1.0), 100);
  REQUIRE(samples.size() == 100);
  double total = 0.0;
  for (const auto& s : samples) {
    CHECK(std::abs(s.point.norm() - 1.0) < 1e-14);
    CHECK((s.normal - s.point).norm() < 1e-14);
    total += s.weight;
  }
  CHECK(std::abs(total - 4.0 * M_PI) < 1e-3 * 4.0 * M_PI);

  auto more = sample_surface(SurfaceGeometry::sphere(Eigen::Vector3d::Zero(), 1.0), 400);
  total = 0.0;
  for (const auto& s : more) total += s.weight;
  CHECK(std::abs(total - 4.0 * M_PI) < 1e-3 * 4.0 * M_PI);
}

TEST_CASE("tangent frames are right-handed orthonormal") {
  for (const auto& surface :
       {SurfaceGeometry::sphere({0.5, -1.0, 2.0}, 2.0),
        SurfaceGeometry::ellipsoid(Eigen::Vector3d::Zero(), {1.0, 1.0, 2.0})}) {
    for (const auto& s : sample_surface(surface, 150)) {
      CHECK(std::abs(s.normal.norm() - 1.0) < 1e-12);
      CHECK(std::abs(s.tangent1.norm() - 1.0) < 1e-12);
      CHECK(std::abs(s.tangent2.norm() - 1.0) < 1e-12);
      CHECK(std::abs(s.tangent1.dot(s.normal)) < 1e-12);
      CHECK(std::abs(s.tangent2.dot(s.normal)) < 1e-12);
      CHECK(std::abs(s.tangent1.dot(s.tangent2)) < 1e-12);
      CHECK(s.tangent1.cross(s.tangent2).dot(s.normal) > 0.0);
    }
  }
}

TEST_CASE("ellipsoid normals follow the implicit-function gradient") {
  auto samples = sample_surface(SurfaceGeometry::ellipsoid(Eigen::Vector3d::Zero(), {1.0, 1.0, 2.0}), 100);
  for (const auto& s : samples) {
    Eigen::Vector3d expect(s.point.x(), s.point.y(), s.point.z() / 4.0);
    expect.normalize();
    CHECK((s.normal - expect).norm() < 1e-12);
  }
}

TEST_CASE("ellipsoid weights integrate the surface area") {
  SurfaceGeometry e = SurfaceGeometry::ellipsoid(Eigen::Vector3d::Zero(), {1.0, 1.0, 2.0});
  auto reference = sample_surface(e, 200000);
  double area_ref = 0.0;
  for (const auto& s : reference) area_ref += s.weight;

  auto coarse = sample_surface(e, 2000);
  double area = 0.0;
  for (const auto& s : coarse) area += s.weight;
  CHECK(std::abs(area - area_ref) < 5e-3 * area_ref);
}

TEST_CASE("sampling is deterministic") {
  SurfaceGeometry s = SurfaceGeometry::sphere(Eigen::Vector3d::Zero(), 1.0);
  auto a = sample_surface(s, 64, 0.5);
  auto b = sample_surface(s, 64, 0.5);
  REQUIRE(a.size() == b.size());
  CHECK(std::memcmp(a.data(), b.data(), a.size() * sizeof(SurfaceSample)) == 0);
}

TEST_CASE("quasi-uniformity of the spiral") {
  for (int m : {20, 50, 100, 400}) {
    auto samples = sample_surface(SurfaceGeometry::sphere(Eigen::Vector3d::Zero(), 1.0), m);
    CHECK(nearest_neighbor_ratio(samples) <= 3.0);
  }
}

TEST_CASE("spiral offset separates point sets") {
  SurfaceGeometry s = SurfaceGeometry::sphere(Eigen::Vector3d::Zero(), 1.0);
  auto plain = sample_surface(s, 40, 0.0);
  auto shifted = sample_surface(s, 40, 0.5);
  double closest = std::numeric_limits<double>::infinity();
  for (const auto& a : plain)
    for (const auto& b : shifted) closest = std::min(closest, (a.point - b.point).norm());
  CHECK(closest > 1e-3);
}

TEST_CASE("source pools") {
  SurfaceGeometry gamma = SurfaceGeometry::sphere(Eigen::Vector3d::Zero(), 1.0);

  SourcePool inner = make_source_pool(gamma, PoolSide::interior, 0.15, 10);
  REQUIRE(inner.count() == 10);
  for (const auto& y : inner.points) {
    CHECK(std::abs(y.norm() - 0.15) < 1e-14);
    CHECK(gamma.implicit_value(y) < 0.0);
  }

  SourcePool outer = make_source_pool(gamma, PoolSide::exterior, 2.0, 5);
  for (const auto& y : outer.points) {
    CHECK(std::abs(y.norm() - 2.0) < 1e-14);
    CHECK(gamma.implicit_value(y) > 0.0);
  }

  // pairwise distinct
  for (int i = 0; i < inner.count(); ++i)
    for (int j = i + 1; j < inner.count(); ++j)
      CHECK((inner.points[i] - inner.points[j]).norm() > 1e-6);

  CHECK_THROWS_AS(make_source_pool(gamma, PoolSide::interior, 1.0, 4), ScaleError);
  CHECK_THROWS_AS(make_source_pool(gamma, PoolSide::interior, 1.3, 4), ScaleError);
  CHECK_THROWS_AS(make_source_pool(gamma, PoolSide::exterior, 1.0, 4), ScaleError);
  CHECK_THROWS_AS(make_source_pool(gamma, PoolSide::exterior, 0.7, 4), ScaleError);
}

TEST_CASE("parametric surfaces") {
  ParametricSurface shifted_sphere{
      [](const Eigen::Vector3d& u) { return Eigen::Vector3d(1.0, 0.0, 0.0) + 2.0 * u; },
      [](const Eigen::Vector3d& u) { return u; }};
  auto samples = sample_surface(SurfaceGeometry::parametric(shifted_sphere), 80);
  double total = 0.0;
  for (const auto& s : samples) {
    CHECK(std::abs((s.point - Eigen::Vector3d(1, 0, 0)).norm() - 2.0) < 1e-12);
    total += s.weight;
  }
  CHECK(std::abs(total - 16.0 * M_PI) < 1e-2 * 16.0 * M_PI);

  ParametricSurface no_normal{[](const Eigen::Vector3d& u) { return u; }, {}};
  CHECK_THROWS_AS((void)sample_surface(SurfaceGeometry::parametric(no_normal), 16),
                  UnsupportedSurfaceError);
}

TEST_CASE("argument guards") {
  SurfaceGeometry s = SurfaceGeometry::sphere(Eigen::Vector3d::Zero(), 1.0);
  CHECK_THROWS_AS((void)sample_surface(s, 3), std::invalid_argument);
  CHECK_THROWS_AS(SurfaceGeometry::sphere(Eigen::Vector3d::Zero(), -1.0), std::invalid_argument);
  CHECK_THROWS_AS(SurfaceGeometry::ellipsoid(Eigen::Vector3d::Zero(), {1.0, 0.0, 1.0}),
                  std::invalid_argument);
}
