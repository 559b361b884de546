#include "qmfs/verify.hpp"

#include <cmath>

namespace qmfs {

namespace {

constexpr cplx kI{0.0, 1.0};

Biquaternion laplacian_fd(const BiquatField& f, const Eigen::Vector3d& x, double h) {
  Biquaternion out = -6.0 * f(x);
  for (int k = 0; k < 3; ++k) {
    Eigen::Vector3d e = Eigen::Vector3d::Zero();
    e[k] = h;
    out += f(x + e) + f(x - e);
  }
  return (1.0 / (h * h)) * out;
}

double relative(double residual, double scale) { return residual / std::max(scale, 1e-300); }

}  // namespace

double check_factorization(const WaveNumber& alpha, const BiquatField& f, const FdCheckConfig& cfg) {
  const cplx a = alpha.value();
  double worst = 0.0;
  for (const auto& x : cfg.points) {
    Biquaternion helm = laplacian_fd(f, x, cfg.step) + (a * a) * f(x);
    // D_{-a} then D_{+a}, and the swapped order
    BiquatField inner_minus = [&](const Eigen::Vector3d& y) { return dirac_fd(f, y, cfg.step) - a * f(y); };
    BiquatField inner_plus = [&](const Eigen::Vector3d& y) { return dirac_fd(f, y, cfg.step) + a * f(y); };
    Biquaternion comp1 = dirac_fd(inner_minus, x, cfg.step) + a * inner_minus(x);
    Biquaternion comp2 = dirac_fd(inner_plus, x, cfg.step) - a * inner_plus(x);
    double scale = f(x).norm();
    worst = std::max(worst, relative((helm + comp1).norm(), scale));
    worst = std::max(worst, relative((helm + comp2).norm(), scale));
  }
  return worst;
}

MtResiduals check_moisil_theodoresco(const BiquatField& f, const FdCheckConfig& cfg) {
  MtResiduals res;
  for (const auto& x : cfg.points) {
    Biquaternion df = dirac_fd(f, x, cfg.step);
    // Sc(Df) = -div f; Vec(Df) = grad f0 + rot f
    res.div_residual = std::max(res.div_residual, std::abs(df.s));
    res.grad_rot_residual = std::max(res.grad_rot_residual, df.v.norm());
  }
  return res;
}

CauchyReproduction cauchy_reproduce(const WaveNumber& alpha, KernelSign sign,
                                    const Eigen::Vector3d& source,
                                    std::span<const SurfaceSample> samples, const Eigen::Vector3d& x) {
  if (samples.size() < 16) throw QuadratureError("too few surface samples for the Cauchy quadrature");

  // f(x) = -K_alpha f(x) with K_alpha f(x) = -int K(x-y) n(y) f(y) dGamma, so
  // the reproduction is the plain weighted sum of K(x-y) n(y) f(y).
  Biquaternion acc;
  for (const auto& s : samples) {
    Biquaternion kernel = fundamental_solution(alpha, sign, x - s.point);
    Biquaternion normal = Biquaternion::pure(ComplexVector3(s.normal));
    Biquaternion trace = fundamental_solution(alpha, sign, s.point - source);
    acc += s.weight * qmul(qmul(kernel, normal), trace);
  }

  CauchyReproduction out;
  out.reproduced = acc;
  out.reference = fundamental_solution(alpha, sign, x - source);
  out.error = (acc - out.reference).norm() / out.reference.norm();
  return out;
}

std::vector<DecayRow> radiation_decay(const BiquatField& f, KernelSign sign,
                                      std::span<const double> radii, int directions) {
  std::vector<SurfaceSample> dirs =
      sample_surface(SurfaceGeometry::sphere(Eigen::Vector3d::Zero(), 1.0), directions);

  std::vector<DecayRow> table;
  table.reserve(radii.size());
  for (double r : radii) {
    DecayRow row{r, 0.0};
    for (const auto& d : dirs) {
      Eigen::Vector3d x = r * d.point;
      Biquaternion factor = Biquaternion::scalar(1.0) +
                            sign_of(sign) * kI * Biquaternion::pure(ComplexVector3(d.point));
      row.max_product = std::max(row.max_product, r * qmul(factor, f(x)).norm());
    }
    table.push_back(row);
  }
  return table;
}

}  // namespace qmfs
