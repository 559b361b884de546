#include "qmfs/kernels.hpp"

#include <cmath>

namespace qmfs {

namespace {

double checked_radius(const Eigen::Vector3d& x) {
  double r = x.norm();
  if (r <= kSingularRadius) throw SingularPointError("evaluation point coincides with the source");
  return r;
}

constexpr cplx kI{0.0, 1.0};

}  // namespace

cplx theta(const WaveNumber& alpha, const Eigen::Vector3d& x) {
  double r = checked_radius(x);
  return -std::exp(kI * alpha.value() * r) / (4.0 * M_PI * r);
}

ComplexVector3 grad_theta(const WaveNumber& alpha, const Eigen::Vector3d& x) {
  double r = checked_radius(x);
  cplx factor = (kI * alpha.value() / r - 1.0 / (r * r)) * theta(alpha, x);
  return factor * ComplexVector3(x);
}

Biquaternion fundamental_solution(const WaveNumber& alpha, KernelSign sign, const Eigen::Vector3d& x) {
  double r = checked_radius(x);
  cplx t = theta(alpha, x);
  cplx radial = (1.0 / (r * r) - kI * alpha.value() / r) * t;  // -grad coefficient
  return {sign_of(sign) * alpha.value() * t, radial * ComplexVector3(x)};
}

Biquaternion dirac_fd(const BiquatField& f, const Eigen::Vector3d& x, double h) {
  Biquaternion out;
  for (int k = 0; k < 3; ++k) {
    Eigen::Vector3d e = Eigen::Vector3d::Zero();
    e[k] = h;
    Biquaternion df = (0.5 / h) * (f(x + e) - f(x - e));
    out += qmul(Biquaternion::unit(k + 1), df);
  }
  return out;
}

Biquaternion dirac_apply_fd(const WaveNumber& alpha, KernelSign sign, const BiquatField& f,
                            const Eigen::Vector3d& x, double h) {
  return dirac_fd(f, x, h) + (sign_of(sign) * alpha.value()) * f(x);
}

EMField dipole_field(const WaveNumber& alpha, const Eigen::Vector3d& moment, const Eigen::Vector3d& x) {
  double r = checked_radius(x);
  cplx a = alpha.value();
  cplx t = theta(alpha, x);

  ComplexVector3 g = grad_theta(alpha, x);
  ComplexVector3 c(moment);
  ComplexVector3 E = cross(g, c);

  // rot E = grad<c, grad theta> + alpha^2 theta c; the Hessian of the radial
  // profile g(r) = theta gives grad<c,grad theta> = g'' (x.c) x/r^2 + g' (c/r - (x.c) x/r^3)
  cplx gp = (kI * a - 1.0 / r) * t;
  cplx gpp = (-a * a - 2.0 * kI * a / r + 2.0 / (r * r)) * t;
  cplx xc = x.dot(moment);
  ComplexVector3 xv(x);
  ComplexVector3 hess_c = (gpp * xc / (r * r)) * xv + gp * ((1.0 / r) * c - (xc / (r * r * r)) * xv);
  ComplexVector3 rotE = hess_c + (a * a * t) * c;
  ComplexVector3 H = (-1.0 / (kI * a)) * rotE;
  return {E, H};
}

}  // namespace qmfs
