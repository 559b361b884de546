#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "qmfs/biquat.hpp"
#include "qmfs/geometry.hpp"
#include "qmfs/kernels.hpp"

namespace qmfs {

struct FdCheckConfig {
  double step = 1e-3;
  std::vector<Eigen::Vector3d> points;
  double tolerance = 1e-3;
};

// max relative residual of (Lap + alpha^2) f + D_alpha D_{-alpha} f over the
// configured points, nested central differences, both composition orders
double check_factorization(const WaveNumber& alpha, const BiquatField& f, const FdCheckConfig& cfg);

struct MtResiduals {
  double div_residual = 0;       // max |div f|
  double grad_rot_residual = 0;  // max |grad f0 + rot f|
};

// residuals of the two lines of the Moisil-Theodoresco system, absolute
MtResiduals check_moisil_theodoresco(const BiquatField& f, const FdCheckConfig& cfg);

struct CauchyReproduction {
  Biquaternion reproduced;
  Biquaternion reference;
  double error = 0;  // relative
};

// Quadrature check of the exterior Cauchy representation: for the trace of
// f = K(alpha, sign, . - source) on the sampled surface, the integral
// -K_alpha f (plain weighted summation) must reproduce f at x outside.
CauchyReproduction cauchy_reproduce(const WaveNumber& alpha, KernelSign sign,
                                    const Eigen::Vector3d& source,
                                    std::span<const SurfaceSample> samples, const Eigen::Vector3d& x);

struct DecayRow {
  double radius = 0;
  double max_product = 0;  // max over directions of r * ||(1 +- i x/|x|) f(x)||
};

// decay table for the quaternionic radiation conditions; `sign` picks the
// (1 + i x/|x|) or (1 - i x/|x|) factor
std::vector<DecayRow> radiation_decay(const BiquatField& f, KernelSign sign,
                                      std::span<const double> radii, int directions);

}  // namespace qmfs
