#pragma once

#include <Eigen/Dense>
#include <functional>

#include "qmfs/biquat.hpp"

namespace qmfs {

// Complex wave number with alpha != 0 and Im(alpha) >= 0.
class WaveNumber {
 public:
  explicit WaveNumber(cplx value) : value_(value) {
    if (value == cplx{}) throw WaveNumberError("wave number must be nonzero");
    if (value.imag() < 0.0) throw WaveNumberError("wave number must have Im >= 0");
  }

  cplx value() const { return value_; }

 private:
  cplx value_;
};

// selects the D_{+alpha} / D_{-alpha} family
enum class KernelSign { plus, minus };

inline double sign_of(KernelSign s) { return s == KernelSign::plus ? 1.0 : -1.0; }

// Evaluation closer than this to the source is refused; legitimate evaluation
// points are separated from sources by construction.
inline constexpr double kSingularRadius = 1e-10;

// second-order central differences: step 1e-4 * max(1,|x|)
inline double default_fd_step(const Eigen::Vector3d& x) { return 1e-4 * std::max(1.0, x.norm()); }

using BiquatField = std::function<Biquaternion(const Eigen::Vector3d&)>;

// theta_alpha(x) = -exp(i alpha |x|) / (4 pi |x|), the outgoing Helmholtz
// fundamental solution.
cplx theta(const WaveNumber& alpha, const Eigen::Vector3d& x);

// grad theta_alpha = (i alpha x/|x| - x/|x|^2) theta_alpha(x)
ComplexVector3 grad_theta(const WaveNumber& alpha, const Eigen::Vector3d& x);

// K_{+-alpha}(x) = (+-alpha + x/|x|^2 - i alpha x/|x|) theta_alpha(x),
// the fundamental solution of D +- alpha. Sc = +-alpha theta, Vec = -grad theta.
Biquaternion fundamental_solution(const WaveNumber& alpha, KernelSign sign, const Eigen::Vector3d& x);

// D f = sum_k i_k d_k f by central differences (= -div f + grad f0 + rot f)
Biquaternion dirac_fd(const BiquatField& f, const Eigen::Vector3d& x, double h);

// (D +- alpha) f at x, derivative part by central differences
Biquaternion dirac_apply_fd(const WaveNumber& alpha, KernelSign sign, const BiquatField& f,
                            const Eigen::Vector3d& x, double h);

// Magnetic dipole at the origin with moment c:
//   E = rot(c theta_alpha) = grad theta x c
//   H = -(1/(i alpha)) rot E, expanded analytically via rot rot = grad div - Lap
// and (Lap + alpha^2) theta = 0 away from the origin.
EMField dipole_field(const WaveNumber& alpha, const Eigen::Vector3d& moment, const Eigen::Vector3d& x);

}  // namespace qmfs
