#include "qmfs/chiral.hpp"

namespace qmfs {

namespace {

constexpr cplx kI{0.0, 1.0};

// principal square root steered into the closed upper half-plane
cplx upper_half_sqrt(cplx z) {
  cplx s = std::sqrt(z);
  if (s.imag() < 0.0 || (s.imag() == 0.0 && s.real() < 0.0)) s = -s;
  return s;
}

cplx medium_root(cplx product, const char* what) {
  if (product == cplx{}) throw BranchError(std::string(what) + " vanishes");
  return upper_half_sqrt(product);
}

}  // namespace

MediumWaveNumbers derive_wave_numbers(const MediumParams& medium) {
  cplx alpha = medium.omega * medium_root(medium.epsilon * medium.mu, "epsilon * mu");
  if (alpha == cplx{}) throw BranchError("derived wave number vanishes");
  if (alpha.imag() < 0.0) throw BranchError("no branch gives Im(alpha) >= 0");

  WaveNumber a(alpha);
  if (medium.beta == 0.0) {
    // exact degeneracy: both polarizations share the wave number
    return {a, {a, a}};
  }

  cplx d1 = 1.0 + alpha * medium.beta;
  cplx d2 = 1.0 - alpha * medium.beta;
  if (std::abs(d1) < 1e-12 || std::abs(d2) < 1e-12)
    throw ChiralSingularityError("1 +- alpha*beta vanishes");

  // WaveNumber construction re-checks Im >= 0 for both derived values
  return {a, {WaveNumber(alpha / d1), WaveNumber(alpha / d2)}};
}

PhiPsi fields_to_phi_psi(const ComplexVector3& E, const ComplexVector3& H) {
  return {Biquaternion::pure(E + kI * H), Biquaternion::pure(E - kI * H)};
}

EMField recover_EH(const Biquaternion& phi, const Biquaternion& psi) {
  double tol = 1e-8 * (1.0 + std::max(phi.norm(), psi.norm()));
  if (std::abs(phi.s) > tol || std::abs(psi.s) > tol)
    throw NonVectorialError("phi/psi must be purely vectorial");
  return {0.5 * (phi.v + psi.v), (0.5 / kI) * (phi.v - psi.v)};
}

EMField scale_physical_fields(const ComplexVector3& e_tilde, const ComplexVector3& h_tilde,
                              const MediumParams& medium) {
  cplx sqrt_mu = medium_root(medium.mu, "mu");
  cplx sqrt_eps = medium_root(medium.epsilon, "epsilon");
  return {(-1.0 / sqrt_mu) * e_tilde, (1.0 / sqrt_eps) * h_tilde};
}

}  // namespace qmfs
