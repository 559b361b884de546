#pragma once

#include "qmfs/biquat.hpp"
#include "qmfs/kernels.hpp"

namespace qmfs {

// Homogeneous isotropic chiral medium. beta = 0 is the achiral case.
struct MediumParams {
  double omega = 1.0;   // frequency, rad/s
  cplx epsilon = 1.0;   // complex permittivity
  cplx mu = 1.0;        // complex permeability
  double beta = 0.0;    // chirality measure, length units
};

// the two circular-polarization wave numbers
struct WaveNumberPair {
  WaveNumber alpha1;  // alpha / (1 + alpha beta)
  WaveNumber alpha2;  // alpha / (1 - alpha beta)
};

struct MediumWaveNumbers {
  WaveNumber alpha;  // omega sqrt(eps mu), branch with Im >= 0
  WaveNumberPair pair;
};

MediumWaveNumbers derive_wave_numbers(const MediumParams& medium);

struct PhiPsi {
  Biquaternion phi;  // E + iH
  Biquaternion psi;  // E - iH
};

// both outputs are purely vectorial
PhiPsi fields_to_phi_psi(const ComplexVector3& E, const ComplexVector3& H);

// E = (phi + psi)/2, H = (phi - psi)/(2i); inputs must be purely vectorial
EMField recover_EH(const Biquaternion& phi, const Biquaternion& psi);

// physical-to-working scaling: Etilde = -sqrt(mu) E, Htilde = sqrt(eps) H
EMField scale_physical_fields(const ComplexVector3& e_tilde, const ComplexVector3& h_tilde,
                              const MediumParams& medium);

}  // namespace qmfs
