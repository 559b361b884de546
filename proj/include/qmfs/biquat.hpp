#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "qmfs/errors.hpp"

namespace qmfs {

using cplx = std::complex<double>;

// Vector from C^3. The pairing dot(u,v) = sum u_k v_k is bilinear, NOT the
// Hermitian inner product; nothing in the algebra conjugates implicitly.
struct ComplexVector3 {
  cplx x{}, y{}, z{};

  ComplexVector3() = default;
  ComplexVector3(cplx x_, cplx y_, cplx z_) : x(x_), y(y_), z(z_) {}
  explicit ComplexVector3(const Eigen::Vector3d& r) : x(r[0]), y(r[1]), z(r[2]) {}

  ComplexVector3 operator+(const ComplexVector3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  ComplexVector3 operator-(const ComplexVector3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  ComplexVector3 operator-() const { return {-x, -y, -z}; }
  ComplexVector3& operator+=(const ComplexVector3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }

  double norm() const { return std::sqrt(std::norm(x) + std::norm(y) + std::norm(z)); }
};

inline ComplexVector3 operator*(cplx s, const ComplexVector3& v) { return {s * v.x, s * v.y, s * v.z}; }
inline ComplexVector3 operator*(double s, const ComplexVector3& v) { return cplx(s) * v; }

inline cplx dot(const ComplexVector3& u, const ComplexVector3& v) {
  return u.x * v.x + u.y * v.y + u.z * v.z;
}

inline ComplexVector3 cross(const ComplexVector3& u, const ComplexVector3& v) {
  return {u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
}

// Element of H(C): complex scalar part plus complex vector part. The complex
// unit i commutes with the quaternionic units i1, i2, i3.
struct Biquaternion {
  cplx s{};
  ComplexVector3 v{};

  Biquaternion() = default;
  Biquaternion(cplx scalar, ComplexVector3 vector) : s(scalar), v(vector) {}
  Biquaternion(cplx a0, cplx a1, cplx a2, cplx a3) : s(a0), v(a1, a2, a3) {}

  static Biquaternion scalar(cplx a0) { return {a0, {}}; }
  static Biquaternion pure(const ComplexVector3& w) { return {cplx{}, w}; }
  // basis elements i0..i3
  static Biquaternion unit(int k) {
    Biquaternion q;
    if (k == 0)
      q.s = 1.0;
    else if (k == 1)
      q.v.x = 1.0;
    else if (k == 2)
      q.v.y = 1.0;
    else
      q.v.z = 1.0;
    return q;
  }

  cplx component(int k) const {
    switch (k) {
      case 0: return s;
      case 1: return v.x;
      case 2: return v.y;
      default: return v.z;
    }
  }

  Biquaternion operator+(const Biquaternion& o) const { return {s + o.s, v + o.v}; }
  Biquaternion operator-(const Biquaternion& o) const { return {s - o.s, v - o.v}; }
  Biquaternion operator-() const { return {-s, -v}; }
  Biquaternion& operator+=(const Biquaternion& o) {
    s += o.s;
    v += o.v;
    return *this;
  }

  double norm() const { return std::sqrt(std::norm(s) + std::norm(v.x) + std::norm(v.y) + std::norm(v.z)); }
  double max_abs_component() const {
    return std::max(std::max(std::abs(s), std::abs(v.x)), std::max(std::abs(v.y), std::abs(v.z)));
  }
};

inline cplx sc(const Biquaternion& a) { return a.s; }
inline ComplexVector3 vec(const Biquaternion& a) { return a.v; }

inline Biquaternion operator*(cplx s, const Biquaternion& a) { return {s * a.s, s * a.v}; }
inline Biquaternion operator*(double s, const Biquaternion& a) { return cplx(s) * a; }

// a.b = a0 b0 - <a,b> + [a x b] + a0 b + b0 a
inline Biquaternion qmul(const Biquaternion& a, const Biquaternion& b) {
  return {a.s * b.s - dot(a.v, b.v), cross(a.v, b.v) + a.s * b.v + b.s * a.v};
}

inline Biquaternion operator*(const Biquaternion& a, const Biquaternion& b) { return qmul(a, b); }

// conjugate: scalar part kept, vector part negated
inline Biquaternion qconj(const Biquaternion& a) { return {a.s, -a.v}; }

// a.conj(a) is always the scalar a0^2 + a1^2 + a2^2 + a3^2 (bilinear square).
inline cplx quadratic_form(const Biquaternion& a) {
  return a.s * a.s + a.v.x * a.v.x + a.v.y * a.v.y + a.v.z * a.v.z;
}

// scale-aware threshold for detecting the zero-divisor set
inline double zero_divisor_tolerance(const Biquaternion& a) {
  double m = a.max_abs_component();
  return 1e-12 * (1.0 + m * m);
}

// a is a zero divisor iff a != 0 and a.conj(a) = 0; the zero element itself
// is classified as neither invertible nor a zero divisor.
inline bool is_zero_divisor(const Biquaternion& a) {
  if (a.norm() == 0.0) return false;
  return std::abs(quadratic_form(a)) <= zero_divisor_tolerance(a);
}

inline Biquaternion qinv(const Biquaternion& a) {
  cplx q = quadratic_form(a);
  if (std::abs(q) <= zero_divisor_tolerance(a))
    throw ZeroDivisorError("element has no inverse (a * conj(a) ~ 0)");
  return (1.0 / q) * qconj(a);
}

// E/H pair, the physical side of the phi/psi transform
struct EMField {
  ComplexVector3 E, H;
};

}  // namespace qmfs
