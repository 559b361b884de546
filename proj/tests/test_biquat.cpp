#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qmfs/biquat.hpp"

using namespace qmfs;

namespace {

// Independent multiplication oracle: direct expansion over the structure
// constants of the basis products i_p i_q, kept separate from the vector-form
// implementation in the library.
struct BasisProduct {
  int index;
  double sign;
};

constexpr BasisProduct kTable[4][4] = {
    {{0, +1}, {1, +1}, {2, +1}, {3, +1}},
    {{1, +1}, {0, -1}, {3, +1}, {2, -1}},
    {{2, +1}, {3, -1}, {0, -1}, {1, +1}},
    {{3, +1}, {2, +1}, {1, -1}, {0, -1}},
};

Biquaternion qmul_structure_constants(const Biquaternion& a, const Biquaternion& b) {
  cplx out[4] = {};
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q) {
      BasisProduct e = kTable[p][q];
      out[e.index] += e.sign * a.component(p) * b.component(q);
    }
  return {out[0], out[1], out[2], out[3]};
}

std::mt19937 rng(20240811);

cplx random_cplx() {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double re = u(rng), im = u(rng);
  return {re, im};
}

Biquaternion random_biquat() { return {random_cplx(), random_cplx(), random_cplx(), random_cplx()}; }

double rel_diff(const Biquaternion& a, const Biquaternion& b) {
  return (a - b).norm() / (1.0 + std::max(a.norm(), b.norm()));
}

const cplx I{0.0, 1.0};

}  // namespace

TEST_CASE("unit multiplication table") {
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q) {
      Biquaternion prod = qmul(Biquaternion::unit(p), Biquaternion::unit(q));
      BasisProduct e = kTable[p][q];
      for (int k = 0; k < 4; ++k) {
        cplx want = k == e.index ? cplx(e.sign) : cplx(0);
        CHECK(prod.component(k) == want);
      }
    }
}

TEST_CASE("product examples") {
  CHECK(rel_diff(qmul(Biquaternion::unit(1), Biquaternion::unit(2)), Biquaternion::unit(3)) == 0.0);

  Biquaternion a = random_biquat();
  CHECK(rel_diff(qmul(a, Biquaternion::unit(0)), a) == 0.0);

  // (1 + i1)(1 + i2) = 1 + i1 + i2 + i3
  Biquaternion lhs = qmul(Biquaternion(1, 1, 0, 0), Biquaternion(1, 0, 1, 0));
  CHECK(rel_diff(lhs, Biquaternion(1, 1, 1, 1)) < 1e-15);
}

TEST_CASE("vector-form product matches structure-constant expansion") {
  for (int t = 0; t < 500; ++t) {
    Biquaternion a = random_biquat(), b = random_biquat();
    CHECK(rel_diff(qmul(a, b), qmul_structure_constants(a, b)) < 1e-14);
  }
}

TEST_CASE("associativity") {
  for (int t = 0; t < 1000; ++t) {
    Biquaternion a = random_biquat(), b = random_biquat(), c = random_biquat();
    CHECK(rel_diff(qmul(qmul(a, b), c), qmul(a, qmul(b, c))) < 1e-12);
  }
}

TEST_CASE("conjugation") {
  CHECK(rel_diff(qconj(Biquaternion::unit(1)), -Biquaternion::unit(1)) == 0.0);
  CHECK(rel_diff(qconj(Biquaternion(3, 0, 2, 0)), Biquaternion(3, 0, -2, 0)) == 0.0);

  Biquaternion a = random_biquat();
  CHECK(rel_diff(qconj(qconj(a)), a) == 0.0);

  // anti-automorphism: conj(ab) = conj(b) conj(a)
  for (int t = 0; t < 1000; ++t) {
    Biquaternion x = random_biquat(), y = random_biquat();
    CHECK(rel_diff(qconj(qmul(x, y)), qmul(qconj(y), qconj(x))) < 1e-12);
  }
}

TEST_CASE("a conj(a) is purely scalar and equals the quadratic form") {
  for (int t = 0; t < 1000; ++t) {
    Biquaternion a = random_biquat();
    Biquaternion prod = qmul(a, qconj(a));
    CHECK(prod.v.norm() < 1e-13 * (1.0 + prod.norm()));
    CHECK(std::abs(prod.s - quadratic_form(a)) < 1e-13 * (1.0 + std::abs(prod.s)));
  }
}

TEST_CASE("zero divisors") {
  Biquaternion zd(1.0, I, 0.0, 0.0);  // 1 + i*i1, quadratic form 1 + i^2 = 0
  CHECK(std::abs(quadratic_form(zd)) < 1e-15);
  CHECK(is_zero_divisor(zd));
  CHECK(!is_zero_divisor(Biquaternion::unit(1)));
  CHECK(!is_zero_divisor(Biquaternion{}));
}

TEST_CASE("inverses") {
  CHECK(rel_diff(qinv(Biquaternion::unit(1)), -Biquaternion::unit(1)) < 1e-15);
  CHECK(rel_diff(qinv(Biquaternion::scalar(2.0)), Biquaternion::scalar(0.5)) < 1e-15);
  CHECK(rel_diff(qinv(Biquaternion(1, 1, 0, 0)), Biquaternion(0.5, -0.5, 0, 0)) < 1e-15);

  for (int t = 0; t < 100; ++t) {
    Biquaternion a = random_biquat();
    if (is_zero_divisor(a)) continue;
    CHECK(rel_diff(qmul(a, qinv(a)), Biquaternion::unit(0)) < 1e-12);
  }

  CHECK_THROWS_AS((void)qinv(Biquaternion(1.0, I, 0.0, 0.0)), ZeroDivisorError);
}

TEST_CASE("bilinear dot and cross") {
  ComplexVector3 e1(1, 0, 0), e2(0, 1, 0), e3(0, 0, 1);
  CHECK(dot(e1, e2) == cplx(0));
  CHECK((cross(e1, e2) - e3).norm() == 0.0);

  // bilinear, not Hermitian: <(i,0,0),(i,0,0)> = -1
  ComplexVector3 w(I, 0, 0);
  CHECK(std::abs(dot(w, w) - cplx(-1.0)) < 1e-15);
}

TEST_CASE("scalar/vector split reconstructs the element") {
  Biquaternion a = random_biquat();
  Biquaternion rebuilt = Biquaternion::scalar(sc(a)) + Biquaternion::pure(vec(a));
  CHECK(rel_diff(rebuilt, a) == 0.0);

  ComplexVector3 v(random_cplx(), random_cplx(), random_cplx());
  Biquaternion embedded = Biquaternion::pure(v);
  CHECK(embedded.s == cplx(0));
  CHECK((vec(embedded) - v).norm() == 0.0);
}
