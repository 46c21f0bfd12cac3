#include "eit/su2.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "eit/rng.hpp"
#include "eit/spherical.hpp"
#include "oracles.hpp"

using namespace eit;
using namespace eit::su2;

namespace {

constexpr double kPi = std::numbers::pi;

/// Generic matrix exponential by scaling and squaring with a Taylor tail;
/// the closed-form rotations are checked against it.
SmallMatrix expm(const SmallMatrix& a) {
  double norm = a.frobenius_norm();
  int scalings = 0;
  while (norm > 0.5) {
    norm *= 0.5;
    ++scalings;
  }
  SmallMatrix x = a * Complex(std::ldexp(1.0, -scalings), 0.0);
  SmallMatrix term = SmallMatrix::identity(a.dim());
  SmallMatrix sum = term;
  for (int n = 1; n < 64; ++n) {
    term = term * x * Complex(1.0 / n, 0.0);
    sum = sum + term;
    if (term.frobenius_norm() < 1e-17 * (1.0 + sum.frobenius_norm())) break;
  }
  for (int i = 0; i < scalings; ++i) sum = sum * sum;
  return sum;
}

SmallMatrix pauli(Axis axis) {
  SmallMatrix s(2);
  if (axis == Axis::x) {
    s.at(0, 1) = 1.0;
    s.at(1, 0) = 1.0;
  } else {
    s.at(0, 0) = 1.0;
    s.at(1, 1) = -1.0;
  }
  return s;
}

SmallMatrix spin_one_generator(Axis axis) {
  const Complex i{0.0, 1.0};
  SmallMatrix j(3);
  if (axis == Axis::x) {
    j.at(1, 2) = -i;
    j.at(2, 1) = i;
  } else {
    j.at(0, 1) = -i;
    j.at(1, 0) = i;
  }
  return j;
}

Vec3 random_unit(SplitMix64& rng) {
  const double z = rng.uniform(-1.0, 1.0);
  const double phi = rng.uniform(0.0, 2.0 * kPi);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(phi), r * std::sin(phi), z};
}

spherical::SphericalTriangle random_triangle(SplitMix64& rng) {
  for (;;) {
    spherical::TriangleVectors v{random_unit(rng), random_unit(rng),
                                 random_unit(rng)};
    if (std::abs(triple(v.n1, v.n2, v.n3)) >= 1e-2) {
      return spherical::triangle_from_vectors(v).triangle;
    }
  }
}

const spherical::SphericalTriangle kOctantTriangle{
    kPi / 2, kPi / 2, kPi / 2, kPi / 2, kPi / 2, kPi / 2, 1.0};

}  // namespace

TEST(Rot, IdentityAtZero) {
  for (Rep rep : {Rep::spin_half, Rep::spin_one}) {
    for (Axis ax : {Axis::x, Axis::z}) {
      const auto m = rot(ax, 0.0, rep);
      const auto id = SmallMatrix::identity(m.dim());
      EXPECT_LE(distance(m, id), 1e-15);
    }
  }
}

TEST(Rot, DoubleCoverMinusIdentity) {
  const auto m = rot(Axis::x, 2.0 * kPi, Rep::spin_half);
  const auto neg = SmallMatrix::identity(2) * Complex(-1.0, 0.0);
  EXPECT_LE(distance(m, neg), 1e-14);
}

TEST(Rot, MatchesGenericExponential) {
  // Spin-1 closed form vs scaling-and-squaring of i*theta*J.
  const double theta = 0.9;
  const auto closed = rot(Axis::x, theta, Rep::spin_one);
  const auto generic =
      expm(spin_one_generator(Axis::x) * Complex(0.0, theta));
  EXPECT_LE(distance(closed, generic), 1e-12);

  const auto closed_half = rot(Axis::z, -1.7, Rep::spin_half);
  const auto generic_half = expm(pauli(Axis::z) * Complex(0.0, -1.7 / 2.0));
  EXPECT_LE(distance(closed_half, generic_half), 1e-12);
}

TEST(Rot, UnitaryAndHomomorphism) {
  SplitMix64 rng(31);
  for (int i = 0; i < 400; ++i) {
    const Rep rep = (i % 2 == 0) ? Rep::spin_half : Rep::spin_one;
    const Axis ax = (i % 4 < 2) ? Axis::x : Axis::z;
    const double t1 = rng.uniform(-6.0, 6.0);
    const double t2 = rng.uniform(-6.0, 6.0);
    const auto m1 = rot(ax, t1, rep);
    const auto id = SmallMatrix::identity(m1.dim());
    EXPECT_LE(distance(m1 * m1.adjoint(), id), 1e-12);
    EXPECT_LE(distance(rot(ax, t1, rep) * rot(ax, t2, rep),
                       rot(ax, t1 + t2, rep)),
              1e-12);
  }
}

TEST(Rot, SpinOneIsRealOrthogonal) {
  SplitMix64 rng(32);
  for (int i = 0; i < 200; ++i) {
    const Axis ax = (i % 2 == 0) ? Axis::x : Axis::z;
    const auto m = rot(ax, rng.uniform(-4.0, 4.0), Rep::spin_one);
    EXPECT_LE(m.max_imag(), 1e-15);
    const Vec3 v = random_unit(rng) * rng.uniform(0.1, 3.0);
    EXPECT_NEAR(norm(m.apply(v)), norm(v), 1e-12);
  }
}

TEST(Hyper, ClosedForms) {
  const auto id = hyper(Axis::z, 0.0);
  EXPECT_LE(distance(id, SmallMatrix::identity(2)), 1e-15);
  const auto z = hyper(Axis::z, 0.5);
  EXPECT_NEAR(z.at(0, 0).real(), std::exp(0.5), 1e-15);
  EXPECT_NEAR(z.at(1, 1).real(), std::exp(-0.5), 1e-15);
  EXPECT_NEAR(std::abs(z.at(0, 1)), 0.0, 1e-15);
  const auto x = hyper(Axis::x, 0.7);
  const auto oracle_x = expm(pauli(Axis::x) * Complex(0.7, 0.0));
  EXPECT_LE(distance(x, oracle_x), 1e-13);
}

TEST(Hyper, UnitDeterminant) {
  SplitMix64 rng(33);
  for (int i = 0; i < 200; ++i) {
    const Axis ax = (i % 2 == 0) ? Axis::x : Axis::z;
    const auto m = hyper(ax, rng.uniform(-2.0, 2.0));
    EXPECT_NEAR(std::abs(m.det2() - Complex(1.0, 0.0)), 0.0, 1e-12);
  }
}

TEST(WordProduct, SingleFactorAndInverse) {
  const RotationWord single{{Axis::x, 0.8, Kind::circular}};
  EXPECT_LE(distance(word_product(single, Rep::spin_one),
                     rot(Axis::x, 0.8, Rep::spin_one)),
            1e-15);
  const RotationWord w{{Axis::x, 0.8, Kind::circular},
                       {Axis::z, -1.1, Kind::circular},
                       {Axis::x, 0.3, Kind::hyperbolic}};
  RotationWord winv;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    winv.push_back({it->axis, -it->angle, it->kind});
  }
  RotationWord both = w;
  both.insert(both.end(), winv.begin(), winv.end());
  EXPECT_LE(distance(word_product(both, Rep::spin_half),
                     SmallMatrix::identity(2)),
            1e-12);
}

TEST(WordProduct, SpinOneHyperbolicUnsupported) {
  const RotationWord w{{Axis::x, 0.5, Kind::hyperbolic}};
  EXPECT_THROW(word_product(w, Rep::spin_one), std::invalid_argument);
  EXPECT_THROW(word_product(RotationWord{}, Rep::spin_half),
               std::invalid_argument);
}

TEST(TriangleIdentity, OctantBothReps) {
  EXPECT_LE(verify_triangle_identity(kOctantTriangle, Rep::spin_half), 1e-12);
  EXPECT_LE(verify_triangle_identity(kOctantTriangle, Rep::spin_one), 1e-12);
}

TEST(TriangleIdentity, DegenerateThinTriangle) {
  // a2 -> 0 collapses the triangle; A1 + A3 -> pi - A2... the identity
  // stays consistent in the limit.
  const auto t = spherical::triangle_from_spectral(1e-5, 0.7, 0.6);
  EXPECT_LE(verify_triangle_identity(t, Rep::spin_half), 1e-10);
  EXPECT_LE(verify_triangle_identity(t, Rep::spin_one), 1e-10);
}

TEST(TriangleIdentity, RandomTrianglesBothReps) {
  SplitMix64 rng(34);
  for (int i = 0; i < 1000; ++i) {
    const auto t = random_triangle(rng);
    EXPECT_LE(verify_triangle_identity(t, Rep::spin_half), 1e-9);
    EXPECT_LE(verify_triangle_identity(t, Rep::spin_one), 1e-9);
  }
}

TEST(TransportCompare, OctantAndNull) {
  const auto c = transport_compare(kOctantTriangle, Rep::spin_one);
  EXPECT_LE(c.residual, 1e-12);
  // Zero-angle word: both paths are the identity.
  spherical::SphericalTriangle null_t{0, 0, 0, 0, kPi, 0, 0};
  const auto cn = transport_compare(null_t, Rep::spin_half);
  EXPECT_LE(distance(cn.path1, SmallMatrix::identity(2)), 1e-14);
  EXPECT_LE(distance(cn.path2, SmallMatrix::identity(2)), 1e-14);
}

TEST(TransportCompare, TransportedVectorsAgree) {
  SplitMix64 rng(35);
  for (int i = 0; i < 300; ++i) {
    const auto t = random_triangle(rng);
    const auto c = transport_compare(t, Rep::spin_one);
    EXPECT_LE(c.residual, 1e-9);
    const Vec3 v = random_unit(rng);
    const Vec3 v1 = c.path1.apply(v);
    const Vec3 v2 = c.path2.apply(v);
    EXPECT_LE(norm(v1 - v2), 1e-9);
  }
}

TEST(YbeSpectral, OneSidedTrivialCases) {
  // u1 = 0 or u3 = 0 reduces both sides to the same two-factor product.
  EXPECT_LE(verify_ybe_spectral(0.0, 0.6, 0.7, Rep::spin_half), 1e-12);
  EXPECT_LE(verify_ybe_spectral(0.0, 0.6, 0.7, Rep::spin_one), 1e-12);
  EXPECT_LE(verify_ybe_spectral(0.5, 0.0, 0.7, Rep::spin_half), 1e-12);
  EXPECT_LE(verify_ybe_spectral(0.5, 0.0, 0.7, Rep::spin_one), 1e-12);
}

TEST(YbeSpectral, SpotCheck) {
  EXPECT_LE(verify_ybe_spectral(0.4, 0.6, 0.7, Rep::spin_half), 1e-9);
  EXPECT_LE(verify_ybe_spectral(0.4, 0.6, 0.7, Rep::spin_one), 1e-9);
}

TEST(YbeSpectral, RandomSpectralSuite) {
  SplitMix64 rng(36);
  for (int i = 0; i < 1000; ++i) {
    const double k = rng.uniform(0.05, 0.95);
    const double K = complete_quarter_period(k);
    const double u1 = rng.uniform(0.02 * K, 0.6 * K);
    const double u3 = rng.uniform(0.02 * K, 0.95 * K - u1);
    const Rep rep = (i % 2 == 0) ? Rep::spin_half : Rep::spin_one;
    EXPECT_LE(verify_ybe_spectral(u1, u3, k, rep), 1e-9);
  }
}
