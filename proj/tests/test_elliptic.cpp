#include "eit/elliptic.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "eit/rng.hpp"
#include "oracles.hpp"

using eit::addition_eval;
using eit::amplitude;
using eit::complete_quarter_period;
using eit::incomplete_integral;
using eit::jacobi;
using eit::JacobiTriple;
using eit::Modulus;
using eit::reciprocal_modulus;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(QuarterPeriod, CircularLimit) {
  EXPECT_NEAR(complete_quarter_period(0.0), kPi / 2.0, 1e-15);
}

TEST(QuarterPeriod, DomainErrors) {
  EXPECT_THROW(complete_quarter_period(1.0), std::domain_error);
  EXPECT_THROW(complete_quarter_period(1.5), std::domain_error);
  EXPECT_THROW(complete_quarter_period(-0.1), std::domain_error);
}

TEST(QuarterPeriod, MatchesQuadratureOracle) {
  const double k = 0.8;
  const double expected = oracle::complete_integral_quad(k);
  EXPECT_NEAR(complete_quarter_period(k), expected, 1e-12);
}

TEST(Modulus, Invariants) {
  for (double k : {0.0, 0.3, 0.8, 0.99}) {
    const Modulus m = Modulus::from_k(k);
    EXPECT_NEAR(m.k * m.k + m.k_complement * m.k_complement, 1.0, 1e-14);
    EXPECT_NEAR(m.quarter_period, complete_quarter_period(k), 0.0);
  }
  EXPECT_TRUE(std::isinf(Modulus::from_k(1.0).quarter_period));
}

TEST(Jacobi, IdentityAtZero) {
  for (double k : {0.0, 0.2, 0.7, 1.0}) {
    const JacobiTriple t = jacobi(0.0, k);
    EXPECT_NEAR(t.sn, 0.0, 1e-15);
    EXPECT_NEAR(t.cn, 1.0, 1e-15);
    EXPECT_NEAR(t.dn, 1.0, 1e-15);
  }
}

TEST(Jacobi, CircularDegeneration) {
  for (double u : {-2.3, 0.4, 1.9}) {
    const JacobiTriple t = jacobi(u, 0.0);
    EXPECT_NEAR(t.sn, std::sin(u), 1e-15);
    EXPECT_NEAR(t.cn, std::cos(u), 1e-15);
    EXPECT_NEAR(t.dn, 1.0, 1e-15);
  }
}

TEST(Jacobi, HyperbolicDegeneration) {
  for (double u : {-1.2, 0.3, 2.5}) {
    const JacobiTriple t = jacobi(u, 1.0);
    EXPECT_NEAR(t.sn, std::tanh(u), 1e-15);
    EXPECT_NEAR(t.cn, 1.0 / std::cosh(u), 1e-15);
    EXPECT_NEAR(t.dn, 1.0 / std::cosh(u), 1e-15);
  }
}

TEST(Jacobi, QuarterPeriodValues) {
  for (double k : {0.2, 0.6, 0.95}) {
    const double K = complete_quarter_period(k);
    const double kp = std::sqrt((1.0 - k) * (1.0 + k));
    const JacobiTriple t = jacobi(K, k);
    EXPECT_NEAR(t.sn, 1.0, 1e-12);
    EXPECT_NEAR(t.cn, 0.0, 1e-12);
    EXPECT_NEAR(t.dn, kp, 1e-12);
  }
}

TEST(Jacobi, HalfQuarterPeriodClosedForm) {
  // sn(K/2) = 1/sqrt(1+k'), cn(K/2) = sqrt(k'/(1+k')), dn(K/2) = sqrt(k').
  for (double k : {0.3, 0.8}) {
    const double kp = std::sqrt((1.0 - k) * (1.0 + k));
    const double K = complete_quarter_period(k);
    const JacobiTriple t = jacobi(K / 2.0, k);
    EXPECT_NEAR(t.sn, 1.0 / std::sqrt(1.0 + kp), 1e-13);
    EXPECT_NEAR(t.cn, std::sqrt(kp / (1.0 + kp)), 1e-13);
    EXPECT_NEAR(t.dn, std::sqrt(kp), 1e-13);
  }
}

TEST(Jacobi, MatchesInversionOracle) {
  const auto t = jacobi(1.3, 0.6);
  const auto o = oracle::jacobi_by_inversion(1.3, 0.6);
  EXPECT_NEAR(t.sn, o.sn, 1e-12);
  EXPECT_NEAR(t.cn, o.cn, 1e-12);
  EXPECT_NEAR(t.dn, o.dn, 1e-12);
}

TEST(Jacobi, RejectsNonFiniteArgument) {
  EXPECT_THROW(jacobi(std::nan(""), 0.5), std::domain_error);
  EXPECT_THROW(jacobi(INFINITY, 0.5), std::domain_error);
  EXPECT_THROW(jacobi(0.4, 1.2), std::domain_error);
}

TEST(Jacobi, PythagoreanAndPeriodicityProperty) {
  eit::SplitMix64 rng(2024);
  for (int i = 0; i < 4000; ++i) {
    const double k = rng.uniform(0.01, 0.99);
    const double K = complete_quarter_period(k);
    const double u = rng.uniform(-4.0 * K, 4.0 * K);
    const JacobiTriple t = jacobi(u, k);
    EXPECT_NEAR(t.sn * t.sn + t.cn * t.cn, 1.0, 1e-12);
    EXPECT_NEAR(t.dn * t.dn + k * k * t.sn * t.sn, 1.0, 1e-12);
    EXPECT_GE(t.dn, std::sqrt((1.0 - k) * (1.0 + k)) - 1e-12);
    // Full period 4K.
    const JacobiTriple p = jacobi(u + 4.0 * K, k);
    EXPECT_NEAR(p.sn, t.sn, 1e-11);
    EXPECT_NEAR(p.cn, t.cn, 1e-11);
  }
}

TEST(Jacobi, DerivativesMatchFiniteDifferences) {
  eit::SplitMix64 rng(7);
  const double h = 1e-6;
  for (int i = 0; i < 300; ++i) {
    const double k = rng.uniform(0.05, 0.95);
    const double u = rng.uniform(-3.0, 3.0);
    const JacobiTriple t = jacobi(u, k);
    const double dsn =
        oracle::central_diff([&](double x) { return jacobi(x, k).sn; }, u, h);
    const double dcn =
        oracle::central_diff([&](double x) { return jacobi(x, k).cn; }, u, h);
    const double ddn =
        oracle::central_diff([&](double x) { return jacobi(x, k).dn; }, u, h);
    EXPECT_NEAR(dsn, t.cn * t.dn, 1e-6);
    EXPECT_NEAR(dcn, -t.sn * t.dn, 1e-6);
    EXPECT_NEAR(ddn, -k * k * t.sn * t.cn, 1e-6);
  }
}

TEST(Amplitude, EndpointValues) {
  for (double k : {0.2, 0.5, 0.9}) {
    EXPECT_NEAR(amplitude(0.0, k), 0.0, 1e-15);
    EXPECT_NEAR(amplitude(complete_quarter_period(k), k), kPi / 2.0, 1e-12);
  }
}

TEST(Amplitude, MatchesOracleWithQuadrantCorrection) {
  const double got = amplitude(2.0, 0.3);
  const double expected = oracle::amplitude_bisect(2.0, 0.3);
  EXPECT_NEAR(got, expected, 1e-11);
}

TEST(Amplitude, MonotoneContinuousBranch) {
  for (double k : {0.1, 0.6, 0.97}) {
    double prev = amplitude(-8.0, k);
    for (double u = -7.75; u <= 8.0; u += 0.25) {
      const double cur = amplitude(u, k);
      EXPECT_GT(cur, prev);
      prev = cur;
    }
  }
}

TEST(IncompleteIntegral, TrivialValues) {
  for (double k : {0.0, 0.4, 0.9}) {
    EXPECT_NEAR(incomplete_integral(0.0, k), 0.0, 1e-15);
    EXPECT_NEAR(incomplete_integral(kPi / 2.0, k), complete_quarter_period(k),
                1e-13);
  }
}

TEST(IncompleteIntegral, RoundTripThroughAmplitude) {
  const double u = incomplete_integral(0.7, 0.4);
  EXPECT_NEAR(amplitude(u, 0.4), 0.7, 1e-11);
}

TEST(IncompleteIntegral, AmplitudeInverseProperty) {
  eit::SplitMix64 rng(99);
  for (int i = 0; i < 2000; ++i) {
    const double k = rng.uniform(0.01, 0.99);
    const double phi = rng.uniform(0.0, kPi / 2.0);
    EXPECT_NEAR(amplitude(incomplete_integral(phi, k), k), phi, 1e-11);
  }
}

TEST(IncompleteIntegral, ModulusOneBranch) {
  EXPECT_NEAR(incomplete_integral(0.5, 1.0), std::asinh(std::tan(0.5)), 1e-14);
  EXPECT_THROW(incomplete_integral(kPi / 2.0, 1.0), std::domain_error);
  EXPECT_THROW(incomplete_integral(0.3, 1.4), std::domain_error);
}

TEST(AdditionEval, AdditiveIdentity) {
  const auto t = addition_eval(0.83, 0.0, 0.45);
  const auto ref = jacobi(0.83, 0.45);
  EXPECT_NEAR(t.sn, ref.sn, 1e-14);
  EXPECT_NEAR(t.cn, ref.cn, 1e-14);
  EXPECT_NEAR(t.dn, ref.dn, 1e-14);
}

TEST(AdditionEval, TrigAddition) {
  const auto t = addition_eval(0.7, 0.4, 0.0);
  EXPECT_NEAR(t.sn, std::sin(1.1), 1e-14);
  EXPECT_NEAR(t.cn, std::cos(1.1), 1e-14);
  EXPECT_NEAR(t.dn, 1.0, 1e-14);
}

TEST(AdditionEval, MatchesDirectEvaluation) {
  const auto t = addition_eval(0.9, 0.4, 0.7);
  const auto ref = jacobi(1.3, 0.7);
  EXPECT_NEAR(t.sn, ref.sn, 1e-10);
  EXPECT_NEAR(t.cn, ref.cn, 1e-10);
  EXPECT_NEAR(t.dn, ref.dn, 1e-10);
}

TEST(AdditionEval, ConsistencyProperty) {
  eit::SplitMix64 rng(11);
  for (int i = 0; i < 4000; ++i) {
    const double k = rng.uniform(0.01, 0.99);
    const double K = complete_quarter_period(k);
    const double u1 = rng.uniform(-2.0 * K, 2.0 * K);
    const double u3 = rng.uniform(-2.0 * K, 2.0 * K);
    const auto t = addition_eval(u1, u3, k);
    const auto ref = jacobi(u1 + u3, k);
    EXPECT_NEAR(t.sn, ref.sn, 1e-10);
    EXPECT_NEAR(t.cn, ref.cn, 1e-10);
    EXPECT_NEAR(t.dn, ref.dn, 1e-10);
  }
}

TEST(ImaginaryTransform, TrivialAndDegenerate) {
  const auto r0 = eit::imaginary_transform(0.0, 0.6);
  EXPECT_NEAR(r0.sc, 0.0, 1e-15);
  EXPECT_NEAR(r0.nc, 1.0, 1e-15);
  EXPECT_NEAR(r0.dc, 1.0, 1e-15);
  const auto r = eit::imaginary_transform(0.8, 0.0);
  EXPECT_NEAR(r.sc, std::tan(0.8), 1e-13);
  EXPECT_NEAR(r.nc, 1.0 / std::cos(0.8), 1e-13);
  EXPECT_NEAR(r.dc, 1.0 / std::cos(0.8), 1e-13);
}

TEST(ImaginaryTransform, RatiosOfJacobi) {
  const auto t = jacobi(0.8, 0.5);
  const auto r = eit::imaginary_transform(0.8, 0.5);
  EXPECT_NEAR(r.sc, t.sn / t.cn, 1e-14);
  EXPECT_NEAR(r.nc, 1.0 / t.cn, 1e-14);
  EXPECT_NEAR(r.dc, t.dn / t.cn, 1e-14);
}

TEST(ImaginaryTransform, NearPoleError) {
  const double K = complete_quarter_period(0.5);
  EXPECT_THROW(eit::imaginary_transform(K, 0.5), std::domain_error);
}

TEST(ReciprocalModulus, TrivialCases) {
  const auto t0 = reciprocal_modulus(0.0, 0.7);
  EXPECT_NEAR(t0.sn, 0.0, 1e-15);
  EXPECT_NEAR(t0.cn, 1.0, 1e-15);
  EXPECT_NEAR(t0.dn, 1.0, 1e-15);
  // Self-reciprocal modulus.
  const auto t1 = reciprocal_modulus(0.9, 1.0);
  const auto ref = jacobi(0.9, 1.0);
  EXPECT_NEAR(t1.sn, ref.sn, 1e-14);
  EXPECT_NEAR(t1.cn, ref.cn, 1e-14);
  EXPECT_NEAR(t1.dn, ref.dn, 1e-14);
  EXPECT_THROW(reciprocal_modulus(0.5, 0.0), std::domain_error);
}

TEST(ReciprocalModulus, TransformedArgument) {
  const auto t = reciprocal_modulus(0.6, 0.8);
  const auto ref = jacobi(0.75, 0.8);
  EXPECT_NEAR(t.sn, 0.8 * ref.sn, 1e-13);
  EXPECT_NEAR(t.cn, ref.dn, 1e-13);
  EXPECT_NEAR(t.dn, ref.cn, 1e-13);
}

TEST(ReciprocalModulus, RoundTripProperty) {
  // Applying the transformation twice returns the original triple:
  // sn(u,k) = (1/k) sn(k u, 1/k), and reciprocal_modulus gives the
  // modulus-1/k triple at argument k*u directly.
  eit::SplitMix64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    const double k = rng.uniform(0.05, 1.0);
    const double u = rng.uniform(-2.0, 2.0);
    const auto direct = jacobi(u, k);
    const auto rec = reciprocal_modulus(k * u, k);
    EXPECT_NEAR(direct.sn, rec.sn / k, 1e-11);
    EXPECT_NEAR(direct.dn, rec.cn, 1e-11);
    EXPECT_NEAR(direct.cn, rec.dn, 1e-11);
  }
}
