// Jacobi elliptic functions and elliptic integrals of the first kind for
// real arguments, evaluated by the arithmetic-geometric mean.
//
// All functions take the modulus k (not the parameter m = k^2).  The real
// core covers k in [0,1]; moduli above 1 are reached through the explicit
// reciprocal-modulus transformation.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace eit {

// Shared guard for denominators; operations fail loudly below it.
inline constexpr double kPoleTol = 1e-12;

struct JacobiTriple {
  double u = 0.0;  // argument
  double sn = 0.0;
  double cn = 1.0;
  double dn = 1.0;
};

namespace detail {

inline constexpr double kAgmTol = 1e-15;
inline constexpr int kAgmMaxIter = 64;

// Descending AGM ladder: a[i], c[i] = (a[i-1]-b[i-1])/2.  The common limit
// a[n] gives the quarter period, the c[i] drive the amplitude recursion.
struct AgmChain {
  int n = 0;
  std::array<double, kAgmMaxIter> a{};
  std::array<double, kAgmMaxIter> c{};

  double limit() const { return a[static_cast<std::size_t>(n)]; }
  double quarter_period() const { return std::numbers::pi / (2.0 * limit()); }
};

inline AgmChain agm_chain(double k, double kp) {
  AgmChain ch;
  double a = 1.0;
  double b = kp;
  ch.a[0] = a;
  ch.c[0] = k;
  int i = 0;
  while (i + 1 < kAgmMaxIter) {
    const double c = 0.5 * (a - b);
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    ++i;
    ch.a[static_cast<std::size_t>(i)] = an;
    ch.c[static_cast<std::size_t>(i)] = c;
    a = an;
    b = bn;
    if (std::abs(c) <= kAgmTol * an) break;
  }
  ch.n = i;
  return ch;
}

// am(u,k) for |u| <= K, via the Gauss transformation run backwards
// (Abramowitz & Stegun 16.4).  Principal-branch asin is valid on this
// reduced interval; callers extend by am(u + 2K) = am(u) + pi.
inline double am_reduced(double u, const AgmChain& ch) {
  double phi = std::ldexp(ch.limit() * u, ch.n);
  for (int i = ch.n; i >= 1; --i) {
    const auto idx = static_cast<std::size_t>(i);
    const double s =
        std::clamp(ch.c[idx] * std::sin(phi) / ch.a[idx], -1.0, 1.0);
    phi = 0.5 * (phi + std::asin(s));
  }
  return phi;
}

inline double complementary_modulus(double k) {
  return std::sqrt((1.0 - k) * (1.0 + k));
}

// Carlson's R_F by duplication; agrees with the AGM quarter period to a
// few ulp and handles the incomplete case.
inline double carlson_rf(double x, double y, double z) {
  constexpr double errtol = 8e-4;
  double xt = x, yt = y, zt = z;
  double mu = 0.0, dx = 0.0, dy = 0.0, dz = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double sx = std::sqrt(xt);
    const double sy = std::sqrt(yt);
    const double sz = std::sqrt(zt);
    const double lam = sx * (sy + sz) + sy * sz;
    xt = 0.25 * (xt + lam);
    yt = 0.25 * (yt + lam);
    zt = 0.25 * (zt + lam);
    mu = (xt + yt + zt) / 3.0;
    dx = (mu - xt) / mu;
    dy = (mu - yt) / mu;
    dz = (mu - zt) / mu;
    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) < errtol) break;
  }
  const double e2 = dx * dy - dz * dz;
  const double e3 = dx * dy * dz;
  return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) /
         std::sqrt(mu);
}

struct ReducedArgument {
  double ur = 0.0;     // in [-K, K]
  double half_periods = 0.0;  // integer count of 2K shifts
  AgmChain chain;
  double quarter_period = 0.0;
};

inline ReducedArgument reduce_argument(double u, double k) {
  ReducedArgument r;
  r.chain = agm_chain(k, complementary_modulus(k));
  r.quarter_period = r.chain.quarter_period();
  r.half_periods = std::round(u / (2.0 * r.quarter_period));
  r.ur = u - 2.0 * r.quarter_period * r.half_periods;
  return r;
}

inline void require_finite(double u, const char* what) {
  if (!std::isfinite(u)) {
    throw std::domain_error(std::string(what) + ": argument must be finite");
  }
}

inline void require_modulus(double k, double lo, double hi, const char* what) {
  if (!(k >= lo && k <= hi)) {
    throw std::domain_error(std::string(what) + ": modulus " +
                            std::to_string(k) + " outside [" +
                            std::to_string(lo) + ", " + std::to_string(hi) +
                            "]");
  }
}

}  // namespace detail

/// K(k), the complete elliptic integral of the first kind, by AGM.
/// Diverges logarithmically as k -> 1; k >= 1 and k < 0 are domain errors.
inline double complete_quarter_period(double k) {
  if (!(k >= 0.0)) {
    throw std::domain_error("complete_quarter_period: modulus must be >= 0");
  }
  if (k >= 1.0) {
    throw std::domain_error(
        "complete_quarter_period: integral diverges for modulus >= 1");
  }
  const auto ch = detail::agm_chain(k, detail::complementary_modulus(k));
  return ch.quarter_period();
}

/// Modulus k with its complement k' and quarter period K bundled together.
struct Modulus {
  double k = 0.0;
  double k_complement = 1.0;
  double quarter_period = std::numbers::pi / 2.0;

  static Modulus from_k(double k) {
    detail::require_modulus(k, 0.0, 1.0, "Modulus::from_k");
    Modulus m;
    m.k = k;
    m.k_complement = detail::complementary_modulus(k);
    m.quarter_period = (k < 1.0) ? complete_quarter_period(k)
                                 : std::numeric_limits<double>::infinity();
    return m;
  }
};

/// (sn, cn, dn) at (u, k).  Argument reduction modulo the full period first,
/// then the backward AGM amplitude recursion; dn is reconstructed from
/// k'^2 + k^2 cn^2, which is positive for every real argument.
inline JacobiTriple jacobi(double u, double k) {
  detail::require_finite(u, "jacobi");
  detail::require_modulus(k, 0.0, 1.0, "jacobi");
  if (k == 0.0) return {u, std::sin(u), std::cos(u), 1.0};
  if (k == 1.0) {
    const double sech = 1.0 / std::cosh(u);
    return {u, std::tanh(u), sech, sech};
  }
  const auto r = detail::reduce_argument(u, k);
  const double phi = detail::am_reduced(r.ur, r.chain);
  const double sign = (std::fabs(std::fmod(r.half_periods, 2.0)) > 0.5)
                          ? -1.0
                          : 1.0;
  JacobiTriple t;
  t.u = u;
  t.sn = sign * std::sin(phi);
  t.cn = sign * std::cos(phi);
  const double kp = detail::complementary_modulus(k);
  t.dn = std::sqrt(kp * kp + k * k * t.cn * t.cn);
  return t;
}

/// Continuous monotone branch of the amplitude am(u, k) with am(0) = 0.
inline double amplitude(double u, double k) {
  detail::require_finite(u, "amplitude");
  detail::require_modulus(k, 0.0, 1.0, "amplitude");
  if (k == 0.0) return u;
  if (k == 1.0) return std::atan(std::sinh(u));  // gudermannian, |am| < pi/2
  const auto r = detail::reduce_argument(u, k);
  return detail::am_reduced(r.ur, r.chain) + r.half_periods * std::numbers::pi;
}

/// F(phi, k), the incomplete integral of the first kind, on the same
/// continuous branch as amplitude (so amplitude(F(phi,k),k) == phi).
inline double incomplete_integral(double phi, double k) {
  detail::require_finite(phi, "incomplete_integral");
  if (!(k >= 0.0)) {
    throw std::domain_error("incomplete_integral: modulus must be >= 0");
  }
  if (k > 1.0) {
    throw std::domain_error(
        "incomplete_integral: modulus above 1 unsupported; use the "
        "reciprocal-modulus transformation");
  }
  if (k == 1.0) {
    if (std::abs(phi) >= std::numbers::pi / 2.0) {
      throw std::domain_error(
          "incomplete_integral: diverges at |phi| >= pi/2 for modulus 1");
    }
    return std::asinh(std::tan(phi));
  }
  const double quarter = complete_quarter_period(k);
  const double m = std::round(phi / std::numbers::pi);
  const double phir = phi - std::numbers::pi * m;
  const double s = std::sin(phir);
  const double c = std::cos(phir);
  const double partial =
      s * detail::carlson_rf(c * c, 1.0 - k * k * s * s, 1.0);
  return 2.0 * quarter * m + partial;
}

/// Triple at u1 + u3 assembled from the triples at u1 and u3 through the
/// addition formulas, never by evaluating at u1 + u3 directly.
inline JacobiTriple addition_eval(double u1, double u3, double k) {
  const JacobiTriple a = jacobi(u1, k);
  const JacobiTriple b = jacobi(u3, k);
  const double denom = 1.0 - k * k * a.sn * a.sn * b.sn * b.sn;
  if (denom < kPoleTol) {
    throw std::domain_error("addition_eval: denominator too close to a pole");
  }
  JacobiTriple t;
  t.u = u1 + u3;
  t.sn = (a.sn * b.cn * b.dn + a.cn * a.dn * b.sn) / denom;
  t.cn = (a.cn * b.cn - a.sn * a.dn * b.sn * b.dn) / denom;
  t.dn = (a.dn * b.dn - k * k * a.sn * a.cn * b.sn * b.cn) / denom;
  return t;
}

/// The three real ratios (sn/cn, 1/cn, dn/cn) at (u, k), in terms of which
/// the functions at imaginary argument read sn(iu,k') = i*sc,
/// cn(iu,k') = nc, dn(iu,k') = dc.  The imaginary unit stays with the caller.
struct ImaginaryRatios {
  double sc = 0.0;
  double nc = 1.0;
  double dc = 1.0;
};

inline ImaginaryRatios imaginary_transform(double u, double k) {
  const JacobiTriple t = jacobi(u, k);
  if (std::abs(t.cn) < kPoleTol) {
    throw std::domain_error("imaginary_transform: cn too close to zero");
  }
  return {t.sn / t.cn, 1.0 / t.cn, t.dn / t.cn};
}

/// (sn, cn, dn) at argument U and modulus 1/k, realized on the real core
/// as (k*sn(U/k,k), dn(U/k,k), cn(U/k,k)).
inline JacobiTriple reciprocal_modulus(double U, double k) {
  if (!(k > 0.0)) {
    throw std::domain_error("reciprocal_modulus: modulus must be positive");
  }
  detail::require_modulus(k, 0.0, 1.0, "reciprocal_modulus");
  const JacobiTriple t = jacobi(U / k, k);
  return {U, k * t.sn, t.dn, t.cn};
}

}  // namespace eit
