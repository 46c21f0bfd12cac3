// Spherical triangles: construction from unit vectors or from spectral
// parameters, the dual triad, and residual checks for the cosine laws,
// the sine law and the differential relation between neighbouring arcs.
//
// Conventions: vertices P1, P2, P3 with unit vectors n1, n2, n3; arc a1
// joins n2 and n3 (opposite P1), and angle A1 sits at P1.  All arcs and
// angles live in (0, pi).

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "eit/elliptic.hpp"
#include "eit/vec3.hpp"

namespace eit::spherical {

inline constexpr double kDegenerateTol = 1e-9;

struct TriangleVectors {
  Vec3 n1, n2, n3;
};

struct DualTriad {
  Vec3 n1s, n2s, n3s;
};

struct SphericalTriangle {
  double a1 = 0.0, a2 = 0.0, a3 = 0.0;  // arcs
  double A1 = 0.0, A2 = 0.0, A3 = 0.0;  // angles
  double k_ratio = 0.0;                 // common sine-law ratio sin(A)/sin(a)
};

namespace detail {

inline double clamped_acos(double c) {
  if (c > 1.0 && c < 1.0 + 1e-12) c = 1.0;
  if (c < -1.0 && c > -1.0 - 1e-12) c = -1.0;
  return std::acos(std::clamp(c, -1.0, 1.0));
}

inline void require_unit(const Vec3& v, const char* name) {
  if (std::abs(norm(v) - 1.0) > 1e-14) {
    throw std::domain_error(std::string("TriangleVectors: ") + name +
                            " is not a unit vector");
  }
}

}  // namespace detail

inline void validate(const TriangleVectors& v) {
  detail::require_unit(v.n1, "n1");
  detail::require_unit(v.n2, "n2");
  detail::require_unit(v.n3, "n3");
  if (std::abs(triple(v.n1, v.n2, v.n3)) < kDegenerateTol) {
    throw std::domain_error("TriangleVectors: degenerate (coplanar) triple");
  }
}

/// Unit normals of the triangle's side planes, n1* = n2 x n3 / |n2 x n3| etc.
inline DualTriad dual_triad(const TriangleVectors& v) {
  validate(v);
  return {normalized(cross(v.n2, v.n3)), normalized(cross(v.n3, v.n1)),
          normalized(cross(v.n1, v.n2))};
}

/// Residuals of the laws a triangle must satisfy, evaluated directly from
/// the stored scalars.  Used both as the type invariant and as the oracle
/// for the spectral construction.
struct LawResiduals {
  std::array<double, 3> first_cosine{};   // cos a_i vs the other five
  std::array<double, 3> second_cosine{};  // -cos A_i vs the other five
  std::array<double, 2> sine_ratio{};     // consecutive ratio differences
  double max() const {
    double m = 0.0;
    for (double r : first_cosine) m = std::max(m, std::abs(r));
    for (double r : second_cosine) m = std::max(m, std::abs(r));
    for (double r : sine_ratio) m = std::max(m, std::abs(r));
    return m;
  }
};

inline LawResiduals law_residuals(const SphericalTriangle& t) {
  const double ca[3] = {std::cos(t.a1), std::cos(t.a2), std::cos(t.a3)};
  const double sa[3] = {std::sin(t.a1), std::sin(t.a2), std::sin(t.a3)};
  const double cA[3] = {std::cos(t.A1), std::cos(t.A2), std::cos(t.A3)};
  const double sA[3] = {std::sin(t.A1), std::sin(t.A2), std::sin(t.A3)};
  LawResiduals r;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const int l = (i + 2) % 3;
    r.first_cosine[static_cast<std::size_t>(i)] =
        ca[i] - (ca[j] * ca[l] + cA[i] * sa[j] * sa[l]);
    r.second_cosine[static_cast<std::size_t>(i)] =
        -cA[i] - (cA[j] * cA[l] - ca[i] * sA[j] * sA[l]);
  }
  r.sine_ratio[0] = sA[0] / sa[0] - sA[1] / sa[1];
  r.sine_ratio[1] = sA[1] / sa[1] - sA[2] / sa[2];
  return r;
}

struct TriangleBuild {
  SphericalTriangle triangle;
  DualTriad dual;
  double ratio_spread = 0.0;  // max |sine ratio - k_ratio|, a consistency diagnostic
};

/// Arcs from pairwise dots, angles from the dual triad (cos(A_i - pi) is
/// the dot of the neighbouring duals).
inline TriangleBuild triangle_from_vectors(const TriangleVectors& v) {
  validate(v);
  const DualTriad d = dual_triad(v);
  SphericalTriangle t;
  t.a1 = detail::clamped_acos(dot(v.n2, v.n3));
  t.a2 = detail::clamped_acos(dot(v.n3, v.n1));
  t.a3 = detail::clamped_acos(dot(v.n1, v.n2));
  t.A1 = std::numbers::pi - detail::clamped_acos(dot(d.n2s, d.n3s));
  t.A2 = std::numbers::pi - detail::clamped_acos(dot(d.n3s, d.n1s));
  t.A3 = std::numbers::pi - detail::clamped_acos(dot(d.n1s, d.n2s));
  const double r1 = std::sin(t.A1) / std::sin(t.a1);
  const double r2 = std::sin(t.A2) / std::sin(t.a2);
  const double r3 = std::sin(t.A3) / std::sin(t.a3);
  t.k_ratio = (r1 + r2 + r3) / 3.0;
  TriangleBuild b{t, d,
                  std::max({std::abs(r1 - t.k_ratio), std::abs(r2 - t.k_ratio),
                            std::abs(r3 - t.k_ratio)})};
  return b;
}

/// Residuals of the vector-algebra identities behind the laws: the two
/// quadruple-product expansions, dual-of-dual reconstruction, and the
/// triple product of the dual triad.
struct VectorIdentityReport {
  double quad_cross = 0.0;
  double quad_dot = 0.0;
  double dual_reconstruction = 0.0;
  double dual_triple = 0.0;
  double max() const {
    return std::max({quad_cross, quad_dot, dual_reconstruction, dual_triple});
  }
};

inline VectorIdentityReport verify_vector_identities(
    const TriangleVectors& v) {
  validate(v);
  const std::array<Vec3, 3> n{v.n1, v.n2, v.n3};
  VectorIdentityReport rep;
  // All quadruples from the triad; repeated vectors reduce the identities
  // to Lagrange's identity.
  for (const Vec3& a : n)
    for (const Vec3& b : n)
      for (const Vec3& c : n)
        for (const Vec3& d : n) {
          const Vec3 lhs = cross(cross(a, b), cross(c, d));
          const Vec3 r1 = c * triple(a, b, d) - d * triple(a, b, c);
          const Vec3 r2 = b * triple(a, c, d) - a * triple(b, c, d);
          rep.quad_cross = std::max(
              {rep.quad_cross, norm(lhs - r1), norm(lhs - r2)});
          const double dl = dot(cross(a, b), cross(c, d));
          const double dr = dot(a, c) * dot(b, d) - dot(a, d) * dot(b, c);
          rep.quad_dot = std::max(rep.quad_dot, std::abs(dl - dr));
        }
  const DualTriad d = dual_triad(v);
  const Vec3 back1 = normalized(cross(d.n2s, d.n3s));
  const Vec3 back2 = normalized(cross(d.n3s, d.n1s));
  const Vec3 back3 = normalized(cross(d.n1s, d.n2s));
  // The reconstruction flips with the triple's orientation.
  const double orient = (triple(v.n1, v.n2, v.n3) >= 0.0) ? 1.0 : -1.0;
  rep.dual_reconstruction =
      std::max({norm(back1 * orient - v.n1), norm(back2 * orient - v.n2),
                norm(back3 * orient - v.n3)});
  const double det = triple(v.n1, v.n2, v.n3);
  const double det_dual = triple(d.n1s, d.n2s, d.n3s);
  const double denom = norm(cross(v.n2, v.n3)) * norm(cross(v.n3, v.n1)) *
                       norm(cross(v.n1, v.n2));
  rep.dual_triple = std::abs(det_dual - det * det / denom);
  return rep;
}

/// Triangle from spectral parameters: arcs am(u_i, k), angles am(k u_i, 1/k)
/// with the middle angle on the obtuse branch, u2 = u1 + u3.
inline SphericalTriangle triangle_from_spectral(double u1, double u3,
                                                double k) {
  if (!(k > 0.0 && k < 1.0)) {
    throw std::domain_error(
        "triangle_from_spectral: modulus must lie in (0, 1)");
  }
  const double K = complete_quarter_period(k);
  const double u2 = u1 + u3;
  if (!(u1 > 0.0 && u3 > 0.0 && u2 < K)) {
    throw std::domain_error(
        "triangle_from_spectral: need 0 < u1, u3 and u1 + u3 < K(k); "
        "parameters outside the acute/obtuse regime");
  }
  SphericalTriangle t;
  t.a1 = amplitude(u1, k);
  t.a2 = amplitude(u2, k);
  t.a3 = amplitude(u3, k);
  const auto ang = [k](double u) {
    // am(k u, 1/k) through the reciprocal-modulus triple.
    const JacobiTriple r = reciprocal_modulus(k * u, k);
    return std::atan2(r.sn, r.cn);
  };
  t.A1 = ang(u1);
  t.A2 = std::numbers::pi - ang(u2);  // obtuse branch
  t.A3 = ang(u3);
  const double r1 = std::sin(t.A1) / std::sin(t.a1);
  const double r2 = std::sin(t.A2) / std::sin(t.a2);
  const double r3 = std::sin(t.A3) / std::sin(t.a3);
  t.k_ratio = (r1 + r2 + r3) / 3.0;
  return t;
}

enum class SumRuleRegime {
  difference_a2_obtuse,  // u2 = u1 + u3
  difference_a1_obtuse,  // u1 = u2 + u3
  difference_a3_obtuse,  // u3 = u1 + u2
  sum_all_obtuse,        // u1 + u2 + u3 = 4K
  sum_all_acute,         // u1 + u2 + u3 = 2K (not realized for ratio < 1)
};

struct SpectralCoordinates {
  double u1 = 0.0, u2 = 0.0, u3 = 0.0;
  double residual = 0.0;  // of the regime's sum rule
  SumRuleRegime regime = SumRuleRegime::difference_a2_obtuse;
  double sine_law_residual = 0.0;  // max |sin A_i - k sn(u_i, k)|
};

/// Inverse of the spectral construction: u_i = F(a_i, k_ratio) and the
/// residual of the difference property for the triangle's obtuse-angle
/// pattern.  Triangles with k_ratio >= 1 (octant and beyond) diverge.
inline SpectralCoordinates spectral_coordinates(const SphericalTriangle& t) {
  const double k = t.k_ratio;
  if (!(k > 0.0 && k < 1.0)) {
    throw std::domain_error(
        "spectral_coordinates: sine ratio must lie in (0, 1); the octant "
        "boundary k = 1 diverges");
  }
  SpectralCoordinates s;
  s.u1 = incomplete_integral(t.a1, k);
  s.u2 = incomplete_integral(t.a2, k);
  s.u3 = incomplete_integral(t.a3, k);
  constexpr double half_pi = std::numbers::pi / 2.0;
  const bool obtuse1 = t.A1 > half_pi;
  const bool obtuse2 = t.A2 > half_pi;
  const bool obtuse3 = t.A3 > half_pi;
  if (obtuse2 && !obtuse1 && !obtuse3) {
    s.regime = SumRuleRegime::difference_a2_obtuse;
    s.residual = std::abs(s.u2 - s.u1 - s.u3);
  } else if (obtuse1 && !obtuse2 && !obtuse3) {
    s.regime = SumRuleRegime::difference_a1_obtuse;
    s.residual = std::abs(s.u1 - s.u2 - s.u3);
  } else if (obtuse3 && !obtuse1 && !obtuse2) {
    s.regime = SumRuleRegime::difference_a3_obtuse;
    s.residual = std::abs(s.u3 - s.u1 - s.u2);
  } else if (obtuse1 && obtuse2 && obtuse3) {
    s.regime = SumRuleRegime::sum_all_obtuse;
    s.residual =
        std::abs(s.u1 + s.u2 + s.u3 - 4.0 * complete_quarter_period(k));
  } else if (!obtuse1 && !obtuse2 && !obtuse3) {
    // All-acute needs ratio >= 1, so this is not reachable here; reported
    // against the sum rule anyway.
    s.regime = SumRuleRegime::sum_all_acute;
    s.residual =
        std::abs(s.u1 + s.u2 + s.u3 - 2.0 * complete_quarter_period(k));
  } else {
    throw std::domain_error(
        "spectral_coordinates: exactly two obtuse angles; unsupported "
        "regime");
  }
  double worst = 0.0;
  const double sins[3] = {std::sin(t.A1), std::sin(t.A2), std::sin(t.A3)};
  const double us[3] = {s.u1, s.u2, s.u3};
  for (int i = 0; i < 3; ++i) {
    worst = std::max(worst, std::abs(sins[i] - k * jacobi(us[i], k).sn));
  }
  s.sine_law_residual = worst;
  return s;
}

namespace detail {

// a2 from the third cosine law at fixed a3 and fixed sine ratio k
// (A3 forced acute through cos A3 = sqrt(1 - k^2 sin^2 a3)).
inline double solve_a2(double a1, double a3, double k) {
  const double ksa3 = k * std::sin(a3);
  if (std::abs(ksa3) > 1.0) {
    throw std::domain_error("differential_check: k sin(a3) exceeds 1");
  }
  const double cosA3 = std::sqrt(1.0 - ksa3 * ksa3);
  const double alpha = std::cos(a1);
  const double beta = cosA3 * std::sin(a1);
  const double gamma = std::cos(a3);
  const double radius = std::hypot(alpha, beta);
  if (std::abs(gamma) > radius) {
    throw std::domain_error(
        "differential_check: no triangle with these arcs; family left its "
        "range");
  }
  const double delta = std::atan2(beta, alpha);
  const double off = std::acos(std::clamp(gamma / radius, -1.0, 1.0));
  const double hi = delta + off;
  const double lo = delta - off;
  if (hi > 0.0 && hi < std::numbers::pi) return hi;
  if (lo > 0.0 && lo < std::numbers::pi) return lo;
  throw std::domain_error("differential_check: solved arc outside (0, pi)");
}

}  // namespace detail

/// Residual of da1/cos(A1) + da2/cos(A2) = 0 along the family of triangles
/// with fixed a3 and fixed sine ratio k, with da2/da1 taken by central
/// difference.  Cosines are signed, so the relation is checked in whichever
/// obtuse/acute pattern the family realizes.
inline double differential_check(double a1, double a3_fixed, double k,
                                 double h) {
  if (!(h >= 1e-7 && h <= 1e-4)) {
    throw std::domain_error("differential_check: h must lie in [1e-7, 1e-4]");
  }
  const double a2 = detail::solve_a2(a1, a3_fixed, k);
  const double slope = (detail::solve_a2(a1 + h, a3_fixed, k) -
                        detail::solve_a2(a1 - h, a3_fixed, k)) /
                       (2.0 * h);
  const double cosA1 = (std::cos(a1) - std::cos(a2) * std::cos(a3_fixed)) /
                       (std::sin(a2) * std::sin(a3_fixed));
  const double cosA2 = (std::cos(a2) - std::cos(a3_fixed) * std::cos(a1)) /
                       (std::sin(a3_fixed) * std::sin(a1));
  if (std::abs(cosA1) < 1e-6 || std::abs(cosA2) < 1e-6) {
    throw std::domain_error(
        "differential_check: right angle in the family; derivative "
        "relation singular");
  }
  return std::abs(slope + cosA2 / cosA1);
}

}  // namespace eit::spherical
