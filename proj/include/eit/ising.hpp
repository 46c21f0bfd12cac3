// Ising Boltzmann-weight parameterizations and the star-triangle relation
// as an exact 2x2 matrix identity,
//
//   exp(L3* sx) exp(K2 sz) exp(L1* sx) = exp(K1 sz) exp(L2* sx) exp(K3 sz),
//
// with the subscript-2 couplings carrying the sum parameter v2 = v1 + v3.
// Couplings are recovered from their sinh values (asinh is stable and keeps
// cosh^2 - sinh^2 = 1 exact by construction).

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "eit/elliptic.hpp"
#include "eit/su2.hpp"

namespace eit::ising {

struct CouplingSet {
  double K1 = 0.0, K2 = 0.0, K3 = 0.0;
  double L1s = 0.0, L2s = 0.0, L3s = 0.0;  // dual couplings L*_i
};

struct SpectralParams {
  double u1 = 0.0;
  double u3 = 0.0;
  double k = 0.0;
  double u2() const { return u1 + u3; }
};

struct AngleCouplings {
  double Khat1 = 0.0, Khat2 = 0.0, Khat3 = 0.0;
  double Lhat1 = 0.0, Lhat2 = 0.0, Lhat3 = 0.0;
};

namespace detail {

inline void require_spectral_domain(double v1, double v3, double vmax,
                                    const char* what) {
  if (!(v1 > 0.0 && v3 > 0.0 && v1 + v3 < vmax)) {
    throw std::domain_error(std::string(what) +
                            ": need 0 < v1, v3 and v1 + v3 inside the "
                            "quarter period");
  }
}

}  // namespace detail

/// Couplings from the complementary-modulus parameterization:
/// cosh 2K = 1/cn(v,k'), sinh 2K = sn/cn, cosh 2L* = dn/cn,
/// sinh 2L* = k sn/cn, for v in {v1, v1+v3, v3}.
inline CouplingSet couplings_from_v(double v1, double v3, double k) {
  if (!(k > 0.0 && k < 1.0)) {
    throw std::domain_error("couplings_from_v: modulus must lie in (0,1)");
  }
  const double kp = std::sqrt((1.0 - k) * (1.0 + k));
  detail::require_spectral_domain(v1, v3, complete_quarter_period(kp),
                                  "couplings_from_v");
  const auto one = [&](double v, double& K, double& Ls) {
    const JacobiTriple t = jacobi(v, kp);
    if (t.cn < kPoleTol) {
      throw std::domain_error("couplings_from_v: cn(v,k') at a pole");
    }
    K = 0.5 * std::asinh(t.sn / t.cn);
    Ls = 0.5 * std::asinh(k * t.sn / t.cn);
  };
  CouplingSet c;
  one(v1, c.K1, c.L1s);
  one(v1 + v3, c.K2, c.L2s);
  one(v3, c.K3, c.L3s);
  return c;
}

/// Couplings from the crossing parameterization:
/// cosh 2K = 1/cn(u), sinh 2K = sn/cn, cosh 2L* = 1/sn(K-u),
/// sinh 2L* = cn(K-u)/sn(K-u), all at modulus k, for u in {u1, u1+u3, u3}.
inline CouplingSet couplings_crossing(double u1, double u3, double k) {
  if (!(k > 0.0 && k < 1.0)) {
    throw std::domain_error("couplings_crossing: modulus must lie in (0,1)");
  }
  const double K = complete_quarter_period(k);
  detail::require_spectral_domain(u1, u3, K, "couplings_crossing");
  const auto one = [&](double u, double& Kc, double& Ls) {
    const JacobiTriple t = jacobi(u, k);
    const JacobiTriple r = jacobi(K - u, k);
    if (t.cn < kPoleTol || r.sn < kPoleTol) {
      throw std::domain_error(
          "couplings_crossing: argument at 0 or at the quarter period");
    }
    Kc = 0.5 * std::asinh(t.sn / t.cn);
    Ls = 0.5 * std::asinh(r.cn / r.sn);
  };
  CouplingSet c;
  one(u1, c.K1, c.L1s);
  one(u1 + u3, c.K2, c.L2s);
  one(u3, c.K3, c.L3s);
  return c;
}

struct StarTriangleResult {
  double residual = 0.0;          // Frobenius norm of LHS - RHS
  std::complex<double> scalar{1.0, 0.0};  // least-squares lambda in LHS = lambda RHS
};

/// Builds both sides of the star-triangle relation and reports the strict
/// difference plus the least-squares scalar, so a proportional-but-not-equal
/// outcome is visible rather than an opaque failure.
inline StarTriangleResult star_triangle_residual(const CouplingSet& c) {
  using su2::Axis;
  using su2::hyper;
  const su2::SmallMatrix lhs =
      hyper(Axis::x, c.L3s) * hyper(Axis::z, c.K2) * hyper(Axis::x, c.L1s);
  const su2::SmallMatrix rhs =
      hyper(Axis::z, c.K1) * hyper(Axis::x, c.L2s) * hyper(Axis::z, c.K3);
  StarTriangleResult r;
  r.residual = su2::distance(lhs, rhs);
  std::complex<double> num = 0.0;
  double den = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      num += std::conj(rhs.at(i, j)) * lhs.at(i, j);
      den += std::norm(rhs.at(i, j));
    }
  r.scalar = num / den;
  return r;
}

/// Residual of the difference property V(v3) U(v1+v3) V(v1) =
/// U(v1) V(v1+v3) U(v3) with U(v) = exp(K(v) sz), V(v) = exp(L*(v) sx)
/// from the complementary-modulus parameterization.  middle_shift perturbs
/// the middle parameter away from v1+v3 (sensitivity control).
inline double verify_difference_property(double v1, double v3, double k,
                                         double middle_shift = 0.0) {
  if (!(k > 0.0 && k < 1.0)) {
    throw std::domain_error(
        "verify_difference_property: modulus must lie in (0,1)");
  }
  const double kp = std::sqrt((1.0 - k) * (1.0 + k));
  const double Kp = complete_quarter_period(kp);
  if (!(v1 >= 0.0 && v3 >= 0.0 && v1 + v3 + std::abs(middle_shift) < Kp)) {
    throw std::domain_error(
        "verify_difference_property: parameters outside the domain");
  }
  const auto coupling_K = [&](double v) {
    const JacobiTriple t = jacobi(v, kp);
    if (t.cn < kPoleTol) {
      throw std::domain_error("verify_difference_property: pole in cn");
    }
    return 0.5 * std::asinh(t.sn / t.cn);
  };
  const auto coupling_L = [&](double v) {
    const JacobiTriple t = jacobi(v, kp);
    if (t.cn < kPoleTol) {
      throw std::domain_error("verify_difference_property: pole in cn");
    }
    return 0.5 * std::asinh(k * t.sn / t.cn);
  };
  using su2::Axis;
  using su2::hyper;
  const auto U = [&](double v) { return hyper(Axis::z, coupling_K(v)); };
  const auto V = [&](double v) { return hyper(Axis::x, coupling_L(v)); };
  const double mid = v1 + v3 + middle_shift;
  return su2::distance(V(v3) * U(mid) * V(v1), U(v1) * V(mid) * U(v3));
}

/// Angle form of the couplings: 2 Khat_i = am(u_i, k), 2 Lhat_i =
/// am(k u_i, 1/k), with u2 = u1 + u3.  Matches the spectral triangle as
/// 2 Khat_i = a_i, 2 Lhat_i = A_i for i = 1, 3 and 2 Lhat_2 = pi - A_2.
inline AngleCouplings angle_form(double u1, double u3, double k) {
  if (!(k > 0.0 && k < 1.0)) {
    throw std::domain_error("angle_form: modulus must lie in (0,1)");
  }
  detail::require_spectral_domain(u1, u3, complete_quarter_period(k),
                                  "angle_form");
  const auto am_rec = [k](double u) {
    const JacobiTriple r = reciprocal_modulus(k * u, k);
    return std::atan2(r.sn, r.cn);
  };
  AngleCouplings a;
  a.Khat1 = 0.5 * amplitude(u1, k);
  a.Khat2 = 0.5 * amplitude(u1 + u3, k);
  a.Khat3 = 0.5 * amplitude(u3, k);
  a.Lhat1 = 0.5 * am_rec(u1);
  a.Lhat2 = 0.5 * am_rec(u1 + u3);
  a.Lhat3 = 0.5 * am_rec(u3);
  return a;
}

}  // namespace eit::ising
