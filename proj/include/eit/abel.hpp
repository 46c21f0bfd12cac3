// Divisor flow on the hyperelliptic curve y^2 = f_{2n-2}(x): the
// partial-fraction identities behind it, the flow itself
// (dx_i/dt = x_i sqrt(f(x_i)) / F'(x_i) with signed square roots), its two
// conserved quantities, the reciprocal transformation x -> 1/x, and the
// n = 3 elliptic specialization.
//
// Every divisor point carries an explicit branch sign s_i for sqrt(f(x_i));
// the sign flips when a trajectory reaches a root of f.  The integrator
// detects a crossing by the sign of f in a trial step and bisects the step
// fraction down to the branch point before flipping.

#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "eit/elliptic.hpp"

namespace eit::abel {

inline constexpr int kMaxPoints = 12;
inline constexpr double kMinPointGap = 1e-9;
inline constexpr double kCollisionTol = 1e-6;

/// Coefficients A_0 .. A_{2n-2} of f_{2n-2}(x).
class HyperPoly {
 public:
  HyperPoly(int n, std::vector<double> coeffs)
      : n_(n), coeffs_(std::move(coeffs)) {
    if (n_ < 3 || n_ > kMaxPoints) {
      throw std::domain_error("HyperPoly: need 3 <= n <= 12");
    }
    if (coeffs_.size() != static_cast<std::size_t>(2 * n_ - 1)) {
      throw std::domain_error(
          "HyperPoly: coefficient list must have length 2n-1");
    }
    for (double a : coeffs_) {
      if (!std::isfinite(a)) {
        throw std::domain_error("HyperPoly: coefficients must be finite");
      }
    }
  }

  int n() const { return n_; }
  int degree() const { return 2 * n_ - 2; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  bool degenerate_leading() const { return coeffs_.back() == 0.0; }

  double scale() const {
    double m = 0.0;
    for (double a : coeffs_) m = std::max(m, std::abs(a));
    return m;
  }

  double operator()(double x) const {
    double r = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      r = r * x + *it;
    }
    return r;
  }

  double derivative(double x) const {
    double r = 0.0;
    for (std::size_t j = coeffs_.size() - 1; j >= 1; --j) {
      r = r * x + static_cast<double>(j) * coeffs_[j];
    }
    return r;
  }

  /// Coefficient-reversed polynomial g(xi) = xi^{2n-2} f(1/xi).
  HyperPoly reversed() const {
    std::vector<double> rev(coeffs_.rbegin(), coeffs_.rend());
    return HyperPoly(n_, std::move(rev));
  }

 private:
  int n_;
  std::vector<double> coeffs_;
};

/// Divisor points x_1..x_n with branch signs s_i = sign of sqrt(f(x_i)).
class Divisor {
 public:
  Divisor(std::vector<double> points, std::vector<int> signs)
      : x_(std::move(points)), s_(std::move(signs)) {
    if (x_.size() < 3 || x_.size() > kMaxPoints) {
      throw std::domain_error("Divisor: need 3 <= n <= 12 points");
    }
    if (s_.size() != x_.size()) {
      throw std::domain_error("Divisor: one sign per point");
    }
    for (int s : s_) {
      if (s != 1 && s != -1) {
        throw std::domain_error("Divisor: signs must be +-1");
      }
    }
    for (double x : x_) {
      if (!std::isfinite(x)) {
        throw std::domain_error("Divisor: points must be finite");
      }
    }
    if (min_gap() < kMinPointGap) {
      throw std::domain_error("Divisor: coincident points");
    }
  }

  int n() const { return static_cast<int>(x_.size()); }
  const std::vector<double>& points() const { return x_; }
  const std::vector<int>& signs() const { return s_; }

  double min_gap() const {
    double g = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < x_.size(); ++i)
      for (std::size_t j = i + 1; j < x_.size(); ++j)
        g = std::min(g, std::abs(x_[i] - x_[j]));
    return g;
  }

  /// F(x) = prod (x - x_i).
  double F(double x) const {
    double p = 1.0;
    for (double xi : x_) p *= (x - xi);
    return p;
  }

  /// F'(x_i) = prod_{j != i} (x_i - x_j).
  double Fprime_at(int i) const {
    double p = 1.0;
    for (int j = 0; j < n(); ++j) {
      if (j != i) {
        p *= (x_[static_cast<std::size_t>(i)] -
              x_[static_cast<std::size_t>(j)]);
      }
    }
    return p;
  }

 private:
  std::vector<double> x_;
  std::vector<int> s_;
};

/// Sum x_i^k / F'(x_i); equals delta_{k,n-1} by the partial-fraction
/// theorem for x^k / F(x).
inline double moment_sum(const Divisor& d, int k) {
  if (k < 0 || k > d.n() - 1) {
    throw std::domain_error("moment_sum: need 0 <= k <= n-1");
  }
  double s = 0.0;
  for (int i = 0; i < d.n(); ++i) {
    s += std::pow(d.points()[static_cast<std::size_t>(i)], k) /
         d.Fprime_at(i);
  }
  return s;
}

namespace detail {

inline void require_away_from_poles(const Divisor& d, double x,
                                    const char* what) {
  for (double xi : d.points()) {
    if (std::abs(x - xi) < 1e-6) {
      throw std::domain_error(std::string(what) +
                              ": evaluation point too near a divisor point");
    }
  }
}

}  // namespace detail

/// | x^k/F(x) - sum_i x_i^k / (F'(x_i)(x - x_i)) |.
inline double partial_fraction_residual(const Divisor& d, int k, double x) {
  if (k < 0 || k > d.n() - 1) {
    throw std::domain_error("partial_fraction_residual: need 0 <= k <= n-1");
  }
  detail::require_away_from_poles(d, x, "partial_fraction_residual");
  double sum = 0.0;
  for (int i = 0; i < d.n(); ++i) {
    const double xi = d.points()[static_cast<std::size_t>(i)];
    sum += std::pow(xi, k) / (d.Fprime_at(i) * (x - xi));
  }
  return std::abs(std::pow(x, k) / d.F(x) - sum);
}

/// Residual of the double-pole expansion of x^2 f(x)/F(x)^2 - A_{2n-2}:
/// coefficients a_i from the squared residue, b_i by analytic
/// differentiation of the deflated rational function.
inline double double_pole_residual(const HyperPoly& f, const Divisor& d,
                                   double x) {
  if (f.n() != d.n()) {
    throw std::domain_error("double_pole_residual: size mismatch");
  }
  detail::require_away_from_poles(d, x, "double_pole_residual");
  const int n = d.n();
  double rhs = 0.0;
  for (int i = 0; i < n; ++i) {
    const double xi = d.points()[static_cast<std::size_t>(i)];
    const double fp = d.Fprime_at(i);
    const double fi = f(xi);
    double S = 0.0;  // d/dx_i log F'(x_i)
    for (int j = 0; j < n; ++j) {
      if (j != i) {
        S += 1.0 / (xi - d.points()[static_cast<std::size_t>(j)]);
      }
    }
    const double a = xi * xi * fi / (fp * fp);
    const double b =
        (2.0 * xi * fi + xi * xi * f.derivative(xi) - 2.0 * xi * xi * fi * S) /
        (fp * fp);
    rhs += a / ((x - xi) * (x - xi)) + b / (x - xi);
  }
  const double Fx = d.F(x);
  const double lhs = x * x * f(x) / (Fx * Fx) - f.coeffs().back();
  return std::abs(lhs - rhs);
}

/// dx_i/dt = s_i x_i sqrt(f(x_i)) / F'(x_i).
inline std::vector<double> flow_rhs(const HyperPoly& f, const Divisor& d) {
  if (f.n() != d.n()) {
    throw std::domain_error("flow_rhs: size mismatch");
  }
  if (d.min_gap() < kCollisionTol) {
    throw std::domain_error("flow_rhs: divisor points about to collide");
  }
  std::vector<double> v(static_cast<std::size_t>(d.n()));
  const double fscale = std::max(1.0, f.scale());
  for (int i = 0; i < d.n(); ++i) {
    const double xi = d.points()[static_cast<std::size_t>(i)];
    const double fi = f(xi);
    if (fi < -1e-12 * fscale) {
      throw std::domain_error("flow_rhs: f negative at a divisor point "
                              "(branch left the real sheet)");
    }
    v[static_cast<std::size_t>(i)] = d.signs()[static_cast<std::size_t>(i)] *
                                     xi * std::sqrt(std::max(fi, 0.0)) /
                                     d.Fprime_at(i);
  }
  return v;
}

/// (sum_i s_i x_i sqrt(f(x_i))/F'(x_i))^2 - A_{2n-3} p - A_{2n-2} p^2
/// with p = sum x_i.
inline double conserved_Q1(const HyperPoly& f, const Divisor& d) {
  if (f.n() != d.n()) {
    throw std::domain_error("conserved_Q1: size mismatch");
  }
  const double fscale = std::max(1.0, f.scale());
  double sum = 0.0, p = 0.0;
  for (int i = 0; i < d.n(); ++i) {
    const double xi = d.points()[static_cast<std::size_t>(i)];
    const double fi = f(xi);
    if (fi < -1e-12 * fscale) {
      throw std::domain_error("conserved_Q1: f negative at a divisor point");
    }
    sum += d.signs()[static_cast<std::size_t>(i)] * xi *
           std::sqrt(std::max(fi, 0.0)) / d.Fprime_at(i);
    p += xi;
  }
  const auto& A = f.coeffs();
  return sum * sum - A[A.size() - 2] * p - A.back() * p * p;
}

/// (sum_i s_i sqrt(f(x_i))/(x_i^2 F'(x_i)))^2 (x_1..x_n)^2
/// - A_1 sum(1/x_i) - A_0 (sum 1/x_i)^2.
inline double conserved_Q2(const HyperPoly& f, const Divisor& d) {
  if (f.n() != d.n()) {
    throw std::domain_error("conserved_Q2: size mismatch");
  }
  const double fscale = std::max(1.0, f.scale());
  double sum = 0.0, prod = 1.0, q = 0.0;
  for (int i = 0; i < d.n(); ++i) {
    const double xi = d.points()[static_cast<std::size_t>(i)];
    if (std::abs(xi) < 1e-9) {
      throw std::domain_error("conserved_Q2: divisor point at zero");
    }
    const double fi = f(xi);
    if (fi < -1e-12 * fscale) {
      throw std::domain_error("conserved_Q2: f negative at a divisor point");
    }
    sum += d.signs()[static_cast<std::size_t>(i)] *
           std::sqrt(std::max(fi, 0.0)) / (xi * xi * d.Fprime_at(i));
    prod *= xi;
    q += 1.0 / xi;
  }
  const auto& A = f.coeffs();
  return sum * sum * prod * prod - A[1] * q - A[0] * q * q;
}

struct ReciprocalSystem {
  HyperPoly g;
  Divisor xi;
};

/// x -> 1/x: coefficients reverse, points invert, and the branch sign picks
/// up sign(x_i)^{n-1} so that sqrt(g(xi_i)) = xi_i^{n-1} sqrt(f(x_i)) stays
/// on the same sheet.
inline ReciprocalSystem reciprocal_system(const HyperPoly& f,
                                          const Divisor& d) {
  if (f.n() != d.n()) {
    throw std::domain_error("reciprocal_system: size mismatch");
  }
  const int n = d.n();
  std::vector<double> xi(static_cast<std::size_t>(n));
  std::vector<int> s(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double x = d.points()[static_cast<std::size_t>(i)];
    if (std::abs(x) < 1e-9) {
      throw std::domain_error("reciprocal_system: divisor point at zero");
    }
    xi[static_cast<std::size_t>(i)] = 1.0 / x;
    const bool odd_power = ((n - 1) % 2) != 0;
    s[static_cast<std::size_t>(i)] =
        d.signs()[static_cast<std::size_t>(i)] *
        ((x < 0.0 && odd_power) ? -1 : 1);
  }
  return {f.reversed(), Divisor(std::move(xi), std::move(s))};
}

struct EllipticIdentityResiduals {
  // The two asserted vanishing combinations (the square roots of the
  // conserved quantities against their claimed values):
  double res34 = 0.0;  // |sum x_i sqrt(f4)/F' + k sum x_i|
  double res35 = 0.0;  // |(x1 x2 x3) sum sqrt(f4)/(x^2 F') - sum 1/x_i|
  // Measured constants of the two conserved-quantity forms; res34/res35
  // vanish exactly when these do.
  double c1_measured = 0.0;  // (sum x sqrt(f4)/F')^2 - k^2 (sum x)^2
  double c2_measured = 0.0;  // (prod x)^2 (sum sqrt(f4)/(x^2 F'))^2 - (sum 1/x)^2
  // Exact addition identities satisfied by the same data (these do vanish,
  // and flip sign sensitivity shows in them as well):
  double res_exact_unit = 0.0;  // |(x1 x2 x3) sum sqrt(f4)/(x F') - 1|
  double res_exact_sum = 0.0;   // |(x1 x2 x3) sum sqrt(f4)/F' - sum x|
};

/// The n = 3 specialization with f_4(x) = (1-x^2)(1-k^2 x^2),
/// x_i = sn(u_i, k), signed roots sqrt(f_4(x_i)) = cn(u_i) dn(u_i),
/// u_1 + u_2 + u_3 = 0.  flip_first inverts one branch sign (negative
/// control: all the combinations are branch-sensitive).
inline EllipticIdentityResiduals elliptic_identity_check(double u1, double u2,
                                                         double k,
                                                         bool flip_first =
                                                             false) {
  if (!(k > 0.0 && k < 1.0)) {
    throw std::domain_error(
        "elliptic_identity_check: modulus must lie in (0,1)");
  }
  const double u3 = -u1 - u2;
  const std::array<double, 3> us{u1, u2, u3};
  std::array<double, 3> x{};
  std::array<double, 3> y{};  // signed sqrt(f4) = cn dn
  for (std::size_t i = 0; i < 3; ++i) {
    const JacobiTriple t = jacobi(us[i], k);
    x[i] = t.sn;
    y[i] = t.cn * t.dn;
  }
  if (flip_first) y[0] = -y[0];
  for (std::size_t i = 0; i < 3; ++i) {
    if (std::abs(x[i]) < 1e-9) {
      throw std::domain_error("elliptic_identity_check: sn(u_i) at zero");
    }
    for (std::size_t j = i + 1; j < 3; ++j) {
      if (std::abs(x[i] - x[j]) < kMinPointGap) {
        throw std::domain_error(
            "elliptic_identity_check: coincident divisor points");
      }
    }
  }
  const auto fprime = [&x](std::size_t i) {
    double p = 1.0;
    for (std::size_t j = 0; j < 3; ++j) {
      if (j != i) p *= (x[i] - x[j]);
    }
    return p;
  };
  double s34 = 0.0, s35 = 0.0, s_over_x = 0.0, s_plain = 0.0;
  double p = 0.0, prod = 1.0, qsum = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double fp = fprime(i);
    s34 += x[i] * y[i] / fp;
    s35 += y[i] / (x[i] * x[i] * fp);
    s_over_x += y[i] / (x[i] * fp);
    s_plain += y[i] / fp;
    p += x[i];
    prod *= x[i];
    qsum += 1.0 / x[i];
  }
  EllipticIdentityResiduals r;
  r.res34 = std::abs(s34 + k * p);
  r.res35 = std::abs(prod * s35 - qsum);
  r.c1_measured = s34 * s34 - k * k * p * p;
  r.c2_measured = prod * prod * s35 * s35 - qsum * qsum;
  r.res_exact_unit = std::abs(prod * s_over_x - 1.0);
  r.res_exact_sum = std::abs(prod * s_plain - p);
  return r;
}

// ---------------------------------------------------------------------------
// Flow integration

enum class FlowStatus {
  completed,
  halted_collision,
  halted_branch,
};

struct FlowSample {
  double t = 0.0;
  std::vector<double> x;
  std::vector<int> s;
  double q1 = 0.0;
  double q2 = 0.0;  // NaN while any point sits within 1e-9 of zero
  std::vector<double> abel;  // accumulated Abel sums, k = 0..n-3
};

struct FlowOptions {
  double t_end = 1.0;
  double dt = 1e-3;
};

struct FlowResult {
  FlowStatus status = FlowStatus::completed;
  std::string message;
  std::vector<FlowSample> samples;
  double q1_drift = 0.0;
  double q2_drift = 0.0;
  std::vector<double> abel_max;       // per constraint
  double psum_ode_residual = 0.0;     // |2 p'' - A_{2n-3} - 2 A_{2n-2} p|,
                                      // central differences, away from flips
  int sign_flips = 0;
};

namespace detail {

struct Segment {
  std::vector<double> x0, x1;
  std::vector<int> s;             // signs active along the segment
  std::vector<double> near_root;  // branch point per coordinate, NaN if none
};

inline std::vector<double> velocities(const HyperPoly& f,
                                      const std::vector<double>& x,
                                      const std::vector<int>& s) {
  const std::size_t n = x.size();
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    double fp = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) fp *= (x[i] - x[j]);
    }
    v[i] = s[i] * x[i] * std::sqrt(std::max(f(x[i]), 0.0)) / fp;
  }
  return v;
}

inline double min_gap(const std::vector<double>& x) {
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      g = std::min(g, std::abs(x[i] - x[j]));
  return g;
}

// One RK4 step; sets *collided when any stage brings two points within the
// collision threshold (fast crossings would otherwise be stepped over).
inline std::vector<double> rk4_step(const HyperPoly& f,
                                    const std::vector<double>& x,
                                    const std::vector<int>& s, double h,
                                    bool* collided = nullptr) {
  const std::size_t n = x.size();
  bool close = false;
  const auto k1 = velocities(f, x, s);
  std::vector<double> tmp(n);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
  close = close || min_gap(tmp) < kCollisionTol;
  const auto k2 = velocities(f, tmp, s);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
  close = close || min_gap(tmp) < kCollisionTol;
  const auto k3 = velocities(f, tmp, s);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + h * k3[i];
  close = close || min_gap(tmp) < kCollisionTol;
  const auto k4 = velocities(f, tmp, s);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  if (collided) *collided = close || min_gap(out) < kCollisionTol;
  return out;
}

// 5-point Gauss-Legendre nodes/weights on [0, 1].
inline constexpr std::array<double, 5> kGlNode{
    0.04691007703066800, 0.23076534494715845, 0.5, 0.76923465505284155,
    0.95308992296933200};
inline constexpr std::array<double, 5> kGlWeight{
    0.11846344252809454, 0.23931433524968324, 0.28444444444444444,
    0.23931433524968324, 0.11846344252809454};

// int_a^b x^k / sqrt(f(x)) dx, f > 0 on the open interval.
inline double gl_segment(const HyperPoly& f, int k, double a, double b) {
  double sum = 0.0;
  for (std::size_t q = 0; q < 5; ++q) {
    const double x = a + (b - a) * kGlNode[q];
    const double fx = std::max(f(x), 1e-300);
    sum += kGlWeight[q] * std::pow(x, k) / std::sqrt(fx);
  }
  return sum * (b - a);
}

// Same integral when the segment sits hard against a simple root of f (at
// or just beyond one endpoint, same side for both): substitute
// x = root + sigma w^2, which removes the 1/sqrt singularity.
inline double gl_segment_near_root(const HyperPoly& f, int k, double root,
                                   double a, double b) {
  if (a == b) return 0.0;
  const double da = a - root;
  const double db = b - root;
  if (da * db < 0.0) return gl_segment(f, k, a, b);  // straddles: punt
  const double sigma = (da + db > 0.0) ? 1.0 : -1.0;
  const double wa = std::sqrt(std::abs(da));
  const double wb = std::sqrt(std::abs(db));
  double sum = 0.0;
  for (std::size_t q = 0; q < 5; ++q) {
    const double w = wa + (wb - wa) * kGlNode[q];
    const double x = root + sigma * w * w;
    const double fhat = f(x) / std::abs(x - root);  // ~ |f'(root)| near root
    if (!(fhat > 0.0)) return gl_segment(f, k, a, b);
    sum += kGlWeight[q] * std::pow(x, k) / std::sqrt(fhat);
  }
  return 2.0 * sigma * sum * (wb - wa);
}

inline void accumulate_abel(const HyperPoly& f, const Segment& seg,
                            std::vector<double>& abel) {
  const std::size_t n = seg.x0.size();
  for (std::size_t k = 0; k < abel.size(); ++k) {
    double inc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double a = seg.x0[i];
      const double b = seg.x1[i];
      if (a == b) continue;
      const double root = seg.near_root[i];
      const double integral =
          std::isnan(root) ? gl_segment(f, static_cast<int>(k), a, b)
                           : gl_segment_near_root(f, static_cast<int>(k),
                                                  root, a, b);
      inc += integral / seg.s[i];
    }
    abel[k] += inc;
  }
}

}  // namespace detail

namespace detail {

// Stepper with branch-point events: crossings are bisected to the branch
// point, the sign flips there, and the quadratic escape from the root is
// resolved by sub-stepping for a couple of grid steps (RK4 alone stalls on
// the sqrt profile).  Abel sums accumulate per segment, with the
// square-root substitution while a coordinate sits near its latest root.
struct FlowStepper {
  const HyperPoly& f;
  std::vector<double> x;
  std::vector<int> s;
  std::vector<double> abel;
  std::vector<double> flip_root;  // latest root per coordinate, NaN if stale
  int refine_steps = 0;           // full grid steps left in refined mode
  int flips = 0;
  FlowStatus status = FlowStatus::completed;
  std::string message;
  double dt_grid;

  static constexpr int kEscapeSlices = 32;

  FlowStepper(const HyperPoly& poly, std::vector<double> x0,
              std::vector<int> s0, std::size_t n_abel, double dt)
      : f(poly),
        x(std::move(x0)),
        s(std::move(s0)),
        abel(n_abel, 0.0),
        flip_root(x.size(), std::numeric_limits<double>::quiet_NaN()),
        dt_grid(dt) {}

  bool grid_step() {
    // The sqrt profile makes full steps inaccurate close to a root, on the
    // approach as much as on the escape; refine whenever a point is near.
    bool refined = refine_steps > 0;
    if (refine_steps > 0) --refine_steps;
    const double fscale = std::max(1.0, f.scale());
    for (double xi : x) {
      if (f(xi) < 1e-3 * fscale) refined = true;
    }
    if (!refined) return advance(dt_grid, 0);
    for (int m = 0; m < kEscapeSlices; ++m) {
      if (!advance(dt_grid / kEscapeSlices, 0)) return false;
    }
    return true;
  }

  bool order_broken(const std::vector<double>& to) const {
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = i + 1; j < x.size(); ++j)
        if ((x[i] - x[j]) * (to[i] - to[j]) <= 0.0) return true;
    return false;
  }

  bool advance(double h, int depth) {
    if (depth > 8) {
      status = FlowStatus::halted_branch;
      message = "too many branch-point crossings within one step";
      return false;
    }
    bool collided = false;
    auto trial = rk4_step(f, x, s, h, &collided);
    // Leapfrogging points never pass a gap check, so also treat an order
    // inversion as a collision (the exact flow preserves ordering).
    if (collided || order_broken(trial)) {
      status = FlowStatus::halted_collision;
      message = "divisor points closer than the collision threshold";
      return false;
    }
    bool crossed = false;
    for (double xi : trial) {
      if (f(xi) < 0.0) {
        crossed = true;
        break;
      }
    }
    if (!crossed) {
      push_segment(trial);
      x = std::move(trial);
      return true;
    }
    // A branch crossing somewhere in (0, h].  On a coarse step, refine the
    // approach first; the square-root profile needs small steps near the
    // root on both sides.
    if (h > 1.5 * dt_grid / kEscapeSlices) {
      for (int m = 0; m < kEscapeSlices; ++m) {
        if (!advance(h / kEscapeSlices, depth + 1)) return false;
      }
      return true;
    }
    // Fine step: bisect the step fraction to the branch-point touch.
    double lo = 0.0, hi = 1.0;
    std::vector<double> xlo = x;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      auto xm = rk4_step(f, x, s, mid * h);
      bool neg = false;
      for (double xi : xm) {
        if (f(xi) < 0.0) {
          neg = true;
          break;
        }
      }
      if (neg) {
        hi = mid;
      } else {
        lo = mid;
        xlo = std::move(xm);
      }
    }
    if (lo == 0.0) {
      status = FlowStatus::halted_branch;
      message = "could not isolate a branch-point crossing";
      return false;
    }
    int idx = 0;
    double fmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < xlo.size(); ++i) {
      const double fi = f(xlo[i]);
      if (fi < fmin) {
        fmin = fi;
        idx = static_cast<int>(i);
      }
    }
    push_segment(xlo);
    x = xlo;
    const auto ui = static_cast<std::size_t>(idx);
    s[ui] = -s[ui];
    flip_root[ui] = x[ui];
    refine_steps = 4;
    ++flips;
    // Remainder of the fine step, escaping the root.
    const double rest = (1.0 - lo) * h;
    if (rest > 1e-16 * dt_grid) {
      for (int m = 0; m < 4; ++m) {
        if (!advance(rest / 4.0, depth + 1)) return false;
      }
    }
    return true;
  }

  void push_segment(const std::vector<double>& to) {
    Segment seg{x, to, s, flip_root};
    accumulate_abel(f, seg, abel);
  }
};

}  // namespace detail

/// Classical fixed-step RK4 on the divisor flow.  Records, per step, the
/// accumulated Abel constraint sums (by Gauss quadrature of the defining
/// one-forms along the realized path) and both conserved-quantity values,
/// and afterwards the finite-difference residual of the second-order
/// equation 2 p'' = A_{2n-3} + 2 A_{2n-2} p, skipping a window around sign
/// flips where the samples sit on refined sub-grids.
inline FlowResult integrate_flow(const HyperPoly& f, const Divisor& d0,
                                 const FlowOptions& opt) {
  if (f.n() != d0.n()) {
    throw std::domain_error("integrate_flow: size mismatch");
  }
  if (!(opt.dt > 0.0 && opt.dt <= 1e-2)) {
    throw std::domain_error("integrate_flow: dt must lie in (0, 1e-2]");
  }
  if (!(opt.t_end > 0.0)) {
    throw std::domain_error("integrate_flow: t_end must be positive");
  }
  const int n = d0.n();
  const double fscale = std::max(1.0, f.scale());
  for (double xi : d0.points()) {
    if (f(xi) < -1e-12 * fscale) {
      throw std::domain_error("integrate_flow: f negative at initial point");
    }
  }

  FlowResult res;
  const auto n_abel = static_cast<std::size_t>(std::max(0, n - 2));
  detail::FlowStepper stepper(f, d0.points(), d0.signs(), n_abel, opt.dt);
  std::vector<long> flip_steps;

  const auto q2_or_nan = [&](const Divisor& d) {
    for (double xi : d.points()) {
      if (std::abs(xi) < 1e-9) {
        return std::numeric_limits<double>::quiet_NaN();
      }
    }
    return conserved_Q2(f, d);
  };

  const auto push_sample = [&](double t) {
    Divisor d(stepper.x, stepper.s);
    FlowSample smp;
    smp.t = t;
    smp.x = stepper.x;
    smp.s = stepper.s;
    smp.q1 = conserved_Q1(f, d);
    smp.q2 = q2_or_nan(d);
    smp.abel = stepper.abel;
    res.samples.push_back(std::move(smp));
  };

  push_sample(0.0);
  const double q1_0 = res.samples.front().q1;
  const double q2_0 = res.samples.front().q2;

  const auto steps = static_cast<long>(std::llround(opt.t_end / opt.dt));
  for (long j = 0; j < steps; ++j) {
    const int flips_before = stepper.flips;
    const bool ok = stepper.grid_step();
    if (stepper.flips > flips_before) flip_steps.push_back(j);
    push_sample(static_cast<double>(j + 1) * opt.dt);
    if (!ok) {
      res.status = stepper.status;
      res.message = stepper.message;
      break;
    }
  }
  res.sign_flips = stepper.flips;

  for (const FlowSample& smp : res.samples) {
    res.q1_drift = std::max(res.q1_drift, std::abs(smp.q1 - q1_0));
    if (!std::isnan(q2_0) && !std::isnan(smp.q2)) {
      res.q2_drift = std::max(res.q2_drift, std::abs(smp.q2 - q2_0));
    }
  }
  res.abel_max.assign(n_abel, 0.0);
  for (const FlowSample& smp : res.samples) {
    for (std::size_t k = 0; k < n_abel; ++k) {
      res.abel_max[k] = std::max(res.abel_max[k], std::abs(smp.abel[k]));
    }
  }
  // 2 p'' = A_{2n-3} + 2 A_{2n-2} p by central differences.
  const auto& A = f.coeffs();
  const double dt2 = opt.dt * opt.dt;
  for (std::size_t j = 1; j + 1 < res.samples.size(); ++j) {
    bool near_flip = false;
    for (long fs : flip_steps) {
      if (std::abs(static_cast<long>(j) - fs) <= 3) {
        near_flip = true;
        break;
      }
    }
    if (near_flip) continue;
    const auto psum = [&](std::size_t idx) {
      double p = 0.0;
      for (double xi : res.samples[idx].x) p += xi;
      return p;
    };
    const double pdd = (psum(j + 1) - 2.0 * psum(j) + psum(j - 1)) / dt2;
    const double r =
        std::abs(2.0 * pdd - A[A.size() - 2] - 2.0 * A.back() * psum(j));
    res.psum_ode_residual = std::max(res.psum_ode_residual, r);
  }
  return res;
}

namespace detail {

// Shortest round-trip decimal form; std::to_chars is locale-free.
inline std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

}  // namespace detail

/// Trajectory CSV: t, x_1..x_n, s_1..s_n, Q1, Q2, abel_0..abel_{n-3}.
/// '.' decimal, locale-free.
inline void write_trajectory_csv(std::ostream& os, const FlowResult& r) {
  if (r.samples.empty()) return;
  const std::size_t n = r.samples.front().x.size();
  const std::size_t na = r.samples.front().abel.size();
  os << "t";
  for (std::size_t i = 1; i <= n; ++i) os << ",x" << i;
  for (std::size_t i = 1; i <= n; ++i) os << ",s" << i;
  os << ",Q1,Q2";
  for (std::size_t k = 0; k < na; ++k) os << ",abel" << k;
  os << "\n";
  for (const FlowSample& smp : r.samples) {
    os << detail::format_double(smp.t);
    for (double xi : smp.x) os << "," << detail::format_double(xi);
    for (int si : smp.s) os << "," << si;
    os << "," << detail::format_double(smp.q1) << ","
       << detail::format_double(smp.q2);
    for (double a : smp.abel) os << "," << detail::format_double(a);
    os << "\n";
  }
}

}  // namespace eit::abel
