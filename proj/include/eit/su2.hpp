// SU(2) rotations in the spin-1/2 and spin-1 representations, hyperbolic
// Pauli exponentials, and residual checks for the rotation identity a
// spherical triangle satisfies and for its spectral (elliptic) form.
//
// Exponentials are closed-form throughout: half-angle form for spin-1/2,
// 1 - (1 - cos t) J^2 + i sin t J for spin-1, whose generators have
// eigenvalues {0, +-1}.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "eit/elliptic.hpp"
#include "eit/spherical.hpp"
#include "eit/vec3.hpp"

namespace eit::su2 {

using Complex = std::complex<double>;

enum class Axis { x, z };
enum class Kind { circular, hyperbolic };
enum class Rep { spin_half, spin_one };

/// Dense complex matrix of runtime dimension 2 or 3, row-major.
class SmallMatrix {
 public:
  explicit SmallMatrix(int dim) : dim_(dim) {
    if (dim != 2 && dim != 3) {
      throw std::invalid_argument("SmallMatrix: dimension must be 2 or 3");
    }
  }

  static SmallMatrix identity(int dim) {
    SmallMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
  }

  int dim() const { return dim_; }

  Complex& at(int r, int c) {
    return a_[static_cast<std::size_t>(r * dim_ + c)];
  }
  const Complex& at(int r, int c) const {
    return a_[static_cast<std::size_t>(r * dim_ + c)];
  }

  SmallMatrix operator*(const SmallMatrix& o) const {
    require_same_dim(o);
    SmallMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) {
        Complex s = 0.0;
        for (int l = 0; l < dim_; ++l) s += at(i, l) * o.at(l, j);
        r.at(i, j) = s;
      }
    return r;
  }

  SmallMatrix operator+(const SmallMatrix& o) const {
    require_same_dim(o);
    SmallMatrix r(dim_);
    for (int i = 0; i < dim_ * dim_; ++i) {
      r.a_[static_cast<std::size_t>(i)] =
          a_[static_cast<std::size_t>(i)] + o.a_[static_cast<std::size_t>(i)];
    }
    return r;
  }

  SmallMatrix operator-(const SmallMatrix& o) const {
    require_same_dim(o);
    SmallMatrix r(dim_);
    for (int i = 0; i < dim_ * dim_; ++i) {
      r.a_[static_cast<std::size_t>(i)] =
          a_[static_cast<std::size_t>(i)] - o.a_[static_cast<std::size_t>(i)];
    }
    return r;
  }

  SmallMatrix operator*(Complex s) const {
    SmallMatrix r(dim_);
    for (int i = 0; i < dim_ * dim_; ++i) {
      r.a_[static_cast<std::size_t>(i)] = a_[static_cast<std::size_t>(i)] * s;
    }
    return r;
  }

  SmallMatrix adjoint() const {
    SmallMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) r.at(i, j) = std::conj(at(j, i));
    return r;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (int i = 0; i < dim_ * dim_; ++i) {
      s += std::norm(a_[static_cast<std::size_t>(i)]);
    }
    return std::sqrt(s);
  }

  Complex det2() const {
    if (dim_ != 2) throw std::invalid_argument("det2: matrix is not 2x2");
    return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
  }

  /// Matrix-vector product on a real 3-vector (spin-1 acts on R^3).
  Vec3 apply(const Vec3& v) const {
    if (dim_ != 3) throw std::invalid_argument("apply: matrix is not 3x3");
    const std::array<double, 3> in{v.x, v.y, v.z};
    std::array<Complex, 3> out{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out[static_cast<std::size_t>(i)] += at(i, j) * in[static_cast<std::size_t>(j)];
    return {out[0].real(), out[1].real(), out[2].real()};
  }

  /// Largest imaginary part across entries; spin-1 rotations must be real.
  double max_imag() const {
    double m = 0.0;
    for (int i = 0; i < dim_ * dim_; ++i) {
      m = std::max(m, std::abs(a_[static_cast<std::size_t>(i)].imag()));
    }
    return m;
  }

 private:
  void require_same_dim(const SmallMatrix& o) const {
    if (dim_ != o.dim_) {
      throw std::invalid_argument("SmallMatrix: dimension mismatch");
    }
  }

  int dim_;
  std::array<Complex, 9> a_{};
};

inline double distance(const SmallMatrix& a, const SmallMatrix& b) {
  return (a - b).frobenius_norm();
}

namespace detail {

inline constexpr Complex kI{0.0, 1.0};

// Spin-1 generators with [Jx, Jy] = i Jz cyclic; entries are 0 or +-i.
inline SmallMatrix spin_one_generator(Axis axis) {
  SmallMatrix j(3);
  if (axis == Axis::x) {
    j.at(1, 2) = -kI;
    j.at(2, 1) = kI;
  } else {
    j.at(0, 1) = -kI;
    j.at(1, 0) = kI;
  }
  return j;
}

}  // namespace detail

/// exp(i theta J_axis) in the chosen representation, by closed form.
inline SmallMatrix rot(Axis axis, double theta, Rep rep) {
  if (!std::isfinite(theta)) {
    throw std::domain_error("rot: angle must be finite");
  }
  if (rep == Rep::spin_half) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    SmallMatrix m(2);
    if (axis == Axis::x) {
      m.at(0, 0) = c;
      m.at(1, 1) = c;
      m.at(0, 1) = detail::kI * s;
      m.at(1, 0) = detail::kI * s;
    } else {
      m.at(0, 0) = Complex{c, s};
      m.at(1, 1) = Complex{c, -s};
    }
    return m;
  }
  const SmallMatrix j = detail::spin_one_generator(axis);
  const SmallMatrix j2 = j * j;
  return SmallMatrix::identity(3) - j2 * Complex{1.0 - std::cos(theta), 0.0} +
         j * (detail::kI * std::sin(theta));
}

/// exp(c sigma_axis) as a 2x2 hyperbolic factor with unit determinant.
inline SmallMatrix hyper(Axis axis, double c) {
  if (!std::isfinite(c)) {
    throw std::domain_error("hyper: coupling must be finite");
  }
  SmallMatrix m(2);
  if (axis == Axis::z) {
    m.at(0, 0) = std::exp(c);
    m.at(1, 1) = std::exp(-c);
  } else {
    const double ch = std::cosh(c);
    const double sh = std::sinh(c);
    m.at(0, 0) = ch;
    m.at(1, 1) = ch;
    m.at(0, 1) = sh;
    m.at(1, 0) = sh;
  }
  return m;
}

struct WordFactor {
  Axis axis = Axis::x;
  double angle = 0.0;
  Kind kind = Kind::circular;
};

using RotationWord = std::vector<WordFactor>;

/// Left-to-right product of the word's factor matrices.
inline SmallMatrix word_product(const RotationWord& w, Rep rep) {
  if (w.empty()) {
    throw std::invalid_argument("word_product: empty word");
  }
  SmallMatrix m = SmallMatrix::identity(rep == Rep::spin_half ? 2 : 3);
  for (const WordFactor& f : w) {
    if (f.kind == Kind::hyperbolic) {
      if (rep != Rep::spin_half) {
        throw std::invalid_argument(
            "word_product: hyperbolic factors are only defined for spin-1/2");
      }
      m = m * hyper(f.axis, f.angle);
    } else {
      m = m * rot(f.axis, f.angle, rep);
    }
  }
  return m;
}

/// Frobenius residual of the triangle rotation identity
///   exp(iA1 Jx) exp(ia2 Jz) exp(iA3 Jx) =
///   exp(ia3 Jz) exp(i(pi-A2) Jx) exp(ia1 Jz).
inline double verify_triangle_identity(const spherical::SphericalTriangle& t,
                                       Rep rep) {
  const SmallMatrix lhs = rot(Axis::x, t.A1, rep) * rot(Axis::z, t.a2, rep) *
                          rot(Axis::x, t.A3, rep);
  const SmallMatrix rhs = rot(Axis::z, t.a3, rep) *
                          rot(Axis::x, std::numbers::pi - t.A2, rep) *
                          rot(Axis::z, t.a1, rep);
  return distance(lhs, rhs);
}

/// The two parallel-transport paths around the triangle as composite
/// operators (rightmost factor acts first) and their difference.
struct TransportComparison {
  SmallMatrix path1;
  SmallMatrix path2;
  double residual = 0.0;
};

inline TransportComparison transport_compare(
    const spherical::SphericalTriangle& t, Rep rep) {
  SmallMatrix p1 = rot(Axis::x, t.A1, rep) * rot(Axis::z, t.a2, rep) *
                   rot(Axis::x, t.A3, rep);
  SmallMatrix p2 = rot(Axis::z, t.a3, rep) *
                   rot(Axis::x, std::numbers::pi - t.A2, rep) *
                   rot(Axis::z, t.a1, rep);
  const double r = distance(p1, p2);
  return {std::move(p1), std::move(p2), r};
}

/// Spectral form of the identity: angles am(u_i, k) around J_z and
/// am(k u_i, 1/k) around J_x, with u2 = u1 + u3.
inline double verify_ybe_spectral(double u1, double u3, double k, Rep rep) {
  if (!(k > 0.0 && k < 1.0)) {
    throw std::domain_error("verify_ybe_spectral: modulus must lie in (0,1)");
  }
  const double u2 = u1 + u3;
  const auto am_rec = [k](double u) {
    const JacobiTriple r = reciprocal_modulus(k * u, k);
    return std::atan2(r.sn, r.cn);
  };
  const SmallMatrix lhs = rot(Axis::x, am_rec(u1), rep) *
                          rot(Axis::z, amplitude(u2, k), rep) *
                          rot(Axis::x, am_rec(u3), rep);
  const SmallMatrix rhs = rot(Axis::z, amplitude(u3, k), rep) *
                          rot(Axis::x, am_rec(u2), rep) *
                          rot(Axis::z, amplitude(u1, k), rep);
  return distance(lhs, rhs);
}

}  // namespace eit::su2
