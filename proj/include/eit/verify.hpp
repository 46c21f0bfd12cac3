// Randomized, seeded verification suites for every module.  Each check
// draws its cases from a splitmix64 stream, so a given RunConfig yields the
// same report on every platform.  Checks assert identities that hold for
// the implementation (negative controls are encoded as margin checks:
// residual below the named floor counts as failure).

#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "eit/abel.hpp"
#include "eit/elliptic.hpp"
#include "eit/ising.hpp"
#include "eit/report.hpp"
#include "eit/rng.hpp"
#include "eit/spherical.hpp"
#include "eit/su2.hpp"
#include "eit/vec3.hpp"

namespace eit::verify {

struct RunConfig {
  std::uint64_t seed = 42;
  long samples = 0;      // 0 = per-check defaults
  double tolerance = 0;  // 0 = per-check defaults; otherwise a blunt override
};

namespace detail {

constexpr std::size_t kMaxFailures = 8;

class CheckRunner {
 public:
  CheckRunner(SuiteReport& suite, const RunConfig& cfg, std::string name,
              long default_samples, double default_tol)
      : suite_(suite), name_(std::move(name)) {
    samples_ = (cfg.samples > 0) ? cfg.samples : default_samples;
    tol_ = (cfg.tolerance > 0) ? cfg.tolerance : default_tol;
  }

  long samples() const { return samples_; }
  double tolerance() const { return tol_; }

  void record(std::vector<double> inputs, double residual) {
    max_residual_ = std::max(max_residual_, residual);
    if (residual > tol_ && failures_.size() < kMaxFailures) {
      failures_.push_back({std::move(inputs), residual});
    }
  }

  ~CheckRunner() {
    CheckReport c;
    c.name = name_;
    c.samples = samples_;
    c.tolerance = tol_;
    c.max_residual = max_residual_;
    c.pass = max_residual_ <= tol_;
    c.failures = std::move(failures_);
    suite_.pass = suite_.pass && c.pass;
    suite_.checks.push_back(std::move(c));
  }

 private:
  SuiteReport& suite_;
  std::string name_;
  long samples_;
  double tol_ = 0.0;
  double max_residual_ = 0.0;
  std::vector<CaseFailure> failures_;
};

inline Vec3 random_unit(SplitMix64& rng) {
  const double z = rng.uniform(-1.0, 1.0);
  const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(phi), r * std::sin(phi), z};
}

inline spherical::TriangleVectors random_triangle_vectors(SplitMix64& rng) {
  for (;;) {
    spherical::TriangleVectors v{random_unit(rng), random_unit(rng),
                                 random_unit(rng)};
    if (std::abs(triple(v.n1, v.n2, v.n3)) >= 1e-2) return v;
  }
}

// (u1, u3, k) in the domain of the spectral constructions.
struct SpectralDraw {
  double u1, u3, k, quarter;
};

inline SpectralDraw draw_spectral(SplitMix64& rng) {
  const double k = rng.uniform(0.05, 0.95);
  const double K = complete_quarter_period(k);
  const double u1 = rng.uniform(0.02 * K, 0.6 * K);
  const double u3 = rng.uniform(0.02 * K, 0.95 * K - u1);
  return {u1, u3, k, K};
}

template <typename F>
double wall_ms_of(F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  body();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace detail

inline SuiteReport run_elliptic(const RunConfig& cfg) {
  SuiteReport suite;
  suite.suite = "elliptic";
  suite.seed = cfg.seed;
  suite.wall_ms = detail::wall_ms_of([&] {
    SplitMix64 rng(cfg.seed);
    {
      detail::CheckRunner c(suite, cfg, "pythagorean", 10000, 1e-12);
      for (long i = 0; i < c.samples(); ++i) {
        const double k = rng.uniform(0.01, 0.99);
        const double K = complete_quarter_period(k);
        const double u = rng.uniform(-4.0 * K, 4.0 * K);
        const JacobiTriple t = jacobi(u, k);
        const double r1 = std::abs(t.sn * t.sn + t.cn * t.cn - 1.0);
        const double r2 = std::abs(t.dn * t.dn + k * k * t.sn * t.sn - 1.0);
        c.record({u, k}, std::max(r1, r2));
      }
    }
    {
      detail::CheckRunner c(suite, cfg, "addition_consistency", 10000, 1e-10);
      for (long i = 0; i < c.samples(); ++i) {
        const double k = rng.uniform(0.01, 0.99);
        const double K = complete_quarter_period(k);
        const double u1 = rng.uniform(-2.0 * K, 2.0 * K);
        const double u3 = rng.uniform(-2.0 * K, 2.0 * K);
        const JacobiTriple a = addition_eval(u1, u3, k);
        const JacobiTriple b = jacobi(u1 + u3, k);
        const double r = std::max({std::abs(a.sn - b.sn),
                                   std::abs(a.cn - b.cn),
                                   std::abs(a.dn - b.dn)});
        c.record({u1, u3, k}, r);
      }
    }
    {
      detail::CheckRunner c(suite, cfg, "derivative_relations", 2000, 1e-6);
      const double h = 1e-6;
      for (long i = 0; i < c.samples(); ++i) {
        const double k = rng.uniform(0.05, 0.95);
        const double u = rng.uniform(-3.0, 3.0);
        const JacobiTriple t = jacobi(u, k);
        const double dsn =
            (jacobi(u + h, k).sn - jacobi(u - h, k).sn) / (2.0 * h);
        const double dcn =
            (jacobi(u + h, k).cn - jacobi(u - h, k).cn) / (2.0 * h);
        const double ddn =
            (jacobi(u + h, k).dn - jacobi(u - h, k).dn) / (2.0 * h);
        const double r = std::max({std::abs(dsn - t.cn * t.dn),
                                   std::abs(dcn + t.sn * t.dn),
                                   std::abs(ddn + k * k * t.sn * t.cn)});
        c.record({u, k}, r);
      }
    }
    {
      detail::CheckRunner c(suite, cfg, "amplitude_roundtrip", 2000, 1e-11);
      for (long i = 0; i < c.samples(); ++i) {
        const double k = rng.uniform(0.01, 0.99);
        const double phi = rng.uniform(0.0, std::numbers::pi / 2.0);
        c.record({phi, k},
                 std::abs(amplitude(incomplete_integral(phi, k), k) - phi));
      }
    }
    {
      detail::CheckRunner c(suite, cfg, "reciprocal_roundtrip", 2000, 1e-11);
      for (long i = 0; i < c.samples(); ++i) {
        const double k = rng.uniform(0.05, 1.0);
        const double u = rng.uniform(-2.0, 2.0);
        const JacobiTriple direct = jacobi(u, k);
        const JacobiTriple rec = reciprocal_modulus(k * u, k);
        const double r = std::max({std::abs(direct.sn - rec.sn / k),
                                   std::abs(direct.dn - rec.cn),
                                   std::abs(direct.cn - rec.dn)});
        c.record({u, k}, r);
      }
    }
  });
  return suite;
}

inline SuiteReport run_spherical(const RunConfig& cfg) {
  SuiteReport suite;
  suite.suite = "spherical";
  suite.seed = cfg.seed;
  suite.wall_ms = detail::wall_ms_of([&] {
    SplitMix64 rng(cfg.seed);
    {
      detail::CheckRunner c(suite, cfg, "law_residuals", 1000, 1e-10);
      for (long i = 0; i < c.samples(); ++i) {
        const auto v = detail::random_triangle_vectors(rng);
        const auto b = spherical::triangle_from_vectors(v);
        c.record({b.triangle.a1, b.triangle.a2, b.triangle.a3},
                 std::max(spherical::law_residuals(b.triangle).max(),
                          b.ratio_spread));
      }
    }
    {
      detail::CheckRunner c(suite, cfg, "quadruple_products", 1000, 1e-13);
      for (long i = 0; i < c.samples(); ++i) {
        const auto v = detail::random_triangle_vectors(rng);
        const auto rep = spherical::verify_vector_identities(v);
        c.record({v.n1.x, v.n1.y, v.n1.z},
                 std::max(rep.quad_cross, rep.quad_dot));
      }
    }
    {
      detail::CheckRunner c(suite, cfg, "dual_triad", 1000, 1e-10);
      for (long i = 0; i < c.samples(); ++i) {
        const auto v = detail::random_triangle_vectors(rng);
        const auto rep = spherical::verify_vector_identities(v);
        c.record({v.n1.x, v.n1.y, v.n1.z},
                 std::max(rep.dual_reconstruction, rep.dual_triple));
      }
    }
    {
      detail::CheckRunner c(suite, cfg, "spectral_roundtrip", 1000, 1e-9);
      for (long i = 0; i < c.samples(); ++i) {
        const auto d = detail::draw_spectral(rng);
        const auto t = spherical::triangle_from_spectral(d.u1, d.u3, d.k);
        const auto s = spherical::spectral_coordinates(t);
        c.record({d.u1, d.u3, d.k},
                 std::max({std::abs(s.u1 - d.u1), std::abs(s.u3 - d.u3),
                           s.residual, s.sine_law_residual}));
      }
    }
    {
      detail::CheckRunner c(suite, cfg, "sum_rule_difference", 1000, 1e-9);
      for (long i = 0; i < c.samples(); ++i) {
        const auto d = detail::draw_spectral(rng);
        const auto s = spherical::spectral_coordinates(
            spherical::triangle_from_spectral(d.u1, d.u3, d.k));
        c.record({d.u1, d.u3, d.k}, s.residual);
      }
    }
    {
      detail::CheckRunner c(suite, cfg, "differential_relation", 500, 1e-7);
      long done = 0;
      while (done < c.samples()) {
        const double k = rng.uniform(0.05, 0.9);
        const double a3 = rng.uniform(0.3, 1.4);
        const double a1 = rng.uniform(0.3, 1.4);
        double r;
        try {
          r = spherical::differential_check(a1, a3, k, 1e-5);
        } catch (const std::domain_error&) {
          continue;
        }
        c.record({a1, a3, k}, r);
        ++done;
      }
    }
  });
  return suite;
}

inline SuiteReport run_su2(const RunConfig& cfg) {
  SuiteReport suite;
  suite.suite = "su2";
  suite.seed = cfg.seed;
  suite.wall_ms = detail::wall_ms_of([&] {
    SplitMix64 rng(cfg.seed);
    using namespace su2;
    {
      detail::CheckRunner c(suite, cfg, "unitarity_homomorphism", 1000,
                            1e-12);
      for (long i = 0; i < c.samples(); ++i) {
        const Rep rep = (i % 2 == 0) ? Rep::spin_half : Rep::spin_one;
        const Axis ax = (i % 4 < 2) ? Axis::x : Axis::z;
        const double t1 = rng.uniform(-6.0, 6.0);
        const double t2 = rng.uniform(-6.0, 6.0);
        const SmallMatrix m = rot(ax, t1, rep);
        const double r1 =
            distance(m * m.adjoint(), SmallMatrix::identity(m.dim()));
        const double r2 =
            distance(m * rot(ax, t2, rep), rot(ax, t1 + t2, rep));
        c.record({t1, t2}, std::max(r1, r2));
      }
    }
    {
      detail::CheckRunner c(suite, cfg, "triangle_identity", 1000, 1e-9);
      for (long i = 0; i < c.samples(); ++i) {
        const auto v = detail::random_triangle_vectors(rng);
        const auto t = spherical::triangle_from_vectors(v).triangle;
        const double r =
            std::max(verify_triangle_identity(t, Rep::spin_half),
                     verify_triangle_identity(t, Rep::spin_one));
        c.record({t.a1, t.a2, t.a3}, r);
      }
    }
    {
      detail::CheckRunner c(suite, cfg, "ybe_spectral", 1000, 1e-9);
      for (long i = 0; i < c.samples(); ++i) {
        const auto d = detail::draw_spectral(rng);
        const Rep rep = (i % 2 == 0) ? Rep::spin_half : Rep::spin_one;
        c.record({d.u1, d.u3, d.k}, verify_ybe_spectral(d.u1, d.u3, d.k, rep));
      }
    }
    {
      detail::CheckRunner c(suite, cfg, "transport_agreement", 500, 1e-9);
      for (long i = 0; i < c.samples(); ++i) {
        const auto v = detail::random_triangle_vectors(rng);
        const auto t = spherical::triangle_from_vectors(v).triangle;
        const auto cmp = transport_compare(t, Rep::spin_one);
        const Vec3 w = detail::random_unit(rng);
        const double r =
            std::max(cmp.residual, norm(cmp.path1.apply(w) -
                                        cmp.path2.apply(w)));
        c.record({t.a1, t.a2, t.a3}, r);
      }
    }
  });
  return suite;
}

inline SuiteReport run_ising(const RunConfig& cfg) {
  SuiteReport suite;
  suite.suite = "ising";
  suite.seed = cfg.seed;
  suite.wall_ms = detail::wall_ms_of([&] {
    SplitMix64 rng(cfg.seed);
    using namespace ising;
    const auto draw_v = [&rng](double& v1, double& v3, double& k,
                               double& Kp) {
      k = rng.uniform(0.05, 0.95);
      const double kp = std::sqrt((1.0 - k) * (1.0 + k));
      Kp = complete_quarter_period(kp);
      v1 = rng.uniform(0.02, 0.6) * Kp;
      v3 = rng.uniform(0.02, 0.95 - v1 / Kp) * Kp;
    };
    {
      detail::CheckRunner c(suite, cfg, "hyperbolic_consistency", 1000,
                            1e-11);
      for (long i = 0; i < c.samples(); ++i) {
        double v1, v3, k, Kp;
        draw_v(v1, v3, k, Kp);
        const CouplingSet cs = couplings_from_v(v1, v3, k);
        double r = 0.0;
        for (double K : {cs.K1, cs.K2, cs.K3, cs.L1s, cs.L2s, cs.L3s}) {
          const double ch = std::cosh(2.0 * K), sh = std::sinh(2.0 * K);
          r = std::max(r, std::abs(ch * ch - sh * sh - 1.0));
        }
        c.record({v1, v3, k}, r);
      }
    }
    {
      detail::CheckRunner c(suite, cfg, "star_triangle", 500, 1e-9);
      for (long i = 0; i < c.samples(); ++i) {
        double v1, v3, k, Kp;
        draw_v(v1, v3, k, Kp);
        const auto r = star_triangle_residual(couplings_from_v(v1, v3, k));
        c.record({v1, v3, k},
                 std::max(r.residual,
                          std::abs(r.scalar - std::complex<double>(1, 0))));
      }
    }
    {
      detail::CheckRunner c(suite, cfg, "star_triangle_crossing", 500, 1e-9);
      for (long i = 0; i < c.samples(); ++i) {
        const auto d = detail::draw_spectral(rng);
        const auto r =
            star_triangle_residual(couplings_crossing(d.u1, d.u3, d.k));
        c.record({d.u1, d.u3, d.k},
                 std::max(r.residual,
                          std::abs(r.scalar - std::complex<double>(1, 0))));
      }
    }
    {
      detail::CheckRunner c(suite, cfg, "difference_property", 500, 1e-9);
      for (long i = 0; i < c.samples(); ++i) {
        double v1, v3, k, Kp;
        draw_v(v1, v3, k, Kp);
        c.record({v1, v3, k}, verify_difference_property(v1, v3, k));
      }
    }
    {
      // Negative control: a 0.05 shift of the middle parameter must push
      // the residual above 1e-3; the margin below that floor is recorded.
      detail::CheckRunner c(suite, cfg, "difference_sensitivity", 100, 1e-12);
      long done = 0;
      while (done < c.samples()) {
        double v1, v3, k, Kp;
        draw_v(v1, v3, k, Kp);
        if (v1 + v3 + 0.05 >= 0.98 * Kp) continue;
        const double measured = verify_difference_property(v1, v3, k, 0.05);
        c.record({v1, v3, k}, std::max(0.0, 1e-3 - measured));
        ++done;
      }
    }
    {
      detail::CheckRunner c(suite, cfg, "coupling_monotonicity", 200, 1e-15);
      for (long i = 0; i < c.samples(); ++i) {
        const double k = rng.uniform(0.05, 0.95);
        const double kp = std::sqrt((1.0 - k) * (1.0 + k));
        const double Kp = complete_quarter_period(kp);
        const double v = rng.uniform(0.05, 0.9) * Kp;
        const double dv = 1e-4 * Kp;
        if (v + dv >= 0.95 * Kp) continue;
        const auto lo = couplings_from_v(v, 0.02 * Kp, k);
        const auto hi = couplings_from_v(v + dv, 0.02 * Kp, k);
        c.record({v, k}, std::max(0.0, lo.K1 - hi.K1));
      }
    }
  });
  return suite;
}

inline SuiteReport run_abel(const RunConfig& cfg) {
  SuiteReport suite;
  suite.suite = "abel";
  suite.seed = cfg.seed;
  suite.wall_ms = detail::wall_ms_of([&] {
    SplitMix64 rng(cfg.seed);
    using namespace abel;
    const auto random_divisor = [&rng](int n) {
      for (;;) {
        std::vector<double> x;
        std::vector<int> s;
        for (int i = 0; i < n; ++i) {
          x.push_back(rng.uniform(-2.0, 2.0));
          s.push_back(rng.sign());
        }
        Divisor d(x, s);
        if (d.min_gap() >= 0.15) return d;
      }
    };
    {
      detail::CheckRunner c(suite, cfg, "moment_sums", 1000, 1e-12);
      for (long i = 0; i < c.samples(); ++i) {
        const int n = 3 + static_cast<int>(rng.next_u64() % 6);  // 3..8
        const Divisor d = random_divisor(n);
        double worst = 0.0;
        for (int k = 0; k <= n - 1; ++k) {
          double scale = 1.0;
          for (int j = 0; j < n; ++j) {
            scale += std::abs(
                std::pow(d.points()[static_cast<std::size_t>(j)], k) /
                d.Fprime_at(j));
          }
          const double expect = (k == n - 1) ? 1.0 : 0.0;
          worst = std::max(worst,
                           std::abs(moment_sum(d, k) - expect) / scale);
        }
        c.record({static_cast<double>(n)}, worst);
      }
    }
    {
      detail::CheckRunner c(suite, cfg, "partial_fractions", 1000, 1e-12);
      for (long i = 0; i < c.samples(); ++i) {
        const int n = 3 + static_cast<int>(rng.next_u64() % 4);
        const Divisor d = random_divisor(n);
        const int k =
            static_cast<int>(rng.next_u64() % static_cast<unsigned>(n));
        double x;
        bool near;
        do {
          x = rng.uniform(-4.0, 4.0);
          near = false;
          for (double xi : d.points()) {
            near = near || std::abs(x - xi) < 0.3;
          }
        } while (near);
        c.record({static_cast<double>(n), static_cast<double>(k), x},
                 partial_fraction_residual(d, k, x));
      }
    }
    {
      detail::CheckRunner c(suite, cfg, "double_pole_expansion", 500, 1e-10);
      for (long i = 0; i < c.samples(); ++i) {
        const int n = 3 + static_cast<int>(rng.next_u64() % 2);
        std::vector<double> coeffs(static_cast<std::size_t>(2 * n - 1));
        for (double& a : coeffs) a = rng.uniform(-1.0, 1.0);
        const HyperPoly f(n, coeffs);
        const Divisor d = random_divisor(n);
        double x;
        bool near;
        do {
          x = rng.uniform(-4.0, 4.0);
          near = false;
          for (double xi : d.points()) {
            near = near || std::abs(x - xi) < 0.3;
          }
        } while (near);
        c.record({static_cast<double>(n), x}, double_pole_residual(f, d, x));
      }
    }
    {
      detail::CheckRunner c(suite, cfg, "addition_identities", 1000, 1e-10);
      long done = 0;
      while (done < c.samples()) {
        const double k = rng.uniform(0.05, 0.95);
        const double u1 = rng.uniform(-1.2, 1.2);
        const double u2 = rng.uniform(-1.2, 1.2);
        EllipticIdentityResiduals r;
        try {
          r = elliptic_identity_check(u1, u2, k);
        } catch (const std::domain_error&) {
          continue;
        }
        c.record({u1, u2, k}, std::max(r.res_exact_unit, r.res_exact_sum));
        ++done;
      }
    }
    {
      // The two asserted combinations equal closed forms in
      // e1 = sum x_i, e3 = prod x_i; check against them.
      detail::CheckRunner c(suite, cfg, "measured_constants", 500, 1e-9);
      long done = 0;
      while (done < c.samples()) {
        const double k = rng.uniform(0.05, 0.95);
        const double u1 = rng.uniform(-1.2, 1.2);
        const double u2 = rng.uniform(-1.2, 1.2);
        EllipticIdentityResiduals r;
        try {
          r = elliptic_identity_check(u1, u2, k);
        } catch (const std::domain_error&) {
          continue;
        }
        double e1 = 0.0, e3 = 1.0;
        for (double u : {u1, u2, -u1 - u2}) {
          const double x = jacobi(u, k).sn;
          e1 += x;
          e3 *= x;
        }
        const double b = (k * k * e3 * e3 - e1 * e1) / (2.0 * e3);
        const double res = std::max(
            std::abs(r.res35 - std::abs(b)),
            std::abs(r.res34 - std::abs(b + (e1 / e3 + k) * e1)));
        c.record({u1, u2, k}, res);
        ++done;
      }
    }
    {
      const HyperPoly f3(3, {2.0, 0.7, 3.0, -0.5, 2.5});
      const Divisor d3({-1.896226, 0.388037, 2.147157}, {-1, 1, -1});
      const HyperPoly f4(4, {6.0, 0.4, 11.0, -0.3, 6.0, 0.2, 2.0});
      const Divisor d4({-1.392526, -0.532074, 0.591547, 2.128330},
                       {-1, -1, 1, -1});
      const auto r3 = integrate_flow(f3, d3, {1.0, 1e-3});
      const auto r4 = integrate_flow(f4, d4, {1.0, 1e-3});
      {
        detail::CheckRunner c(suite, cfg, "flow_q1_drift", 2, 1e-6);
        c.record({3}, r3.q1_drift);
        c.record({4}, r4.q1_drift);
      }
      {
        detail::CheckRunner c(suite, cfg, "flow_abel_quadrature", 2, 1e-6);
        for (double a : r3.abel_max) c.record({3}, a);
        for (double a : r4.abel_max) c.record({4}, a);
      }
      {
        detail::CheckRunner c(suite, cfg, "flow_oscillator_residual", 2,
                              1e-4);
        c.record({3}, r3.psum_ode_residual);
        c.record({4}, r4.psum_ode_residual);
      }
      {
        detail::CheckRunner c(suite, cfg, "flow_convergence_order", 2, 0.3);
        const auto h3 = integrate_flow(f3, d3, {1.0, 5e-4});
        c.record({3}, std::abs(std::log2(r3.q1_drift / h3.q1_drift) - 4.0));
        const auto h4 = integrate_flow(f4, d4, {1.0, 5e-4});
        c.record({4}, std::abs(std::log2(r4.q1_drift / h4.q1_drift) - 4.0));
      }
      {
        // Q2 equals Q1 of the coefficient-reversed system; integrating
        // that system is where its conservation lives.
        detail::CheckRunner c(suite, cfg, "reciprocal_flow_q2", 1, 1e-6);
        const auto rs = reciprocal_system(f3, d3);
        const auto rr = integrate_flow(rs.g, rs.xi, {1.0, 1e-3});
        c.record({3}, rr.q1_drift);
      }
    }
    {
      detail::CheckRunner c(suite, cfg, "reciprocal_q2_identity", 300, 1e-11);
      long done = 0;
      while (done < c.samples()) {
        const int n = 3 + static_cast<int>(rng.next_u64() % 3);
        std::vector<double> coeffs(static_cast<std::size_t>(2 * n - 1));
        for (double& a : coeffs) a = rng.uniform(-1.0, 1.0);
        const HyperPoly f(n, coeffs);
        std::vector<double> x;
        std::vector<int> s;
        bool ok = true;
        for (int i = 0; i < n; ++i) {
          const double xi = rng.uniform(0.3, 3.0) * rng.sign();
          if (f(xi) < 0.0) {
            ok = false;
            break;
          }
          x.push_back(xi);
          s.push_back(rng.sign());
        }
        if (!ok) continue;
        Divisor d(x, s);
        if (d.min_gap() < 0.05) continue;
        const auto rs = reciprocal_system(f, d);
        const double q2 = conserved_Q2(f, d);
        const double q1g = conserved_Q1(rs.g, rs.xi);
        const double scale = std::max({1.0, std::abs(q2), std::abs(q1g)});
        c.record({static_cast<double>(n)}, std::abs(q2 - q1g) / scale);
        ++done;
      }
    }
  });
  return suite;
}

inline SuiteReport run_suite(const std::string& name, const RunConfig& cfg) {
  if (name == "elliptic") return run_elliptic(cfg);
  if (name == "spherical") return run_spherical(cfg);
  if (name == "su2") return run_su2(cfg);
  if (name == "ising") return run_ising(cfg);
  if (name == "abel") return run_abel(cfg);
  throw std::domain_error("unknown suite: " + name);
}

inline RunReport run_all(const RunConfig& cfg) {
  RunReport r;
  r.seed = cfg.seed;
  r.wall_ms = detail::wall_ms_of([&] {
    for (const char* name :
         {"elliptic", "spherical", "su2", "ising", "abel"}) {
      r.suites.push_back(run_suite(name, cfg));
      r.pass = r.pass && r.suites.back().pass;
    }
  });
  return r;
}

}  // namespace eit::verify
