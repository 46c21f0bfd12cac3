// eit command-line front end: point evaluation of the elliptic functions,
// spherical-triangle and rotation-identity checks, Ising star-triangle
// weights, divisor-flow integration, and the seeded verification suites.
//
// Exit codes: 0 success / all checks pass, 1 verification failure or
// runtime halt, 2 usage or domain error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eit/abel.hpp"
#include "eit/elliptic.hpp"
#include "eit/ising.hpp"
#include "eit/report.hpp"
#include "eit/spherical.hpp"
#include "eit/su2.hpp"
#include "eit/verify.hpp"

namespace {

using eit::verify::format_double;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::vector<double> parse_doubles(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

struct GridSpec {
  double u_begin = 0.0, u_step = 0.0, u_end = 0.0;
  double k = 0.0;
};

// "u=0:0.1:4,k=0.7"
GridSpec parse_grid(const std::string& spec) {
  GridSpec g;
  bool have_u = false, have_k = false;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) {
      throw std::domain_error("grid: expected key=value in '" + part + "'");
    }
    const std::string key = part.substr(0, eq);
    const std::string val = part.substr(eq + 1);
    if (key == "u") {
      std::stringstream vs(val);
      std::string a, b, c;
      if (!std::getline(vs, a, ':') || !std::getline(vs, b, ':') ||
          !std::getline(vs, c, ':')) {
        throw std::domain_error("grid: u needs begin:step:end");
      }
      g.u_begin = std::stod(a);
      g.u_step = std::stod(b);
      g.u_end = std::stod(c);
      have_u = true;
    } else if (key == "k") {
      g.k = std::stod(val);
      have_k = true;
    } else {
      throw std::domain_error("grid: unknown key '" + key + "'");
    }
  }
  if (!have_u || !have_k || g.u_step <= 0.0) {
    throw std::domain_error("grid: need u=begin:step:end and k=value");
  }
  return g;
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw std::domain_error("cannot open output file: " + path);
  return file;
}

int cmd_ell(double u, double k, const std::string& grid,
            const std::string& out_path) {
  std::ofstream file;
  std::ostream& os = open_output(file, out_path);
  if (!grid.empty()) {
    const GridSpec g = parse_grid(grid);
    os << "u,sn,cn,dn\n";
    for (double uu = g.u_begin; uu <= g.u_end + 1e-15 * g.u_step;
         uu += g.u_step) {
      const eit::JacobiTriple t = eit::jacobi(uu, g.k);
      os << format_double(uu) << "," << format_double(t.sn) << ","
         << format_double(t.cn) << "," << format_double(t.dn) << "\n";
    }
    return kExitPass;
  }
  const eit::JacobiTriple t = eit::jacobi(u, k);
  os << "sn = " << format_double(t.sn) << "\n"
     << "cn = " << format_double(t.cn) << "\n"
     << "dn = " << format_double(t.dn) << "\n"
     << "am = " << format_double(eit::amplitude(u, k)) << "\n";
  if (k < 1.0) {
    os << "K  = " << format_double(eit::complete_quarter_period(k)) << "\n";
  } else {
    os << "K  = inf\n";
  }
  return kExitPass;
}

int cmd_sphere(double u1, double u3, double k, const std::string& vectors) {
  eit::spherical::SphericalTriangle t;
  if (!vectors.empty()) {
    std::vector<eit::Vec3> n;
    std::stringstream ss(vectors);
    std::string part;
    while (std::getline(ss, part, ';')) {
      const auto v = parse_doubles(part);
      if (v.size() != 3) {
        throw std::domain_error("sphere: each vector needs three components");
      }
      n.push_back(eit::normalized({v[0], v[1], v[2]}));
    }
    if (n.size() != 3) {
      throw std::domain_error("sphere: need three ';'-separated vectors");
    }
    t = eit::spherical::triangle_from_vectors({n[0], n[1], n[2]}).triangle;
  } else {
    t = eit::spherical::triangle_from_spectral(u1, u3, k);
  }
  std::cout << "arcs   a = (" << format_double(t.a1) << ", "
            << format_double(t.a2) << ", " << format_double(t.a3) << ")\n"
            << "angles A = (" << format_double(t.A1) << ", "
            << format_double(t.A2) << ", " << format_double(t.A3) << ")\n"
            << "sine ratio k = " << format_double(t.k_ratio) << "\n"
            << "law residual = "
            << format_double(eit::spherical::law_residuals(t).max()) << "\n";
  if (t.k_ratio < 1.0) {
    const auto s = eit::spherical::spectral_coordinates(t);
    std::cout << "u = (" << format_double(s.u1) << ", " << format_double(s.u2)
              << ", " << format_double(s.u3) << "), sum-rule residual "
              << format_double(s.residual) << "\n";
  }
  return kExitPass;
}

int cmd_ybe(double u1, double u3, double k, const std::string& rep_name) {
  using eit::su2::Rep;
  std::vector<std::pair<std::string, Rep>> reps;
  if (rep_name == "half" || rep_name == "both") {
    reps.emplace_back("spin-1/2", Rep::spin_half);
  }
  if (rep_name == "one" || rep_name == "both") {
    reps.emplace_back("spin-1", Rep::spin_one);
  }
  if (reps.empty()) {
    throw std::domain_error("ybe: --rep must be half, one or both");
  }
  const auto t = eit::spherical::triangle_from_spectral(u1, u3, k);
  for (const auto& [name, rep] : reps) {
    std::cout << name << ": triangle identity residual = "
              << format_double(eit::su2::verify_triangle_identity(t, rep))
              << ", spectral residual = "
              << format_double(eit::su2::verify_ybe_spectral(u1, u3, k, rep))
              << ", transport residual = "
              << format_double(eit::su2::transport_compare(t, rep).residual)
              << "\n";
  }
  return kExitPass;
}

int cmd_ising(double v1, double v3, double k, bool crossing) {
  const eit::ising::CouplingSet c =
      crossing ? eit::ising::couplings_crossing(v1, v3, k)
               : eit::ising::couplings_from_v(v1, v3, k);
  const auto r = eit::ising::star_triangle_residual(c);
  std::cout << "K  = (" << format_double(c.K1) << ", " << format_double(c.K2)
            << ", " << format_double(c.K3) << ")\n"
            << "L* = (" << format_double(c.L1s) << ", "
            << format_double(c.L2s) << ", " << format_double(c.L3s) << ")\n"
            << "star-triangle residual = " << format_double(r.residual)
            << ", scalar = " << format_double(r.scalar.real());
  if (r.scalar.imag() != 0.0) {
    std::cout << " + " << format_double(r.scalar.imag()) << "i";
  }
  std::cout << "\n";
  if (!crossing) {
    std::cout << "difference-property residual = "
              << format_double(eit::ising::verify_difference_property(
                     v1, v3, k))
              << "\n";
  }
  return kExitPass;
}

int cmd_abel(double u1, double u2, double k) {
  const auto r = eit::abel::elliptic_identity_check(u1, u2, k);
  std::cout << "asserted combination residuals: "
            << format_double(r.res34) << ", " << format_double(r.res35)
            << "\n"
            << "measured constants: C1 = " << format_double(r.c1_measured)
            << ", C2 = " << format_double(r.c2_measured) << "\n"
            << "exact addition identities: "
            << format_double(r.res_exact_unit) << ", "
            << format_double(r.res_exact_sum) << "\n";
  return kExitPass;
}

int cmd_verify(const std::string& suite, const eit::verify::RunConfig& cfg,
               const std::string& format, const std::string& out_path) {
  std::ofstream file;
  std::ostream& os = open_output(file, out_path);
  bool pass;
  if (suite == "all") {
    const auto r = eit::verify::run_all(cfg);
    if (format == "json") {
      eit::verify::write_json(os, r);
    } else if (format == "csv") {
      eit::verify::write_csv(os, r);
    } else {
      eit::verify::write_text(os, r);
    }
    pass = r.pass;
  } else {
    const auto r = eit::verify::run_suite(suite, cfg);
    if (format == "json") {
      eit::verify::write_json(os, r);
    } else if (format == "csv") {
      eit::verify::write_csv(os, r);
    } else {
      eit::verify::write_text(os, r);
    }
    pass = r.pass;
  }
  return pass ? kExitPass : kExitFail;
}

int cmd_flow(int n, const std::string& coeffs_csv, const std::string& x0_csv,
             const std::string& signs_csv, double t_end, double dt,
             const std::string& out_path) {
  const auto coeffs = parse_doubles(coeffs_csv);
  const auto x0 = parse_doubles(x0_csv);
  if (n < 3 || coeffs.size() != static_cast<std::size_t>(2 * n - 1)) {
    throw std::domain_error("flow: --coeffs needs exactly 2n-1 values");
  }
  if (x0.size() != static_cast<std::size_t>(n)) {
    throw std::domain_error("flow: --x0 needs exactly n values");
  }
  std::vector<int> signs(static_cast<std::size_t>(n), 1);
  if (!signs_csv.empty()) {
    const auto sv = parse_doubles(signs_csv);
    if (sv.size() != static_cast<std::size_t>(n)) {
      throw std::domain_error("flow: --signs needs exactly n values");
    }
    for (std::size_t i = 0; i < sv.size(); ++i) {
      signs[i] = sv[i] < 0 ? -1 : 1;
    }
  }
  const eit::abel::HyperPoly f(n, coeffs);
  const eit::abel::Divisor d(x0, signs);
  const auto r = eit::abel::integrate_flow(f, d, {t_end, dt});

  std::ofstream file;
  std::ostream& os = open_output(file, out_path);
  eit::abel::write_trajectory_csv(os, r);
  std::cerr << "samples: " << r.samples.size() << ", sign flips: "
            << r.sign_flips << "\n"
            << "Q1 drift: " << format_double(r.q1_drift)
            << ", Q2 drift: " << format_double(r.q2_drift) << "\n";
  for (std::size_t k = 0; k < r.abel_max.size(); ++k) {
    std::cerr << "abel sum " << k
              << " max: " << format_double(r.abel_max[k]) << "\n";
  }
  if (r.status != eit::abel::FlowStatus::completed) {
    std::cerr << "halted: " << r.message << "\n";
    return kExitFail;
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"elliptic-function and integrable-identity toolkit"};
  app.require_subcommand(1);

  // ell
  auto* ell = app.add_subcommand("ell", "evaluate sn, cn, dn, am and K");
  double ell_u = 0.0, ell_k = 0.0;
  std::string ell_grid, ell_out;
  ell->add_option("--u", ell_u, "argument");
  ell->add_option("--k", ell_k, "modulus in [0,1]");
  ell->add_option("--grid", ell_grid, "grid spec u=begin:step:end,k=value");
  ell->add_option("--out", ell_out, "output path (default stdout)");

  // sphere
  auto* sph = app.add_subcommand(
      "sphere", "spherical triangle from spectral parameters or vectors");
  double sph_u1 = 0.0, sph_u3 = 0.0, sph_k = 0.0;
  std::string sph_vectors;
  sph->add_option("--u1", sph_u1, "first spectral parameter");
  sph->add_option("--u3", sph_u3, "third spectral parameter");
  sph->add_option("--k", sph_k, "modulus");
  sph->add_option("--vectors", sph_vectors,
                  "three unit vectors 'x,y,z;x,y,z;x,y,z'");

  // ybe
  auto* ybe = app.add_subcommand(
      "ybe", "rotation-identity residuals for the spectral triangle");
  double ybe_u1 = 0.0, ybe_u3 = 0.0, ybe_k = 0.0;
  std::string ybe_rep = "both";
  ybe->add_option("--u1", ybe_u1)->required();
  ybe->add_option("--u3", ybe_u3)->required();
  ybe->add_option("--k", ybe_k)->required();
  ybe->add_option("--rep", ybe_rep, "half, one or both");

  // ising
  auto* isg = app.add_subcommand(
      "ising", "couplings and star-triangle residuals");
  double isg_v1 = 0.0, isg_v3 = 0.0, isg_k = 0.0;
  bool isg_crossing = false;
  isg->add_option("--v1", isg_v1)->required();
  isg->add_option("--v3", isg_v3)->required();
  isg->add_option("--k", isg_k)->required();
  isg->add_flag("--crossing", isg_crossing,
                "use the crossing parameterization");

  // abel
  auto* abl = app.add_subcommand(
      "abel", "n = 3 elliptic addition-identity residuals");
  double abl_u1 = 0.0, abl_u2 = 0.0, abl_k = 0.0;
  abl->add_option("--u1", abl_u1)->required();
  abl->add_option("--u2", abl_u2)->required();
  abl->add_option("--k", abl_k)->required();

  // verify
  auto* ver = app.add_subcommand("verify", "run a verification suite");
  std::string ver_suite;
  std::uint64_t ver_seed = 42;
  long ver_samples = -1;
  double ver_tol = 0.0;
  std::string ver_format = "text", ver_out;
  ver->add_option("suite", ver_suite,
                  "elliptic, spherical, su2, ising, abel or all")
      ->required();
  ver->add_option("--seed", ver_seed, "random seed");
  ver->add_option("--samples", ver_samples, "override per-check samples");
  ver->add_option("--tol", ver_tol, "override per-check tolerance");
  ver->add_option("--format", ver_format, "json, csv or text");
  ver->add_option("--out", ver_out, "output path (default stdout)");

  // flow
  auto* flw = app.add_subcommand("flow", "integrate the divisor flow");
  int flw_n = 3;
  std::string flw_coeffs, flw_x0, flw_signs, flw_out;
  double flw_tend = 1.0, flw_dt = 1e-3;
  flw->add_option("--n", flw_n, "number of divisor points")->required();
  flw->add_option("--coeffs", flw_coeffs, "2n-1 comma-separated coefficients")
      ->required();
  flw->add_option("--x0", flw_x0, "n comma-separated initial points")
      ->required();
  flw->add_option("--signs", flw_signs, "n comma-separated branch signs");
  flw->add_option("--t-end", flw_tend, "integration time");
  flw->add_option("--dt", flw_dt, "step size in (0, 1e-2]");
  flw->add_option("--out", flw_out, "trajectory CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*ell) return cmd_ell(ell_u, ell_k, ell_grid, ell_out);
    if (*sph) return cmd_sphere(sph_u1, sph_u3, sph_k, sph_vectors);
    if (*ybe) return cmd_ybe(ybe_u1, ybe_u3, ybe_k, ybe_rep);
    if (*isg) return cmd_ising(isg_v1, isg_v3, isg_k, isg_crossing);
    if (*abl) return cmd_abel(abl_u1, abl_u2, abl_k);
    if (*ver) {
      if (ver_samples == 0) {
        std::cerr << "error: --samples must be positive\n";
        return kExitUsage;
      }
      if (ver_suite != "all" && ver_suite != "elliptic" &&
          ver_suite != "spherical" && ver_suite != "su2" &&
          ver_suite != "ising" && ver_suite != "abel") {
        std::cerr << "error: unknown suite '" << ver_suite << "'\n";
        return kExitUsage;
      }
      if (ver_format != "json" && ver_format != "csv" &&
          ver_format != "text") {
        std::cerr << "error: unknown format '" << ver_format << "'\n";
        return kExitUsage;
      }
      eit::verify::RunConfig cfg;
      cfg.seed = ver_seed;
      cfg.samples = ver_samples > 0 ? ver_samples : 0;
      cfg.tolerance = ver_tol;
      return cmd_verify(ver_suite, cfg, ver_format, ver_out);
    }
    if (*flw) {
      return cmd_flow(flw_n, flw_coeffs, flw_x0, flw_signs, flw_tend, flw_dt,
                      flw_out);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
