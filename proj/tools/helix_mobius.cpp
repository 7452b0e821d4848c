// helix_mobius: command-line surface over the helix Möbius-energy library.
//
// Subcommands: density, roots, series, sweep, verify, contour, curve.
// Output is CSV (default) or JSON (--format json), written to stdout or
// --output PATH. Floats are serialized round-trip exactly; identical
// arguments produce byte-identical output regardless of --threads.
//
// The environment variable HELIX_MOBIUS_SEED is reserved for future use and
// currently ignored: every computation in this tool is deterministic.
//
// Exit codes: 0 success, 1 computation failure (a machine-readable JSON
// error record is written to stderr), 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "helix/asymptotics.hpp"
#include "helix/contour_checks.hpp"
#include "helix/curve_energy.hpp"
#include "helix/errors.hpp"
#include "helix/parallel.hpp"
#include "helix/quadrature.hpp"
#include "helix/residue_series.hpp"
#include "helix/roots.hpp"
#include "helix/types.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  json body;  // JSON mirror (array or object)
};

void write_table(std::ostream& os, const Table& t, const std::string& format) {
  if (format == "json") {
    os << t.body.dump(2) << "\n";
    return;
  }
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    os << (i ? "," : "") << t.header[i];
  }
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? "," : "") << row[i];
    }
    os << "\n";
  }
}

json estimate_json(const helix::EnergyEstimate& e) {
  return json{{"rho", e.rho.value()},
              {"value", e.value},
              {"method", helix::method_name(e.method)},
              {"tail_bound", e.tail_bound},
              {"tolerance", e.tolerance}};
}

Table estimate_table(const helix::EnergyEstimate& e) {
  Table t;
  t.header = {"rho", "value", "method", "tail_bound", "tolerance"};
  t.rows.push_back({fmt17(e.rho.value()), fmt17(e.value),
                    helix::method_name(e.method), fmt17(e.tail_bound),
                    fmt17(e.tolerance)});
  t.body = estimate_json(e);
  return t;
}

const char* error_type_name(const std::exception& e) {
  if (dynamic_cast<const helix::DomainError*>(&e)) return "DomainError";
  if (dynamic_cast<const helix::OverflowGuardError*>(&e))
    return "OverflowGuardError";
  if (dynamic_cast<const helix::PoleProximityError*>(&e))
    return "PoleProximityError";
  if (dynamic_cast<const helix::ToleranceError*>(&e)) return "ToleranceError";
  if (dynamic_cast<const helix::ConvergenceError*>(&e))
    return "ConvergenceError";
  if (dynamic_cast<const helix::IndeterminateCountError*>(&e))
    return "IndeterminateCountError";
  if (dynamic_cast<const helix::DegenerateCurveError*>(&e))
    return "DegenerateCurveError";
  if (dynamic_cast<const helix::Error*>(&e)) return "Error";
  return "InternalError";
}

// ---------------------------------------------------------------- density
Table run_density(double rho, double tol) {
  return estimate_table(helix::integrate_density(helix::Pitch(rho), tol));
}

// ------------------------------------------------------------------ roots
Table run_roots(double rho, long kmax, bool oracle) {
  helix::Pitch pitch(rho);
  Table t;
  t.header = {"k",       "re_w",      "im_w",    "re_z",     "im_z",
              "rouche_r", "err_bound", "abs_err", "certified"};
  if (oracle) {
    t.header.push_back("re_oracle");
    t.header.push_back("im_oracle");
  }
  t.body = json::array();
  for (long k = 1; k <= kmax; ++k) {
    helix::StripRoot r = helix::refine_root(pitch, k);
    double abs_err = std::abs(r.z - r.w);
    std::vector<std::string> row = {
        std::to_string(k),      fmt17(r.w.real()),      fmt17(r.w.imag()),
        fmt17(r.z.real()),      fmt17(r.z.imag()),      fmt17(r.rouche_radius),
        fmt17(r.error_bound),   fmt17(abs_err),
        r.certified ? "true" : "false"};
    json jrow = {{"k", k},
                 {"re_w", r.w.real()},
                 {"im_w", r.w.imag()},
                 {"re_z", r.z.real()},
                 {"im_z", r.z.imag()},
                 {"rouche_r", r.rouche_radius},
                 {"err_bound", r.error_bound},
                 {"abs_err", abs_err},
                 {"certified", r.certified}};
    if (oracle) {
      helix::Complex zo = helix::curve_oracle(pitch, k);
      row.push_back(fmt17(zo.real()));
      row.push_back(fmt17(zo.imag()));
      jrow["re_oracle"] = zo.real();
      jrow["im_oracle"] = zo.imag();
    }
    t.rows.push_back(std::move(row));
    t.body.push_back(std::move(jrow));
  }
  return t;
}

// ----------------------------------------------------------------- series
Table run_series(double rho, double tol, bool approx, bool allow_cap) {
  helix::Pitch pitch(rho);
  helix::EnergyEstimate e = approx
                                ? helix::approx_sum(pitch, tol, !allow_cap)
                                : helix::residue_sum(pitch, tol, !allow_cap);
  return estimate_table(e);
}

// ------------------------------------------------------------------ sweep
Table run_sweep(double rho_min, double rho_max, long steps,
                const std::string& grid, double tol) {
  if (!(rho_min > 0.0) || !(rho_max >= rho_min)) {
    throw helix::DomainError("sweep: need 0 < rho-min <= rho-max");
  }
  if (steps < 1) throw helix::DomainError("sweep: steps must be >= 1");
  std::vector<double> rhos;
  rhos.reserve(static_cast<std::size_t>(steps));
  for (long i = 0; i < steps; ++i) {
    double f = steps == 1 ? 0.0
                          : static_cast<double>(i) /
                                static_cast<double>(steps - 1);
    double r = grid == "log"
                   ? rho_min * std::pow(rho_max / rho_min, f)
                   : rho_min + (rho_max - rho_min) * f;
    rhos.push_back(r);
  }
  helix::AsymptoticReport rep = helix::asymptotic_report(rhos, tol);

  Table t;
  t.header = {"rho",         "i_quad",       "i_res",
              "i_tilde",     "ref_small",    "ref_large_lo",
              "ref_large_hi", "ratio_small", "ratio_large"};
  t.body = json::array();
  auto opt_cell = [](const std::optional<double>& v) {
    return v ? fmt17(*v) : std::string();
  };
  auto opt_json = [](const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
  };
  for (const helix::SweepRow& r : rep.rows) {
    t.rows.push_back({fmt17(r.rho), opt_cell(r.i_quad), fmt17(r.i_res),
                      fmt17(r.i_tilde), fmt17(r.ref_small),
                      fmt17(r.ref_large_lo), fmt17(r.ref_large_hi),
                      opt_cell(r.ratio_small), opt_cell(r.ratio_large)});
    t.body.push_back({{"rho", r.rho},
                      {"i_quad", opt_json(r.i_quad)},
                      {"i_res", r.i_res},
                      {"i_tilde", r.i_tilde},
                      {"ref_small", r.ref_small},
                      {"ref_large_lo", r.ref_large_lo},
                      {"ref_large_hi", r.ref_large_hi},
                      {"ratio_small", opt_json(r.ratio_small)},
                      {"ratio_large", opt_json(r.ratio_large)}});
  }
  return t;
}

// ----------------------------------------------------------------- verify
struct VerifyRow {
  std::string suite;
  std::string check;
  bool passed;
  double margin;  // positive = slack, negative = violation
};

void verify_sandwich(std::vector<VerifyRow>& out) {
  for (double r : {2.0, 5.0, 10.0, 50.0}) {
    helix::Pitch pitch(r);
    helix::EnergyEstimate e = helix::integrate_density(pitch, 1e-10);
    double lo = kPi / (3.0 * (r * r + 1.0));
    double hi = kPi / (3.0 * r * r);
    double margin = std::min(e.value - lo, hi - e.value) / e.value;
    out.push_back({"sandwich", "rho=" + fmt17(r), margin > 0.0, margin});
  }
}

void verify_roots(std::vector<VerifyRow>& out) {
  for (double r : {0.02, 0.05}) {
    helix::Pitch pitch(r);
    double margin = 1.0;
    bool ok = true;
    for (long k = 1; k <= 200; ++k) {
      helix::StripRoot root = helix::refine_root(pitch, k);
      if (!root.certified) {
        ok = false;
        margin = -1.0;
        break;
      }
      double slack =
          (root.error_bound - std::abs(root.z - root.w)) / root.error_bound;
      margin = std::min(margin, slack);
      ok = ok && slack > 0.0;
    }
    out.push_back({"roots", "rho=" + fmt17(r) + ";k<=200", ok, margin});
  }
}

void verify_transfer(std::vector<VerifyRow>& out) {
  // |Im t| >= c |t| is exact mathematics for the closed-form terms at any
  // pitch; allow rounding slack at the constant.
  for (double r : {0.05, 0.5, 2.0}) {
    helix::Pitch pitch(r);
    std::vector<helix::Complex> terms;
    terms.reserve(500);
    for (long k = 1; k <= 500; ++k) {
      terms.push_back(helix::approx_term(pitch, k));
    }
    helix::TransferCheck chk = helix::transfer_check(terms);
    double margin = chk.c_min - helix::transfer_constant();
    out.push_back({"transfer", "w-terms;rho=" + fmt17(r) + ";k<=500",
                   chk.sign_ok && margin > -1e-12, margin});
  }
  // The refined roots obey the same bound only while they stay close to
  // the closed-form ones, i.e. at small pitch.
  for (double r : {0.01, 0.05}) {
    helix::Pitch pitch(r);
    std::vector<helix::Complex> terms;
    terms.reserve(500);
    for (long k = 1; k <= 500; ++k) {
      terms.push_back(helix::residue_term(pitch, helix::refine_root(pitch, k)));
    }
    helix::TransferCheck chk = helix::transfer_check(terms);
    double margin = chk.c_min - helix::transfer_constant();
    out.push_back({"transfer", "z-terms;rho=" + fmt17(r) + ";k<=500",
                   chk.sign_ok && margin > 0.0, margin});
  }
}

void verify_brackets(std::vector<VerifyRow>& out) {
  for (double r : {1e-6, 1e-4, 1e-2, 1.0}) {
    helix::Pitch pitch(r);
    double excess = helix::g_series(pitch, 1e-10) - std::log(1.0 / r);
    helix::Bracket b = helix::g_bracket(pitch);
    double margin = std::min(excess - b.lo, b.hi - excess);
    out.push_back({"brackets", "rho=" + fmt17(r), margin > 0.0, margin});
  }
}

void verify_cross(std::vector<VerifyRow>& out) {
  // Quadrature vs refined-root series.
  for (double r : {0.1, 0.5, 1.0}) {
    helix::Pitch pitch(r);
    double tol = r < 0.2 ? 1e-5 : 1e-6;
    helix::EnergyEstimate q = helix::integrate_density(pitch, 1e-10);
    helix::EnergyEstimate s = helix::residue_sum(pitch, tol, false);
    double budget = q.tolerance + s.tolerance;
    double margin = (budget - std::abs(q.value - s.value)) / q.value;
    out.push_back({"cross", "quad_vs_res;rho=" + fmt17(r), margin > 0.0,
                   margin});
  }
  // Refined series vs closed-form series: relative gap within the
  // certified transfer factor 11 sqrt(5) rho plus both tail budgets.
  for (double r : {0.01, 0.02}) {
    helix::Pitch pitch(r);
    double tol = 0.01;
    helix::EnergyEstimate s = helix::residue_sum(pitch, tol, false);
    helix::EnergyEstimate a = helix::approx_sum(pitch, tol, false);
    double bound =
        11.0 * std::sqrt(5.0) * r * a.value + s.tolerance + a.tolerance;
    double margin = (bound - std::abs(s.value - a.value)) / a.value;
    out.push_back({"cross", "res_vs_approx;rho=" + fmt17(r), margin > 0.0,
                   margin});
  }
}

Table run_verify(const std::string& suite, bool* any_fail) {
  std::vector<VerifyRow> rows;
  bool all = suite == "all";
  if (all || suite == "sandwich") verify_sandwich(rows);
  if (all || suite == "roots") verify_roots(rows);
  if (all || suite == "transfer") verify_transfer(rows);
  if (all || suite == "brackets") verify_brackets(rows);
  if (all || suite == "cross") verify_cross(rows);

  Table t;
  t.header = {"suite", "check", "passed", "margin"};
  t.body = json::array();
  *any_fail = false;
  for (const VerifyRow& r : rows) {
    if (!r.passed) *any_fail = true;
    t.rows.push_back(
        {r.suite, r.check, r.passed ? "true" : "false", fmt17(r.margin)});
    t.body.push_back({{"suite", r.suite},
                      {"check", r.check},
                      {"passed", r.passed},
                      {"margin", r.margin}});
  }
  return t;
}

// ---------------------------------------------------------------- contour
Table run_contour(double rho, long kmax) {
  helix::Pitch pitch(rho);
  Table t;
  t.header = {"k", "radius", "side", "arc", "closed_err", "roots_inside"};
  t.body = json::array();
  for (long k = 1; k <= kmax; ++k) {
    double side = helix::side_integral(pitch, k);
    double arc = helix::arc_integral(pitch, k);
    helix::ContourCheck chk = helix::closed_contour_check(pitch, k);
    t.rows.push_back({std::to_string(k), fmt17(helix::contour_abscissa(k)),
                      fmt17(side), fmt17(arc), fmt17(chk.discrepancy),
                      std::to_string(chk.roots_inside)});
    t.body.push_back({{"k", k},
                      {"radius", helix::contour_abscissa(k)},
                      {"side", side},
                      {"arc", arc},
                      {"closed_err", chk.discrepancy},
                      {"roots_inside", chk.roots_inside}});
  }
  return t;
}

// ------------------------------------------------------------------ curve
Table run_curve(const std::string& input, double j, double p, double tol,
                bool gradient, const std::vector<double>& at) {
  helix::SampledCurve curve = [&] {
    if (input == "-") return helix::read_curve_csv(std::cin);
    std::ifstream f(input);
    if (!f) throw helix::DomainError("curve: cannot open input " + input);
    return helix::read_curve_csv(f);
  }();

  std::vector<double> eval = at;
  if (eval.empty()) {
    std::size_t n = curve.params.size();
    if (curve.closed) --n;  // skip the duplicated endpoint
    eval.assign(curve.params.begin(), curve.params.begin() + n);
  }

  Table t;
  t.body = json::array();
  if (gradient) {
    t.header = {"t", "gx", "gy", "gz"};
    for (double s : eval) {
      helix::Vec3 g = helix::mobius_gradient_field(curve, s, tol);
      t.rows.push_back({fmt17(s), fmt17(g[0]), fmt17(g[1]), fmt17(g[2])});
      t.body.push_back({{"t", s}, {"gx", g[0]}, {"gy", g[1]}, {"gz", g[2]}});
    }
  } else {
    t.header = {"s", "value", "j", "p"};
    for (double s : eval) {
      helix::EnergyDensityValue v =
          helix::pointwise_energy(curve, s, j, p, tol);
      t.rows.push_back(
          {fmt17(v.s), fmt17(v.value), fmt17(v.j), fmt17(v.p)});
      t.body.push_back(
          {{"s", v.s}, {"value", v.value}, {"j", v.j}, {"p", v.p}});
    }
  }
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "helix_mobius: rescaled Moebius energy of a helix by quadrature, "
      "residue series, and closed-form series. HELIX_MOBIUS_SEED is "
      "reserved and ignored (all computations are deterministic)."};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "csv";
  std::string output;
  int threads = 0;
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--output", output, "Write output to PATH (default stdout)");
  app.add_option("--threads", threads,
                 "Worker threads (0 = all cores; affects speed only)")
      ->check(CLI::Range(0, 4096));

  // density
  auto* density = app.add_subcommand("density", "I(rho) by quadrature");
  double d_rho = 1.0;
  double d_tol = 1e-10;
  density->add_option("--rho", d_rho, "Helix pitch")->required();
  density->add_option("--tol", d_tol, "Absolute tolerance")
      ->capture_default_str();

  // roots
  auto* roots = app.add_subcommand("roots", "Denominator zeros per strip");
  double r_rho = 0.05;
  long r_kmax = 10;
  bool r_oracle = false;
  roots->add_option("--rho", r_rho, "Helix pitch")->required();
  roots->add_option("--kmax", r_kmax, "Largest strip index")
      ->check(CLI::Range(1L, 100000000L))
      ->capture_default_str();
  roots->add_flag("--oracle", r_oracle,
                  "Append derivative-free oracle root columns");

  // series
  auto* series = app.add_subcommand("series", "I(rho) by residue series");
  double s_rho = 1.0;
  double s_tol = 1e-8;
  bool s_approx = false;
  bool s_allow_cap = false;
  series->add_option("--rho", s_rho, "Helix pitch")->required();
  series->add_option("--tol", s_tol, "Absolute tolerance")
      ->capture_default_str();
  series->add_flag("--approx", s_approx,
                   "Sum over closed-form approximate roots instead");
  series->add_flag("--allow-cap", s_allow_cap,
                   "At the cutoff cap, report the honest tail bound instead "
                   "of failing");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Pitch sweep with reference laws");
  double w_min = 1e-3, w_max = 1.0, w_tol = 1e-6;
  long w_steps = 10;
  std::string w_grid = "log";
  sweep->add_option("--rho-min", w_min, "Smallest pitch")->required();
  sweep->add_option("--rho-max", w_max, "Largest pitch")->required();
  sweep->add_option("--steps", w_steps, "Number of grid points")
      ->check(CLI::Range(1L, 100000L))
      ->capture_default_str();
  sweep->add_option("--grid", w_grid, "Grid spacing")
      ->check(CLI::IsMember({"log", "linear"}))
      ->capture_default_str();
  sweep->add_option("--tol", w_tol, "Series tolerance")->capture_default_str();

  // verify
  auto* verify = app.add_subcommand("verify", "Self-check suites");
  std::string v_suite = "all";
  verify->add_option("--suite", v_suite, "Suite to run")
      ->check(CLI::IsMember(
          {"all", "sandwich", "roots", "transfer", "brackets", "cross"}))
      ->capture_default_str();

  // contour
  auto* contour = app.add_subcommand("contour", "Contour-integral checks");
  double c_rho = 0.5;
  long c_kmax = 6;
  contour->add_option("--rho", c_rho, "Helix pitch")->required();
  contour->add_option("--kmax", c_kmax, "Largest contour index")
      ->check(CLI::Range(1L, 64L))
      ->capture_default_str();

  // curve
  auto* curve = app.add_subcommand("curve", "Sampled-curve energies");
  std::string u_input;
  double u_j = 2.0, u_p = 1.0, u_tol = 1e-8;
  bool u_gradient = false;
  std::vector<double> u_at;
  curve->add_option("--input", u_input, "Curve CSV (t,x,y,z; - for stdin)")
      ->required();
  curve->add_option("--j", u_j, "Exponent j")->capture_default_str();
  curve->add_option("--p", u_p, "Exponent p")->capture_default_str();
  curve->add_option("--tol", u_tol, "Quadrature tolerance")
      ->capture_default_str();
  curve->add_flag("--gradient", u_gradient,
                  "Emit the first-variation field instead of the density");
  curve->add_option("--at", u_at,
                    "Evaluate at these parameters (default: all samples)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  helix::set_max_threads(threads);

  try {
    Table table;
    bool verify_failed = false;
    if (*density) {
      table = run_density(d_rho, d_tol);
    } else if (*roots) {
      table = run_roots(r_rho, r_kmax, r_oracle);
    } else if (*series) {
      table = run_series(s_rho, s_tol, s_approx, s_allow_cap);
    } else if (*sweep) {
      table = run_sweep(w_min, w_max, w_steps, w_grid, w_tol);
    } else if (*verify) {
      table = run_verify(v_suite, &verify_failed);
    } else if (*contour) {
      table = run_contour(c_rho, c_kmax);
    } else if (*curve) {
      table = run_curve(u_input, u_j, u_p, u_tol, u_gradient, u_at);
    }

    if (output.empty()) {
      write_table(std::cout, table, format);
    } else {
      std::ofstream f(output);
      if (!f) throw helix::DomainError("cannot open output " + output);
      write_table(f, table, format);
    }
    return verify_failed ? 1 : 0;
  } catch (const std::exception& e) {
    json record = {
        {"error", {{"type", error_type_name(e)}, {"message", e.what()}}}};
    std::cerr << record.dump() << "\n";
    return 1;
  }
}
