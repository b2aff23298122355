#include "cli_app.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qrgxy/entanglement.hpp"
#include "qrgxy/parallel.hpp"

namespace qrgxy::cli {

namespace {

std::vector<double> linspace(double lo, double hi, int points) {
  std::vector<double> g(points);
  for (int k = 0; k < points; ++k)
    g[k] = lo + (hi - lo) * double(k) / double(points - 1);
  return g;
}

std::string join_iterations(const std::vector<int>& ns) {
  std::string s;
  for (std::size_t k = 0; k < ns.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(ns[k]);
  }
  return s;
}

void write_output(const RunConfig& cfg, const std::string& bytes) {
  if (cfg.out_path.empty()) {
    std::cout << bytes;
    return;
  }
  std::ofstream f(cfg.out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + cfg.out_path);
  f << bytes;
}

std::string csv_preamble(const RunConfig& cfg) {
  std::string s = kVersionLine;
  s += '\n';
  s += "# config: ";
  s += canonical_config(cfg);
  s += '\n';
  return s;
}

// ---------------------------------------------------------------- svg ----

struct SvgSeries {
  std::string label;
  std::string color;
  std::vector<double> x, y;
};

std::string render_svg(const std::string& title, const std::vector<SvgSeries>& series) {
  constexpr double kW = 800, kH = 600, kPad = 60;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : series)
    for (std::size_t k = 0; k < s.x.size(); ++k) {
      xmin = std::min(xmin, s.x[k]);
      xmax = std::max(xmax, s.x[k]);
      ymin = std::min(ymin, s.y[k]);
      ymax = std::max(ymax, s.y[k]);
    }
  if (!(xmax > xmin)) xmax = xmin + 1.0;
  if (!(ymax > ymin)) ymax = ymin + 1.0;

  auto px = [&](double x) { return kPad + (x - xmin) / (xmax - xmin) * (kW - 2 * kPad); };
  auto py = [&](double y) { return kH - kPad - (y - ymin) / (ymax - ymin) * (kH - 2 * kPad); };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return std::string(buf);
  };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\">\n";
  o << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
  o << "<rect x=\"" << kPad << "\" y=\"" << kPad << "\" width=\"" << kW - 2 * kPad
    << "\" height=\"" << kH - 2 * kPad << "\" fill=\"none\" stroke=\"black\"/>\n";
  o << "<text x=\"" << kW / 2 << "\" y=\"30\" text-anchor=\"middle\" font-size=\"16\">" << title
    << "</text>\n";
  o << "<text x=\"" << kPad << "\" y=\"" << kH - kPad + 20 << "\" font-size=\"12\">" << num(xmin)
    << "</text>\n";
  o << "<text x=\"" << kW - kPad << "\" y=\"" << kH - kPad + 20
    << "\" text-anchor=\"end\" font-size=\"12\">" << num(xmax) << "</text>\n";
  o << "<text x=\"" << kPad - 5 << "\" y=\"" << kH - kPad
    << "\" text-anchor=\"end\" font-size=\"12\">" << num(ymin) << "</text>\n";
  o << "<text x=\"" << kPad - 5 << "\" y=\"" << kPad << "\" text-anchor=\"end\" font-size=\"12\">"
    << num(ymax) << "</text>\n";
  double ly = kPad + 14;
  for (const auto& s : series) {
    o << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < s.x.size(); ++k)
      o << num(px(s.x[k])) << ',' << num(py(s.y[k])) << ' ';
    o << "\"/>\n";
    o << "<text x=\"" << kW - kPad - 5 << "\" y=\"" << ly
      << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << s.color << "\">" << s.label
      << "</text>\n";
    ly += 16;
  }
  o << "</svg>\n";
  return o.str();
}

const char* series_color(std::size_t k) {
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  return kColors[k % 8];
}

void maybe_write_svg(const RunConfig& cfg, const std::string& title,
                     const std::vector<SvgSeries>& series) {
  if (!cfg.emit_svg) return;
  std::ofstream f(cfg.out_path + ".svg", std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + cfg.out_path + ".svg");
  f << render_svg(title, series);
}

// ------------------------------------------------------------- verify ----

int run_verify(const RunConfig& cfg, std::ostream& human) {
  const std::vector<double> grid = linspace(cfg.gamma_min, cfg.gamma_max, cfg.points);

  struct PointChecks {
    GroundSpaceReport ground;
    double eta_diff = 0.0;
    double gamma_prime_diff = 0.0;
    bool eta_ok = false, gp_ok = false;
  };
  std::vector<PointChecks> results(grid.size());

  parallel_for(grid.size(), cfg.threads, [&](std::size_t k) {
    PointChecks& r = results[k];
    const double g = grid[k];
    r.ground = verify_ground_space(Couplings{1.0, g}, cfg.tol);

    const EtaFactors closed = eta_factors_closed(g);
    const EtaFactors op = eta_factors_operator(g);
    auto diff_with_sign = [&](double s) {
      return std::max({std::abs(closed.eta1x - s * op.eta1x), std::abs(closed.eta1y - s * op.eta1y),
                       std::abs(closed.etacx - s * op.etacx), std::abs(closed.etacy - s * op.etacy)});
    };
    r.eta_diff = std::min(diff_with_sign(1.0), diff_with_sign(-1.0));
    r.eta_ok = r.eta_diff <= cfg.tol;

    const double gp = rg_step(g).gamma_prime;
    const double num = (1.0 + g) * op.etacx * op.etacx - (1.0 - g) * op.etacy * op.etacy;
    const double den = (1.0 + g) * op.etacx * op.etacx + (1.0 - g) * op.etacy * op.etacy;
    r.gamma_prime_diff = std::abs(gp - num / den);
    r.gp_ok = r.gamma_prime_diff <= cfg.tol;
  });

  const std::vector<double> roots = fixed_points(-1.2, 1.2);
  const double fp_tol = std::max(cfg.tol, 1e-8);
  bool fp_ok = roots.size() == 3;
  double fp_dev = 0.0;
  if (fp_ok) {
    const double expected[3] = {-1.0, 0.0, 1.0};
    for (int k = 0; k < 3; ++k) fp_dev = std::max(fp_dev, std::abs(roots[k] - expected[k]));
    fp_ok = fp_dev <= fp_tol;
  }

  double max_energy_err = 0.0, max_proj = 0.0, max_resid = 0.0, max_eta = 0.0, max_gp = 0.0;
  bool ground_ok = true, eta_ok = true, gp_ok = true, substituted = false;
  std::vector<std::string> failures;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const PointChecks& r = results[k];
    max_energy_err = std::max(max_energy_err, r.ground.energy_rel_error);
    max_proj = std::max(max_proj, r.ground.projector_dist);
    max_resid = std::max(max_resid, std::max(r.ground.residual1, r.ground.residual2));
    max_eta = std::max(max_eta, r.eta_diff);
    max_gp = std::max(max_gp, r.gamma_prime_diff);
    substituted = substituted || r.ground.numeric_substituted;
    if (!r.ground.pass) {
      ground_ok = false;
      failures.push_back("ground_space gamma=" + format_double(grid[k]));
    }
    if (!r.eta_ok) {
      eta_ok = false;
      failures.push_back("eta_consistency gamma=" + format_double(grid[k]));
    }
    if (!r.gp_ok) {
      gp_ok = false;
      failures.push_back("gamma_prime_consistency gamma=" + format_double(grid[k]));
    }
  }
  if (!fp_ok) failures.push_back("fixed_points");
  const bool pass = ground_ok && eta_ok && gp_ok && fp_ok;

  human << "qrg-xy2d verify: gamma in [" << format_double(cfg.gamma_min) << ", "
        << format_double(cfg.gamma_max) << "], " << cfg.points << " points, tol "
        << format_double(cfg.tol) << "\n";
  human << "  ground space      max energy rel err " << format_double(max_energy_err)
        << ", max projector dist " << format_double(max_proj) << ", max residual "
        << format_double(max_resid) << (ground_ok ? "  [ok]" : "  [FAIL]") << "\n";
  if (substituted) human << "  warning: closed-form doublet was replaced by the numeric one\n";
  human << "  eta factors       max |closed - operator| " << format_double(max_eta)
        << (eta_ok ? "  [ok]" : "  [FAIL]") << "\n";
  human << "  coupling map      max |closed - eta route| " << format_double(max_gp)
        << (gp_ok ? "  [ok]" : "  [FAIL]") << "\n";
  human << "  fixed points      ";
  for (double r : roots) human << format_double(r) << ' ';
  human << "(deviation " << format_double(fp_dev) << ")" << (fp_ok ? "  [ok]" : "  [FAIL]") << "\n";
  for (const std::string& f : failures) human << "  failed: " << f << "\n";
  human << (pass ? "verify: PASS" : "verify: FAIL") << "\n";

  if (!cfg.out_path.empty()) {
    nlohmann::json j;
    j["version"] = kVersionLine;
    j["config"] = canonical_config(cfg);
    j["pass"] = pass;
    j["max_energy_rel_error"] = max_energy_err;
    j["max_projector_distance"] = max_proj;
    j["max_residual"] = max_resid;
    j["max_eta_difference"] = max_eta;
    j["max_gamma_prime_difference"] = max_gp;
    j["fixed_points"] = roots;
    j["fixed_point_deviation"] = fp_dev;
    j["numeric_substituted"] = substituted;
    j["failures"] = failures;
    nlohmann::json pts = nlohmann::json::array();
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const GroundSpaceReport& g = results[k].ground;
      pts.push_back({{"gamma", g.gamma},
                     {"energy_rel_error", g.energy_rel_error},
                     {"degeneracy", g.degeneracy},
                     {"projector_distance", g.projector_dist},
                     {"residual1", g.residual1},
                     {"residual2", g.residual2},
                     {"eta_difference", results[k].eta_diff},
                     {"pass", g.pass && results[k].eta_ok && results[k].gp_ok}});
    }
    j["points"] = pts;
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + cfg.out_path);
    f << j.dump(2) << "\n";
  }
  return pass ? kOk : kVerifyFailed;
}

// --------------------------------------------------------------- flow ----

int run_flow(const RunConfig& cfg, std::ostream&) {
  const std::vector<double> grid = linspace(cfg.gamma_min, cfg.gamma_max, cfg.points);
  const int n_max = *std::max_element(cfg.iterations.begin(), cfg.iterations.end());

  std::vector<RGTrajectory> trajectories(grid.size());
  parallel_for(grid.size(), cfg.threads,
               [&](std::size_t k) { trajectories[k] = rg_iterate(grid[k], n_max); });

  std::string out = csv_preamble(cfg);
  out += "gamma0,n,gamma_n,j_cumulative\n";
  for (std::size_t k = 0; k < grid.size(); ++k)
    for (std::size_t n = 0; n < trajectories[k].steps.size(); ++n) {
      out += format_double(grid[k]);
      out += ',';
      out += std::to_string(n);
      out += ',';
      out += format_double(trajectories[k].steps[n].gamma);
      out += ',';
      out += format_double(trajectories[k].steps[n].j_cumulative);
      out += '\n';
    }
  for (double r : fixed_points(cfg.gamma_min, cfg.gamma_max)) {
    out += "# fixed_point ";
    out += format_double(r);
    out += '\n';
  }
  write_output(cfg, out);
  return kOk;
}

// -------------------------------------------------- concurrence curves ----

int run_concurrence(const RunConfig& cfg, std::ostream&) {
  const std::vector<double> grid = linspace(cfg.gamma_min, cfg.gamma_max, cfg.points);
  std::vector<std::vector<double>> curves(cfg.iterations.size(),
                                          std::vector<double>(grid.size()));
  parallel_for(grid.size(), cfg.threads, [&](std::size_t k) {
    for (std::size_t c = 0; c < cfg.iterations.size(); ++c)
      curves[c][k] = cg_after_iterations(grid[k], cfg.iterations[c]);
  });

  std::string out = csv_preamble(cfg);
  out += "gamma";
  for (int n : cfg.iterations) {
    out += ",cg_";
    out += std::to_string(n);
  }
  out += '\n';
  for (std::size_t k = 0; k < grid.size(); ++k) {
    out += format_double(grid[k]);
    for (std::size_t c = 0; c < cfg.iterations.size(); ++c) {
      out += ',';
      out += format_double(curves[c][k]);
    }
    out += '\n';
  }
  write_output(cfg, out);

  std::vector<SvgSeries> series;
  for (std::size_t c = 0; c < cfg.iterations.size(); ++c)
    series.push_back({"cg_" + std::to_string(cfg.iterations[c]), series_color(c), grid, curves[c]});
  maybe_write_svg(cfg, "geometric average concurrence vs gamma", series);
  return kOk;
}

// --------------------------------------------------- derivative curves ----

int run_derivative(const RunConfig& cfg, std::ostream&) {
  const std::vector<double> grid = linspace(cfg.gamma_min, cfg.gamma_max, cfg.points);
  std::vector<DerivativeCurve> curves(cfg.iterations.size());
  for (std::size_t c = 0; c < cfg.iterations.size(); ++c)
    curves[c] = derivative_curve(cfg.iterations[c], grid, cfg.fd_step, cfg.threads);

  std::string out = csv_preamble(cfg);
  out += "gamma";
  for (int n : cfg.iterations) {
    out += ",abs_dcg_";
    out += std::to_string(n);
  }
  out += '\n';
  for (std::size_t k = 0; k < grid.size(); ++k) {
    out += format_double(grid[k]);
    for (std::size_t c = 0; c < cfg.iterations.size(); ++c) {
      out += ',';
      out += format_double(curves[c].values[k]);
    }
    out += '\n';
  }
  for (std::size_t c = 0; c < cfg.iterations.size(); ++c) {
    out += "# peak n=";
    out += std::to_string(cfg.iterations[c]);
    out += " gamma_max=";
    out += format_double(curves[c].gamma_max);
    out += " d_max=";
    out += format_double(curves[c].d_max);
    out += '\n';
  }
  write_output(cfg, out);

  std::vector<SvgSeries> series;
  for (std::size_t c = 0; c < cfg.iterations.size(); ++c)
    series.push_back({"abs_dcg_" + std::to_string(cfg.iterations[c]), series_color(c), grid,
                      curves[c].values});
  maybe_write_svg(cfg, "|d cg / d gamma| vs gamma", series);
  return kOk;
}

// ------------------------------------------------------------- scaling ----

int run_scaling(const RunConfig& cfg, std::ostream&) {
  if (cfg.iterations.size() < 3) {
    std::cerr << "qrg-xy2d: scaling needs at least 3 iteration counts\n";
    return kNumericalDegeneracy;
  }
  const ScalingFit fit = scaling_fits(cfg.iterations, cfg.fd_step);

  std::string out = csv_preamble(cfg);
  out += "n,N,gamma_max,d_max\n";
  for (const ScalingPoint& p : fit.points) {
    out += std::to_string(p.n);
    out += ',';
    out += format_double(RGTrajectory::effective_size(std::size_t(p.n)));
    out += ',';
    out += format_double(p.gamma_max);
    out += ',';
    out += format_double(p.d_max);
    out += '\n';
  }
  out += "# fit_dmax slope=" + format_double(fit.dmax_fit.slope) +
         " intercept=" + format_double(fit.dmax_fit.intercept) +
         " r2=" + format_double(fit.dmax_fit.r2) + '\n';
  out += "# fit_gmax slope=" + format_double(fit.gmax_fit.slope) +
         " intercept=" + format_double(fit.gmax_fit.intercept) +
         " r2=" + format_double(fit.gmax_fit.r2) + '\n';
  out += "# theta " + format_double(fit.theta) + '\n';
  out += "# prefactor " + format_double(fit.prefactor) + '\n';
  write_output(cfg, out);

  std::vector<SvgSeries> series(2);
  series[0].label = "ln d_max";
  series[0].color = series_color(0);
  series[1].label = "ln(gamma_c - gamma_max)";
  series[1].color = series_color(1);
  for (const ScalingPoint& p : fit.points) {
    series[0].x.push_back(p.ln_size);
    series[0].y.push_back(std::log(p.d_max));
    series[1].x.push_back(p.ln_size);
    series[1].y.push_back(std::log(-p.gamma_max));
  }
  maybe_write_svg(cfg, "finite-size scaling of the derivative peak", series);
  return kOk;
}

}  // namespace

std::string format_double(double x) {
  if (x == 0.0) x = 0.0;  // normalize -0
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string canonical_config(const RunConfig& cfg) {
  std::string s;
  s += "command=" + cfg.command;
  s += " gamma_min=" + format_double(cfg.gamma_min);
  s += " gamma_max=" + format_double(cfg.gamma_max);
  s += " points=" + std::to_string(cfg.points);
  s += " iterations=" + join_iterations(cfg.iterations);
  s += " fd_step=" + format_double(cfg.fd_step);
  s += " tol=" + format_double(cfg.tol);
  s += " svg=" + std::to_string(int(cfg.emit_svg));
  return s;
}

std::string validate(const RunConfig& cfg) {
  if (!(cfg.gamma_min < cfg.gamma_max)) return "gamma range requires gamma_min < gamma_max";
  if (std::abs(cfg.gamma_min) > 1.5 || std::abs(cfg.gamma_max) > 1.5)
    return "gamma range must lie inside [-1.5, 1.5]";
  if (cfg.points < 3) return "points must be >= 3";
  if (cfg.iterations.empty()) return "iterations list must not be empty";
  for (int n : cfg.iterations)
    if (n < 0 || n > 64) return "iterations must be in 0..64";
  if (!(cfg.fd_step > 0.0)) return "fd-step must be > 0";
  if (!(cfg.tol > 0.0)) return "tol must be > 0";
  if (cfg.threads < 1) return "threads must be >= 1";
  if (cfg.emit_svg && cfg.out_path.empty()) return "--svg requires --out";
  if (cfg.emit_svg && cfg.command != "concurrence" && cfg.command != "derivative" &&
      cfg.command != "scaling")
    return "--svg is only available for concurrence, derivative and scaling";
  return {};
}

int run_command(const RunConfig& cfg, std::ostream& human) {
  const std::string err = validate(cfg);
  if (!err.empty()) {
    std::cerr << "qrg-xy2d: config error: " << err << "\n";
    return kConfigError;
  }
  try {
    if (cfg.command == "verify") return run_verify(cfg, human);
    if (cfg.command == "flow") return run_flow(cfg, human);
    if (cfg.command == "concurrence") return run_concurrence(cfg, human);
    if (cfg.command == "derivative") return run_derivative(cfg, human);
    if (cfg.command == "scaling") return run_scaling(cfg, human);
  } catch (const std::invalid_argument& e) {
    std::cerr << "qrg-xy2d: config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "qrg-xy2d: " << e.what() << "\n";
    return kNumericalDegeneracy;
  }
  std::cerr << "qrg-xy2d: unknown command: " << cfg.command << "\n";
  return kConfigError;
}

}  // namespace qrgxy::cli
