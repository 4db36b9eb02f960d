#include "cli_app.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cli_config.hpp"
#include "meridian/dynamics.hpp"
#include "meridian/format.hpp"

namespace meridian::cli {

namespace {

using Json = nlohmann::ordered_json;

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot open output file '" + out_path + "'");
  }
  out << content;
}

std::string csv_row(std::initializer_list<double> vals) {
  std::string row;
  bool first = true;
  for (double v : vals) {
    if (!first) row += ',';
    row += format_double(v);
    first = false;
  }
  row += '\n';
  return row;
}

const MeridionalField& require_meridional(const LoadedConfig& cfg, const std::string& cmd) {
  if (!cfg.field) {
    throw ConfigError(cmd + ": a bihyperbolic source is not a meridional field; "
                            "only 'verify' and 'series' apply to it");
  }
  return *cfg.field;
}

void print_warnings(const LoadedConfig& cfg) {
  for (const auto& w : cfg.warnings) {
    std::cerr << "warning: " << w << "\n";
  }
}

struct ResidualRow {
  std::string name;
  double max_residual;
  double threshold;
};

/// Deterministic azimuth sweep so the 3-D residuals see x2 != 0 planes too.
Azimuth sweep_azimuth(int k) {
  const double theta = 0.37 + 0.61 * k;
  return {std::cos(theta), std::sin(theta)};
}

std::vector<ResidualRow> verify_meridional(const MeridionalField& f, double x0_min, double x0_max,
                                           double rho_min, double rho_max, int grid) {
  const auto profile = f.profile_ptr();
  const ScalarField3 h = [profile](double x0, double x1, double x2) {
    return profile->value(x0, std::hypot(x1, x2));
  };
  const ScalarField2 g{[profile](double x0, double rho) { return profile->value(x0, rho); },
                       [profile](double x0, double rho) { return profile->gradient(x0, rho); }};
  // stream profile: analytic Stokes-Beltrami gradient, no quadrature needed
  const ScalarField2 gh = stokes_stream_profile(f, {x0_min, rho_max}, 1e-9, true);

  double r_cont = 0, r_epd = 0, r_stokes = 0, r_div = 0, r_curl = 0, r_crit = 0;
  int k = 0;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j, ++k) {
      const double x0 = x0_min + (x0_max - x0_min) * i / (grid - 1.0);
      const double rho = rho_min + (rho_max - rho_min) * j / (grid - 1.0);
      const MeridianValue m{x0, rho};
      const ReducedQuaternion p = embed(m, sweep_azimuth(k));

      r_cont = std::max(r_cont, continuity_residual(f, p));
      r_epd = std::max(r_epd, epd_residual(g, f.alpha(), m));
      r_stokes = std::max(r_stokes, stokes_residual(gh, f.alpha(), m));
      r_crit = std::max(r_crit, meridional_criterion_residual(h, p));

      const double s0 = fd::step1(x0);
      const double sr = fd::step1(rho);
      const auto vx_p = f.velocity({x0 + s0, rho});
      const auto vx_m = f.velocity({x0 - s0, rho});
      const auto vr_p = f.velocity({x0, rho + sr});
      const auto vr_m = f.velocity({x0, rho - sr});
      const auto vc = f.velocity(m);
      const double dv0_dx0 = (vx_p[0] - vx_m[0]) / (2.0 * s0);
      const double dvr_drho = (vr_p[1] - vr_m[1]) / (2.0 * sr);
      const double dv0_drho = (vr_p[0] - vr_m[0]) / (2.0 * sr);
      const double dvr_dx0 = (vx_p[1] - vx_m[1]) / (2.0 * s0);
      r_div = std::max(r_div,
                       std::abs(rho * (dv0_dx0 + dvr_drho) - (f.alpha() - 1.0) * vc[1]));
      r_curl = std::max(r_curl, std::abs(dv0_drho - dvr_dx0));
    }
  }
  return {
      {"continuity", r_cont, 1e-5},          {"epd-potential", r_epd, 1e-5},
      {"stokes-stream", r_stokes, 1e-5},     {"vekua-divergence", r_div, 1e-5},
      {"vekua-curl", r_curl, 1e-5},          {"meridional-criterion", r_crit, 1e-5},
  };
}

std::vector<ResidualRow> verify_bi(const BiSeries& s, double x0_min, double x0_max, double q_min,
                                   double q_max, int grid) {
  const ScalarField3 h = bi_potential(s);
  double r_bi = 0, r_sys = 0;
  const double x0_mid = 0.5 * (x0_min + x0_max);
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const double x1 = q_min + (q_max - q_min) * i / (grid - 1.0);
      const double x2 = q_min + (q_max - q_min) * j / (grid - 1.0);
      const ReducedQuaternion p{x0_mid, x1, x2};
      r_bi = std::max(r_bi, bihyperbolic_residual(h, s.alpha1, s.alpha2, p));
      r_sys = std::max(r_sys, biplanar_system_residual(h, s.alpha1, s.alpha2, p));
    }
  }
  return {{"bihyperbolic", r_bi, 1e-5}, {"biplanar-system", r_sys, 1e-5}};
}

Json equilibrium_to_json(const EquilibriumReport& rep, const Json& mu) {
  Json j;
  j["mu"] = mu;
  j["x0"] = rep.location.s;
  j["rho"] = rep.location.t;
  j["lambda0"] = rep.eigenvalues.lambda0;
  j["lambda1"] = rep.eigenvalues.lambda1;
  j["lambda2"] = rep.eigenvalues.lambda2;
  j["degenerate"] = rep.degenerate;
  j["hyperbolic"] = rep.hyperbolic;
  j["index"] = rep.index;
  j["degree_of_instability"] = rep.degree_of_instability;
  return j;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

int dispatch(CLI::App& app, const std::vector<std::string>& args) {
  // CLI11 wants argv-style reversed vector
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help
      std::cout << app.help();
      return 0;
    }
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return -1;  // parsed, caller continues
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"potential meridional fields in cylindrically layered media"};
  app.require_subcommand(1);

  std::string config_path, out_path, format = "csv", eq_format = "json", param_pointer;
  std::vector<double> point, box, range;
  double tol = 1e-10, t_end = 0.0, arclen = 0.0, x2_slice = 1.0;
  int grid = 20, steps = 1;
  std::string points_file;

  auto add_common = [&](CLI::App* cmd, bool needs_config = true) {
    auto* opt = cmd->add_option("--config", config_path, "JSON field configuration");
    if (needs_config) opt->required();
    cmd->add_option("--out", out_path, "output file (default: stdout)");
  };

  auto* c_eval = app.add_subcommand("eval", "evaluate V at points");
  add_common(c_eval);
  c_eval->add_option("--point", point, "x0 x1 x2")->expected(3);
  c_eval->add_option("--points", points_file, "file with one x0 x1 x2 triple per line");
  c_eval->add_option("--format", format, "csv|json");

  auto* c_jac = app.add_subcommand("jacobian", "Jacobian matrix at a point");
  add_common(c_jac);
  c_jac->add_option("--point", point, "x0 x1 x2")->required()->expected(3);

  auto* c_spec = app.add_subcommand("spectrum", "closed-form eigenvalues at a point");
  add_common(c_spec);
  c_spec->add_option("--point", point, "x0 x1 x2")->required()->expected(3);

  auto* c_verify = app.add_subcommand("verify", "run the residual suites");
  add_common(c_verify);
  c_verify->add_option("--box", box, "x0min x0max rmin rmax")->expected(4);
  c_verify->add_option("--grid", grid, "grid points per axis (default 10)");

  auto* c_eq = app.add_subcommand("equilibria", "find and classify field zeros");
  add_common(c_eq);
  c_eq->add_option("--box", box, "x0min x0max rmin rmax")->required()->expected(4);
  c_eq->add_option("--grid", grid, "seed grid per axis")->required();
  c_eq->add_option("--tol", tol, "zero tolerance (default 1e-10)");
  c_eq->add_option("--format", eq_format, "json|csv");

  auto* c_trace = app.add_subcommand("trace", "integrate a pathline or streamline");
  add_common(c_trace);
  c_trace->add_option("--point", point, "start point x0 x1 x2")->required()->expected(3);
  c_trace->add_option("--t-end", t_end, "pathline time horizon");
  c_trace->add_option("--arclen", arclen, "streamline arc length (switches mode)");
  c_trace->add_option("--tol", tol, "integrator tolerance (default 1e-10)");

  auto* c_scan = app.add_subcommand("scan", "sweep one config parameter");
  add_common(c_scan);
  c_scan->add_option("--param", param_pointer, "JSON pointer into the config, e.g. /field/registered/B")
      ->required();
  c_scan->add_option("--range", range, "lo hi")->required()->expected(2);
  c_scan->add_option("--steps", steps, "number of samples")->required();
  c_scan->add_option("--box", box, "x0min x0max rmin rmax")->required()->expected(4);
  c_scan->add_option("--grid", grid, "seed grid per axis")->required();
  c_scan->add_option("--tol", tol, "zero tolerance (default 1e-10)");

  auto* c_series = app.add_subcommand("series", "evaluate a gasp/bihyperbolic potential on a grid");
  add_common(c_series);
  c_series->add_option("--box", box, "x0min x0max rmin rmax")->required()->expected(4);
  c_series->add_option("--grid", grid, "grid points per axis")->required();
  c_series->add_option("--x2", x2_slice, "x2 slice for bihyperbolic sources (default 1)");

  const int parse_result = dispatch(app, args);
  if (parse_result >= 0) return parse_result;

  try {
    const LoadedConfig cfg = load_config(config_path);
    print_warnings(cfg);

    if (c_eval->parsed()) {
      const auto& f = require_meridional(cfg, "eval");
      std::vector<ReducedQuaternion> pts;
      if (!point.empty()) {
        pts.push_back({point[0], point[1], point[2]});
      }
      if (!points_file.empty()) {
        std::ifstream in(points_file);
        if (!in) throw ConfigError("cannot open points file '" + points_file + "'");
        std::string line;
        while (std::getline(in, line)) {
          for (char& ch : line) {
            if (ch == ',') ch = ' ';
          }
          std::istringstream ls(line);
          double a, b, c;
          if (ls >> a >> b >> c) pts.push_back({a, b, c});
        }
      }
      if (pts.empty()) {
        throw ConfigError("eval: provide --point or --points");
      }
      std::string outbuf;
      Json jarr = Json::array();
      for (const auto& p : pts) {
        const Vec3 v = field_eval(f, p);
        if (format == "json") {
          jarr.push_back(Json::array({v[0], v[1], v[2]}));
        } else {
          outbuf += csv_row({v[0], v[1], v[2]});
        }
      }
      write_output(out_path, format == "json" ? dump_json(jarr) : outbuf);
      return 0;
    }

    if (c_jac->parsed()) {
      const auto& f = require_meridional(cfg, "jacobian");
      const Mat3 j = field_jacobian(f, {point[0], point[1], point[2]});
      std::string outbuf;
      for (int r = 0; r < 3; ++r) outbuf += csv_row({j[r][0], j[r][1], j[r][2]});
      write_output(out_path, outbuf);
      return 0;
    }

    if (c_spec->parsed()) {
      const auto& f = require_meridional(cfg, "spectrum");
      const Spectrum s = spectrum(f, {point[0], point[1], point[2]});
      write_output(out_path, csv_row({s.lambda0, s.lambda1, s.lambda2, s.radicand}));
      return 0;
    }

    if (c_verify->parsed()) {
      if (!c_verify->count("--grid")) grid = 10;
      std::vector<ResidualRow> rows;
      if (cfg.field) {
        double x0_min = -1.0, x0_max = 1.0, rho_min = 0.25, rho_max = 2.0;
        if (!box.empty()) {
          x0_min = box[0];
          x0_max = box[1];
          rho_min = box[2];
          rho_max = box[3];
        }
        rows = verify_meridional(*cfg.field, x0_min, x0_max, rho_min, rho_max, grid);
      } else {
        double x0_min = -1.0, x0_max = 1.0, q_min = 0.3, q_max = 2.0;
        if (!box.empty()) {
          x0_min = box[0];
          x0_max = box[1];
          q_min = box[2];
          q_max = box[3];
        }
        rows = verify_bi(*cfg.bi, x0_min, x0_max, q_min, q_max, grid);
      }
      std::string outbuf = "equation,max_residual,threshold,status\n";
      bool all_pass = true;
      for (const auto& row : rows) {
        const bool pass = row.max_residual <= row.threshold;
        all_pass = all_pass && pass;
        outbuf += row.name + ',' + format_double(row.max_residual) + ',' +
                  format_double(row.threshold) + ',' + (pass ? "PASS" : "FAIL") + '\n';
      }
      write_output(out_path, outbuf);
      return all_pass ? 0 : 2;
    }

    if (c_eq->parsed()) {
      const auto& f = require_meridional(cfg, "equilibria");
      const MeridianBox mbox{box[0], box[1], box[2], box[3]};
      const auto eqs = find_equilibria(f, mbox, grid, tol);
      std::string outbuf;
      Json jarr = Json::array();
      for (const auto& eq : eqs) {
        const auto rep = classify(f, eq, 10.0 * tol);
        if (eq_format == "csv") {
          outbuf += csv_row({rep.location.s, rep.location.t, rep.eigenvalues.lambda0,
                             rep.eigenvalues.lambda1, rep.eigenvalues.lambda2,
                             static_cast<double>(rep.degenerate),
                             static_cast<double>(rep.hyperbolic), static_cast<double>(rep.index),
                             static_cast<double>(rep.degree_of_instability)});
        } else {
          jarr.push_back(equilibrium_to_json(rep, Json(nullptr)));
        }
      }
      write_output(out_path, eq_format == "csv" ? outbuf : dump_json(jarr));
      return 0;
    }

    if (c_trace->parsed()) {
      const auto& f = require_meridional(cfg, "trace");
      if ((t_end > 0.0) == (arclen > 0.0)) {
        throw ConfigError("trace: provide exactly one of --t-end or --arclen");
      }
      const Vec3 start{point[0], point[1], point[2]};
      const Trajectory traj = (t_end > 0.0)
                                  ? integrate_pathline({f}, start, t_end, tol)
                                  : trace_streamline(f, start, arclen, tol);
      std::string outbuf = "t,x0,x1,x2,h\n";
      for (size_t i = 0; i < traj.times.size(); ++i) {
        outbuf += csv_row({traj.times[i], traj.points[i][0], traj.points[i][1], traj.points[i][2],
                           traj.h_values[i]});
      }
      write_output(out_path, outbuf);
      return 0;
    }

    if (c_scan->parsed()) {
      require_meridional(cfg, "scan");
      const MeridianBox mbox{box[0], box[1], box[2], box[3]};
      Json pointer_probe = cfg.raw;
      const nlohmann::json::json_pointer ptr(param_pointer);
      try {
        (void)pointer_probe.at(ptr);
      } catch (const nlohmann::json::exception&) {
        throw ConfigError("scan: --param '" + param_pointer + "' does not address a config value");
      }
      auto family = [&](double mu) {
        Json modified = cfg.raw;
        modified[ptr] = mu;
        const LoadedConfig sample = parse_config(modified);
        return require_meridional(sample, "scan");
      };
      const auto rows = parameter_scan(family, range[0], range[1], steps, mbox, grid, tol);
      Json jrows = Json::array();
      for (const auto& row : rows) {
        Json jrow;
        jrow["mu"] = row.mu;
        Json eqs = Json::array();
        for (const auto& rep : row.reports) {
          eqs.push_back(equilibrium_to_json(rep, Json(row.mu)));
        }
        jrow["equilibria"] = std::move(eqs);
        if (!row.error.empty()) jrow["error"] = row.error;
        jrows.push_back(std::move(jrow));
      }
      write_output(out_path, dump_json(jrows));
      return 0;
    }

    if (c_series->parsed()) {
      std::string outbuf;
      if (cfg.source_kind == "gasp") {
        const auto& f = *cfg.field;
        outbuf = "x0,rho,g\n";
        for (int i = 0; i < grid; ++i) {
          for (int j = 0; j < grid; ++j) {
            const double x0 = box[0] + (box[1] - box[0]) * i / (grid - 1.0);
            const double rho = box[2] + (box[3] - box[2]) * j / (grid - 1.0);
            outbuf += csv_row({x0, rho, f.potential({x0, rho})});
          }
        }
      } else if (cfg.source_kind == "bihyperbolic") {
        outbuf = "x0,x1,x2,h\n";
        for (int i = 0; i < grid; ++i) {
          for (int j = 0; j < grid; ++j) {
            const double x0 = box[0] + (box[1] - box[0]) * i / (grid - 1.0);
            const double x1 = box[2] + (box[3] - box[2]) * j / (grid - 1.0);
            outbuf += csv_row({x0, x1, x2_slice, bi_eval(*cfg.bi, {x0, x1, x2_slice})});
          }
        }
      } else {
        throw ConfigError("series: applies to gasp and bihyperbolic sources");
      }
      write_output(out_path, outbuf);
      return 0;
    }

    throw ConfigError("no subcommand dispatched");
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace meridian::cli
