// Command-line driver: construct, combine, verify, render, report.
//
// Exit codes: 0 success, 2 configuration error, 3 math/construction error
// (or a failing check in `report`), 4 I/O error.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qharm/combination.hpp"
#include "qharm/harmonic.hpp"
#include "qharm/serialize.hpp"
#include "qharm/suite.hpp"
#include "qharm/verify.hpp"

namespace {

using nlohmann::json;
using namespace qharm;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitMath = 3;
constexpr int kExitIo = 4;

struct RunConfig {
  std::string q = "0.5";
  double t = 0.5;
  std::size_t t_sweep = 0;
  double theta = std::numbers::pi;
  std::size_t order = kDefaultOrder;
  double radius = 0.95;
  std::size_t samples = 360;
  std::size_t levels = 64;
  std::size_t radial_lines = 24;
  double tol = kTolerance;
  double margin = kMargin;
  std::string preset;
  std::vector<std::string> presets;
  std::vector<std::string> map_files;
  std::vector<double> weights;
  std::string F_file;
  std::string omega_file;
  std::string convention = "minus";
  std::vector<std::string> checks;
  std::string output;
  std::string format = "svg";
};

QParam parse_q(const std::string& text) {
  if (text == "classical") return QParam::classical();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("InvalidQ", "q must be a number or 'classical'");
  }
  if (used != text.size()) {
    throw ConfigError("InvalidQ", "q must be a number or 'classical'");
  }
  return QParam::of(v);
}

void validate(const RunConfig& c) {
  if (c.order < 8) throw ConfigError("InvalidOrder", "order must be >= 8");
  if (!(c.radius > 0.0 && c.radius < 1.0)) {
    throw ConfigError("InvalidRadius", "radius must lie in (0, 1)");
  }
  if (!(c.t >= 0.0 && c.t <= 1.0)) throw WeightError("t outside [0, 1]");
  if (c.samples < 64) throw ConfigError("InvalidSamples", "samples must be >= 64");
  if (!(c.tol > 0.0) || !(c.margin > 0.0)) {
    throw ConfigError("InvalidTolerance", "tol and margin must be positive");
  }
}

std::filesystem::path output_path(const std::string& out) {
  std::filesystem::path p(out);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("QHARM_OUTPUT_DIR"); dir && *dir) {
      return std::filesystem::path(dir) / p;
    }
  }
  return p;
}

void emit(const RunConfig& c, const std::string& content) {
  if (c.output.empty() || c.output == "-") {
    std::cout << content;
    std::cout.flush();
  } else {
    write_file_atomic(output_path(c.output), content);
  }
}

SampleGrid grid_for(const RunConfig& c) {
  const SampleGrid defaults;
  std::vector<double> radii;
  for (double r : defaults.radii()) {
    if (r <= c.radius) radii.push_back(r);
  }
  if (radii.empty() || radii.back() < c.radius) radii.push_back(c.radius);
  return SampleGrid(std::move(radii), c.samples);
}

std::vector<HarmonicMap> load_maps(const RunConfig& c, const QParam& q) {
  std::vector<HarmonicMap> maps;
  for (const auto& name : c.presets) maps.push_back(preset(name, q, c.order));
  for (const auto& file : c.map_files) {
    maps.push_back(map_from_json(read_json_file(file)));
  }
  if (!c.preset.empty()) maps.push_back(preset(c.preset, q, c.order));
  return maps;
}

HarmonicMap single_map(const RunConfig& c, const QParam& q) {
  std::vector<HarmonicMap> maps = load_maps(c, q);
  if (maps.size() != 1) {
    throw ConfigError("InvalidInput", "exactly one --preset or --map is required");
  }
  return std::move(maps.front());
}

int cmd_construct(const RunConfig& c) {
  const QParam q = parse_q(c.q);
  HarmonicMap map = [&] {
    if (!c.F_file.empty() || !c.omega_file.empty()) {
      if (c.F_file.empty() || c.omega_file.empty()) {
        throw ConfigError("InvalidInput", "--F and --omega go together");
      }
      const TruncatedSeries F = series_from_json(read_json_file(c.F_file));
      const TruncatedSeries w = series_from_json(read_json_file(c.omega_file));
      ShearResult r = q_shear(F, w, q, parse_convention(c.convention));
      if (r.warning) {
        std::cerr << json{{"warning", "DilatationOutOfRange"},
                          {"message", *r.warning}}.dump()
                  << "\n";
      }
      return std::move(r.map);
    }
    if (c.preset.empty()) {
      throw ConfigError("InvalidInput", "--preset or --F/--omega is required");
    }
    return preset(c.preset, q, c.order);
  }();
  emit(c, dump(to_json(map)));
  std::cerr << json{{"normalization",
                     {{"h0", round15(std::abs(map.h()[0]))},
                      {"g0", round15(std::abs(map.g()[0]))},
                      {"h1_residual", round15(map.normalization_residual())},
                      {"normalized", map.is_normalized()}}}}.dump()
            << "\n";
  return kExitOk;
}

int cmd_combine(const RunConfig& c) {
  const QParam q = parse_q(c.q);
  std::vector<HarmonicMap> maps = load_maps(c, q);
  if (maps.size() < 2) {
    throw ConfigError("InvalidInput", "combine needs two or more maps");
  }
  const Tolerances tol{c.tol, c.margin};
  const SampleGrid grid = grid_for(c);

  std::vector<std::vector<double>> weight_sets;
  if (!c.weights.empty()) {
    weight_sets.push_back(c.weights);
  } else {
    if (maps.size() != 2) {
      throw ConfigError("InvalidInput", "use --weights for more than two maps");
    }
    const std::vector<double> ts = c.t_sweep ? t_sweep(c.t_sweep)
                                             : std::vector<double>{c.t};
    for (double t : ts) weight_sets.push_back({t, 1.0 - t});
  }

  json results = json::array();
  bool all_pass = true;
  for (const auto& w : weight_sets) {
    const CombinationSpec spec(maps, w);
    json reports = json::array();
    bool pass = true;
    for (const auto& check : c.checks) {
      VerificationReport r;
      if (check == "th1") {
        r = check_th1(spec, c.theta, grid, tol);
      } else if (check == "qth") {
        if (maps.size() != 2) throw ConfigError("InvalidInput", "qth takes two maps");
        r = check_qth(maps[0], maps[1], w[0], grid, tol);
      } else {
        throw ConfigError("InvalidCheck", "unknown check '" + check + "'");
      }
      pass = pass && r.pass;
      reports.push_back(to_json(r));
    }
    all_pass = all_pass && pass;
    results.push_back({{"weights", w}, {"map", to_json(combine(spec))},
                       {"reports", reports}, {"pass", pass}});
    std::ostringstream line;
    line << "t=" << w[0] << " checks=" << c.checks.size()
         << (pass ? " pass" : " FAIL");
    std::cerr << line.str() << "\n";
  }
  emit(c, dump({{"results", results}, {"pass", all_pass}}));
  return kExitOk;
}

int cmd_verify(const RunConfig& c) {
  const QParam q = parse_q(c.q);
  const HarmonicMap f = single_map(c, q);
  const Tolerances tol{c.tol, c.margin};
  const SampleGrid grid = grid_for(c);
  std::vector<std::string> checks = c.checks;
  if (checks.empty()) checks = {"sense", "univalence", "convex", "halfplane", "cdr"};

  json reports = json::array();
  bool pass = true;
  for (const auto& name : checks) {
    VerificationReport r;
    if (name == "sense") {
      r = check_sense_preserving(f, grid, tol);
    } else if (name == "univalence") {
      r = check_univalence_boundary(f, c.radius, c.samples, tol);
    } else if (name == "convex") {
      r = check_convex_real_direction(f, c.radius, c.samples, c.levels, tol);
    } else if (name == "halfplane") {
      r = check_half_plane_range(f, grid, tol);
    } else if (name == "cdr") {
      r = check_cdr_criterion(series_sub(f.h(), f.g()), f.q(), c.theta, grid, tol);
    } else {
      throw ConfigError("InvalidCheck", "unknown check '" + name + "'");
    }
    pass = pass && r.pass;
    reports.push_back(to_json(r));
  }
  emit(c, dump({{"map", f.provenance()}, {"reports", reports}, {"pass", pass}}));
  return kExitOk;
}

struct Curve {
  double r_or_angle;
  std::vector<Complex> z;
  bool closed;
};

std::vector<Curve> render_curves(const RunConfig& c, const SampleGrid& grid) {
  std::vector<Curve> curves;
  for (double r : grid.radii()) curves.push_back({r, circle_points(r, c.samples), true});
  for (std::size_t k = 0; k < c.radial_lines; ++k) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(k) /
                     static_cast<double>(c.radial_lines);
    std::vector<Complex> pts(c.samples);
    for (std::size_t s = 0; s < c.samples; ++s) {
      pts[s] = std::polar(c.radius * static_cast<double>(s) /
                              static_cast<double>(c.samples - 1), a);
    }
    curves.push_back({a, std::move(pts), false});
  }
  return curves;
}

std::string fmt15(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", round15(x));
  return buf;
}

int cmd_render(const RunConfig& c) {
  const QParam q = parse_q(c.q);
  const HarmonicMap f = single_map(c, q);
  const SampleGrid grid = grid_for(c);
  const std::vector<Curve> curves = render_curves(c, grid);

  if (c.format == "csv") {
    std::ostringstream os;
    os << "r,theta,re,im\n";
    for (const Curve& cv : curves) {
      for (const Complex& z : cv.z) {
        const Complex w = eval_map(f, z);
        os << fmt15(std::abs(z)) << ',' << fmt15(cv.closed ? std::arg(z) : cv.r_or_angle)
           << ',' << fmt15(w.real()) << ',' << fmt15(w.imag()) << '\n';
      }
    }
    emit(c, os.str());
    return kExitOk;
  }
  if (c.format != "svg") throw ConfigError("InvalidFormat", "format must be svg or csv");

  std::vector<std::vector<Complex>> images;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const Curve& cv : curves) {
    std::vector<Complex> img;
    img.reserve(cv.z.size());
    for (const Complex& z : cv.z) {
      const Complex w = eval_map(f, z);
      xmin = std::min(xmin, w.real());
      xmax = std::max(xmax, w.real());
      ymin = std::min(ymin, w.imag());
      ymax = std::max(ymax, w.imag());
      img.push_back(w);
    }
    images.push_back(std::move(img));
  }
  const double pad = 0.05 * std::max({xmax - xmin, ymax - ymin, 1e-12});
  const double vx = xmin - pad, vy = -(ymax + pad);
  const double vw = xmax - xmin + 2 * pad, vh = ymax - ymin + 2 * pad;
  const double stroke = std::max(vw, vh) / 800.0;

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\""
     << fmt15(vx) << ' ' << fmt15(vy) << ' ' << fmt15(vw) << ' ' << fmt15(vh)
     << "\">\n";
  for (std::size_t k = 0; k < images.size(); ++k) {
    os << (curves[k].closed ? "<polygon" : "<polyline")
       << " fill=\"none\" stroke=\"" << (curves[k].closed ? "#1f4e9c" : "#b0413e")
       << "\" stroke-width=\"" << fmt15(stroke) << "\" points=\"";
    for (std::size_t i = 0; i < images[k].size(); ++i) {
      // SVG y grows downward.
      os << (i ? " " : "") << fmt15(images[k][i].real()) << ','
         << fmt15(-images[k][i].imag());
    }
    os << "\"/>\n";
  }
  os << "</svg>\n";
  emit(c, os.str());
  return kExitOk;
}

int cmd_report(const RunConfig& c) {
  const QParam q = parse_q(c.q);
  const std::vector<double> ts = c.t_sweep ? t_sweep(c.t_sweep) : t_sweep(11);
  json doc = suite::run_report(q, c.theta, ts);
  doc["requested_t"] = c.t;
  emit(c, dump(doc));
  if (!doc.at("pass").get<bool>()) {
    std::cerr << json{{"error", "CheckFailed"}, {"check", doc.at("first_failure")}}.dump()
              << "\n";
    return kExitMath;
  }
  return kExitOk;
}

void error_json(const std::string& kind, const std::string& message) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-calculus harmonic mapping toolkit"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--q", cfg.q, "q in [1e-6, 1-1e-6] or 'classical'");
    sub->add_option("--order", cfg.order, "truncation order N (>= 8)");
    sub->add_option("--output,-o", cfg.output, "output path (default stdout)");
    sub->add_option("--tol", cfg.tol, "comparison tolerance");
    sub->add_option("--margin", cfg.margin, "strict-inequality margin");
  };

  auto* construct = app.add_subcommand("construct", "build a preset or sheared map");
  common(construct);
  construct->add_option("--preset", cfg.preset, "preset name");
  construct->add_option("--F", cfg.F_file, "series JSON for the prescribed h -/+ g");
  construct->add_option("--omega", cfg.omega_file, "series JSON for the dilatation");
  construct->add_option("--convention", cfg.convention, "minus (h-g=F) or plus (h+g=F)");

  auto* combine_cmd = app.add_subcommand("combine", "linear combinations and theorem checks");
  common(combine_cmd);
  combine_cmd->add_option("--presets", cfg.presets, "preset names")->delimiter(',');
  combine_cmd->add_option("--maps", cfg.map_files, "map JSON files")->delimiter(',');
  combine_cmd->add_option("--t", cfg.t, "weight of the first map");
  combine_cmd->add_option("--t-sweep", cfg.t_sweep, "number of evenly spaced t values");
  combine_cmd->add_option("--weights", cfg.weights, "explicit weights")->delimiter(',');
  combine_cmd->add_option("--check", cfg.checks, "th1, qth")->delimiter(',');
  combine_cmd->add_option("--theta", cfg.theta, "kernel angle (radians)");
  combine_cmd->add_option("--radius", cfg.radius, "largest grid radius");
  combine_cmd->add_option("--samples", cfg.samples, "angles per circle");

  auto* verify_cmd = app.add_subcommand("verify", "geometric checks of one map");
  common(verify_cmd);
  verify_cmd->add_option("--preset", cfg.preset, "preset name");
  verify_cmd->add_option("--map", cfg.map_files, "map JSON file");
  verify_cmd->add_option("--check", cfg.checks, "sense, univalence, convex, halfplane, cdr")
      ->delimiter(',');
  verify_cmd->add_option("--theta", cfg.theta, "kernel angle (radians)");
  verify_cmd->add_option("--radius", cfg.radius, "boundary radius");
  verify_cmd->add_option("--samples", cfg.samples, "boundary samples");
  verify_cmd->add_option("--levels", cfg.levels, "horizontal levels");

  auto* render = app.add_subcommand("render", "image of circles and radii as SVG or CSV");
  common(render);
  render->add_option("--preset", cfg.preset, "preset name");
  render->add_option("--map", cfg.map_files, "map JSON file");
  render->add_option("--format", cfg.format, "svg or csv");
  render->add_option("--radius", cfg.radius, "largest circle radius");
  render->add_option("--samples", cfg.samples, "points per curve");
  render->add_option("--radial-lines", cfg.radial_lines, "number of radial segments");

  auto* report = app.add_subcommand("report", "run the full verification suite at one q");
  common(report);
  report->add_option("--t", cfg.t, "weight echoed into the report");
  report->add_option("--t-sweep", cfg.t_sweep, "number of swept t values");
  report->add_option("--theta", cfg.theta, "kernel angle (radians)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    error_json("InvalidArguments", e.what());
    return kExitConfig;
  }

  try {
    validate(cfg);
    if (construct->parsed()) return cmd_construct(cfg);
    if (combine_cmd->parsed()) return cmd_combine(cfg);
    if (verify_cmd->parsed()) return cmd_verify(cfg);
    if (render->parsed()) return cmd_render(cfg);
    if (report->parsed()) return cmd_report(cfg);
  } catch (const IoError& e) {
    error_json(e.kind(), e.what());
    return kExitIo;
  } catch (const Error& e) {
    error_json(e.kind(), e.what());
    return e.category() == Error::Category::Config ? kExitConfig : kExitMath;
  } catch (const std::invalid_argument& e) {
    error_json("InvalidArgument", e.what());
    return kExitConfig;
  }
  return kExitConfig;
}
