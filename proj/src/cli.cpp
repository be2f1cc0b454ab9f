#include "tfl/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "tfl/config.hpp"
#include "tfl/cones.hpp"
#include "tfl/error.hpp"
#include "tfl/fermat.hpp"
#include "tfl/grid_io.hpp"
#include "tfl/gridmin.hpp"
#include "tfl/polyconfig.hpp"
#include "tfl/scenarios.hpp"
#include "tfl/svg.hpp"
#include "tfl/tensions.hpp"

namespace tfl {
namespace {

using nlohmann::json;

const std::vector<std::string> kCommands{"tensions", "fermat",       "cones",     "energy", "minimize",
                                         "blowup",   "monotonicity", "variation", "scan"};

// Everything a command needs: the config, where to put results, the streams.
struct Run {
  std::string command;
  Config cfg;
  std::uint64_t seed = 0;
  std::string out_dir;
  bool quiet = false;
  std::ostream& out;
  std::ostream& err;

  // Prints the primary result and stores it (plus any extra files) under --out.
  void emit(const std::string& file, const std::string& contents) const {
    if (!quiet) out << contents;
    save(file, contents);
  }
  void save(const std::string& file, const std::string& contents) const {
    if (!out_dir.empty()) write_file((std::filesystem::path(out_dir) / file).string(), contents);
  }
  void save_grid_file(const std::string& file, const LabelGrid& g) const {
    if (!out_dir.empty()) save_grid(g, (std::filesystem::path(out_dir) / file).string());
  }
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json vec_json(Vec2 v) { return json::array({v.x, v.y}); }

json breakdown_json(const EnergyBreakdown& e) {
  return {{"surface", e.surface},
          {"wetting", e.wetting},
          {"gravity", e.gravity},
          {"volume_penalty", e.volume_penalty},
          {"total", e.total}};
}

std::array<double, 3> triple(const Config& cfg, const std::string& key, std::array<double, 3> fallback) {
  const auto v = cfg.get_doubles(key, {fallback[0], fallback[1], fallback[2]});
  if (v.size() != 3) throw Error(ErrorKind::InvalidInput, "config key '" + key + "' needs three values");
  return {v[0], v[1], v[2]};
}

Vec2 point(const Config& cfg, const std::string& key, Vec2 fallback) {
  const auto v = cfg.get_doubles(key, {fallback.x, fallback.y});
  if (v.size() != 2) throw Error(ErrorKind::InvalidInput, "config key '" + key + "' needs two values");
  return {v[0], v[1]};
}

SurfaceTensions tensions_from(const Config& cfg) {
  const auto s = triple(cfg, "sigma", {1.0, 1.0, 1.0});
  return SurfaceTensions(s[0], s[1], s[2]);
}

EnergyParams params_from(const Config& cfg) {
  EnergyParams p;
  p.sigmas = tensions_from(cfg);
  p.beta = triple(cfg, "beta", {0.0, 0.0, 0.0});
  p.rho = triple(cfg, "rho", {0.0, 0.0, 0.0});
  p.g = cfg.get_double("g", 0.0);
  p.validate();
  return p;
}

int directions_from(const Config& cfg) { return static_cast<int>(cfg.get_int("directions", 8)); }

// "label:opening_deg, ..." in counter-clockwise order from cone_start_deg.
ConeConfig cone_from_text(const std::string& text, double start_deg) {
  std::vector<int> labels;
  std::vector<double> openings;
  std::string t = text;
  for (char& ch : t) {
    if (ch == ',') ch = ' ';
  }
  std::istringstream in(t);
  for (std::string tok; in >> tok;) {
    const auto colon = tok.find(':');
    if (colon == std::string::npos) throw Error(ErrorKind::InvalidInput, "cone sector '" + tok + "' is not label:degrees");
    try {
      size_t used = 0;
      const int label = std::stoi(tok.substr(0, colon), &used);
      if (used != colon) throw std::invalid_argument("label");
      const std::string deg_text = tok.substr(colon + 1);
      const double deg_value = std::stod(deg_text, &used);
      if (used != deg_text.size()) throw std::invalid_argument("degrees");
      labels.push_back(label);
      openings.push_back(rad(deg_value));
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::InvalidInput, "cone sector '" + tok + "' is not label:degrees");
    }
  }
  for (int l : labels) {
    if (l < 0 || l > 2) throw Error(ErrorKind::InvalidInput, "cone labels must be 0, 1 or 2");
  }
  // Degrees rarely sum to exactly 2 pi in binary; rescale tiny mismatches.
  double total = 0.0;
  for (double o : openings) total += o;
  if (std::abs(total - kTwoPi) > 1e-9) throw Error(ErrorKind::InvalidInput, "cone openings must sum to 360 degrees");
  for (double& o : openings) o *= kTwoPi / total;
  return ConeConfig::from_openings(labels, openings, rad(start_deg));
}

Geometry geometry_from(const Config& cfg, const SurfaceTensions& s) {
  int sources = 0;
  for (const char* key : {"grid", "polyline", "cone", "scenario"}) sources += cfg.has(key);
  if (sources != 1) {
    throw Error(ErrorKind::InvalidInput, "exactly one of grid, polyline, cone or scenario must be configured");
  }
  if (cfg.has("grid")) return load_grid(cfg.get("grid", ""));
  if (cfg.has("polyline")) return PolyConfig::from_json(read_file(cfg.get("polyline", "")));
  if (cfg.has("cone")) return cone_from_text(cfg.get("cone", ""), cfg.get_double("cone_start_deg", 0.0));
  const int resolution = static_cast<int>(cfg.get_int("resolution", 256));
  if (resolution < 8 || resolution > 8192) throw Error(ErrorKind::InvalidInput, "resolution must lie in [8, 8192]");
  return builtin_scenario(cfg.get("scenario", ""), s, resolution, directions_from(cfg));
}

LabelGrid grid_from(const Config& cfg, const SurfaceTensions& s) {
  Geometry g = geometry_from(cfg, s);
  if (auto* grid = std::get_if<LabelGrid>(&g)) return std::move(*grid);
  throw Error(ErrorKind::InvalidInput, "this command needs a grid (grid file or grid scenario)");
}

// Cones become their restriction to the disk of radius `disk_radius`.
PolyConfig polyline_from(const Config& cfg, const SurfaceTensions& s) {
  Geometry g = geometry_from(cfg, s);
  if (auto* c = std::get_if<PolyConfig>(&g)) return std::move(*c);
  if (auto* cone = std::get_if<ConeConfig>(&g)) return cone->to_polyconfig(cfg.get_double("disk_radius", 1.0));
  throw Error(ErrorKind::InvalidInput, "this command needs a polyline configuration or a cone");
}

std::vector<double> radii_from(const Config& cfg, std::vector<double> fallback_range) {
  if (cfg.has("radii")) {
    auto r = cfg.get_doubles("radii", {});
    if (r.empty()) throw Error(ErrorKind::InvalidInput, "radii list is empty");
    return r;
  }
  const double lo = cfg.get_double("r_min", fallback_range[0]);
  const double hi = cfg.get_double("r_max", fallback_range[1]);
  const long long n = cfg.get_int("r_count", static_cast<long long>(fallback_range[2]));
  if (n < 1 || !(lo > 0.0) || !(hi >= lo)) throw Error(ErrorKind::InvalidInput, "need 0 < r_min <= r_max and r_count >= 1");
  std::vector<double> out;
  for (long long k = 0; k < n; ++k) out.push_back(n == 1 ? hi : lo + (hi - lo) * static_cast<double>(k) / (n - 1));
  return out;
}

MinimizeOptions minimize_options_from(const Config& cfg, const LabelGrid& g, std::uint64_t seed) {
  MinimizeOptions o;
  o.mode = mode_from_string(cfg.get("mode", "D"));
  o.crofton_directions = directions_from(cfg);
  o.seed = seed;
  o.schedule.t0 = cfg.get_double("t0", -1.0);
  o.schedule.cooling = cfg.get_double("cooling", o.schedule.cooling);
  o.schedule.sweeps = static_cast<int>(cfg.get_int("sweeps", o.schedule.sweeps));
  o.schedule.quiet_greedy_sweeps = static_cast<int>(cfg.get_int("quiet_greedy_sweeps", o.schedule.quiet_greedy_sweeps));
  o.schedule.max_greedy_sweeps = static_cast<int>(cfg.get_int("max_greedy_sweeps", o.schedule.max_greedy_sweeps));
  o.volume_penalty_C = cfg.get_double("volume_penalty_C", -1.0);
  o.levels = static_cast<int>(cfg.get_int("levels", 0));
  o.expansion_moves = cfg.get_bool("expansion_moves", true);
  if (!(o.schedule.cooling > 0.0 && o.schedule.cooling <= 1.0)) throw Error(ErrorKind::InvalidInput, "cooling must lie in (0, 1]");
  if (o.schedule.sweeps < 0 || o.levels < 0) throw Error(ErrorKind::InvalidInput, "sweeps and levels must be non-negative");
  if (o.mode != Mode::D) {
    if (cfg.has("target_volumes")) {
      o.target_volumes = triple(cfg, "target_volumes", {});
    } else {
      const auto n = g.counts(true);
      o.target_volumes = {double(n[0]), double(n[1]), double(n[2])};
    }
  }
  return o;
}

json junctions_json(const LabelGrid& g, const SurfaceTensions& s, double window) {
  json arr = json::array();
  for (const Vec2& p : detect_triple_points(g)) {
    json j = {{"location", vec_json(p)}};
    try {
      const JunctionReport r = junction_angle_extract(g, p, window, s);
      j["angles_deg"] = r.angles_deg;
      j["residual_vs_neumann_deg"] = r.residual_vs_neumann;
      j["samples"] = r.samples;
    } catch (const Error& e) {
      j["error"] = e.what();
    }
    arr.push_back(j);
  }
  return arr;
}

// ---------------------------------------------------------------------------

int cmd_tensions(const Run& run) {
  const SurfaceTensions s = tensions_from(run.cfg);
  const AlphaWeights a = alphas_from_sigmas(s);
  const NeumannAngles gam = neumann_angles(s);
  const json j = {{"alphas", {a.alpha0, a.alpha1, a.alpha2}},
                  {"gammas_deg", {deg(gam.gamma01), deg(gam.gamma02), deg(gam.gamma12)}}};
  run.emit("tensions.json", dump(j));
  return 0;
}

int cmd_fermat(const Run& run) {
  const SurfaceTensions s = tensions_from(run.cfg);
  Triangle t;
  std::optional<Vec2> tilde;
  if (run.cfg.has("opening_deg")) {
    const GoodTriangle good = construct_good_triangle(s, rad(run.cfg.get_double("opening_deg", 0.0)),
                                                      rad(run.cfg.get_double("orientation_deg", 0.0)));
    t = good.vertices;
    tilde = good.tilde_p;
  } else {
    const auto v = run.cfg.get_doubles("triangle", {});
    if (v.size() != 6) throw Error(ErrorKind::InvalidInput, "fermat needs triangle = x0,y0,x1,y1,x2,y2 or opening_deg");
    t = {Vec2{v[0], v[1]}, Vec2{v[2], v[3]}, Vec2{v[4], v[5]}};
  }
  FermatWeights w = FermatWeights::from_tensions(s);
  if (run.cfg.has("weights")) {
    const auto z = triple(run.cfg, "weights", {});
    w = {z[0], z[1], z[2]};
  }
  FermatOptions fo;
  fo.tol = run.cfg.get_double("tol", fo.tol);
  const FermatSolution sol = fermat_solve(t, w, fo);
  const JunctionAngles ang = junction_angles(sol.point, t);
  json j = {{"vertices", {vec_json(t[0]), vec_json(t[1]), vec_json(t[2])}},
            {"weights", {w.zeta0, w.zeta1, w.zeta2}},
            {"point", vec_json(sol.point)},
            {"cost", sol.cost},
            {"gradient_norm", sol.gradient_norm},
            {"iterations", sol.iterations},
            {"hessian_min_eigenvalue", sol.hessian_min_eigenvalue},
            {"angles_deg", {deg(ang.gamma01), deg(ang.gamma12), deg(ang.gamma02)}}};
  if (tilde) j["tilde_p"] = vec_json(*tilde);
  run.emit("fermat.json", dump(j));
  return 0;
}

int cmd_cones(const Run& run) {
  const SurfaceTensions s = tensions_from(run.cfg);
  Geometry g = geometry_from(run.cfg, s);
  const auto* cone = std::get_if<ConeConfig>(&g);
  if (!cone) throw Error(ErrorKind::InvalidInput, "cones needs a cone (cone = label:deg, ... or a cone scenario)");
  ClassifyOptions co;
  co.disk_radius = run.cfg.get_double("disk_radius", co.disk_radius);
  co.patch_fraction = run.cfg.get_double("patch_fraction", co.patch_fraction);
  co.angle_tol = run.cfg.get_double("angle_tol", co.angle_tol);
  const double C = run.cfg.get_double("C", 0.0);
  const ImprovementReport rep = classify_cone(*cone, s, co);

  json sectors = json::array();
  for (const Sector& sec : cone->sectors()) {
    sectors.push_back({{"label", sec.label}, {"start_deg", deg(sec.start)}, {"end_deg", deg(sec.end)}});
  }
  json p = json::array();
  for (double t : run.cfg.get_doubles("t", {0.1, 1.0, 10.0})) {
    if (!(t > 0.0)) throw Error(ErrorKind::InvalidInput, "t values must be positive");
    p.push_back({{"t", t}, {"p", scaled_energy_p(*cone, s, t, C)}});
  }
  json j = {{"sectors", sectors},
            {"energy_unit_disk", cone_energy(*cone, s, 1.0)},
            {"scaled_energy", p},
            {"improvable", rep.improvable},
            {"mechanism", to_string(rep.mechanism)},
            {"energy_delta", rep.energy_delta},
            {"disk_radius", rep.disk_radius},
            {"sector", rep.sector},
            {"description", rep.description}};
  if (rep.competitor) j["competitor"] = json::parse(rep.competitor->to_json());
  if (run.cfg.has("delta_v")) {
    const VolumeFix fix = rectangle_volume_fix(*cone, triple(run.cfg, "delta_v", {}),
                                               run.cfg.get_double("volume_fix_radius", co.disk_radius), s);
    json rects = json::array();
    for (const VolumeRectangle& r : fix.rectangles) {
      rects.push_back({{"ray", r.ray}, {"from", r.from}, {"to", r.to}, {"width", r.width},
                       {"length", r.length}, {"inner_radius", r.inner_radius}});
    }
    j["volume_fix"] = {{"rectangles", rects}, {"cost_bound", fix.cost_bound}};
  }
  run.emit("cones.json", dump(j));
  run.save("cones.svg", svg_cone(*cone, rep.competitor ? &*rep.competitor : nullptr));
  return 0;
}

int cmd_energy(const Run& run) {
  const EnergyParams p = params_from(run.cfg);
  Geometry g = geometry_from(run.cfg, p.sigmas);
  json j;
  if (const auto* grid = std::get_if<LabelGrid>(&g)) {
    MinimizeOptions o = minimize_options_from(run.cfg, *grid, run.seed);
    const EnergyBreakdown e = grid_energy(*grid, p, o);
    const auto n = grid->counts(false);
    j = {{"kind", "grid"},
         {"energy", breakdown_json(e)},
         {"cell_counts", n},
         {"perimeters",
          {{"01", crofton_perimeter(*grid, 0, 1, o.crofton_directions)},
           {"02", crofton_perimeter(*grid, 0, 2, o.crofton_directions)},
           {"12", crofton_perimeter(*grid, 1, 2, o.crofton_directions)}}}};
    run.save("energy.svg", svg_grid(*grid, detect_triple_points(*grid)));
  } else {
    const PolyConfig c = std::holds_alternative<PolyConfig>(g)
                             ? std::get<PolyConfig>(g)
                             : std::get<ConeConfig>(g).to_polyconfig(run.cfg.get_double("disk_radius", 1.0));
    j = {{"kind", "polyline"}, {"energy", breakdown_json(energy_FSWP(c, p))}, {"areas", c.region_areas()}};
    run.save("energy.svg", svg_polyconfig(c));
  }
  run.emit("energy.json", dump(j));
  return 0;
}

int cmd_minimize(const Run& run) {
  const EnergyParams p = params_from(run.cfg);
  const LabelGrid g = grid_from(run.cfg, p.sigmas);
  const MinimizeOptions o = minimize_options_from(run.cfg, g, run.seed);
  const MinimizeResult r = minimize(g, p, o);
  const double window = run.cfg.get_double("window", 0.5);

  std::ostringstream trace;
  trace.precision(17);
  trace << "step,energy\n";
  for (size_t k = 0; k < r.trace.size(); ++k) trace << k << "," << r.trace[k] << "\n";

  const json j = {{"mode", to_string(o.mode)},
                  {"seed", run.seed},
                  {"initial", breakdown_json(r.initial)},
                  {"final", breakdown_json(r.final)},
                  {"trace_length", r.trace.size()},
                  {"greedy_start", r.greedy_start},
                  {"cell_counts", r.grid.counts(true)},
                  {"junctions", junctions_json(r.grid, p.sigmas, window)}};
  run.emit("minimize.json", dump(j));
  run.save("trace.csv", trace.str());
  run.save_grid_file("minimized.tfl", r.grid);
  run.save("minimized.svg", svg_grid(r.grid, detect_triple_points(r.grid)));
  return 0;
}

int cmd_blowup(const Run& run) {
  const EnergyParams p = params_from(run.cfg);
  const LabelGrid g = grid_from(run.cfg, p.sigmas);
  const double lambda = run.cfg.get_double("lambda", 0.5);
  const double window = run.cfg.get_double("window", 0.5);
  Vec2 center{};
  if (run.cfg.has("center")) {
    center = point(run.cfg, "center", {});
  } else {
    const auto pts = detect_triple_points(g);
    if (pts.size() == 1) center = pts.front();
  }
  const LabelGrid b = blowup_rescale(g, center, lambda);
  EnergyParams scaled = p;
  scaled.g *= lambda;
  MinimizeOptions o;
  o.crofton_directions = directions_from(run.cfg);
  const json j = {{"center", vec_json(center)},
                  {"lambda", lambda},
                  {"rescaled_energy", breakdown_json(grid_energy(b, scaled, o))},
                  {"junctions_before", junctions_json(g, p.sigmas, window)},
                  {"junctions_after", junctions_json(b, p.sigmas, window)}};
  run.emit("blowup.json", dump(j));
  run.save_grid_file("blowup.tfl", b);
  run.save("blowup.svg", svg_grid(b, detect_triple_points(b)));
  return 0;
}

int cmd_monotonicity(const Run& run) {
  const SurfaceTensions s = tensions_from(run.cfg);
  const PolyConfig c = polyline_from(run.cfg, s);
  const auto radii = radii_from(run.cfg, {0.05, c.domain_radius(), 20});
  const MonotonicityTrace t = monotonicity_trace(c, s, radii, run.cfg.get_double("C", 0.0));
  run.emit("monotonicity.csv", t.to_csv());
  run.save("monotonicity.svg", svg_polyconfig(c));
  return 0;
}

int cmd_variation(const Run& run) {
  const SurfaceTensions s = tensions_from(run.cfg);
  const PolyConfig c = polyline_from(run.cfg, s);
  const StationarityReport rep = stationarity_battery(c, s);
  json j = {{"battery", {{"max_residual", rep.max_residual}, {"threshold", rep.threshold}, {"stationary", rep.stationary}}}};
  if (run.cfg.has("field_center") || run.cfg.has("field_radius")) {
    TestField f;
    f.center = point(run.cfg, "field_center", {});
    f.radius = run.cfg.get_double("field_radius", 0.5 * c.domain_radius());
    if (!(f.radius > 0.0)) throw Error(ErrorKind::InvalidInput, "field_radius must be positive");
    if (run.cfg.has("field_direction")) f.direction = unit(point(run.cfg, "field_direction", {}));
    j["field"] = {{"center", vec_json(f.center)}, {"radius", f.radius}, {"residual", first_variation_residual(c, f, s)}};
  }
  run.emit("variation.json", dump(j));
  return 0;
}

int cmd_scan(const Run& run) {
  const EnergyParams p = params_from(run.cfg);
  const LabelGrid g = grid_from(run.cfg, p.sigmas);
  const double eta = run.cfg.get_double("eta", 0.05);
  const auto radii = run.cfg.get_doubles("radii", {0.1, 0.2});
  json viol = json::array();
  for (const auto& v : elimination_scan(g, eta, radii)) {
    viol.push_back({{"center", vec_json(v.center)}, {"radius", v.radius}, {"fluid", v.fluid},
                    {"volume", v.volume}, {"half_volume", v.half_volume}});
  }
  json j = {{"eta", eta}, {"radii", radii}, {"violations", viol}};
  if (run.cfg.has("psi_ball")) {
    const auto b = run.cfg.get_doubles("psi_ball", {});
    if (b.size() != 3) throw Error(ErrorKind::InvalidInput, "psi_ball needs x, y, radius");
    const MinimizeOptions o = minimize_options_from(run.cfg, g, run.seed);
    const PsiEstimate e = psi_estimate(g, p, Ball{{b[0], b[1]}, b[2]}, o, static_cast<int>(run.cfg.get_int("restarts", 5)));
    j["psi"] = {{"estimate", e.estimate}, {"spread", e.spread}, {"current", e.current}, {"restarts", e.restarts}};
  }
  run.emit("scan.json", dump(j));
  return 0;
}

int dispatch(const Run& run) {
  const std::string& c = run.command;
  if (c == "tensions") return cmd_tensions(run);
  if (c == "fermat") return cmd_fermat(run);
  if (c == "cones") return cmd_cones(run);
  if (c == "energy") return cmd_energy(run);
  if (c == "minimize") return cmd_minimize(run);
  if (c == "blowup") return cmd_blowup(run);
  if (c == "monotonicity") return cmd_monotonicity(run);
  if (c == "variation") return cmd_variation(run);
  return cmd_scan(run);
}

}  // namespace

std::string cli_usage() {
  std::string s =
      "usage: tfl <command> [--config PATH] [--out DIR] [--seed N] [--quiet] [--set key=value ...]\n"
      "commands:";
  for (const auto& c : kCommands) s += " " + c;
  s += "\nscenarios:";
  for (const auto& n : builtin_scenario_names()) s += " " + n;
  return s + "\n";
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"three-fluid energy minimization toolkit", "tfl"};
  std::string command, sub, config_path, out_dir;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> sets;
  bool quiet = false;
  app.add_option("command", command)->required();
  app.add_option("subcommand", sub);
  app.add_option("--config", config_path);
  app.add_option("--out", out_dir);
  app.add_option("--seed", seed);
  app.add_option("--set", sets);
  app.add_flag("--quiet", quiet);
  app.set_help_flag();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << cli_usage();
    return 2;
  }
  if (std::find(kCommands.begin(), kCommands.end(), command) == kCommands.end() ||
      (!sub.empty() && !(command == "cones" && sub == "classify"))) {
    err << "error: unknown command '" << command << (sub.empty() ? "" : " " + sub) << "'\n" << cli_usage();
    return 2;
  }

  try {
    Config cfg = config_path.empty() ? Config{} : Config::load(config_path);
    for (const auto& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw Error(ErrorKind::InvalidInput, "--set expects key=value, got '" + kv + "'");
      cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (seed) cfg.set("seed", std::to_string(*seed));
    if (!cfg.has("seed")) cfg.set("seed", "0");
    const std::uint64_t resolved_seed = cfg.get_u64("seed", 0);
    if (!out_dir.empty()) std::filesystem::create_directories(out_dir);

    const std::string log = "# tfl " + command + "\n" + cfg.dump();
    Run run{command, std::move(cfg), resolved_seed, out_dir, quiet, out, err};
    if (!quiet) err << log;
    run.save("run.cfg", log);
    const int code = dispatch(run);
    if (!quiet) {
      for (const auto& k : run.cfg.unused()) err << "warning: config key '" << k << "' was not used\n";
    }
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_numerical(e.kind()) ? 3 : 2;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace tfl
