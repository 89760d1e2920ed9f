#include "lfmm/bench/config.hpp"

#include "lfmm/core/error.hpp"

namespace lfmm::bench {

ExperimentKind parse_kind(const std::string& s) {
  if (s == "nbv") return ExperimentKind::Nbv;
  if (s == "noise") return ExperimentKind::Noise;
  if (s == "nav") return ExperimentKind::Nav;
  if (s == "e2e") return ExperimentKind::E2e;
  fail(ErrorCode::Config, "unknown experiment kind '" + s + "' (nbv, noise, nav, e2e)");
}

const char* to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::Nbv: return "nbv";
    case ExperimentKind::Noise: return "noise";
    case ExperimentKind::Nav: return "nav";
    case ExperimentKind::E2e: return "e2e";
  }
  return "?";
}

std::vector<ObjectSource> default_objects() {
  return {
      {"box_wide", "box:0.20,0.15,0.10", {}},
      {"box_tall", "box:0.10,0.10,0.22", {}},
      {"sphere", "sphere:0.10", {}},
      {"ellipsoid_flat", "ellipsoid:0.12,0.08,0.05", {}},
      {"cylinder_tall", "cylinder:0.06,0.20", {}},
      {"cylinder_wide", "cylinder:0.11,0.08", {}},
      {"cone", "cone:0.09,0.18", {}},
      {"octahedron", "octahedron:0.12", {}},
      {"bar", "box:0.24,0.07,0.07", {}},
      {"ellipsoid_tall", "ellipsoid:0.06,0.07,0.12", {}},
  };
}

void ExperimentConfig::validate() const {
  auto bad = [](const std::string& m) { fail(ErrorCode::Config, m); };
  if (trials < 1) bad("trials must be >= 1");
  if (threads < 1) bad("threads must be >= 1");
  if (objects.empty()) bad("no objects configured");
  for (const auto& o : objects)
    if (o.primitive.empty() && !std::filesystem::exists(o.mesh_path))
      bad("object mesh not found: " + o.mesh_path.string());
  if (!(view_stride > 0)) bad("view_stride must be positive");
  if (!(view_distance > 0)) bad("view distance must be positive");
  if (!(max_elevation_deg >= 0 && max_elevation_deg < 90)) bad("max_elevation_deg must lie in [0, 90)");
  if (grid_dim < 4) bad("grid dim must be >= 4");
  try {
    camera.validate();
    uncertainty.validate();
    recon.validate();
    robot.validate();
  } catch (const Error& e) {
    bad(e.what());
  }
  if (completer != "oracle" && completer != "partial" && completer != "hull" && completer != "registered")
    bad("unknown completer '" + completer + "'");
  if (!(band.width >= 0 && band.width < 0.5) || band.shell < 0) bad("invalid oracle band");
  if (!(standoff > 0)) bad("standoff must be positive");
  if (!(height_limits.min <= height_limits.max)) bad("height limits are inverted");
  if (noise_fractions.empty()) bad("noise fractions are empty");
  for (double f : noise_fractions)
    if (!(f >= 0 && f <= 1)) bad("noise fractions must lie in [0, 1]");
  if (!(pick_jaccard >= 0 && pick_jaccard <= 1)) bad("pick_jaccard must lie in [0, 1]");
  if (nav_map && !std::filesystem::exists(*nav_map)) bad("map not found: " + nav_map->string());
  if (!(room_size > 1.0)) bad("room size must exceed 1 m");
  if (!(nav_cell > 0)) bad("nav cell must be positive");
  if (obstacles < 0) bad("obstacles must be >= 0");
  if (!(motion_noise >= 0 && motion_noise <= 1)) bad("motion noise must lie in [0, 1]");
  if (!(base_distance > 0)) bad("base distance must be positive");
  if (!(success_radius > 0)) bad("success radius must be positive");
}

ExperimentConfig parse_config(const IniFile& ini, const std::filesystem::path& base) {
  ExperimentConfig c;
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
  };
  c.kind = parse_kind(ini.get_string("experiment", "kind", "nbv"));
  c.trials = static_cast<int>(ini.get_int("experiment", "trials", c.trials));
  c.seed = static_cast<std::uint64_t>(ini.get_int("experiment", "seed", 0));
  c.threads = static_cast<int>(ini.get_int("experiment", "threads", c.threads));
  if (ini.has("experiment", "output")) c.output = resolve(ini.get_string("experiment", "output", ""));
  const std::string fmt = ini.get_string("experiment", "format", "csv");
  if (fmt == "csv") c.format = ReportFormat::Csv;
  else if (fmt == "json") c.format = ReportFormat::Json;
  else fail(ErrorCode::Config, "format must be csv or json");

  const auto meshes = ini.get_list("objects", "meshes", ',');
  const auto prims = ini.get_list("objects", "primitives", ';');
  if (!meshes.empty() || !prims.empty()) {
    c.objects.clear();
    for (const auto& m : meshes) c.objects.push_back({std::filesystem::path(m).stem().string(), "", resolve(m)});
    for (const auto& p : prims) c.objects.push_back({p, p, {}});
  }
  c.view_stride = ini.get_double("objects", "view_stride", c.view_stride);
  c.view_distance = ini.get_double("objects", "view_distance", c.view_distance);
  c.max_elevation_deg = ini.get_double("objects", "max_elevation_deg", c.max_elevation_deg);
  c.table_height = ini.get_double("objects", "table_height", c.table_height);

  c.camera.width = static_cast<int>(ini.get_int("camera", "width", c.camera.width));
  c.camera.height = static_cast<int>(ini.get_int("camera", "height", c.camera.height));
  c.camera.vertical_fov = deg2rad(ini.get_double("camera", "fov_deg", rad2deg(c.camera.vertical_fov)));
  c.camera.max_range = ini.get_double("camera", "max_range", c.camera.max_range);
  c.grid_dim = static_cast<int>(ini.get_int("camera", "grid_dim", c.grid_dim));

  c.completer = ini.get_string("completer", "name", c.completer);
  c.band.width = ini.get_double("completer", "band_width", c.band.width);
  c.band.shell = static_cast<int>(ini.get_int("completer", "band_shell", c.band.shell));

  c.uncertainty.center = ini.get_double("nbv", "center", c.uncertainty.center);
  c.uncertainty.epsilon = ini.get_double("nbv", "epsilon", c.uncertainty.epsilon);
  c.standoff = ini.get_double("nbv", "standoff", c.standoff);
  c.height_limits.min = ini.get_double("nbv", "min_height", c.height_limits.min);
  c.height_limits.max = ini.get_double("nbv", "max_height", c.height_limits.max);

  if (ini.has("noise", "fractions")) {
    c.noise_fractions.clear();
    for (const auto& s : ini.get_list("noise", "fractions", ',')) {
      try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        c.noise_fractions.push_back(v);
      } catch (const std::exception&) {
        fail(ErrorCode::Config, "bad noise fraction '" + s + "'");
      }
    }
  }

  c.hausdorff = ini.get_bool("metrics", "hausdorff", c.hausdorff);
  c.recon.hausdorff_samples = static_cast<int>(ini.get_int("metrics", "hausdorff_samples", 2000));
  c.recon.smoothing_iters = static_cast<int>(ini.get_int("metrics", "smoothing_iters", c.recon.smoothing_iters));
  c.recon.smoothing_lambda = ini.get_double("metrics", "smoothing_lambda", c.recon.smoothing_lambda);
  c.pick_jaccard = ini.get_double("metrics", "pick_jaccard", c.pick_jaccard);

  if (ini.has("nav", "map")) c.nav_map = resolve(ini.get_string("nav", "map", ""));
  c.room_size = ini.get_double("nav", "room_size", c.room_size);
  c.nav_cell = ini.get_double("nav", "cell", c.nav_cell);
  c.obstacles = static_cast<int>(ini.get_int("nav", "obstacles", c.obstacles));
  c.motion_noise = ini.get_double("nav", "motion_noise", c.motion_noise);
  c.base_distance = ini.get_double("nav", "base_distance", c.base_distance);
  c.success_radius = ini.get_double("nav", "success_radius", c.success_radius);

  ini.require_all_consumed();
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  return parse_config(IniFile::load(path), path.parent_path());
}

ExperimentConfig parse_config_text(const std::string& text, const std::filesystem::path& base_dir) {
  return parse_config(IniFile::parse(text), base_dir);
}

}  // namespace lfmm::bench
