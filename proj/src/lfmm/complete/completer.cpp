#include "lfmm/complete/completer.hpp"

#include "lfmm/complete/convex_hull.hpp"
#include "lfmm/core/error.hpp"
#include "lfmm/voxel/traversal.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>

namespace lfmm::complete {

using voxel::VoxelGrid;

void CompletionRequest::validate() const {
  if (current.dim < 1 || current.scores.size() != static_cast<std::size_t>(current.dim) * current.dim * current.dim)
    fail(ErrorCode::InvalidArgument, "completion request has no current grid");
  if (previous && !relative_pose)
    fail(ErrorCode::InvalidArgument, "previous view given without relative pose");
  if (!(odometry_noise >= 0.0 && odometry_noise <= 1.0))
    fail(ErrorCode::InvalidArgument, "odometry noise must lie in [0, 1]");
  if (tactile)
    for (const Voxel& v : tactile->contacts)
      if (!current.in_bounds(v)) fail(ErrorCode::InvalidArgument, "tactile contact outside the grid");
}

ScoreGrid complete_partial(const CompletionRequest& req) {
  req.validate();
  ScoreGrid out = req.current.binarized();
  if (req.tactile)
    for (const Voxel& v : req.tactile->contacts) out.at(v) = 1.0;
  return out;
}

namespace {

// floor(a / b) and ceil(a / b) for b > 0.
std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && (a < 0)) --q;
  return q;
}
std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

}  // namespace

ScoreGrid complete_convex_hull(const CompletionRequest& req) {
  const ScoreGrid partial = complete_partial(req);
  // Voxel centers on the doubled lattice: center of voxel i sits at 2i + 1.
  std::vector<LatticePoint> pts;
  for (const Voxel& v : partial.occupied_voxels())
    pts.push_back({2 * v[0] + 1, 2 * v[1] + 1, 2 * v[2] + 1});
  const LatticeHull hull = LatticeHull::build(std::move(pts));

  ScoreGrid out(partial.dim, partial.frame, 0.0);
  const int dim = out.dim;
  for (int y = 0; y < dim; ++y) {
    for (int x = 0; x < dim; ++x) {
      const std::int64_t X = 2 * x + 1, Y = 2 * y + 1;
      // Intersect the column with every face half-space: nz * Z <= r.
      std::int64_t zlo = 0, zhi = 2 * dim;  // lattice Z range
      bool empty = false;
      for (const auto& pl : hull.planes()) {
        const std::int64_t r = pl.offset - pl.normal[0] * X - pl.normal[1] * Y;
        const std::int64_t nz = pl.normal[2];
        if (nz > 0) {
          zhi = std::min(zhi, floor_div(r, nz));
        } else if (nz < 0) {
          zlo = std::max(zlo, ceil_div(-r, -nz));
        } else if (r < 0) {
          empty = true;
          break;
        }
      }
      if (empty || zlo > zhi) continue;
      // 2z + 1 in [zlo, zhi]
      const std::int64_t z0 = std::max<std::int64_t>(0, ceil_div(zlo - 1, 2));
      const std::int64_t z1 = std::min<std::int64_t>(dim - 1, floor_div(zhi - 1, 2));
      for (std::int64_t z = z0; z <= z1; ++z) out.at(x, y, static_cast<int>(z)) = 1.0;
    }
  }
  return out;
}

scene::Pose noisy_relative_pose(const scene::Pose& truth, double noise, CounterRng& rng,
                                double step_length, double turn_step) {
  if (!(noise >= 0.0)) fail(ErrorCode::InvalidArgument, "noise must be non-negative");
  const Eigen::AngleAxisd aa(truth.rotation);
  const double angle = aa.angle();
  const Vec3 axis = angle > 0.0 ? Vec3(aa.axis()) : Vec3::UnitZ();
  const int steps = std::max({1, static_cast<int>(std::ceil(truth.translation.norm() / step_length - 1e-12)),
                              static_cast<int>(std::ceil(angle / turn_step - 1e-12))});

  // Split the motion into equal screw steps S with S^steps = truth.
  const Mat3 r_step = Eigen::AngleAxisd(angle / steps, axis).toRotationMatrix();
  Mat3 sum = Mat3::Zero();
  Mat3 power = Mat3::Identity();
  for (int k = 0; k < steps; ++k) {
    sum += power;
    power = r_step * power;
  }
  const Vec3 t_step = sum.fullPivLu().solve(truth.translation);
  const double t_len = t_step.norm();

  scene::Pose acc;
  for (int k = 0; k < steps; ++k) {
    const double turn_err = noise * rng.uniform(-1.0, 1.0);
    Vec3 t_err;
    for (int a = 0; a < 3; ++a) t_err[a] = noise * t_len * rng.uniform(-1.0, 1.0);
    scene::Pose step;
    step.rotation = Eigen::AngleAxisd(angle / steps * (1.0 + turn_err), axis).toRotationMatrix();
    step.translation = t_step + t_err;
    acc = acc * step;  // body-frame increment, so early heading error swings later steps
  }
  return acc;
}

ScoreGrid complete_registered_union(const CompletionRequest& req) {
  req.validate();
  if (!req.previous || !req.relative_pose)
    fail(ErrorCode::InvalidArgument, "registered union needs a previous view and relative pose");
  ScoreGrid out = req.current.binarized();
  CounterRng rng(req.seed);
  const scene::Pose rel = req.odometry_noise > 0.0
                              ? noisy_relative_pose(*req.relative_pose, req.odometry_noise, rng)
                              : *req.relative_pose;
  for (const Voxel& v : req.previous->occupied_voxels()) {
    const Vec3 p = rel.apply(req.previous->center(v));
    if (const auto w = out.locate(p)) out.at(*w) = 1.0;
  }
  return out;
}

std::vector<char> visible_mask(const VoxelGrid& gt, const Vec3& camera) {
  const int dim = gt.dim;
  std::vector<char> visible(gt.size(), 0);
  for (std::size_t idx = 0; idx < gt.size(); ++idx) {
    const Voxel v = gt.voxel_of(idx);
    const Vec3 c = gt.center(v);
    bool blocked = false;
    voxel::traverse_ray(gt.frame, dim, c, camera - c, 1.0, [&](const Voxel& w, double, double) {
      if (w == v) return true;
      if (gt.occupied(w)) {
        blocked = true;
        return false;
      }
      return true;
    });
    visible[idx] = blocked ? 0 : 1;
  }
  return visible;
}

namespace {

std::vector<char> band_from_visibility(const VoxelGrid& gt, const std::vector<char>& visible, int shell) {
  const int dim = gt.dim;
  // Hidden surface: occupied, not visible, with an empty (or outside)
  // 6-neighbor.
  std::vector<char> seeds(gt.size(), 0);
  static const int nb[6][3] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  for (std::size_t idx = 0; idx < gt.size(); ++idx) {
    if (visible[idx] || !(gt.scores[idx] > 0.5)) continue;
    const Voxel v = gt.voxel_of(idx);
    for (const auto& d : nb) {
      const Voxel w{v[0] + d[0], v[1] + d[1], v[2] + d[2]};
      if (!gt.in_bounds(w) || !gt.occupied(w)) {
        seeds[idx] = 1;
        break;
      }
    }
  }
  std::vector<char> band(gt.size(), 0);
  for (std::size_t idx = 0; idx < gt.size(); ++idx) {
    if (!seeds[idx]) continue;
    const Voxel v = gt.voxel_of(idx);
    for (int dz = -shell; dz <= shell; ++dz)
      for (int dy = -shell; dy <= shell; ++dy)
        for (int dx = -shell; dx <= shell; ++dx) {
          const Voxel w{v[0] + dx, v[1] + dy, v[2] + dz};
          if (!gt.in_bounds(w)) continue;
          const std::size_t j = gt.index(w);
          if (!visible[j]) band[j] = 1;
        }
  }
  (void)dim;
  return band;
}

}  // namespace

std::vector<char> occluded_band_mask(const VoxelGrid& gt, int shell, const Vec3& camera) {
  return band_from_visibility(gt, visible_mask(gt, camera), shell);
}

ScoreGrid complete_oracle(const CompletionRequest& req, const VoxelGrid& gt, const OracleBand& band,
                          std::uint64_t seed, const Vec3& camera) {
  req.validate();
  voxel::require_same_frame(req.current, gt);
  if (!(band.width >= 0.0) || band.center - band.width < 0.0 || band.center + band.width > 1.0)
    fail(ErrorCode::InvalidArgument, "oracle band leaves [0, 1]");
  if (band.shell < 0) fail(ErrorCode::InvalidArgument, "oracle band shell must be non-negative");

  const std::vector<char> visible = visible_mask(gt, camera);
  const std::vector<char> uncertain = band_from_visibility(gt, visible, band.shell);
  ScoreGrid out(gt.dim, gt.frame, 0.0);
  CounterRng rng(seed);
  for (std::size_t idx = 0; idx < gt.size(); ++idx) {
    if (uncertain[idx]) {
      const double u = rng.uniform() * band.width;
      const double sign = (rng.next_u64() & 1u) ? 1.0 : -1.0;
      out.scores[idx] = band.center + sign * u;
    } else {
      out.scores[idx] = gt.scores[idx] > 0.5 ? 0.95 : 0.05;
    }
  }
  return out;
}

namespace {

class PartialCompleter final : public Completer {
 public:
  std::string name() const override { return "partial"; }
  ScoreGrid complete(const CompletionRequest& req) const override { return complete_partial(req); }
};

class HullCompleter final : public Completer {
 public:
  std::string name() const override { return "hull"; }
  ScoreGrid complete(const CompletionRequest& req) const override { return complete_convex_hull(req); }
};

class RegisteredCompleter final : public Completer {
 public:
  std::string name() const override { return "registered"; }
  ScoreGrid complete(const CompletionRequest& req) const override {
    return complete_registered_union(req);
  }
};

class OracleCompleter final : public Completer {
 public:
  OracleCompleter(VoxelGrid gt, OracleBand band, std::uint64_t seed, Vec3 camera)
      : gt_(std::move(gt)), band_(band), seed_(seed), camera_(camera) {}
  std::string name() const override { return "oracle"; }
  ScoreGrid complete(const CompletionRequest& req) const override {
    return complete_oracle(req, gt_, band_, seed_, camera_);
  }

 private:
  VoxelGrid gt_;
  OracleBand band_;
  std::uint64_t seed_;
  Vec3 camera_;
};

}  // namespace

std::unique_ptr<Completer> make_completer(const std::string& name) {
  if (name == "partial") return std::make_unique<PartialCompleter>();
  if (name == "hull") return std::make_unique<HullCompleter>();
  if (name == "registered") return std::make_unique<RegisteredCompleter>();
  fail(ErrorCode::Config, "unknown completer '" + name + "'");
}

std::unique_ptr<Completer> make_oracle_completer(VoxelGrid gt, OracleBand band, std::uint64_t seed,
                                                 Vec3 camera) {
  return std::make_unique<OracleCompleter>(std::move(gt), band, seed, camera);
}

}  // namespace lfmm::complete
