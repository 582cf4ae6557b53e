/*
 * Copyright (c) 2026, the isdf authors.
 * All rights reserved.
 *
 * This software may be modified and distributed under the terms
 * of the BSD 3-Clause license. See the LICENSE file for details.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "isdf/common.hpp"

namespace isdf {

/// Integer lattice coordinates of a voxel. The voxel center in world
/// coordinates is origin + (i+1/2, j+1/2, k+1/2) * voxel_size.
struct VoxelKey {
  std::int32_t i = 0, j = 0, k = 0;

  bool operator==(const VoxelKey&) const = default;
  bool operator<(const VoxelKey& o) const {
    if (i != o.i) return i < o.i;
    if (j != o.j) return j < o.j;
    return k < o.k;
  }
  VoxelKey offset(int di, int dj, int dk) const {
    return {i + di, j + dj, k + dk};
  }
};

struct VoxelKeyHash {
  std::size_t operator()(const VoxelKey& key) const {
    // three large primes, as in the voxel hashing literature
    return static_cast<std::size_t>(key.i) * 73856093u ^
           static_cast<std::size_t>(key.j) * 19349669u ^
           static_cast<std::size_t>(key.k) * 83492791u;
  }
};

struct Voxel {
  float d_raw = 0.f;      // integrated truncated signed distance, meters
  float weight = 0.f;     // accumulated integration weight
  float d_refined = 0.f;  // optimized signed distance, meters
  Vec3f color = Vec3f::Zero();
  Vec3f albedo = Vec3f::Ones();
  std::uint32_t stamp = 0;  // fusion-internal frame marker, not serialized
};

/// Truncation psi(d) = min(|d|, t_trunc) * sgn(d), with sgn(0) = +1.
inline double truncate(double d, double t_trunc) {
  const double sign = d < 0 ? -1.0 : 1.0;
  return sign * std::min(std::abs(d), t_trunc);
}

enum class NormalStatus { ok, missing_neighbor, degenerate_gradient };

struct NormalResult {
  NormalStatus status = NormalStatus::missing_neighbor;
  Vec3 n = Vec3::Zero();
  bool ok() const { return status == NormalStatus::ok; }
};

/// Sparse truncated signed distance field. Only voxels touched by at least
/// one depth sample within the truncation band are allocated. Distances
/// follow the projective convention d = voxel depth - measured depth, so the
/// field is negative in observed free space and positive behind surfaces;
/// normals n = grad(d_refined)/|grad| therefore point away from the sensors.
class SparseSdf {
 public:
  SparseSdf() = default;
  SparseSdf(double voxel_size, double t_trunc, const Vec3& origin = Vec3::Zero());

  double voxel_size() const { return voxel_size_; }
  double t_trunc() const { return t_trunc_; }
  const Vec3& origin() const { return origin_; }
  std::size_t size() const { return voxels_.size(); }
  bool empty() const { return voxels_.empty(); }

  Vec3 center(const VoxelKey& key) const {
    return origin_ + Vec3(key.i + 0.5, key.j + 0.5, key.k + 0.5) * voxel_size_;
  }

  /// Key of the voxel whose cell contains the world point p.
  VoxelKey key_at(const Vec3& p) const {
    const Vec3 local = (p - origin_) / voxel_size_;
    return {static_cast<std::int32_t>(std::floor(local.x())),
            static_cast<std::int32_t>(std::floor(local.y())),
            static_cast<std::int32_t>(std::floor(local.z()))};
  }

  const Voxel* find(const VoxelKey& key) const {
    auto it = voxels_.find(key);
    return it == voxels_.end() ? nullptr : &it->second;
  }
  Voxel* find(const VoxelKey& key) {
    auto it = voxels_.find(key);
    return it == voxels_.end() ? nullptr : &it->second;
  }
  Voxel& insert(const VoxelKey& key) { return voxels_[key]; }

  const std::unordered_map<VoxelKey, Voxel, VoxelKeyHash>& voxels() const {
    return voxels_;
  }
  std::unordered_map<VoxelKey, Voxel, VoxelKeyHash>& voxels() {
    return voxels_;
  }

  /// Keys in deterministic (lexicographic) order.
  std::vector<VoxelKey> sorted_keys() const;

  /// Surface normal from forward differences of d_refined (needs the +x, +y,
  /// +z neighbors). Degenerate when |grad| < 1e-9.
  NormalResult normal(const VoxelKey& key) const;

  /// Projection of the voxel center onto the iso-surface:
  /// v0 = center - n * d_refined. Empty when the normal is undefined.
  std::optional<Vec3> iso_project(const VoxelKey& key) const;

  /// Unnormalized 6-neighbor Laplacian of d_refined,
  /// sum(neighbors) - 6 * center. Empty unless all six face neighbors exist.
  std::optional<double> laplacian(const VoxelKey& key) const;

  /// All voxels with weight > 0, |d_refined| < t_shell * voxel_size and a
  /// defined normal, in deterministic order. t_shell is in voxel units.
  std::vector<VoxelKey> thin_shell(double t_shell) const;

  /// Trilinear interpolation of d_refined over the surrounding voxel
  /// centers; empty if any of the eight supports is missing.
  std::optional<double> sample_distance(const Vec3& p) const;

  /// Trilinear interpolation of voxel colors; missing supports are skipped
  /// with weight renormalization. Empty only if all supports are missing.
  std::optional<Vec3> sample_color(const Vec3& p) const;

  /// Splits every voxel into its 8 children at half the voxel size.
  /// d_raw/d_refined/albedo are trilinearly interpolated at the child
  /// centers (renormalized over allocated supports), weights are copied from
  /// the parent. Colors are left to be recomputed by recolorization.
  SparseSdf upsample() const;

  /// Axis-aligned bounds of the allocated voxel centers.
  bool bounds(Vec3* lo, Vec3* hi) const;

  /// Binary snapshot ("ISDF1", little-endian).
  void save_snapshot(const std::string& path) const;
  static SparseSdf load_snapshot(const std::string& path);

 private:
  std::unordered_map<VoxelKey, Voxel, VoxelKeyHash> voxels_;
  double voxel_size_ = 0.0;
  double t_trunc_ = 0.0;
  Vec3 origin_ = Vec3::Zero();
};

}  // namespace isdf
