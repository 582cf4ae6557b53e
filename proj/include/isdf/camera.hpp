/*
 * Copyright (c) 2026, the isdf authors.
 * All rights reserved.
 *
 * This software may be modified and distributed under the terms
 * of the BSD 3-Clause license. See the LICENSE file for details.
 */

#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "isdf/common.hpp"

namespace isdf {

/// Pinhole camera with Brown radial/tangential distortion (k1, k2, p1;
/// the second tangential coefficient is fixed at zero). Integer pixel
/// coordinates address pixel centers.
struct CameraIntrinsics {
  double fx = 0, fy = 0;
  double cx = 0, cy = 0;
  double k1 = 0, k2 = 0, p1 = 0;
  int width = 0, height = 0;

  std::array<double, 7> params() const { return {fx, fy, cx, cy, k1, k2, p1}; }

  bool valid() const {
    return fx > 0 && fy > 0 && width > 0 && height > 0 && cx >= 0 &&
           cx < width && cy >= 0 && cy < height;
  }

  /// Intrinsics of pyramid level `level` (dimensions halved per level,
  /// principal point follows the half-pixel-center convention, distortion
  /// coefficients unchanged). Throws DataError if dimensions do not divide.
  CameraIntrinsics for_level(int level) const;
};

// value_of extracts the scalar part of plain doubles; jet.hpp overloads it
// for dual numbers.
inline double value_of(double x) { return x; }

/// Applies Brown distortion to normalized image coordinates.
template <typename T>
Vec2T<T> distort_normalized(const T& k1, const T& k2, const T& p1,
                            const Vec2T<T>& xn) {
  const T x = xn.x(), y = xn.y();
  const T r2 = x * x + y * y;
  const T radial = T(1.0) + r2 * (k1 + r2 * k2);
  return Vec2T<T>(x * radial + T(2.0) * p1 * x * y,
                  y * radial + p1 * (r2 + T(2.0) * y * y));
}

/// Projects a camera-space point to pixel coordinates. Returns false if the
/// point is not in front of the camera. `params` = (fx fy cx cy k1 k2 p1).
template <typename T>
bool project_camera(const std::array<T, 7>& params, const Vec3T<T>& p,
                    Vec2T<T>* pixel) {
  if (!(value_of(p.z()) > 0.0)) return false;
  const Vec2T<T> xn(p.x() / p.z(), p.y() / p.z());
  const Vec2T<T> xd = distort_normalized(params[4], params[5], params[6], xn);
  *pixel = Vec2T<T>(params[0] * xd.x() + params[2],
                    params[1] * xd.y() + params[3]);
  return true;
}

/// Projects a camera-space point. Throws NumericalError when p.z <= 0.
Vec2 project(const CameraIntrinsics& intr, const Vec3& p);

/// Back-projects a pixel at the given depth, undoing lens distortion by
/// fixed-point iteration. Throws NumericalError if the undistortion does
/// not converge.
Vec3 unproject(const CameraIntrinsics& intr, const Vec2& pixel, double depth);

/// Rigid camera-to-world transform (R in SO(3), t in meters).
struct Pose {
  Mat3 R = Mat3::Identity();
  Vec3 t = Vec3::Zero();

  Vec3 transform(const Vec3& p) const { return R * p + t; }
  Vec3 inverse_transform(const Vec3& p) const { return R.transpose() * (p - t); }

  Pose inverse() const { return {R.transpose(), -(R.transpose() * t)}; }
  Pose operator*(const Pose& rhs) const { return {R * rhs.R, R * rhs.t + t}; }

  Vec3 center() const { return t; }

  bool is_valid(double tol = 1e-6) const {
    return (R.transpose() * R - Mat3::Identity()).norm() < tol &&
           std::abs(R.determinant() - 1.0) < tol;
  }

  static Pose identity() { return {}; }
};

/// Rodrigues rotation of `p` by the axis-angle vector `w`; series expansion
/// near zero keeps it smooth for automatic differentiation.
template <typename T>
Vec3T<T> rotate_axis_angle(const Vec3T<T>& w, const Vec3T<T>& p) {
  using std::cos;
  using std::sin;
  using std::sqrt;
  const T theta2 = w.squaredNorm();
  if (value_of(theta2) > 1e-16) {
    const T theta = sqrt(theta2);
    const T c = cos(theta);
    const T s_over_t = sin(theta) / theta;
    const T one_minus_c_over_t2 = (T(1.0) - c) / theta2;
    return p * c + w.cross(p) * s_over_t + w * (w.dot(p) * one_minus_c_over_t2);
  }
  // theta -> 0: sin(t)/t ~ 1 - t^2/6, (1-cos t)/t^2 ~ 1/2 - t^2/24
  const T s_over_t = T(1.0) - theta2 / T(6.0);
  const T one_minus_c_over_t2 = T(0.5) - theta2 / T(24.0);
  const T c = T(1.0) - theta2 * one_minus_c_over_t2;
  return p * c + w.cross(p) * s_over_t + w * (w.dot(p) * one_minus_c_over_t2);
}

/// Rotation matrix from an axis-angle vector.
Mat3 rotation_from_axis_angle(const Vec3& w);

/// Axis-angle vector of a rotation matrix (geodesic log map).
Vec3 axis_angle_from_rotation(const Mat3& R);

/// Left-multiplies the pose by the increment exp(xi) with xi = (w, dt).
Pose apply_increment(const Vec3& w, const Vec3& dt, const Pose& pose);

/// Geodesic angle between two rotations, in radians.
double rotation_angle_between(const Mat3& a, const Mat3& b);

// --- file formats ----------------------------------------------------------

/// Plain-text intrinsics file: one key=value per line
/// (fx, fy, cx, cy, k1, k2, p1, width, height).
CameraIntrinsics load_intrinsics(const std::string& path);
void save_intrinsics(const CameraIntrinsics& intr, const std::string& path);

/// Trajectory file: "frame_index tx ty tz qx qy qz qw" per line,
/// camera-to-world. Returns poses paired with their frame indices.
std::vector<std::pair<int, Pose>> load_trajectory(const std::string& path);
void save_trajectory(const std::vector<std::pair<int, Pose>>& traj,
                     const std::string& path);

}  // namespace isdf
