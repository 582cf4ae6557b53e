/*
 * Copyright (c) 2026, the isdf authors.
 * All rights reserved.
 *
 * This software may be modified and distributed under the terms
 * of the BSD 3-Clause license. See the LICENSE file for details.
 */

#include "isdf/camera.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace isdf {

CameraIntrinsics CameraIntrinsics::for_level(int level) const {
  if (level < 0) throw DataError("pyramid level must be >= 0");
  const int div = 1 << level;
  if (width % div != 0 || height % div != 0) {
    throw DataError("image dimensions " + std::to_string(width) + "x" +
                    std::to_string(height) + " not divisible by 2^" +
                    std::to_string(level));
  }
  CameraIntrinsics out = *this;
  const double s = 1.0 / div;
  out.fx = fx * s;
  out.fy = fy * s;
  // half-pixel-center convention: c' = (c + 0.5) / 2 - 0.5 per halving
  out.cx = (cx + 0.5) * s - 0.5;
  out.cy = (cy + 0.5) * s - 0.5;
  out.width = width / div;
  out.height = height / div;
  return out;
}

Vec2 project(const CameraIntrinsics& intr, const Vec3& p) {
  Vec2 pixel;
  if (!project_camera(intr.params(), p, &pixel)) {
    throw NumericalError("cannot project point behind the camera (z = " +
                         std::to_string(p.z()) + ")");
  }
  return pixel;
}

Vec3 unproject(const CameraIntrinsics& intr, const Vec2& pixel, double depth) {
  if (depth <= 0) throw NumericalError("unproject requires depth > 0");
  const Vec2 xd((pixel.x() - intr.cx) / intr.fx,
                (pixel.y() - intr.cy) / intr.fy);
  // Undistort by fixed-point iteration on x = (xd - tangential(x)) / radial(x).
  Vec2 xn = xd;
  double residual = 0;
  for (int it = 0; it < 8; ++it) {
    const double x = xn.x(), y = xn.y();
    const double r2 = x * x + y * y;
    const double radial = 1.0 + r2 * (intr.k1 + r2 * intr.k2);
    const Vec2 tangential(2.0 * intr.p1 * x * y,
                          intr.p1 * (r2 + 2.0 * y * y));
    xn = (xd - tangential) / radial;
    residual = (distort_normalized(intr.k1, intr.k2, intr.p1, xn) - xd).norm();
    if (residual < 1e-8) break;
  }
  if (residual >= 1e-6) {
    throw NumericalError("undistortion did not converge (residual " +
                         std::to_string(residual) + ")");
  }
  return Vec3(xn.x() * depth, xn.y() * depth, depth);
}

Mat3 rotation_from_axis_angle(const Vec3& w) {
  Mat3 R;
  for (int c = 0; c < 3; ++c) {
    R.col(c) = rotate_axis_angle<double>(w, Vec3::Unit(c));
  }
  return R;
}

Vec3 axis_angle_from_rotation(const Mat3& R) {
  const Eigen::AngleAxisd aa(R);
  return aa.angle() * aa.axis();
}

Pose apply_increment(const Vec3& w, const Vec3& dt, const Pose& pose) {
  const Mat3 dR = rotation_from_axis_angle(w);
  return Pose{dR * pose.R, dR * pose.t + dt};
}

double rotation_angle_between(const Mat3& a, const Mat3& b) {
  const double c = ((a.transpose() * b).trace() - 1.0) / 2.0;
  return std::acos(std::clamp(c, -1.0, 1.0));
}

// --- file formats ----------------------------------------------------------

CameraIntrinsics load_intrinsics(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open intrinsics file: " + path);
  std::map<std::string, double> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw DataError(path + ":" + std::to_string(lineno) +
                      ": expected key=value");
    }
    try {
      kv[line.substr(0, eq)] = std::stod(line.substr(eq + 1));
    } catch (const std::exception&) {
      throw DataError(path + ":" + std::to_string(lineno) + ": bad number");
    }
  }
  CameraIntrinsics intr;
  auto get = [&](const char* key) {
    auto it = kv.find(key);
    if (it == kv.end())
      throw DataError(path + ": missing key '" + std::string(key) + "'");
    return it->second;
  };
  intr.fx = get("fx");
  intr.fy = get("fy");
  intr.cx = get("cx");
  intr.cy = get("cy");
  intr.k1 = get("k1");
  intr.k2 = get("k2");
  intr.p1 = get("p1");
  intr.width = static_cast<int>(get("width"));
  intr.height = static_cast<int>(get("height"));
  if (!intr.valid()) throw DataError(path + ": invalid intrinsics");
  return intr;
}

void save_intrinsics(const CameraIntrinsics& intr, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write intrinsics file: " + path);
  out.precision(17);
  out << "fx=" << intr.fx << "\nfy=" << intr.fy << "\ncx=" << intr.cx
      << "\ncy=" << intr.cy << "\nk1=" << intr.k1 << "\nk2=" << intr.k2
      << "\np1=" << intr.p1 << "\nwidth=" << intr.width
      << "\nheight=" << intr.height << "\n";
}

std::vector<std::pair<int, Pose>> load_trajectory(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open trajectory file: " + path);
  std::vector<std::pair<int, Pose>> traj;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    int index;
    double tx, ty, tz, qx, qy, qz, qw;
    if (!(ss >> index >> tx >> ty >> tz >> qx >> qy >> qz >> qw)) {
      throw DataError(path + ":" + std::to_string(lineno) +
                      ": expected 'index tx ty tz qx qy qz qw'");
    }
    Eigen::Quaterniond q(qw, qx, qy, qz);
    if (std::abs(q.norm() - 1.0) > 1e-3) {
      throw DataError(path + ":" + std::to_string(lineno) +
                      ": quaternion is not normalized");
    }
    q.normalize();
    traj.emplace_back(index, Pose{q.toRotationMatrix(), Vec3(tx, ty, tz)});
  }
  return traj;
}

void save_trajectory(const std::vector<std::pair<int, Pose>>& traj,
                     const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write trajectory file: " + path);
  out.precision(17);
  for (const auto& [index, pose] : traj) {
    const Eigen::Quaterniond q(pose.R);
    out << index << " " << pose.t.x() << " " << pose.t.y() << " "
        << pose.t.z() << " " << q.x() << " " << q.y() << " " << q.z() << " "
        << q.w() << "\n";
  }
}

}  // namespace isdf
