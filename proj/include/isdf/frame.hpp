/*
 * Copyright (c) 2026, the isdf authors.
 * All rights reserved.
 *
 * This software may be modified and distributed under the terms
 * of the BSD 3-Clause license. See the LICENSE file for details.
 */

#pragma once

#include <vector>

#include "isdf/camera.hpp"
#include "isdf/image.hpp"

namespace isdf {

/// One RGB-D input frame. Depth is in meters with 0 = missing; intensity is
/// derived from color with the luma weights in common.hpp. Color and depth
/// are assumed registered on the same pixel grid.
struct Frame {
  int index = 0;
  Image<Vec3f> color;
  Image<float> intensity;
  Image<float> depth;
  Pose pose;
  double blur = 0.0;  // in [0,1], higher = blurrier

  /// Recomputes the intensity image from the color image.
  void derive_intensity();
};

float intensity_from_rgb(float r, float g, float b);

/// No-reference blur score in [0,1] (0 = sharp): re-blurs the image with
/// 1x9 / 9x1 box filters and measures how much of the directional gradient
/// mass survives. A constant image scores 1.0.
double blur_score(const Image<float>& intensity);

/// Splits frames into consecutive windows of t_kf and keeps the least
/// blurred frame of each window (ties to the lower index). Returns indices
/// into `frames`.
std::vector<int> select_keyframes(const std::vector<Frame>& frames, int t_kf);

struct PyramidLevel {
  Image<Vec3f> color;
  Image<float> intensity;
  Image<float> depth;
  CameraIntrinsics intrinsics;
};

/// Level 0 is the input resolution; each level halves both dimensions.
/// Color/intensity use 2x2 box averaging, depth the median of valid samples.
using FramePyramid = std::vector<PyramidLevel>;

FramePyramid build_pyramid(const Frame& frame, const CameraIntrinsics& intr,
                           int levels);

}  // namespace isdf
