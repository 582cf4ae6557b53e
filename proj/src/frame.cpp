/*
 * Copyright (c) 2026, the isdf authors.
 * All rights reserved.
 *
 * This software may be modified and distributed under the terms
 * of the BSD 3-Clause license. See the LICENSE file for details.
 */

#include "isdf/frame.hpp"

#include <algorithm>
#include <cmath>

namespace isdf {

float intensity_from_rgb(float r, float g, float b) {
  return static_cast<float>(kLumaR) * r + static_cast<float>(kLumaG) * g +
         static_cast<float>(kLumaB) * b;
}

void Frame::derive_intensity() {
  intensity = Image<float>(color.width(), color.height());
  for (int y = 0; y < color.height(); ++y) {
    for (int x = 0; x < color.width(); ++x) {
      const Vec3f& c = color.at(x, y);
      intensity.at(x, y) = intensity_from_rgb(c.x(), c.y(), c.z());
    }
  }
}

namespace {

// 1D box blur of radius 4 (9 taps) along x or y, borders replicated.
Image<float> box_blur_1d(const Image<float>& img, bool horizontal) {
  constexpr int kRadius = 4;
  Image<float> out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      float sum = 0.f;
      for (int o = -kRadius; o <= kRadius; ++o) {
        const int xx = horizontal ? std::clamp(x + o, 0, img.width() - 1) : x;
        const int yy = horizontal ? y : std::clamp(y + o, 0, img.height() - 1);
        sum += img.at(xx, yy);
      }
      out.at(x, y) = sum / (2 * kRadius + 1);
    }
  }
  return out;
}

// Sum of |I(x,y) - I(x-1,y)| (horizontal) or |I(x,y) - I(x,y-1)| (vertical),
// together with the sum of the per-pixel gradient loss against `blurred`.
void gradient_attenuation(const Image<float>& img, const Image<float>& blurred,
                          bool horizontal, double* total, double* attenuated) {
  *total = 0;
  *attenuated = 0;
  const int x0 = horizontal ? 1 : 0;
  const int y0 = horizontal ? 0 : 1;
  for (int y = y0; y < img.height(); ++y) {
    for (int x = x0; x < img.width(); ++x) {
      const double d = std::abs(
          img.at(x, y) - img.at(horizontal ? x - 1 : x, horizontal ? y : y - 1));
      const double db =
          std::abs(blurred.at(x, y) -
                   blurred.at(horizontal ? x - 1 : x, horizontal ? y : y - 1));
      *total += d;
      *attenuated += std::max(0.0, d - db);
    }
  }
}

}  // namespace

double blur_score(const Image<float>& intensity) {
  if (intensity.width() < 3 || intensity.height() < 3) {
    throw DataError("blur_score requires an image of at least 3x3");
  }
  const Image<float> blur_h = box_blur_1d(intensity, true);
  const Image<float> blur_v = box_blur_1d(intensity, false);

  double total_h, lost_h, total_v, lost_v;
  gradient_attenuation(intensity, blur_h, true, &total_h, &lost_h);
  gradient_attenuation(intensity, blur_v, false, &total_v, &lost_v);

  // A constant image carries no sharpness evidence.
  if (total_h <= 0 && total_v <= 0) return 1.0;

  const double score_h = total_h > 0 ? (total_h - lost_h) / total_h : 1.0;
  const double score_v = total_v > 0 ? (total_v - lost_v) / total_v : 1.0;
  return std::clamp(std::max(score_h, score_v), 0.0, 1.0);
}

std::vector<int> select_keyframes(const std::vector<Frame>& frames, int t_kf) {
  if (t_kf < 1) throw DataError("keyframe window size must be >= 1");
  std::vector<int> selected;
  for (std::size_t start = 0; start < frames.size();
       start += static_cast<std::size_t>(t_kf)) {
    const std::size_t end =
        std::min(frames.size(), start + static_cast<std::size_t>(t_kf));
    std::size_t best = start;
    for (std::size_t i = start + 1; i < end; ++i) {
      if (frames[i].blur < frames[best].blur) best = i;
    }
    selected.push_back(static_cast<int>(best));
  }
  return selected;
}

std::optional<double> sample_depth(const Image<float>& depth, double x,
                                   double y) {
  if (x < 0 || y < 0 || x > depth.width() - 1 || y > depth.height() - 1) {
    return std::nullopt;
  }
  int x0 = static_cast<int>(std::floor(x));
  int y0 = static_cast<int>(std::floor(y));
  if (x0 == depth.width() - 1) --x0;
  if (y0 == depth.height() - 1) --y0;
  const float d00 = depth.at(x0, y0), d10 = depth.at(x0 + 1, y0);
  const float d01 = depth.at(x0, y0 + 1), d11 = depth.at(x0 + 1, y0 + 1);
  if (d00 <= 0 || d10 <= 0 || d01 <= 0 || d11 <= 0) return std::nullopt;
  const double fx = x - x0, fy = y - y0;
  return d00 * (1 - fx) * (1 - fy) + d10 * fx * (1 - fy) +
         d01 * (1 - fx) * fy + d11 * fx * fy;
}

Vec2 image_gradient(const Image<float>& img, double x, double y) {
  if (x < 0 || y < 0 || x > img.width() - 2 || y > img.height() - 2) {
    throw DataError("image_gradient sample outside valid interior");
  }
  const double v = bilinear(img, x, y);
  return Vec2(bilinear(img, x + 1, y) - v, bilinear(img, x, y + 1) - v);
}

Image<float> downsample_depth(const Image<float>& depth) {
  Image<float> out(depth.width() / 2, depth.height() / 2);
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) {
      float v[4] = {depth.at(2 * x, 2 * y), depth.at(2 * x + 1, 2 * y),
                    depth.at(2 * x, 2 * y + 1), depth.at(2 * x + 1, 2 * y + 1)};
      int n = 0;
      float valid[4];
      for (float d : v) {
        if (d > 0) valid[n++] = d;
      }
      if (n == 0) {
        out.at(x, y) = 0.f;
        continue;
      }
      std::sort(valid, valid + n);
      // lower median: never invents a depth between two surfaces
      out.at(x, y) = valid[(n - 1) / 2];
    }
  }
  return out;
}

FramePyramid build_pyramid(const Frame& frame, const CameraIntrinsics& intr,
                           int levels) {
  if (levels < 1) throw DataError("pyramid needs at least one level");
  const int div = 1 << (levels - 1);
  if (frame.color.width() % div != 0 || frame.color.height() % div != 0) {
    throw DataError("image dimensions not divisible by 2^(levels-1)");
  }
  FramePyramid pyramid;
  pyramid.push_back({frame.color, frame.intensity, frame.depth, intr});
  for (int l = 1; l < levels; ++l) {
    const PyramidLevel& prev = pyramid.back();
    pyramid.push_back({downsample_box(prev.color),
                       downsample_box(prev.intensity),
                       downsample_depth(prev.depth), intr.for_level(l)});
  }
  return pyramid;
}

}  // namespace isdf
