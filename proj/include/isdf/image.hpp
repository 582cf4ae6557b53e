/*
 * Copyright (c) 2026, the isdf authors.
 * All rights reserved.
 *
 * This software may be modified and distributed under the terms
 * of the BSD 3-Clause license. See the LICENSE file for details.
 */

#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "isdf/common.hpp"

namespace isdf {

/// Dense row-major image. T is float, double, or a fixed-size Eigen vector.
template <typename T>
class Image {
 public:
  Image() = default;
  Image(int width, int height, const T& fill = T{})
      : width_(width), height_(height),
        data_(static_cast<std::size_t>(width) * height, fill) {}

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return data_.empty(); }

  const T& at(int x, int y) const {
    return data_[static_cast<std::size_t>(y) * width_ + x];
  }
  T& at(int x, int y) { return data_[static_cast<std::size_t>(y) * width_ + x]; }

  bool contains(int x, int y) const {
    return x >= 0 && x < width_ && y >= 0 && y < height_;
  }

  const std::vector<T>& data() const { return data_; }
  std::vector<T>& data() { return data_; }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

/// Bilinear interpolation of the four pixels around (x, y).
/// Valid domain is [0, W-1] x [0, H-1]; out of bounds throws DataError.
template <typename T>
T bilinear(const Image<T>& img, double x, double y) {
  if (x < 0 || y < 0 || x > img.width() - 1 || y > img.height() - 1) {
    throw DataError("bilinear sample out of bounds");
  }
  int x0 = static_cast<int>(std::floor(x));
  int y0 = static_cast<int>(std::floor(y));
  if (x0 == img.width() - 1) --x0;   // x == W-1 exactly
  if (y0 == img.height() - 1) --y0;  // y == H-1 exactly
  const double fx = x - x0, fy = y - y0;
  const T& v00 = img.at(x0, y0);
  const T& v10 = img.at(x0 + 1, y0);
  const T& v01 = img.at(x0, y0 + 1);
  const T& v11 = img.at(x0 + 1, y0 + 1);
  return v00 * ((1 - fx) * (1 - fy)) + v10 * (fx * (1 - fy)) +
         v01 * ((1 - fx) * fy) + v11 * (fx * fy);
}

/// Bilinear depth sample; returns nullopt if any of the four supporting
/// pixels is missing (depth == 0). No interpolation across holes.
std::optional<double> sample_depth(const Image<float>& depth, double x,
                                   double y);

/// Image gradient by forward differences of bilinear samples:
/// (I(x+1,y) - I(x,y), I(x,y+1) - I(x,y)).
/// Valid domain is [0, W-2] x [0, H-2]; outside throws DataError.
Vec2 image_gradient(const Image<float>& img, double x, double y);

/// 2x2 box-average downsampling (color / intensity).
template <typename T>
Image<T> downsample_box(const Image<T>& img) {
  Image<T> out(img.width() / 2, img.height() / 2);
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) {
      out.at(x, y) = (img.at(2 * x, 2 * y) + img.at(2 * x + 1, 2 * y) +
                      img.at(2 * x, 2 * y + 1) + img.at(2 * x + 1, 2 * y + 1)) *
                     0.25;
    }
  }
  return out;
}

/// 2x2 downsampling of depth by median of the valid samples; 0 if none.
Image<float> downsample_depth(const Image<float>& depth);

}  // namespace isdf
