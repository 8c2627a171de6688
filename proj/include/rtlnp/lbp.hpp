#pragma once

#include "rtlnp/encoder.hpp"
#include "rtlnp/image.hpp"

#include <cstdint>

namespace rtlnp {

inline constexpr int kLbpBits = 8;
inline constexpr int kLbpBins = 256;

// Classic radius-1, 8-neighbor LBP over the square ring, neighbors taken in
// ring_offsets order. Bit p is 1 iff neighbor_p >= center (ties encode 1).
std::uint32_t lbp_code(const GrayImage& img, Eigen::Index col, Eigen::Index row);

// Margin-1 feature image of LBP codes.
FeatureImage lbp_feature_image(const GrayImage& img, int workers = 1);

// 256-bin histogram over the interior; requires width and height > 2.
Histogram lbp_histogram(const GrayImage& img);

}  // namespace rtlnp
