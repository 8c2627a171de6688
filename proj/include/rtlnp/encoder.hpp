#pragma once

#include "rtlnp/geometry.hpp"
#include "rtlnp/image.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <span>

namespace rtlnp {

using CodeImage =
    Eigen::Matrix<std::uint32_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Per-pixel descriptor codes. Pixels within valid_margin of the border are not
// encoded; they hold 0 and are excluded from histograms.
struct FeatureImage {
  CodeImage codes;
  int valid_margin = 0;

  Eigen::Index width() const { return codes.cols(); }
  Eigen::Index height() const { return codes.rows(); }
};

using Histogram = Eigen::Vector<std::int64_t, Eigen::Dynamic>;

// Floored integer mean of the sampled intensities, with the reference pixel
// folded into both numerator and denominator when include_reference is set
// (inner subsectors only). Every offset must land inside the image.
int subsector_average(const GrayImage& img, Eigen::Index col, Eigen::Index row,
                      std::span<const RingOffset> offsets, bool include_reference);

// 0 if inner_avg <= outer_avg, else 1.
inline int encode_bit(int inner_avg, int outer_avg) {
  return inner_avg <= outer_avg ? 0 : 1;
}

// Code of one pixel, sum over sectors of 2^(j-1) * encode_bit. The center must
// be at least r_out away from every edge (std::out_of_range otherwise).
std::uint32_t encode_pixel(const GrayImage& img, Eigen::Index col, Eigen::Index row,
                           const SectorGeometry& geom);

// Encodes every interior pixel; border codes are 0. Requires both dimensions
// greater than 2*r_out. Row-parallel; output is identical for any worker count.
FeatureImage rtlnp_feature_image(const GrayImage& img, const RtlnpParams& params,
                                 int workers = 1);

// Counts interior codes into 2^sectors bins.
Histogram code_histogram(const FeatureImage& feature, int sectors);

// Scales codes to [0, 255] for visualization, floor(code * 255 / (2^S - 1)).
GrayImage feature_to_gray(const FeatureImage& feature, int sectors);

}  // namespace rtlnp
