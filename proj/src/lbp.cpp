#include "rtlnp/lbp.hpp"

#include "rtlnp/geometry.hpp"
#include "rtlnp/parallel.hpp"

#include <array>
#include <stdexcept>

namespace rtlnp {

namespace {

std::array<std::pair<int, int>, 8> lbp_neighbors() {
  std::array<std::pair<int, int>, 8> out;
  const auto ring = ring_offsets(1);
  for (int i = 0; i < 8; ++i) out[static_cast<std::size_t>(i)] = {ring[i].dc, ring[i].dr};
  return out;
}

}  // namespace

std::uint32_t lbp_code(const GrayImage& img, Eigen::Index col, Eigen::Index row) {
  if (col < 1 || row < 1 || col >= img.cols() - 1 || row >= img.rows() - 1)
    throw std::out_of_range("center pixel must be at least 1 pixel from every edge");
  static const auto neighbors = lbp_neighbors();
  const int center = img(row, col);
  std::uint32_t code = 0;
  for (int p = 0; p < 8; ++p) {
    const auto [dc, dr] = neighbors[static_cast<std::size_t>(p)];
    if (img(row + dr, col + dc) >= center) code |= (std::uint32_t{1} << p);
  }
  return code;
}

FeatureImage lbp_feature_image(const GrayImage& img, int workers) {
  workers = resolve_workers(workers);
  if (img.cols() <= 2 || img.rows() <= 2)
    throw std::invalid_argument("image too small: LBP needs width and height > 2");
  FeatureImage out;
  out.codes = CodeImage::Zero(img.rows(), img.cols());
  out.valid_margin = 1;
  parallel_for(1, img.rows() - 1, workers, [&](std::int64_t row) {
    for (Eigen::Index col = 1; col < img.cols() - 1; ++col)
      out.codes(row, col) = lbp_code(img, col, row);
  });
  return out;
}

Histogram lbp_histogram(const GrayImage& img) {
  return code_histogram(lbp_feature_image(img), kLbpBits);
}

}  // namespace rtlnp
