#pragma once

#include <Eigen/Core>

#include <cstdint>

namespace rtlnp {

// 8-bit grayscale image. Row-major so the raw buffer matches PGM byte order;
// Eigen indexing is (row, col), i.e. pixel (c, r) lives at img(r, c).
using GrayImage =
    Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// BT.601 luma, rounded half-up. Exact integer arithmetic (299+587+114 = 1000).
std::uint8_t luma601(std::uint8_t r, std::uint8_t g, std::uint8_t b);

// Deterministic synthetic images for fixtures and benchmarks.
GrayImage constant_image(Eigen::Index width, Eigen::Index height, std::uint8_t value);
GrayImage ramp_x_image(Eigen::Index width, Eigen::Index height);  // pixel(c,r) = c mod 256
GrayImage ramp_y_image(Eigen::Index width, Eigen::Index height);  // pixel(c,r) = r mod 256
GrayImage checker_image(Eigen::Index width, Eigen::Index height, int period);  // 0/255 tiles

}  // namespace rtlnp
