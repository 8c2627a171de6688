#include "rtlnp/image.hpp"

#include <stdexcept>

namespace rtlnp {

namespace {

void check_dims(Eigen::Index width, Eigen::Index height) {
  if (width < 1 || height < 1)
    throw std::invalid_argument("image dimensions must be at least 1x1");
}

}  // namespace

std::uint8_t luma601(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  const int y = (299 * r + 587 * g + 114 * b + 500) / 1000;
  return static_cast<std::uint8_t>(y);
}

GrayImage constant_image(Eigen::Index width, Eigen::Index height, std::uint8_t value) {
  check_dims(width, height);
  return GrayImage::Constant(height, width, value);
}

GrayImage ramp_x_image(Eigen::Index width, Eigen::Index height) {
  check_dims(width, height);
  GrayImage img(height, width);
  for (Eigen::Index r = 0; r < height; ++r)
    for (Eigen::Index c = 0; c < width; ++c)
      img(r, c) = static_cast<std::uint8_t>(c % 256);
  return img;
}

GrayImage ramp_y_image(Eigen::Index width, Eigen::Index height) {
  check_dims(width, height);
  GrayImage img(height, width);
  for (Eigen::Index r = 0; r < height; ++r)
    img.row(r).setConstant(static_cast<std::uint8_t>(r % 256));
  return img;
}

GrayImage checker_image(Eigen::Index width, Eigen::Index height, int period) {
  check_dims(width, height);
  if (period < 1) throw std::invalid_argument("checker period must be at least 1");
  GrayImage img(height, width);
  for (Eigen::Index r = 0; r < height; ++r)
    for (Eigen::Index c = 0; c < width; ++c)
      img(r, c) = ((r / period + c / period) % 2) ? 255 : 0;
  return img;
}

}  // namespace rtlnp
