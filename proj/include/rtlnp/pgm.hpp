#pragma once

#include "rtlnp/image.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace rtlnp {

class ImageIoError : public std::runtime_error {
 public:
  enum class Kind { MissingFile, UnsupportedFormat, CorruptData };

  ImageIoError(Kind kind, std::filesystem::path path, const std::string& detail)
      : std::runtime_error(describe(kind, path, detail)),
        kind_(kind),
        path_(std::move(path)) {}

  Kind kind() const { return kind_; }
  const std::filesystem::path& path() const { return path_; }

 private:
  static std::string describe(Kind kind, const std::filesystem::path& path,
                              const std::string& detail);

  Kind kind_;
  std::filesystem::path path_;
};

// Loads binary PGM (P5, maxval <= 255). Binary PPM (P6) is accepted as well and
// converted with BT.601 luma. Anything else raises UnsupportedFormat; truncated
// or malformed files raise CorruptData.
GrayImage load_grayscale(const std::filesystem::path& path);

// Writes binary PGM (P5), maxval 255.
void save_pgm(const std::filesystem::path& path, const GrayImage& img);

}  // namespace rtlnp
