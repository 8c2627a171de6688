#include "rtlnp/encoder.hpp"

#include "rtlnp/parallel.hpp"

#include <cassert>
#include <stdexcept>
#include <string>
#include <vector>

namespace rtlnp {

namespace {

// Geometry flattened to linear pixel-buffer deltas for one image stride. This
// is what makes the per-pixel cost a constant: one add per sampled pixel, no
// coordinate math in the hot loop.
struct LinearGeometry {
  struct Sector {
    std::vector<std::ptrdiff_t> inner;
    std::vector<std::ptrdiff_t> outer;
    int inner_divisor = 0;  // inner count + 1 for the reference pixel
    int outer_divisor = 0;
  };
  std::vector<Sector> sectors;
};

LinearGeometry linearize(const SectorGeometry& geom, Eigen::Index stride) {
  LinearGeometry lin;
  lin.sectors.resize(geom.inner.size());
  for (std::size_t j = 0; j < geom.inner.size(); ++j) {
    auto& sec = lin.sectors[j];
    for (const RingOffset& o : geom.inner[j])
      sec.inner.push_back(static_cast<std::ptrdiff_t>(o.dr) * stride + o.dc);
    for (const RingOffset& o : geom.outer[j])
      sec.outer.push_back(static_cast<std::ptrdiff_t>(o.dr) * stride + o.dc);
    sec.inner_divisor = static_cast<int>(sec.inner.size()) + 1;
    sec.outer_divisor = static_cast<int>(sec.outer.size());
  }
  return lin;
}

inline std::uint32_t encode_at(const std::uint8_t* center, const LinearGeometry& lin) {
  std::uint32_t code = 0;
  const int ref = *center;
  for (std::size_t j = 0; j < lin.sectors.size(); ++j) {
    const auto& sec = lin.sectors[j];
    int inner_sum = ref;
    for (std::ptrdiff_t d : sec.inner) inner_sum += center[d];
    int outer_sum = 0;
    for (std::ptrdiff_t d : sec.outer) outer_sum += center[d];
    const int inner_avg = inner_sum / sec.inner_divisor;
    const int outer_avg = outer_sum / sec.outer_divisor;
    if (inner_avg > outer_avg) code |= (std::uint32_t{1} << j);
  }
  return code;
}

}  // namespace

int subsector_average(const GrayImage& img, Eigen::Index col, Eigen::Index row,
                      std::span<const RingOffset> offsets, bool include_reference) {
  assert(!offsets.empty() || include_reference);
  long sum = 0;
  long count = 0;
  if (include_reference) {
    sum += img(row, col);
    count += 1;
  }
  for (const RingOffset& o : offsets) {
    const Eigen::Index c = col + o.dc;
    const Eigen::Index r = row + o.dr;
    assert(c >= 0 && c < img.cols() && r >= 0 && r < img.rows());
    sum += img(r, c);
    count += 1;
  }
  return static_cast<int>(sum / count);
}

std::uint32_t encode_pixel(const GrayImage& img, Eigen::Index col, Eigen::Index row,
                           const SectorGeometry& geom) {
  const int margin = geom.params.r_out;
  if (col < margin || row < margin || col >= img.cols() - margin ||
      row >= img.rows() - margin)
    throw std::out_of_range("center pixel closer than r_out to the image border");

  std::uint32_t code = 0;
  for (int j = 1; j <= geom.sectors; ++j) {
    const auto& inner = geom.inner[static_cast<std::size_t>(j - 1)];
    const auto& outer = geom.outer[static_cast<std::size_t>(j - 1)];
    const int inner_avg = subsector_average(img, col, row, inner, true);
    const int outer_avg = subsector_average(img, col, row, outer, false);
    code |= static_cast<std::uint32_t>(encode_bit(inner_avg, outer_avg)) << (j - 1);
  }
  return code;
}

FeatureImage rtlnp_feature_image(const GrayImage& img, const RtlnpParams& params,
                                 int workers) {
  workers = resolve_workers(workers);
  validate(params);
  const int margin = params.r_out;
  if (img.cols() <= 2 * margin || img.rows() <= 2 * margin)
    throw std::invalid_argument(
        "image too small: needs width and height > " + std::to_string(2 * margin) +
        " for r_out " + std::to_string(params.r_out));

  const SectorGeometry geom = build_geometry(params);
  const LinearGeometry lin = linearize(geom, img.cols());

  FeatureImage out;
  out.codes = CodeImage::Zero(img.rows(), img.cols());
  out.valid_margin = margin;

  const std::uint8_t* pixels = img.data();
  std::uint32_t* codes = out.codes.data();
  const Eigen::Index stride = img.cols();
  parallel_for(margin, img.rows() - margin, workers, [&](std::int64_t row) {
    const std::uint8_t* src = pixels + row * stride;
    std::uint32_t* dst = codes + row * stride;
    for (Eigen::Index col = margin; col < stride - margin; ++col)
      dst[col] = encode_at(src + col, lin);
  });
  return out;
}

Histogram code_histogram(const FeatureImage& feature, int sectors) {
  if (sectors < 1 || sectors > 24)
    throw std::invalid_argument("sector count out of range");
  const std::int64_t bins = std::int64_t{1} << sectors;
  Histogram hist = Histogram::Zero(bins);
  const int m = feature.valid_margin;
  for (Eigen::Index r = m; r < feature.height() - m; ++r) {
    for (Eigen::Index c = m; c < feature.width() - m; ++c) {
      const std::uint32_t code = feature.codes(r, c);
      if (code >= static_cast<std::uint64_t>(bins))
        throw std::invalid_argument(
            "code " + std::to_string(code) + " out of range for " +
            std::to_string(sectors) + " sectors; feature/geometry mismatch");
      ++hist[static_cast<Eigen::Index>(code)];
    }
  }
  return hist;
}

GrayImage feature_to_gray(const FeatureImage& feature, int sectors) {
  if (sectors < 1 || sectors > 24)
    throw std::invalid_argument("sector count out of range");
  const std::int64_t max_code = (std::int64_t{1} << sectors) - 1;
  GrayImage out(feature.height(), feature.width());
  for (Eigen::Index r = 0; r < feature.height(); ++r)
    for (Eigen::Index c = 0; c < feature.width(); ++c)
      out(r, c) = static_cast<std::uint8_t>(
          static_cast<std::int64_t>(feature.codes(r, c)) * 255 / max_code);
  return out;
}

}  // namespace rtlnp
