#include "rtlnp/geometry.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace rtlnp {

namespace {

constexpr int kMaxSectors = 24;  // keeps 2^S histogram bins allocatable

int ceil_div(int num, int den) { return (num + den - 1) / den; }

void check_delta_theta(int delta_theta) {
  if (delta_theta < 1 || delta_theta > 360)
    throw std::invalid_argument("delta_theta must be in [1, 360] degrees, got " +
                                std::to_string(delta_theta));
}

}  // namespace

void validate(const RtlnpParams& params) {
  if (params.r_in < 1)
    throw std::invalid_argument("r_in must be at least 1");
  if (params.r_out <= params.r_in)
    throw std::invalid_argument("r_out must be greater than r_in");
  check_delta_theta(params.delta_theta);
  if (sector_count(params.delta_theta) > kMaxSectors)
    throw std::invalid_argument(
        "delta_theta " + std::to_string(params.delta_theta) + " gives " +
        std::to_string(sector_count(params.delta_theta)) +
        " sectors; at most " + std::to_string(kMaxSectors) + " are supported");
}

int sector_count(int delta_theta) {
  check_delta_theta(delta_theta);
  return 360 / delta_theta;
}

int neighbors_per_sector(int ring, int delta_theta) {
  if (ring < 1) throw std::invalid_argument("ring must be at least 1");
  return ceil_div(ring * delta_theta, 45);
}

int neighbor_index(int ring, int sector, int k, int delta_theta) {
  const int base = ceil_div(ring * delta_theta * (sector - 1), 45);
  return std::min(base + k, 8 * ring);
}

std::vector<RingOffset> ring_offsets(int ring) {
  if (ring < 1) throw std::invalid_argument("ring must be at least 1");
  std::vector<RingOffset> offsets;
  offsets.reserve(static_cast<std::size_t>(8 * ring));
  // Walk the square ring in angle order: up the right edge from (ring, 0),
  // left across the top, down the left edge, right across the bottom, and up
  // the right edge again to just below the start.
  const int r = ring;
  for (int dr = 0; dr >= -r; --dr) offsets.push_back({r, dr, r, 0});
  for (int dc = r - 1; dc >= -r; --dc) offsets.push_back({dc, -r, r, 0});
  for (int dr = -r + 1; dr <= r; ++dr) offsets.push_back({-r, dr, r, 0});
  for (int dc = -r + 1; dc <= r; ++dc) offsets.push_back({dc, r, r, 0});
  for (int dr = r - 1; dr >= 1; --dr) offsets.push_back({r, dr, r, 0});
  for (std::size_t i = 0; i < offsets.size(); ++i)
    offsets[i].ordinal = static_cast<int>(i) + 1;
  return offsets;
}

SectorGeometry build_geometry(const RtlnpParams& params) {
  validate(params);
  const int sectors = sector_count(params.delta_theta);

  std::vector<std::vector<RingOffset>> rings;  // rings[n-1] for radius n
  rings.reserve(static_cast<std::size_t>(params.r_out));
  for (int n = 1; n <= params.r_out; ++n) rings.push_back(ring_offsets(n));

  SectorGeometry geom;
  geom.params = params;
  geom.sectors = sectors;
  geom.inner.resize(static_cast<std::size_t>(sectors));
  geom.outer.resize(static_cast<std::size_t>(sectors));

  for (int j = 1; j <= sectors; ++j) {
    auto& inner = geom.inner[static_cast<std::size_t>(j - 1)];
    auto& outer = geom.outer[static_cast<std::size_t>(j - 1)];
    for (int n = 1; n <= params.r_out; ++n) {
      auto& dst = (n <= params.r_in) ? inner : outer;
      const int count = neighbors_per_sector(n, params.delta_theta);
      const auto& ring = rings[static_cast<std::size_t>(n - 1)];
      for (int k = 1; k <= count; ++k) {
        const int l = neighbor_index(n, j, k, params.delta_theta);
        dst.push_back(ring[static_cast<std::size_t>(l - 1)]);
      }
    }
  }
  return geom;
}

}  // namespace rtlnp
