#pragma once

#include <vector>

namespace rtlnp {

// Operator parameters. The start angle is fixed at 0 degrees; sectors sweep
// counterclockwise from the +x axis.
struct RtlnpParams {
  int r_in = 3;
  int r_out = 6;
  int delta_theta = 36;  // angular sector width in whole degrees

  static constexpr int theta_zero = 0;

  bool operator==(const RtlnpParams&) const = default;
};

// Throws std::invalid_argument unless 1 <= r_in < r_out, 1 <= delta_theta <= 360
// and the sector count stays small enough for a 2^S-bin histogram (S <= 24).
void validate(const RtlnpParams& params);

// S = floor(360 / delta_theta).
int sector_count(int delta_theta);

// Neighbors a sector takes from the ring at the given radius,
// ceil(ring * delta_theta / 45). The printed formula reads as floor, but the
// worked values it is expected to produce (1 for ring 1 at 36 degrees) only
// come out under ceiling, so ceiling it is.
int neighbors_per_sector(int ring, int delta_theta);

// Ring ordinal of the k-th neighbor of the given sector,
// min(ceil(ring * delta_theta * (sector-1) / 45) + k, 8 * ring).
// sector and k are 1-based. The clamp means sectors can share ring pixels when
// there are more sectors than pixels on the ring.
int neighbor_index(int ring, int sector, int k, int delta_theta);

// One sampling position relative to the reference pixel.
struct RingOffset {
  int dc = 0;       // column offset
  int dr = 0;       // row offset
  int ring = 0;     // Chebyshev radius, max(|dc|, |dr|)
  int ordinal = 0;  // 1-based position on the ring

  bool operator==(const RingOffset&) const = default;
};

// The 8*ring pixels at Chebyshev distance `ring`, ordered by ascending angle
// measured from the +column axis turning toward -row (counterclockwise on
// screen), starting at (ring, 0). Ordinals run 1..8*ring in that order.
std::vector<RingOffset> ring_offsets(int ring);

// Precomputed sampling pattern: for each sector, the inner-subsector offsets
// (rings 1..r_in, reference pixel not included) and the outer-subsector
// offsets (rings r_in+1..r_out). Built once per params and reused for every
// pixel of every image.
struct SectorGeometry {
  RtlnpParams params;
  int sectors = 0;
  std::vector<std::vector<RingOffset>> inner;  // [sector j-1]
  std::vector<std::vector<RingOffset>> outer;  // [sector j-1]
};

SectorGeometry build_geometry(const RtlnpParams& params);

}  // namespace rtlnp
