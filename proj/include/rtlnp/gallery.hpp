#pragma once

#include "rtlnp/encoder.hpp"
#include "rtlnp/geometry.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace rtlnp {

enum class Descriptor { Rtlnp, Lbp };

std::string descriptor_name(Descriptor d);
Descriptor descriptor_from_name(const std::string& name);

class DatasetError : public std::runtime_error {
 public:
  explicit DatasetError(const std::string& what) : std::runtime_error(what) {}
};

class IndexError : public std::runtime_error {
 public:
  explicit IndexError(const std::string& what) : std::runtime_error(what) {}
};

struct GalleryEntry {
  int id = 0;
  std::string path;
  std::string class_label;
  Histogram raw_bins;       // raw code counts, kept for audit
  std::int64_t total = 0;   // sum of raw_bins
  Eigen::VectorXd feature;  // L1-normalized, recomputed on load
};

struct GalleryIndex {
  static constexpr int format_version = 1;

  Descriptor descriptor = Descriptor::Rtlnp;
  RtlnpParams params;  // meaningful for Rtlnp only
  std::vector<GalleryEntry> entries;

  Eigen::Index feature_length() const;
};

// L1 normalization onto the simplex; an all-zero histogram maps to the zero
// vector.
Eigen::VectorXd normalize_feature(const Histogram& raw);

// Extracts the feature of one image with the index's descriptor and params.
Eigen::VectorXd extract_feature(const GrayImage& img, Descriptor d,
                                const RtlnpParams& params, Histogram* raw_out = nullptr);

// Builds a gallery from root/<class_label>/<image files>. Entries are ordered
// by lexicographic (class_label, filename) with dense ids 0..N-1. Extraction
// runs in parallel but the result is independent of the worker count. Any
// unreadable image aborts the build with its path in the message.
GalleryIndex build_index(const std::filesystem::path& dataset_root, Descriptor d,
                         const RtlnpParams& params, int workers = 1);

// Versioned JSON document; serialization is byte-stable, so saving an
// unmodified loaded index reproduces the file exactly.
void save_index(const GalleryIndex& index, const std::filesystem::path& path);
GalleryIndex load_index(const std::filesystem::path& path);

// Gallery ranking of one query under leave-one-out: every other entry sorted
// by ascending chi-square distance to the query, ties broken by ascending id.
struct RankedList {
  int query_id = 0;
  std::vector<int> ids;
  std::vector<double> distances;

  // 1-based rank of the given entry.
  int rank_of(int entry_id) const;
};

RankedList rank_gallery(int query_id, const GalleryIndex& index);

// Ranks an external probe feature against the whole gallery (no exclusion).
RankedList rank_probe(const Eigen::VectorXd& feature, const GalleryIndex& index);

}  // namespace rtlnp
