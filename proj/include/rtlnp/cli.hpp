#pragma once

#include "rtlnp/gallery.hpp"
#include "rtlnp/metrics.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace rtlnp::cli {

struct ExtractConfig {
  std::filesystem::path dataset_root;
  Descriptor descriptor = Descriptor::Rtlnp;
  RtlnpParams params;
  std::filesystem::path out;
  int workers = 0;  // 0 = hardware concurrency
};

struct FeatureImageConfig {
  std::filesystem::path input;
  std::filesystem::path out;
  Descriptor descriptor = Descriptor::Rtlnp;
  RtlnpParams params;
};

struct QueryConfig {
  std::filesystem::path index_file;
  std::filesystem::path image;
  int top_k = 10;
};

struct BenchmarkConfig {
  std::filesystem::path dataset_root;  // one of dataset_root / index_file
  std::filesystem::path index_file;
  Descriptor descriptor = Descriptor::Rtlnp;
  RtlnpParams params;
  int lambda_max = 10;
  int cmc_max_rank = 10;
  RecallDenominator recall_mode = RecallDenominator::Literal;
  int workers = 0;
  std::filesystem::path out;        // writes <out>.json and <out>.csv
  std::filesystem::path index_out;  // optional: also persist the index
};

// Builds an index from the dataset and writes it to config.out.
void cmd_extract(const ExtractConfig& config, std::ostream& log);

// Writes the scaled feature image of one input as PGM.
void cmd_feature_image(const FeatureImageConfig& config, std::ostream& log);

// Ranks one probe image against a persisted index and prints the top entries.
void cmd_query(const QueryConfig& config, std::ostream& out);

// Full leave-one-out evaluation; writes <out>.json and <out>.csv.
void cmd_benchmark(const BenchmarkConfig& config, std::ostream& log);

// Single-line machine-parsable category for an error the CLI reports.
std::string error_category(const std::exception& e);

}  // namespace rtlnp::cli
