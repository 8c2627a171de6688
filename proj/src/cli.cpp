#include "rtlnp/cli.hpp"

#include "rtlnp/lbp.hpp"
#include "rtlnp/parallel.hpp"
#include "rtlnp/pgm.hpp"

#include <chrono>
#include <ostream>

namespace rtlnp::cli {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

void cmd_extract(const ExtractConfig& config, std::ostream& log) {
  if (config.out.empty()) throw std::invalid_argument("no output path given");
  const auto start = Clock::now();
  const GalleryIndex index = build_index(config.dataset_root, config.descriptor,
                                         config.params, resolve_workers(config.workers));
  save_index(index, config.out);
  log << "indexed " << index.entries.size() << " entries ("
      << descriptor_name(config.descriptor) << ") in " << elapsed_ms(start) << " ms -> "
      << config.out.string() << "\n";
}

void cmd_feature_image(const FeatureImageConfig& config, std::ostream& log) {
  if (config.out.empty()) throw std::invalid_argument("no output path given");
  const GrayImage img = load_grayscale(config.input);
  FeatureImage feature;
  int sectors = 0;
  if (config.descriptor == Descriptor::Lbp) {
    feature = lbp_feature_image(img);
    sectors = kLbpBits;
  } else {
    feature = rtlnp_feature_image(img, config.params);
    sectors = sector_count(config.params.delta_theta);
  }
  save_pgm(config.out, feature_to_gray(feature, sectors));
  log << "wrote feature image " << config.out.string() << " (" << img.cols() << "x"
      << img.rows() << ", margin " << feature.valid_margin << ")\n";
}

void cmd_query(const QueryConfig& config, std::ostream& out) {
  const GalleryIndex index = load_index(config.index_file);
  const GrayImage img = load_grayscale(config.image);
  const Eigen::VectorXd feature =
      extract_feature(img, index.descriptor, index.params);
  const RankedList ranked = rank_probe(feature, index);

  const int top = std::min<int>(config.top_k, static_cast<int>(ranked.ids.size()));
  out << "rank\tdistance\tclass\tpath\n";
  for (int i = 0; i < top; ++i) {
    const GalleryEntry& e =
        index.entries[static_cast<std::size_t>(ranked.ids[static_cast<std::size_t>(i)])];
    out << i + 1 << '\t' << ranked.distances[static_cast<std::size_t>(i)] << '\t'
        << e.class_label << '\t' << e.path << '\n';
  }
}

void cmd_benchmark(const BenchmarkConfig& config, std::ostream& log) {
  if (config.out.empty()) throw std::invalid_argument("no output path given");
  if (config.dataset_root.empty() == config.index_file.empty())
    throw std::invalid_argument("give exactly one of a dataset root or an index file");

  const int workers = resolve_workers(config.workers);
  const auto start = Clock::now();
  GalleryIndex index;
  if (!config.dataset_root.empty()) {
    index = build_index(config.dataset_root, config.descriptor, config.params, workers);
    log << "indexed " << index.entries.size() << " entries in " << elapsed_ms(start)
        << " ms\n";
  } else {
    index = load_index(config.index_file);
    log << "loaded " << index.entries.size() << " entries from "
        << config.index_file.string() << "\n";
  }
  if (!config.index_out.empty()) save_index(index, config.index_out);

  const auto eval_start = Clock::now();
  const EvaluationRun run = make_run(index, workers);
  const MetricsReport report =
      compute_report(index, run, config.lambda_max, config.cmc_max_rank,
                     config.recall_mode);
  log << "evaluated " << run.size() << " queries in " << elapsed_ms(eval_start)
      << " ms\n";

  std::filesystem::path json_path = config.out;
  json_path += ".json";
  std::filesystem::path csv_path = config.out;
  csv_path += ".csv";
  write_report_json(report, json_path);
  write_report_csv(report, csv_path);

  for (const std::string& note : report.notes) log << "note: " << note << "\n";
  log << "recognition rate " << report.recognition << "%, f-score " << report.f;
  if (report.anmrr_value) log << ", anmrr " << *report.anmrr_value;
  log << " -> " << json_path.string() << ", " << csv_path.string() << "\n";
}

std::string error_category(const std::exception& e) {
  if (const auto* io = dynamic_cast<const ImageIoError*>(&e)) {
    switch (io->kind()) {
      case ImageIoError::Kind::MissingFile: return "missing-file";
      case ImageIoError::Kind::UnsupportedFormat: return "unsupported-format";
      case ImageIoError::Kind::CorruptData: return "corrupt-image";
    }
  }
  if (dynamic_cast<const DatasetError*>(&e)) return "bad-dataset";
  if (dynamic_cast<const IndexError*>(&e)) return "bad-index";
  if (dynamic_cast<const std::invalid_argument*>(&e)) return "invalid-argument";
  if (dynamic_cast<const std::out_of_range*>(&e)) return "out-of-range";
  return "runtime-error";
}

}  // namespace rtlnp::cli
