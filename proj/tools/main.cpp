#include "rtlnp/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

void add_param_flags(CLI::App* cmd, rtlnp::RtlnpParams& params, std::string& descriptor) {
  cmd->add_option("--rin", params.r_in, "inner radius R_in")->capture_default_str();
  cmd->add_option("--rout", params.r_out, "outer radius R_out")->capture_default_str();
  cmd->add_option("--theta", params.delta_theta, "sector width in degrees")
      ->capture_default_str();
  cmd->add_option("--descriptor", descriptor, "descriptor: rtlnp or lbp")
      ->check(CLI::IsMember({"rtlnp", "lbp"}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RTLNP texture descriptor and image retrieval toolkit"};
  app.require_subcommand(1);

  rtlnp::cli::ExtractConfig extract;
  std::string extract_descriptor = "rtlnp";
  auto* cmd_extract = app.add_subcommand("extract", "build a gallery index from a dataset");
  cmd_extract->add_option("dataset", extract.dataset_root,
                          "dataset root (class subdirectories of images)")
      ->required();
  cmd_extract->add_option("--out", extract.out, "index file to write")->required();
  cmd_extract->add_option("--workers", extract.workers, "worker threads (0 = auto)");
  add_param_flags(cmd_extract, extract.params, extract_descriptor);

  rtlnp::cli::FeatureImageConfig feat;
  std::string feat_descriptor = "rtlnp";
  auto* cmd_feat = app.add_subcommand("feature-image", "export a feature image as PGM");
  cmd_feat->add_option("input", feat.input, "input image (PGM/PPM)")->required();
  cmd_feat->add_option("--out", feat.out, "output PGM path")->required();
  add_param_flags(cmd_feat, feat.params, feat_descriptor);

  rtlnp::cli::QueryConfig query;
  auto* cmd_query = app.add_subcommand("query", "rank a probe image against an index");
  cmd_query->add_option("--index", query.index_file, "index file")->required();
  cmd_query->add_option("image", query.image, "probe image")->required();
  cmd_query->add_option("--top", query.top_k, "number of results to print")
      ->capture_default_str();

  rtlnp::cli::BenchmarkConfig bench;
  std::string bench_descriptor = "rtlnp";
  std::string bench_recall = "literal";
  auto* cmd_bench =
      app.add_subcommand("benchmark", "leave-one-out evaluation with full report");
  cmd_bench->add_option("--dataset", bench.dataset_root, "dataset root");
  cmd_bench->add_option("--index", bench.index_file, "existing index file");
  cmd_bench->add_option("--out", bench.out, "report path prefix (.json/.csv appended)")
      ->required();
  cmd_bench->add_option("--index-out", bench.index_out, "also persist the index here");
  cmd_bench->add_option("--lambda-max", bench.lambda_max, "largest lambda on the curves")
      ->capture_default_str();
  cmd_bench->add_option("--cmc-max-rank", bench.cmc_max_rank, "largest CMC rank")
      ->capture_default_str();
  cmd_bench
      ->add_option("--recall-denominator", bench_recall,
                   "recall denominator: literal or excl-query")
      ->check(CLI::IsMember({"literal", "excl-query"}))
      ->capture_default_str();
  cmd_bench->add_option("--workers", bench.workers, "worker threads (0 = auto)");
  add_param_flags(cmd_bench, bench.params, bench_descriptor);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_extract->parsed()) {
      extract.descriptor = rtlnp::descriptor_from_name(extract_descriptor);
      rtlnp::cli::cmd_extract(extract, std::cout);
    } else if (cmd_feat->parsed()) {
      feat.descriptor = rtlnp::descriptor_from_name(feat_descriptor);
      rtlnp::cli::cmd_feature_image(feat, std::cout);
    } else if (cmd_query->parsed()) {
      rtlnp::cli::cmd_query(query, std::cout);
    } else if (cmd_bench->parsed()) {
      bench.descriptor = rtlnp::descriptor_from_name(bench_descriptor);
      bench.recall_mode = rtlnp::recall_denominator_from_name(bench_recall);
      rtlnp::cli::cmd_benchmark(bench, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << rtlnp::cli::error_category(e) << ": " << e.what()
              << std::endl;
    return 1;
  }
  return 0;
}
