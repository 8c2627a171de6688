#pragma once

#include "rtlnp/gallery.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace rtlnp {

// One leave-one-out pass over a gallery: every entry queried against the rest.
struct EvaluationRun {
  std::vector<int> class_of_entry;       // entry id -> class index
  std::vector<std::string> class_names;  // class index -> label
  std::vector<int> class_sizes;          // class index -> |C_i|
  std::vector<RankedList> rankings;      // indexed by query id

  int size() const { return static_cast<int>(rankings.size()); }
  int num_classes() const { return static_cast<int>(class_names.size()); }
};

// Ranks every entry against the rest. Per-query work runs in parallel; the
// result is independent of the worker count.
EvaluationRun make_run(const GalleryIndex& index, int workers = 1);

enum class RecallDenominator {
  Literal,       // |C_i|, so maximum attainable recall is (|C_i|-1)/|C_i|
  ExcludeQuery,  // |C_i|-1
};

RecallDenominator recall_denominator_from_name(const std::string& name);
std::string recall_denominator_name(RecallDenominator mode);

// Fraction of the top-lambda retrieved entries sharing the query's class.
double precision_at(const EvaluationRun& run, int query_id, int lambda);

// Class matches within the top lambda over the recall denominator.
double recall_at(const EvaluationRun& run, int query_id, int lambda,
                 RecallDenominator mode = RecallDenominator::Literal);

// Macro averages: mean over classes of the mean over each class's queries.
double arp(const EvaluationRun& run, int lambda);
double arr(const EvaluationRun& run, int lambda,
           RecallDenominator mode = RecallDenominator::Literal);

// Summary values at per-class lambda = |C_i| (clamped to the gallery size).
double arp_summary(const EvaluationRun& run);
double arr_summary(const EvaluationRun& run,
                   RecallDenominator mode = RecallDenominator::Literal);

// 2 * p * r / (p + r); 0 when both are 0.
double f_score(double arp_value, double arr_value);

// Average normalized modified retrieval rank in [0, 1]; 0 is perfect
// retrieval. Requires every class to have at least 2 members.
double anmrr(const EvaluationRun& run);

// Percentage of queries whose rank-1 entry shares the query's class.
double recognition_rate(const EvaluationRun& run);

// cmc[r-1] = percentage of queries with a classmate at rank <= r, r = 1..max_rank.
std::vector<double> cmc(const EvaluationRun& run, int max_rank);

struct MetricsReport {
  std::string descriptor;
  std::optional<RtlnpParams> params;
  int dataset_size = 0;
  int class_count = 0;
  RecallDenominator recall_mode = RecallDenominator::Literal;

  std::vector<int> lambda_grid;
  std::vector<double> arp_curve;
  std::vector<double> arr_curve;
  double arp_at_class_size = 0.0;
  double arr_at_class_size = 0.0;
  double f = 0.0;
  std::optional<double> anmrr_value;  // absent when a singleton class blocks it
  double recognition = 0.0;           // percent
  std::vector<double> cmc_curve;      // percents
  std::vector<std::string> notes;
};

MetricsReport compute_report(const GalleryIndex& index, const EvaluationRun& run,
                             int lambda_max, int cmc_max_rank,
                             RecallDenominator mode = RecallDenominator::Literal);

// One JSON document per run plus a flat (metric, x, value) CSV for plotting.
// Both serializations are byte-stable for a fixed report.
void write_report_json(const MetricsReport& report, const std::filesystem::path& path);
void write_report_csv(const MetricsReport& report, const std::filesystem::path& path);

}  // namespace rtlnp
