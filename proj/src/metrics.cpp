#include "rtlnp/metrics.hpp"

#include "rtlnp/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <stdexcept>

namespace rtlnp {

using nlohmann::json;

EvaluationRun make_run(const GalleryIndex& index, int workers) {
  workers = resolve_workers(workers);
  if (index.entries.size() < 2)
    throw std::invalid_argument("evaluation needs at least 2 gallery entries");

  EvaluationRun run;
  run.class_of_entry.resize(index.entries.size());
  for (const GalleryEntry& e : index.entries) {
    int cls = -1;
    for (std::size_t c = 0; c < run.class_names.size(); ++c)
      if (run.class_names[c] == e.class_label) { cls = static_cast<int>(c); break; }
    if (cls < 0) {
      cls = static_cast<int>(run.class_names.size());
      run.class_names.push_back(e.class_label);
      run.class_sizes.push_back(0);
    }
    run.class_of_entry[static_cast<std::size_t>(e.id)] = cls;
    ++run.class_sizes[static_cast<std::size_t>(cls)];
  }

  run.rankings.resize(index.entries.size());
  parallel_for(0, static_cast<std::int64_t>(index.entries.size()), workers,
               [&](std::int64_t q) {
                 run.rankings[static_cast<std::size_t>(q)] =
                     rank_gallery(static_cast<int>(q), index);
               });
  return run;
}

RecallDenominator recall_denominator_from_name(const std::string& name) {
  if (name == "literal") return RecallDenominator::Literal;
  if (name == "excl-query") return RecallDenominator::ExcludeQuery;
  throw std::invalid_argument("unknown recall denominator mode '" + name + "'");
}

std::string recall_denominator_name(RecallDenominator mode) {
  return mode == RecallDenominator::Literal ? "literal" : "excl-query";
}

namespace {

void check_lambda(const EvaluationRun& run, int lambda) {
  const int max_lambda = run.size() - 1;
  if (lambda < 1 || lambda > max_lambda)
    throw std::out_of_range("lambda " + std::to_string(lambda) +
                            " outside [1, " + std::to_string(max_lambda) + "]");
}

int matches_in_top(const EvaluationRun& run, int query_id, int lambda) {
  const RankedList& ranked = run.rankings[static_cast<std::size_t>(query_id)];
  const int query_class = run.class_of_entry[static_cast<std::size_t>(query_id)];
  int matches = 0;
  for (int i = 0; i < lambda; ++i)
    if (run.class_of_entry[static_cast<std::size_t>(ranked.ids[static_cast<std::size_t>(i)])] ==
        query_class)
      ++matches;
  return matches;
}

// Mean over classes of the mean over the class's queries of per_query(q, lambda_c).
template <typename PerQuery>
double macro_average(const EvaluationRun& run, PerQuery&& per_query) {
  double class_sum = 0.0;
  for (int c = 0; c < run.num_classes(); ++c) {
    double query_sum = 0.0;
    for (int q = 0; q < run.size(); ++q)
      if (run.class_of_entry[static_cast<std::size_t>(q)] == c) query_sum += per_query(q, c);
    class_sum += query_sum / run.class_sizes[static_cast<std::size_t>(c)];
  }
  return class_sum / run.num_classes();
}

int clamped_class_lambda(const EvaluationRun& run, int cls) {
  return std::min(run.class_sizes[static_cast<std::size_t>(cls)], run.size() - 1);
}

}  // namespace

double precision_at(const EvaluationRun& run, int query_id, int lambda) {
  check_lambda(run, lambda);
  return static_cast<double>(matches_in_top(run, query_id, lambda)) / lambda;
}

double recall_at(const EvaluationRun& run, int query_id, int lambda,
                 RecallDenominator mode) {
  check_lambda(run, lambda);
  const int cls = run.class_of_entry[static_cast<std::size_t>(query_id)];
  const int size = run.class_sizes[static_cast<std::size_t>(cls)];
  const int den = mode == RecallDenominator::Literal ? size : std::max(size - 1, 1);
  return static_cast<double>(matches_in_top(run, query_id, lambda)) / den;
}

double arp(const EvaluationRun& run, int lambda) {
  check_lambda(run, lambda);
  return macro_average(run, [&](int q, int) { return precision_at(run, q, lambda); });
}

double arr(const EvaluationRun& run, int lambda, RecallDenominator mode) {
  check_lambda(run, lambda);
  return macro_average(run,
                       [&](int q, int) { return recall_at(run, q, lambda, mode); });
}

double arp_summary(const EvaluationRun& run) {
  return macro_average(run, [&](int q, int c) {
    return precision_at(run, q, clamped_class_lambda(run, c));
  });
}

double arr_summary(const EvaluationRun& run, RecallDenominator mode) {
  return macro_average(run, [&](int q, int c) {
    return recall_at(run, q, clamped_class_lambda(run, c), mode);
  });
}

double f_score(double arp_value, double arr_value) {
  const double sum = arp_value + arr_value;
  if (sum <= 0.0) return 0.0;
  return 2.0 * arp_value * arr_value / sum;
}

double anmrr(const EvaluationRun& run) {
  int gtm = 0;
  for (int c = 0; c < run.num_classes(); ++c) {
    const int ng = run.class_sizes[static_cast<std::size_t>(c)] - 1;
    if (ng < 1)
      throw std::invalid_argument("anmrr requires every class to have >= 2 members; '" +
                                  run.class_names[static_cast<std::size_t>(c)] +
                                  "' has 1");
    gtm = std::max(gtm, ng);
  }

  double nmrr_sum = 0.0;
  for (int q = 0; q < run.size(); ++q) {
    const int cls = run.class_of_entry[static_cast<std::size_t>(q)];
    const int ng = run.class_sizes[static_cast<std::size_t>(cls)] - 1;
    const int k = std::min(4 * ng, 2 * gtm);

    const RankedList& ranked = run.rankings[static_cast<std::size_t>(q)];
    double rank_sum = 0.0;
    for (std::size_t pos = 0; pos < ranked.ids.size(); ++pos) {
      if (run.class_of_entry[static_cast<std::size_t>(ranked.ids[pos])] != cls) continue;
      const int rank = static_cast<int>(pos) + 1;
      rank_sum += rank <= k ? rank : 1.25 * k;
    }
    const double avr = rank_sum / ng;
    const double mrr = avr - 0.5 * (1 + ng);
    nmrr_sum += mrr / (1.25 * k - 0.5 * (1 + ng));
  }
  return nmrr_sum / run.size();
}

double recognition_rate(const EvaluationRun& run) {
  int matches = 0;
  for (int q = 0; q < run.size(); ++q) {
    const RankedList& ranked = run.rankings[static_cast<std::size_t>(q)];
    if (run.class_of_entry[static_cast<std::size_t>(ranked.ids[0])] ==
        run.class_of_entry[static_cast<std::size_t>(q)])
      ++matches;
  }
  return 100.0 * matches / run.size();
}

std::vector<double> cmc(const EvaluationRun& run, int max_rank) {
  if (max_rank < 1 || max_rank > run.size() - 1)
    throw std::out_of_range("max_rank " + std::to_string(max_rank) + " outside [1, " +
                            std::to_string(run.size() - 1) + "]");
  // Count each query at its best classmate rank, then accumulate.
  std::vector<int> first_match(static_cast<std::size_t>(max_rank) + 1, 0);
  for (int q = 0; q < run.size(); ++q) {
    const int cls = run.class_of_entry[static_cast<std::size_t>(q)];
    const RankedList& ranked = run.rankings[static_cast<std::size_t>(q)];
    for (int pos = 0; pos < max_rank && pos < static_cast<int>(ranked.ids.size()); ++pos) {
      if (run.class_of_entry[static_cast<std::size_t>(
              ranked.ids[static_cast<std::size_t>(pos)])] == cls) {
        ++first_match[static_cast<std::size_t>(pos) + 1];
        break;
      }
    }
  }
  std::vector<double> curve(static_cast<std::size_t>(max_rank));
  int cumulative = 0;
  for (int r = 1; r <= max_rank; ++r) {
    cumulative += first_match[static_cast<std::size_t>(r)];
    curve[static_cast<std::size_t>(r - 1)] = 100.0 * cumulative / run.size();
  }
  return curve;
}

MetricsReport compute_report(const GalleryIndex& index, const EvaluationRun& run,
                             int lambda_max, int cmc_max_rank, RecallDenominator mode) {
  if (lambda_max < 1) throw std::invalid_argument("lambda_max must be at least 1");
  if (cmc_max_rank < 1) throw std::invalid_argument("cmc_max_rank must be at least 1");

  MetricsReport report;
  report.descriptor = descriptor_name(index.descriptor);
  if (index.descriptor == Descriptor::Rtlnp) report.params = index.params;
  report.dataset_size = run.size();
  report.class_count = run.num_classes();
  report.recall_mode = mode;

  const int grid_max = std::min(lambda_max, run.size() - 1);
  for (int lambda = 1; lambda <= grid_max; ++lambda) {
    report.lambda_grid.push_back(lambda);
    report.arp_curve.push_back(arp(run, lambda));
    report.arr_curve.push_back(arr(run, lambda, mode));
  }
  if (grid_max < lambda_max)
    report.notes.push_back("lambda grid truncated to gallery size " +
                           std::to_string(grid_max));

  report.arp_at_class_size = arp_summary(run);
  report.arr_at_class_size = arr_summary(run, mode);
  report.f = f_score(report.arp_at_class_size, report.arr_at_class_size);

  const bool has_singleton =
      std::any_of(run.class_sizes.begin(), run.class_sizes.end(),
                  [](int s) { return s < 2; });
  if (has_singleton) {
    report.notes.push_back("anmrr skipped: dataset contains a singleton class");
  } else {
    report.anmrr_value = anmrr(run);
  }

  report.recognition = recognition_rate(run);
  const int rank_max = std::min(cmc_max_rank, run.size() - 1);
  if (rank_max < cmc_max_rank)
    report.notes.push_back("cmc truncated to gallery size " + std::to_string(rank_max));
  report.cmc_curve = cmc(run, rank_max);
  return report;
}

namespace {

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

}  // namespace

void write_report_json(const MetricsReport& report, const std::filesystem::path& path) {
  json doc;
  doc["descriptor"] = report.descriptor;
  if (report.params) {
    doc["params"] = {{"r_in", report.params->r_in},
                     {"r_out", report.params->r_out},
                     {"delta_theta", report.params->delta_theta}};
  }
  doc["dataset_size"] = report.dataset_size;
  doc["class_count"] = report.class_count;
  doc["recall_denominator"] = recall_denominator_name(report.recall_mode);
  doc["lambda_grid"] = report.lambda_grid;
  doc["arp_curve"] = report.arp_curve;
  doc["arr_curve"] = report.arr_curve;
  doc["arp_at_class_size"] = report.arp_at_class_size;
  doc["arr_at_class_size"] = report.arr_at_class_size;
  doc["f_score"] = report.f;
  if (report.anmrr_value)
    doc["anmrr"] = *report.anmrr_value;
  else
    doc["anmrr"] = nullptr;
  doc["recognition_rate"] = report.recognition;
  doc["cmc"] = report.cmc_curve;
  doc["notes"] = report.notes;

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << doc.dump(1, '\t') << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_report_csv(const MetricsReport& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << "metric,x,value\n";
  for (std::size_t i = 0; i < report.lambda_grid.size(); ++i)
    out << "arp," << report.lambda_grid[i] << ',' << format_double(report.arp_curve[i])
        << '\n';
  for (std::size_t i = 0; i < report.lambda_grid.size(); ++i)
    out << "arr," << report.lambda_grid[i] << ',' << format_double(report.arr_curve[i])
        << '\n';
  out << "arp_at_class_size,," << format_double(report.arp_at_class_size) << '\n';
  out << "arr_at_class_size,," << format_double(report.arr_at_class_size) << '\n';
  out << "f_score,," << format_double(report.f) << '\n';
  if (report.anmrr_value)
    out << "anmrr,," << format_double(*report.anmrr_value) << '\n';
  out << "recognition_rate,," << format_double(report.recognition) << '\n';
  for (std::size_t r = 0; r < report.cmc_curve.size(); ++r)
    out << "cmc," << r + 1 << ',' << format_double(report.cmc_curve[r]) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace rtlnp
