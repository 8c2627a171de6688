#include "rtlnp/metrics.hpp"

#include "metrics_oracle.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <random>

using namespace rtlnp;

namespace {

GalleryIndex planted_index(const std::vector<std::string>& labels,
                           const std::vector<Eigen::VectorXd>& features) {
  GalleryIndex index;
  index.descriptor = Descriptor::Lbp;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    GalleryEntry e;
    e.id = static_cast<int>(i);
    e.path = "planted/" + labels[i] + "/" + std::to_string(i);
    e.class_label = labels[i];
    e.feature = features[i];
    e.raw_bins = Histogram::Zero(features[i].size());
    e.total = 0;
    index.entries.push_back(std::move(e));
  }
  return index;
}

Eigen::VectorXd vec4(double a, double b, double c, double d) {
  Eigen::VectorXd v(4);
  v << a, b, c, d;
  return v;
}

// 3 classes x 4 members around distinct simplex corners, plus one planted miss:
// the last member of class a sits in class b's cluster.
struct PlantedFixture {
  std::vector<std::string> labels;
  std::vector<Eigen::VectorXd> features;

  PlantedFixture() {
    auto add = [&](const std::string& cls, Eigen::VectorXd f) {
      labels.push_back(cls);
      features.push_back(std::move(f));
    };
    add("a", vec4(0.97, 0.01, 0.01, 0.01));
    add("a", vec4(0.94, 0.02, 0.02, 0.02));
    add("a", vec4(0.91, 0.03, 0.03, 0.03));
    add("a", vec4(0.10, 0.85, 0.03, 0.02));  // the miss
    add("b", vec4(0.01, 0.97, 0.01, 0.01));
    add("b", vec4(0.02, 0.94, 0.02, 0.02));
    add("b", vec4(0.03, 0.91, 0.03, 0.03));
    add("b", vec4(0.04, 0.88, 0.04, 0.04));
    add("c", vec4(0.01, 0.01, 0.97, 0.01));
    add("c", vec4(0.02, 0.02, 0.94, 0.02));
    add("c", vec4(0.03, 0.03, 0.91, 0.03));
    add("c", vec4(0.04, 0.04, 0.88, 0.04));
  }
};

// Classes whose features are mutually disjoint simplex corners: retrieval is
// perfect and every classmate pair has distance 0.
GalleryIndex perfect_index(int classes, int per_class) {
  std::vector<std::string> labels;
  std::vector<Eigen::VectorXd> features;
  for (int c = 0; c < classes; ++c) {
    Eigen::VectorXd f = Eigen::VectorXd::Zero(classes);
    f[c] = 1.0;
    for (int m = 0; m < per_class; ++m) {
      labels.push_back("c" + std::to_string(c));
      features.push_back(f);
    }
  }
  return planted_index(labels, features);
}

}  // namespace

TEST_CASE("precision and recall fixtures") {
  const GalleryIndex index = perfect_index(3, 4);
  const EvaluationRun run = make_run(index);

  // all top-3 retrieved entries are classmates
  CHECK(precision_at(run, 0, 3) == 1.0);
  // beyond the class size precision decays
  CHECK(precision_at(run, 0, 6) == doctest::Approx(0.5));
  // the query itself is excluded, so full-gallery recall tops out at 3/4
  CHECK(recall_at(run, 0, 11, RecallDenominator::Literal) == doctest::Approx(0.75));
  CHECK(recall_at(run, 0, 11, RecallDenominator::ExcludeQuery) == doctest::Approx(1.0));
  CHECK(recall_at(run, 0, 3, RecallDenominator::Literal) == doctest::Approx(0.75));

  CHECK_THROWS_AS(precision_at(run, 0, 0), std::out_of_range);
  CHECK_THROWS_AS(precision_at(run, 0, 12), std::out_of_range);
}

TEST_CASE("arp fixtures") {
  SUBCASE("duplicates per class retrieve perfectly at lambda 1") {
    const EvaluationRun run = make_run(perfect_index(3, 4));
    CHECK(arp(run, 1) == 1.0);
  }

  SUBCASE("adversarial features never match at lambda 1") {
    // entries cluster by member position, not by class: every entry's nearest
    // neighbors are same-position members of OTHER classes, while its own
    // classmates sit on disjoint corners
    std::vector<std::string> labels;
    std::vector<Eigen::VectorXd> features;
    for (int c = 0; c < 3; ++c)
      for (int m = 0; m < 3; ++m) {
        Eigen::VectorXd f = Eigen::VectorXd::Zero(6);
        f[m] = 0.9;
        f[3 + c] = 0.1;
        labels.push_back("c" + std::to_string(c));
        features.push_back(f);
      }
    const EvaluationRun run = make_run(planted_index(labels, features));
    CHECK(arp(run, 1) == 0.0);
  }
}

TEST_CASE("f_score") {
  CHECK(f_score(1.0, 1.0) == 1.0);
  CHECK(f_score(0.7, 0.0) == 0.0);
  CHECK(f_score(0.6, 0.4) == doctest::Approx(0.48).epsilon(1e-12));
  for (double a : {0.1, 0.25, 0.5, 1.0})
    CHECK(f_score(a, a) == doctest::Approx(a).epsilon(1e-12));
}

TEST_CASE("anmrr extremes") {
  SUBCASE("perfect retrieval gives 0") {
    const EvaluationRun run = make_run(perfect_index(3, 4));
    CHECK(anmrr(run) == doctest::Approx(0.0).epsilon(1e-12));
  }

  SUBCASE("total miss gives 1") {
    // 3 classes x 2 members, each class split across two far-apart clusters.
    // Every query's nearest entries are the two non-classmates of its own
    // cluster; its classmate sits across the gap, beyond K = min(4*NG, 2*GTM)
    // = 2, so every ground truth takes the 1.25*K penalty.
    std::vector<std::string> labels = {"a", "a", "b", "b", "c", "c"};
    std::vector<Eigen::VectorXd> features = {
        vec4(0.98, 0.02, 0, 0), vec4(0.02, 0.98, 0, 0),
        vec4(0.96, 0.04, 0, 0), vec4(0.04, 0.96, 0, 0),
        vec4(0.94, 0.06, 0, 0), vec4(0.06, 0.94, 0, 0)};
    const EvaluationRun run = make_run(planted_index(labels, features));
    for (int q = 0; q < 6; ++q) {
      const RankedList& ranked = run.rankings[static_cast<std::size_t>(q)];
      const int classmate = q % 2 == 0 ? q + 1 : q - 1;
      CHECK(ranked.rank_of(classmate) > 2);
    }
    CHECK(anmrr(run) == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("singleton class is rejected") {
    std::vector<std::string> labels = {"a", "a", "solo"};
    std::vector<Eigen::VectorXd> features = {vec4(1, 0, 0, 0), vec4(0.9, 0.1, 0, 0),
                                             vec4(0, 0, 1, 0)};
    const EvaluationRun run = make_run(planted_index(labels, features));
    CHECK_THROWS_AS(anmrr(run), std::invalid_argument);
  }
}

TEST_CASE("recognition rate and cmc") {
  const PlantedFixture fixture;
  const GalleryIndex index = planted_index(fixture.labels, fixture.features);
  const EvaluationRun run = make_run(index);

  const double rr = recognition_rate(run);
  const std::vector<double> curve = cmc(run, 11);
  REQUIRE(curve.size() == 11);
  CHECK(curve[0] == rr);                       // CMC(1) is the recognition rate
  CHECK(curve[10] == 100.0);                   // a classmate always exists somewhere
  for (std::size_t r = 1; r < curve.size(); ++r) {
    CHECK(curve[r] >= curve[r - 1]);           // non-decreasing
    CHECK(curve[r] >= rr);
  }
  CHECK_THROWS_AS(cmc(run, 0), std::out_of_range);
  CHECK_THROWS_AS(cmc(run, 12), std::out_of_range);
}

TEST_CASE("every metric matches the exhaustive brute-force evaluation") {
  const PlantedFixture fixture;
  const GalleryIndex index = planted_index(fixture.labels, fixture.features);
  const EvaluationRun run = make_run(index, 4);
  const oracle::BruteForceEval brute(fixture.labels, fixture.features);

  for (int lambda = 1; lambda <= 11; ++lambda) {
    CHECK(arp(run, lambda) == doctest::Approx(brute.arp(lambda)).epsilon(1e-12));
    CHECK(arr(run, lambda) == doctest::Approx(brute.arr(lambda)).epsilon(1e-12));
    CHECK(arr(run, lambda, RecallDenominator::ExcludeQuery) ==
          doctest::Approx(brute.arr(lambda, false)).epsilon(1e-12));
  }
  CHECK(arp_summary(run) == doctest::Approx(brute.arp_at_class_size()).epsilon(1e-12));
  CHECK(arr_summary(run) == doctest::Approx(brute.arr_at_class_size()).epsilon(1e-12));
  CHECK(f_score(arp_summary(run), arr_summary(run)) ==
        doctest::Approx(brute.f_score()).epsilon(1e-12));
  CHECK(anmrr(run) == doctest::Approx(brute.anmrr()).epsilon(1e-12));
  CHECK(recognition_rate(run) ==
        doctest::Approx(brute.recognition_rate()).epsilon(1e-12));
  const auto ours = cmc(run, 11);
  const auto theirs = brute.cmc(11);
  REQUIRE(ours.size() == theirs.size());
  for (std::size_t i = 0; i < ours.size(); ++i) CHECK(ours[i] == theirs[i]);

  // the planted miss keeps these off the trivial extremes
  CHECK(anmrr(run) > 0.0);
  CHECK(recognition_rate(run) < 100.0);
}

TEST_CASE("arr is non-decreasing in lambda") {
  const PlantedFixture fixture;
  const EvaluationRun run = make_run(planted_index(fixture.labels, fixture.features));
  double prev = 0.0;
  for (int lambda = 1; lambda <= 11; ++lambda) {
    const double value = arr(run, lambda);
    CHECK(value >= prev);
    prev = value;
  }
}

TEST_CASE("macro arp at lambda 1 equals recognition rate on balanced classes") {
  const PlantedFixture fixture;  // 3 classes x 4 members, balanced
  const EvaluationRun run = make_run(planted_index(fixture.labels, fixture.features));
  CHECK(arp(run, 1) == doctest::Approx(recognition_rate(run) / 100.0).epsilon(1e-12));
}

TEST_CASE("metrics are reproducible for a fixed run") {
  const PlantedFixture fixture;
  const GalleryIndex index = planted_index(fixture.labels, fixture.features);
  const EvaluationRun run_a = make_run(index, 1);
  const EvaluationRun run_b = make_run(index, 6);
  CHECK(arp(run_a, 3) == arp(run_b, 3));
  CHECK(anmrr(run_a) == anmrr(run_b));
  CHECK(cmc(run_a, 5) == cmc(run_b, 5));
}

TEST_CASE("compute_report assembles every field") {
  const PlantedFixture fixture;
  const GalleryIndex index = planted_index(fixture.labels, fixture.features);
  const EvaluationRun run = make_run(index);
  const MetricsReport report = compute_report(index, run, 8, 6);
  CHECK(report.descriptor == "lbp");
  CHECK(report.dataset_size == 12);
  CHECK(report.class_count == 3);
  REQUIRE(report.lambda_grid.size() == 8);
  CHECK(report.arp_curve.size() == 8);
  CHECK(report.arr_curve.size() == 8);
  CHECK(report.cmc_curve.size() == 6);
  CHECK(report.anmrr_value.has_value());
  CHECK(report.f == f_score(report.arp_at_class_size, report.arr_at_class_size));

  // a lambda_max beyond the gallery truncates with a note
  const MetricsReport wide = compute_report(index, run, 50, 50);
  CHECK(wide.lambda_grid.size() == 11);
  CHECK(wide.cmc_curve.size() == 11);
  CHECK(wide.notes.size() == 2);
}

TEST_CASE("report files are byte-stable") {
  testutil::TempDir dir("report");
  const PlantedFixture fixture;
  const GalleryIndex index = planted_index(fixture.labels, fixture.features);
  const MetricsReport report = compute_report(index, make_run(index), 6, 6);

  write_report_json(report, dir.path() / "a.json");
  write_report_json(report, dir.path() / "b.json");
  CHECK(testutil::read_file(dir.path() / "a.json") ==
        testutil::read_file(dir.path() / "b.json"));

  write_report_csv(report, dir.path() / "a.csv");
  write_report_csv(report, dir.path() / "b.csv");
  const std::string csv = testutil::read_file(dir.path() / "a.csv");
  CHECK(csv == testutil::read_file(dir.path() / "b.csv"));
  CHECK(csv.rfind("metric,x,value\n", 0) == 0);
  CHECK(csv.find("\nanmrr,,") != std::string::npos);
  CHECK(csv.find("\nrecognition_rate,,") != std::string::npos);
}

TEST_CASE("report skips anmrr for singleton classes but keeps the rest") {
  std::vector<std::string> labels = {"a", "a", "solo"};
  std::vector<Eigen::VectorXd> features = {vec4(1, 0, 0, 0), vec4(0.9, 0.1, 0, 0),
                                           vec4(0, 0, 1, 0)};
  const GalleryIndex index = planted_index(labels, features);
  const MetricsReport report = compute_report(index, make_run(index), 2, 2);
  CHECK_FALSE(report.anmrr_value.has_value());
  REQUIRE(!report.notes.empty());
  CHECK(report.notes[0].find("anmrr skipped") != std::string::npos);
  CHECK(report.recognition > 0.0);  // other metrics still present
}
