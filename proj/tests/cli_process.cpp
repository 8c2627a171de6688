// Drives the real CLI binary end to end: exit codes, error lines, and output
// files. The binary path arrives as argv[1] from CTest.

#include "test_util.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

namespace {

int g_failures = 0;
std::string g_binary;

void check(bool condition, const std::string& what) {
  if (condition) {
    std::cout << "[ok] " << what << "\n";
  } else {
    ++g_failures;
    std::cout << "[FAILED] " << what << "\n";
  }
}

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run(const std::string& args, const std::filesystem::path& capture) {
  const std::string cmd = g_binary + " " + args + " > " + capture.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  result.output = testutil::read_file(capture);
  return result;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_process_test <path-to-rtlnp-binary>\n";
    return 2;
  }
  g_binary = argv[1];

  testutil::TempDir dir("cli_process");
  const auto capture = dir.path() / "out.txt";
  const std::string data = (dir.path() / "data").string();
  testutil::write_synthetic_dataset(dir.path() / "data", 3, 3, 20, 99);

  {
    const RunResult r = run("--help", capture);
    check(r.exit_code == 0, "--help exits 0");
    check(r.output.find("extract") != std::string::npos, "--help lists subcommands");
  }
  {
    const RunResult r = run("", capture);
    check(r.exit_code != 0, "missing subcommand exits nonzero");
  }

  const std::string index = (dir.path() / "index.json").string();
  {
    const RunResult r = run("extract " + data + " --out " + index +
                                " --rin 2 --rout 4 --theta 36 --workers 2",
                            capture);
    check(r.exit_code == 0, "extract exits 0");
    check(r.output.find("indexed 9 entries") != std::string::npos,
          "extract reports the entry count");
    check(std::filesystem::exists(index), "extract writes the index file");
  }
  {
    const RunResult r = run("extract " + (dir.path() / "nodataset").string() +
                                " --out " + index,
                            capture);
    check(r.exit_code != 0, "extract on a missing dataset exits nonzero");
    check(r.output.find("error: bad-dataset:") != std::string::npos,
          "bad dataset error is categorized");
  }
  {
    std::ofstream(dir.path() / "data" / "class0" / "evil.pgm", std::ios::binary)
        << "P5\n5 5\n255\nxx";
    const RunResult r =
        run("extract " + data + " --out " + (dir.path() / "i2.json").string(), capture);
    check(r.exit_code != 0, "unreadable image exits nonzero");
    check(r.output.find("evil.pgm") != std::string::npos,
          "error message names the offending file");
    check(r.output.find("error: corrupt-image:") != std::string::npos,
          "corrupt image error is categorized");
    std::filesystem::remove(dir.path() / "data" / "class0" / "evil.pgm");
  }

  {
    const std::string probe = (dir.path() / "data" / "class2" / "img1.pgm").string();
    const RunResult r =
        run("query --index " + index + " " + probe + " --top 3", capture);
    check(r.exit_code == 0, "query exits 0");
    check(r.output.find("rank\tdistance\tclass\tpath") != std::string::npos,
          "query prints a header");
    check(r.output.find("class2") != std::string::npos, "query finds the probe's class");
  }

  {
    const std::string input = (dir.path() / "data" / "class0" / "img0.pgm").string();
    const std::string feat = (dir.path() / "feat.pgm").string();
    const RunResult r = run("feature-image " + input + " --out " + feat, capture);
    check(r.exit_code == 0, "feature-image exits 0");
    check(std::filesystem::exists(feat), "feature-image writes a PGM");
    const RunResult lbp = run(
        "feature-image " + input + " --out " + feat + " --descriptor lbp", capture);
    check(lbp.exit_code == 0, "feature-image --descriptor lbp exits 0");
  }
  {
    const std::string small = (dir.path() / "small.pgm").string();
    rtlnp::save_pgm(small, rtlnp::constant_image(6, 6, 3));
    const RunResult r =
        run("feature-image " + small + " --out " + (dir.path() / "f.pgm").string(),
            capture);
    check(r.exit_code != 0, "feature-image on a too-small input exits nonzero");
    check(r.output.find("error: invalid-argument:") != std::string::npos,
          "too-small input error is categorized");
  }

  {
    const std::string report = (dir.path() / "report").string();
    const RunResult r = run("benchmark --dataset " + data + " --out " + report +
                                " --rin 2 --rout 4 --lambda-max 6 --cmc-max-rank 6" +
                                " --recall-denominator literal --workers 2",
                            capture);
    check(r.exit_code == 0, "benchmark exits 0");
    check(std::filesystem::exists(report + ".json"), "benchmark writes the JSON report");
    check(std::filesystem::exists(report + ".csv"), "benchmark writes the CSV report");
    const RunResult from_index =
        run("benchmark --index " + index + " --out " + report + "_idx", capture);
    check(from_index.exit_code == 0, "benchmark from an index exits 0");
  }
  {
    const RunResult r = run("benchmark --dataset " + data + " --out " +
                                (dir.path() / "r").string() + " --rin 5 --rout 2",
                            capture);
    check(r.exit_code != 0, "invalid params exit nonzero");
    check(r.output.find("error: invalid-argument:") != std::string::npos,
          "invalid params error is categorized");
  }

  std::cout << (g_failures == 0 ? "CLI PROCESS OK" : "CLI PROCESS FAILED") << "\n";
  return g_failures == 0 ? 0 : 1;
}
