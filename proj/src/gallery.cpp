#include "rtlnp/gallery.hpp"

#include "rtlnp/chi_square.hpp"
#include "rtlnp/lbp.hpp"
#include "rtlnp/parallel.hpp"
#include "rtlnp/pgm.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>

namespace rtlnp {

namespace fs = std::filesystem;
using nlohmann::json;

std::string descriptor_name(Descriptor d) {
  return d == Descriptor::Rtlnp ? "rtlnp" : "lbp";
}

Descriptor descriptor_from_name(const std::string& name) {
  if (name == "rtlnp") return Descriptor::Rtlnp;
  if (name == "lbp") return Descriptor::Lbp;
  throw std::invalid_argument("unknown descriptor '" + name + "'");
}

Eigen::Index GalleryIndex::feature_length() const {
  if (descriptor == Descriptor::Lbp) return kLbpBins;
  return Eigen::Index{1} << sector_count(params.delta_theta);
}

Eigen::VectorXd normalize_feature(const Histogram& raw) {
  const std::int64_t total = raw.sum();
  if (total == 0) return Eigen::VectorXd::Zero(raw.size());
  return raw.cast<double>() / static_cast<double>(total);
}

Eigen::VectorXd extract_feature(const GrayImage& img, Descriptor d,
                                const RtlnpParams& params, Histogram* raw_out) {
  Histogram raw;
  if (d == Descriptor::Lbp) {
    raw = lbp_histogram(img);
  } else {
    const FeatureImage feature = rtlnp_feature_image(img, params);
    raw = code_histogram(feature, sector_count(params.delta_theta));
  }
  if (raw_out) *raw_out = raw;
  return normalize_feature(raw);
}

namespace {

bool is_image_file(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".pgm" || ext == ".ppm" || ext == ".pnm";
}

}  // namespace

GalleryIndex build_index(const fs::path& dataset_root, Descriptor d,
                         const RtlnpParams& params, int workers) {
  workers = resolve_workers(workers);
  if (d == Descriptor::Rtlnp) validate(params);
  std::error_code ec;
  if (!fs::is_directory(dataset_root, ec) || ec)
    throw DatasetError("dataset root is not a directory: " + dataset_root.string());

  // Deterministic entry order: classes and filenames sorted lexicographically.
  std::vector<fs::path> class_dirs;
  for (const auto& entry : fs::directory_iterator(dataset_root))
    if (entry.is_directory()) class_dirs.push_back(entry.path());
  std::sort(class_dirs.begin(), class_dirs.end(),
            [](const fs::path& a, const fs::path& b) {
              return a.filename().string() < b.filename().string();
            });
  if (class_dirs.empty())
    throw DatasetError("dataset has no class subdirectories: " + dataset_root.string());

  GalleryIndex index;
  index.descriptor = d;
  index.params = params;
  for (const fs::path& dir : class_dirs) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
      if (entry.is_regular_file() && is_image_file(entry.path()))
        files.push_back(entry.path());
    std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
      return a.filename().string() < b.filename().string();
    });
    if (files.empty())
      throw DatasetError("class directory has no images: " + dir.string());
    for (const fs::path& file : files) {
      GalleryEntry e;
      e.id = static_cast<int>(index.entries.size());
      e.path = file.generic_string();
      e.class_label = dir.filename().string();
      index.entries.push_back(std::move(e));
    }
  }

  parallel_for(0, static_cast<std::int64_t>(index.entries.size()), workers,
               [&](std::int64_t i) {
                 GalleryEntry& e = index.entries[static_cast<std::size_t>(i)];
                 const GrayImage img = load_grayscale(e.path);
                 e.feature = extract_feature(img, d, params, &e.raw_bins);
                 e.total = e.raw_bins.sum();
               });
  return index;
}

void save_index(const GalleryIndex& index, const fs::path& path) {
  json doc;
  doc["format_version"] = GalleryIndex::format_version;
  doc["descriptor_name"] = descriptor_name(index.descriptor);
  if (index.descriptor == Descriptor::Rtlnp) {
    doc["params"] = {{"r_in", index.params.r_in},
                     {"r_out", index.params.r_out},
                     {"delta_theta", index.params.delta_theta}};
  }
  json entries = json::array();
  for (const GalleryEntry& e : index.entries) {
    json bins = json::array();
    for (Eigen::Index i = 0; i < e.raw_bins.size(); ++i) bins.push_back(e.raw_bins[i]);
    entries.push_back({{"id", e.id},
                       {"path", e.path},
                       {"class_label", e.class_label},
                       {"raw_bins", std::move(bins)},
                       {"total", e.total}});
  }
  doc["entries"] = std::move(entries);

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << doc.dump(1, '\t') << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

GalleryIndex load_index(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IndexError("cannot open index file: " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw IndexError("malformed index file " + path.string() + ": " + e.what());
  }

  GalleryIndex index;
  try {
    if (doc.at("format_version").get<int>() != GalleryIndex::format_version)
      throw IndexError("unsupported index format version in " + path.string());
    index.descriptor = descriptor_from_name(doc.at("descriptor_name").get<std::string>());
    if (index.descriptor == Descriptor::Rtlnp) {
      const json& p = doc.at("params");
      index.params.r_in = p.at("r_in").get<int>();
      index.params.r_out = p.at("r_out").get<int>();
      index.params.delta_theta = p.at("delta_theta").get<int>();
      validate(index.params);
    }
    const Eigen::Index expected_len = index.feature_length();
    for (const json& je : doc.at("entries")) {
      GalleryEntry e;
      e.id = je.at("id").get<int>();
      e.path = je.at("path").get<std::string>();
      e.class_label = je.at("class_label").get<std::string>();
      const json& bins = je.at("raw_bins");
      if (static_cast<Eigen::Index>(bins.size()) != expected_len)
        throw IndexError("entry " + std::to_string(e.id) +
                         " has wrong feature length in " + path.string());
      e.raw_bins = Histogram::Zero(expected_len);
      for (Eigen::Index i = 0; i < expected_len; ++i)
        e.raw_bins[i] = bins[static_cast<std::size_t>(i)].get<std::int64_t>();
      e.total = je.at("total").get<std::int64_t>();
      if (e.total != e.raw_bins.sum())
        throw IndexError("entry " + std::to_string(e.id) +
                         " total does not match its bins in " + path.string());
      e.feature = normalize_feature(e.raw_bins);
      index.entries.push_back(std::move(e));
    }
  } catch (const json::exception& e) {
    throw IndexError("malformed index file " + path.string() + ": " + e.what());
  }
  if (index.entries.empty()) throw IndexError("index has no entries: " + path.string());
  for (std::size_t i = 0; i < index.entries.size(); ++i)
    if (index.entries[i].id != static_cast<int>(i))
      throw IndexError("entry ids are not dense 0..N-1 in " + path.string());
  return index;
}

int RankedList::rank_of(int entry_id) const {
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (ids[i] == entry_id) return static_cast<int>(i) + 1;
  throw std::invalid_argument("entry " + std::to_string(entry_id) + " not in ranking");
}

namespace {

RankedList rank_against(const Eigen::VectorXd& feature, const GalleryIndex& index,
                        int exclude_id) {
  std::vector<std::pair<double, int>> order;
  order.reserve(index.entries.size());
  for (const GalleryEntry& e : index.entries) {
    if (e.id == exclude_id) continue;
    order.emplace_back(chi_square(feature, e.feature), e.id);
  }
  std::sort(order.begin(), order.end());

  RankedList out;
  out.query_id = exclude_id;
  out.ids.reserve(order.size());
  out.distances.reserve(order.size());
  for (const auto& [dist, id] : order) {
    out.ids.push_back(id);
    out.distances.push_back(dist);
  }
  return out;
}

}  // namespace

RankedList rank_gallery(int query_id, const GalleryIndex& index) {
  if (query_id < 0 || query_id >= static_cast<int>(index.entries.size()))
    throw std::invalid_argument("unknown query id " + std::to_string(query_id));
  return rank_against(index.entries[static_cast<std::size_t>(query_id)].feature, index,
                      query_id);
}

RankedList rank_probe(const Eigen::VectorXd& feature, const GalleryIndex& index) {
  if (index.entries.empty())
    throw std::invalid_argument("cannot rank a probe against an empty index");
  if (feature.size() != index.entries.front().feature.size())
    throw std::invalid_argument("probe feature length does not match the index");
  RankedList out = rank_against(feature, index, -1);
  out.query_id = -1;
  return out;
}

}  // namespace rtlnp
