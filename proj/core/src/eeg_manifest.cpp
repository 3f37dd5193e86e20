#include <charconv>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "treeindex/eeg_features.hpp"
#include "treeindex/errors.hpp"

namespace treeindex {

EegManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open manifest: " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": invalid JSON: " + e.what());
  }

  EegManifest m;
  try {
    m.sample_rate = doc.value("sample_rate", 256.0);
    m.epoch_seconds = doc.value("epoch_seconds", 10.0);
    if (m.sample_rate <= 0 || m.epoch_seconds <= 0)
      throw DataError(path.string() + ": sample_rate and epoch_seconds must be positive");
    if (!doc.contains("channels") || !doc["channels"].is_array() || doc["channels"].empty())
      throw DataError(path.string() + ": manifest needs a non-empty 'channels' array");
    const auto base = path.parent_path();
    for (const auto& entry : doc["channels"]) {
      std::string rel, id;
      if (entry.is_string()) {
        rel = entry.get<std::string>();
        id = std::filesystem::path(rel).stem().string();
      } else {
        rel = entry.at("path").get<std::string>();
        id = entry.value("id", std::filesystem::path(rel).stem().string());
      }
      std::filesystem::path p(rel);
      m.channel_paths.push_back(p.is_absolute() ? p : base / p);
      m.channel_ids.push_back(std::move(id));
    }
    for (const auto& iv : doc.value("seizure_intervals", nlohmann::json::array())) {
      const double a = iv.at(0).get<double>();
      const double b = iv.at(1).get<double>();
      if (a < 0 || b <= a)
        throw DataError(path.string() + ": seizure interval needs 0 <= start < end");
      m.intervals.push_back({a, b});
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": malformed manifest: " + e.what());
  }
  return m;
}

std::vector<double> load_samples(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open sample file: " + path.string());
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  std::vector<double> samples;
  samples.reserve(content.size() / 4);
  const char* p = content.data();
  const char* end = p + content.size();
  std::size_t line = 1;
  while (p < end) {
    while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
    if (p < end && *p == '\n') {
      ++p;
      ++line;
      continue;
    }
    if (p >= end) break;
    double v;
    auto res = std::from_chars(p, end, v);
    if (res.ec != std::errc() || !std::isfinite(v))
      throw DataError(path.string() + ":" + std::to_string(line) +
                      ": expected one finite real per line");
    samples.push_back(v);
    p = res.ptr;
    while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
    if (p < end && *p != '\n')
      throw DataError(path.string() + ":" + std::to_string(line) +
                      ": trailing text after sample value");
  }
  if (samples.empty()) throw DataError(path.string() + ": no samples");
  return samples;
}

Dataset extract_from_manifest(const EegManifest& manifest) {
  std::vector<ChannelSignal> channels;
  channels.reserve(manifest.channel_paths.size());
  for (std::size_t i = 0; i < manifest.channel_paths.size(); ++i) {
    ChannelSignal sig;
    sig.channel_id = manifest.channel_ids[i];
    sig.sample_rate = manifest.sample_rate;
    sig.samples = load_samples(manifest.channel_paths[i]);
    channels.push_back(std::move(sig));
  }
  return build_eeg_dataset(channels, manifest.intervals, manifest.epoch_seconds);
}

}  // namespace treeindex
