#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "treeindex/dataset.hpp"

namespace treeindex {

/// One EEG channel's amplitude stream.
struct ChannelSignal {
  std::string channel_id;
  std::vector<double> samples;
  double sample_rate = 256.0;  // Hz
};

/// A fixed-duration non-overlapping window of one channel. Holds a view
/// into the owning signal's samples; the signal must outlive the epoch.
struct Epoch {
  std::string channel_id;
  std::size_t epoch_index = 0;
  std::span<const double> samples;
  double start_second = 0.0;
  double end_second = 0.0;
};

/// [start_second, end_second) over recording time.
struct SeizureInterval {
  double start_second = 0.0;
  double end_second = 0.0;
};

/// The nine per-epoch attributes. For a constant epoch, skewness and
/// kurtosis are undefined and emitted as 0 with the degenerate flag set.
struct FeatureValues {
  double max_value = 0.0;
  double min_value = 0.0;
  double mean = 0.0;
  double std_dev = 0.0;      // population
  double kurtosis = 0.0;     // raw m4/m2^2, not excess
  double skewness = 0.0;     // m3/m2^(3/2)
  double entropy = 0.0;      // bits, equal-width histogram, ceil(sqrt(N)) bins
  double line_length = 0.0;  // sum |x[i+1]-x[i]|
  double energy = 0.0;       // sum x[i]^2
  bool degenerate = false;
};

inline constexpr const char* kSeizureLabel = "seizure";
inline constexpr const char* kNonSeizureLabel = "non-seizure";

/// The nine attribute names, in record order.
std::span<const std::string> eeg_attribute_names();

/// Splits a signal into consecutive full epochs; a trailing partial epoch
/// is dropped. Throws DataError when the signal is shorter than one epoch.
std::vector<Epoch> epoch_signal(const ChannelSignal& signal, double epoch_seconds = 10.0);

FeatureValues extract_features(const Epoch& epoch);

/// Seizure iff the epoch overlaps any interval by a positive duration.
bool overlaps_seizure(const Epoch& epoch, std::span<const SeizureInterval> intervals);

/// Channel-major concatenation of per-epoch feature records into a Dataset
/// with the nine attributes and seizure/non-seizure true classes.
Dataset build_eeg_dataset(std::span<const ChannelSignal> channels,
                          std::span<const SeizureInterval> intervals,
                          double epoch_seconds = 10.0);

/// Extraction inputs: per-channel sample files plus recording metadata.
struct EegManifest {
  double sample_rate = 256.0;
  double epoch_seconds = 10.0;
  std::vector<std::string> channel_ids;
  std::vector<std::filesystem::path> channel_paths;  // resolved against the manifest dir
  std::vector<SeizureInterval> intervals;
};

/// JSON manifest:
///   { "sample_rate": 256, "epoch_seconds": 10,
///     "channels": ["ch01.txt", ...],
///     "seizure_intervals": [[2996, 3036]] }
/// Channel entries may also be {"id": ..., "path": ...}.
EegManifest load_manifest(const std::filesystem::path& path);

/// Single column of reals, one sample per line.
std::vector<double> load_samples(const std::filesystem::path& path);

/// Full extraction pipeline for a manifest.
Dataset extract_from_manifest(const EegManifest& manifest);

}  // namespace treeindex
