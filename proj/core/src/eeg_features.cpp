#include "treeindex/eeg_features.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "treeindex/errors.hpp"

namespace treeindex {

std::span<const std::string> eeg_attribute_names() {
  static const std::array<std::string, 9> names = {
      "Max", "Min", "Mean", "Std", "Kurtosis", "Skewness",
      "Entropy", "LineLength", "Energy"};
  return names;
}

std::vector<Epoch> epoch_signal(const ChannelSignal& signal, double epoch_seconds) {
  if (signal.sample_rate <= 0) throw std::invalid_argument("sample rate must be positive");
  if (epoch_seconds <= 0) throw std::invalid_argument("epoch length must be positive");
  const auto samples_per_epoch =
      static_cast<std::size_t>(std::llround(signal.sample_rate * epoch_seconds));
  if (samples_per_epoch < 1)
    throw std::invalid_argument("epoch shorter than one sample");
  if (signal.samples.size() < samples_per_epoch)
    throw DataError("channel '" + signal.channel_id + "' has " +
                    std::to_string(signal.samples.size()) + " samples, one epoch needs " +
                    std::to_string(samples_per_epoch));
  const std::size_t count = signal.samples.size() / samples_per_epoch;
  std::vector<Epoch> epochs;
  epochs.reserve(count);
  for (std::size_t e = 0; e < count; ++e) {
    Epoch ep;
    ep.channel_id = signal.channel_id;
    ep.epoch_index = e;
    ep.samples = std::span<const double>(signal.samples)
                     .subspan(e * samples_per_epoch, samples_per_epoch);
    ep.start_second = static_cast<double>(e) * epoch_seconds;
    ep.end_second = ep.start_second + epoch_seconds;
    epochs.push_back(ep);
  }
  return epochs;
}

FeatureValues extract_features(const Epoch& epoch) {
  const auto& x = epoch.samples;
  if (x.empty()) throw std::invalid_argument("empty epoch");
  const std::size_t n = x.size();
  const double dn = static_cast<double>(n);

  FeatureValues f;
  f.max_value = x[0];
  f.min_value = x[0];
  double sum = 0.0;
  for (double v : x) {
    f.max_value = std::max(f.max_value, v);
    f.min_value = std::min(f.min_value, v);
    sum += v;
    f.energy += v * v;
  }
  f.mean = sum / dn;
  for (std::size_t i = 0; i + 1 < n; ++i) f.line_length += std::abs(x[i + 1] - x[i]);

  if (f.max_value == f.min_value) {
    // Constant epoch: no spread, moment ratios undefined.
    f.std_dev = 0.0;
    f.skewness = 0.0;
    f.kurtosis = 0.0;
    f.entropy = 0.0;
    f.degenerate = true;
    return f;
  }

  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : x) {
    const double d = v - f.mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= dn;
  m3 /= dn;
  m4 /= dn;
  f.std_dev = std::sqrt(m2);
  f.skewness = m3 / std::pow(m2, 1.5);
  f.kurtosis = m4 / (m2 * m2);

  // Amplitude-distribution entropy: equal-width histogram over [min, max]
  // with ceil(sqrt(n)) bins.
  const auto bins = static_cast<std::size_t>(std::ceil(std::sqrt(dn)));
  std::vector<std::size_t> hist(bins, 0);
  const double width = (f.max_value - f.min_value) / static_cast<double>(bins);
  for (double v : x) {
    auto b = static_cast<std::size_t>((v - f.min_value) / width);
    if (b >= bins) b = bins - 1;
    ++hist[b];
  }
  for (std::size_t c : hist) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / dn;
    f.entropy -= p * std::log2(p);
  }
  return f;
}

bool overlaps_seizure(const Epoch& epoch, std::span<const SeizureInterval> intervals) {
  for (const auto& iv : intervals) {
    const double overlap =
        std::min(epoch.end_second, iv.end_second) - std::max(epoch.start_second, iv.start_second);
    if (overlap > 0.0) return true;
  }
  return false;
}

Dataset build_eeg_dataset(std::span<const ChannelSignal> channels,
                          std::span<const SeizureInterval> intervals,
                          double epoch_seconds) {
  if (channels.empty()) throw std::invalid_argument("at least one channel is required");
  std::vector<double> values;
  std::vector<std::string> classes;
  for (const auto& channel : channels) {
    for (const auto& epoch : epoch_signal(channel, epoch_seconds)) {
      const FeatureValues f = extract_features(epoch);
      values.insert(values.end(), {f.max_value, f.min_value, f.mean, f.std_dev,
                                   f.kurtosis, f.skewness, f.entropy, f.line_length,
                                   f.energy});
      classes.push_back(overlaps_seizure(epoch, intervals) ? kSeizureLabel
                                                           : kNonSeizureLabel);
    }
  }
  const auto names = eeg_attribute_names();
  return Dataset("eeg", std::vector<std::string>(names.begin(), names.end()),
                 std::move(values), std::move(classes));
}

}  // namespace treeindex
