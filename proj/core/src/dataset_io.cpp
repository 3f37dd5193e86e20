#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "treeindex/dataset.hpp"
#include "treeindex/errors.hpp"
#include "treeindex/text.hpp"

namespace treeindex {
namespace {

std::string trimmed(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      fields.push_back(trimmed(std::string_view(line).substr(start, i - start)));
      start = i + 1;
    }
  }
  return fields;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  while (!lines.empty() && trimmed(lines.back()).empty()) lines.pop_back();
  return lines;
}

bool parse_index(const std::string& text, std::size_t& out) {
  if (text.empty()) return false;
  auto res = std::from_chars(text.data(), text.data() + text.size(), out);
  return res.ec == std::errc() && res.ptr == text.data() + text.size();
}

}  // namespace

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options) {
  const auto lines = read_lines(path);
  if (lines.empty()) throw DataError("empty file: " + path.string());

  std::size_t first_data = 0;
  std::vector<std::string> header;
  if (options.has_header) {
    header = split_fields(lines[0]);
    first_data = 1;
    std::unordered_set<std::string> seen;
    for (const auto& h : header)
      if (!seen.insert(h).second)
        throw DataError(path.string() + ": duplicate header name: " + h);
  }
  if (first_data >= lines.size())
    throw DataError(path.string() + ": no data rows");

  const std::size_t columns = split_fields(lines[first_data]).size();
  if (options.has_header && header.size() != columns)
    throw DataError(path.string() + ": header has " + std::to_string(header.size()) +
                    " fields, first data row has " + std::to_string(columns));
  if (!options.has_header) {
    header.reserve(columns);
    for (std::size_t j = 0; j < columns; ++j) header.push_back("col" + std::to_string(j));
  }

  std::optional<std::size_t> class_index;
  if (options.class_column) {
    const std::string& want = *options.class_column;
    for (std::size_t j = 0; j < header.size() && options.has_header; ++j)
      if (header[j] == want) {
        class_index = j;
        break;
      }
    if (!class_index) {
      std::size_t idx;
      if (parse_index(want, idx) && idx < columns)
        class_index = idx;
      else
        throw std::invalid_argument(path.string() + ": no class column named '" + want +
                                    "' (and it is not a valid 0-based column index)");
    }
  }

  std::vector<std::string> attributes;
  for (std::size_t j = 0; j < columns; ++j)
    if (!class_index || j != *class_index) attributes.push_back(header[j]);
  if (attributes.empty()) throw DataError(path.string() + ": no numeric attribute columns");

  std::vector<double> values;
  values.reserve((lines.size() - first_data) * attributes.size());
  std::vector<std::string> classes;

  for (std::size_t r = first_data; r < lines.size(); ++r) {
    if (trimmed(lines[r]).empty())
      throw DataError(path.string() + ":" + std::to_string(r + 1) + ": blank row");
    const auto fields = split_fields(lines[r]);
    if (fields.size() != columns)
      throw DataError(path.string() + ":" + std::to_string(r + 1) + ": expected " +
                      std::to_string(columns) + " fields, found " +
                      std::to_string(fields.size()));
    for (std::size_t j = 0; j < columns; ++j) {
      if (class_index && j == *class_index) {
        classes.push_back(fields[j]);
        continue;
      }
      double v;
      if (!parse_double(fields[j], v) || !std::isfinite(v))
        throw DataError(path.string() + ":" + std::to_string(r + 1) + ": column " +
                        std::to_string(j) + " (" + header[j] + "): '" + fields[j] +
                        "' is not a finite number");
      values.push_back(v);
    }
  }

  std::string class_name = class_index ? header[*class_index] : std::string("class");
  return Dataset(path.stem().string(), std::move(attributes), std::move(values),
                 class_index ? std::optional(std::move(classes)) : std::nullopt,
                 std::move(class_name));
}

void write_csv(const Dataset& ds, const std::filesystem::path& path) {
  std::string out;
  for (std::size_t j = 0; j < ds.d(); ++j) {
    if (j) out += ',';
    out += ds.attributes()[j];
  }
  if (ds.has_true_classes()) {
    out += ',';
    out += ds.class_attribute();
  }
  out += '\n';
  for (std::size_t i = 0; i < ds.n(); ++i) {
    for (std::size_t j = 0; j < ds.d(); ++j) {
      if (j) out += ',';
      append_double(out, ds.at(i, j));
    }
    if (ds.has_true_classes()) {
      out += ',';
      out += ds.true_classes()[i];
    }
    out += '\n';
  }
  std::ofstream f(path);
  if (!f) throw DataError("cannot write file: " + path.string());
  f << out;
  if (!f) throw DataError("write failed: " + path.string());
}

ClusterAssignment load_assignment_csv(const std::filesystem::path& path) {
  const auto lines = read_lines(path);
  if (lines.empty()) throw DataError("empty file: " + path.string());

  std::size_t first = 0;
  {
    const auto fields = split_fields(lines[0]);
    std::size_t dummy;
    if (!fields.empty() && !parse_index(fields[0], dummy)) first = 1;  // header row
  }
  std::vector<std::pair<std::size_t, std::size_t>> rows;
  for (std::size_t r = first; r < lines.size(); ++r) {
    const auto fields = split_fields(lines[r]);
    std::size_t idx, id;
    if (fields.size() != 2 || !parse_index(fields[0], idx) || !parse_index(fields[1], id))
      throw DataError(path.string() + ":" + std::to_string(r + 1) +
                      ": expected 'record_index,cluster_id'");
    rows.emplace_back(idx, id);
  }
  if (rows.empty()) throw DataError(path.string() + ": no assignment rows");

  std::vector<std::size_t> labels(rows.size(), 0);
  std::vector<bool> seen(rows.size(), false);
  for (const auto& [idx, id] : rows) {
    if (idx >= rows.size() || seen[idx])
      throw DataError(path.string() + ": record indices must cover 0.." +
                      std::to_string(rows.size() - 1) + " exactly once");
    seen[idx] = true;
    labels[idx] = id;
  }
  return ClusterAssignment::from_labels(labels);
}

void write_assignment_csv(const ClusterAssignment& ca, const std::filesystem::path& path) {
  std::string out = "record_index,cluster_id\n";
  for (std::size_t i = 0; i < ca.n(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += std::to_string(ca.label(i));
    out += '\n';
  }
  std::ofstream f(path);
  if (!f) throw DataError("cannot write file: " + path.string());
  f << out;
  if (!f) throw DataError("write failed: " + path.string());
}

}  // namespace treeindex
