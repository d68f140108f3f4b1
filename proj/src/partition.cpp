#include "confmodel/partition.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <unordered_map>

#include "confmodel/errors.hpp"

namespace confmodel {

Partition Partition::from_labels(std::span<const std::int64_t> labels) {
  Partition p;
  std::unordered_map<std::int64_t, std::uint32_t> ids;
  p.assignment_.reserve(labels.size());
  for (auto label : labels) {
    auto [it, inserted] = ids.try_emplace(label, static_cast<std::uint32_t>(ids.size()));
    p.assignment_.push_back(it->second);
  }
  p.k_ = static_cast<std::uint32_t>(ids.size());
  return p;
}

Partition Partition::singletons(std::size_t n) {
  std::vector<std::int64_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<std::int64_t>(i);
  return from_labels(labels);
}

Partition Partition::single(std::size_t n) {
  std::vector<std::int64_t> labels(n, 0);
  return from_labels(labels);
}

std::vector<std::size_t> Partition::community_sizes() const {
  std::vector<std::size_t> sizes(k_, 0);
  for (auto c : assignment_) ++sizes[c];
  return sizes;
}

std::string Partition::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(assignment_[i]);
  }
  return out;
}

Partition parse_partition(std::string_view text, const LabeledGraph& graph) {
  std::unordered_map<std::string_view, Vertex> vertex_ids;
  for (std::size_t i = 0; i < graph.labels.size(); ++i) {
    vertex_ids.emplace(graph.labels[i], static_cast<Vertex>(i));
  }
  std::unordered_map<std::string, std::int64_t> community_ids;
  std::vector<std::int64_t> labels(graph.labels.size(), -1);

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      if (j > i) fields.push_back(line.substr(i, j - i));
      i = j;
    }
    if (fields.empty()) continue;
    if (fields.size() != 2) throw ParseError(line_no, "expected 'vertex community'");
    auto it = vertex_ids.find(fields[0]);
    if (it == vertex_ids.end()) {
      throw ParseError(line_no, "unknown vertex '" + std::string(fields[0]) + "'");
    }
    if (labels[it->second] != -1) {
      throw ParseError(line_no, "vertex '" + std::string(fields[0]) + "' assigned twice");
    }
    auto [cit, inserted] = community_ids.try_emplace(std::string(fields[1]),
                                                     static_cast<std::int64_t>(community_ids.size()));
    labels[it->second] = cit->second;
  }
  for (std::size_t v = 0; v < labels.size(); ++v) {
    if (labels[v] == -1) throw InputError("no community given for vertex '" + graph.labels[v] + "'");
  }
  return Partition::from_labels(labels);
}

namespace {

double entropy(const std::vector<std::size_t>& sizes, double n) {
  double h = 0;
  for (auto s : sizes) {
    if (s == 0) continue;
    const double p = static_cast<double>(s) / n;
    h -= p * std::log(p);
  }
  return h;
}

}  // namespace

double nmi(const Partition& p1, const Partition& p2) {
  if (p1.size() != p2.size()) throw InputError("partitions cover different vertex counts");
  if (p1.size() == 0) return 1.0;
  const double n = static_cast<double>(p1.size());
  const double h1 = entropy(p1.community_sizes(), n);
  const double h2 = entropy(p2.community_sizes(), n);
  const bool trivial1 = p1.community_count() <= 1;
  const bool trivial2 = p2.community_count() <= 1;
  if (trivial1 && trivial2) return 1.0;
  if (trivial1 || trivial2) return 0.0;

  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> joint;
  for (std::size_t v = 0; v < p1.size(); ++v) ++joint[{p1[v], p2[v]}];
  const auto s1 = p1.community_sizes();
  const auto s2 = p2.community_sizes();
  double mi = 0;
  for (const auto& [cell, count] : joint) {
    const double pxy = static_cast<double>(count) / n;
    const double px = static_cast<double>(s1[cell.first]) / n;
    const double py = static_cast<double>(s2[cell.second]) / n;
    mi += pxy * std::log(pxy / (px * py));
  }
  const double value = 2.0 * mi / (h1 + h2);
  return std::clamp(value, 0.0, 1.0);
}

}  // namespace confmodel
