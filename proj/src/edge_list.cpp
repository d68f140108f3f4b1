#include <charconv>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "confmodel/errors.hpp"
#include "confmodel/graph.hpp"

namespace confmodel {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto fields = split_fields(line);
    if (!fields.empty()) fn(line_no, fields);
    if (nl == text.size()) break;
    pos = nl + 1;
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::optional<Vertex> LabeledGraph::find(std::string_view label) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return static_cast<Vertex>(i);
  }
  return std::nullopt;
}

LabeledGraph parse_edge_list(std::string_view text, std::optional<std::size_t> n_hint) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, Vertex> ids;
  auto intern = [&](std::string_view tok) {
    auto [it, inserted] = ids.try_emplace(std::string(tok), static_cast<Vertex>(labels.size()));
    if (inserted) labels.emplace_back(tok);
    return it->second;
  };
  if (n_hint) {
    for (std::size_t i = 0; i < *n_hint; ++i) intern(std::to_string(i));
  }

  struct Pending {
    Vertex u, v;
    std::uint32_t w;
  };
  std::vector<Pending> pending;
  for_each_line(text, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
    if (f.size() != 2 && f.size() != 3) {
      throw ParseError(line_no, "expected 'u v' or 'u v w', got " + std::to_string(f.size()) +
                                    " fields");
    }
    std::int64_t w = 1;
    if (f.size() == 3) {
      auto [ptr, ec] = std::from_chars(f[2].data(), f[2].data() + f[2].size(), w);
      if (ec != std::errc{} || ptr != f[2].data() + f[2].size()) {
        throw ParseError(line_no, "multiplicity '" + std::string(f[2]) + "' is not an integer");
      }
      if (w < 1) {
        throw ParseError(line_no, "multiplicity must be >= 1, got " + std::to_string(w));
      }
      if (w > std::numeric_limits<std::uint32_t>::max()) {
        throw ParseError(line_no, "multiplicity " + std::to_string(w) + " is too large");
      }
    }
    const Vertex u = intern(f[0]);
    const Vertex v = intern(f[1]);
    pending.push_back({u, v, static_cast<std::uint32_t>(w)});
  });

  LabeledGraph out{MultiGraph(labels.size()), std::move(labels)};
  for (const auto& p : pending) out.graph.add_edge(p.u, p.v, p.w);
  return out;
}

LabeledGraph read_edge_list_file(const std::string& path, std::optional<std::size_t> n_hint) {
  return parse_edge_list(slurp(path), n_hint);
}

void write_edge_list(std::ostream& os, const MultiGraph& g) {
  os << "# vertices " << g.vertex_count() << " edges " << g.edge_count() << '\n';
  for (const auto& [e, w] : g.multiplicities()) os << e.a << ' ' << e.b << ' ' << w << '\n';
}

std::string to_edge_list(const MultiGraph& g) {
  std::ostringstream ss;
  write_edge_list(ss, g);
  return ss.str();
}

std::vector<double> read_vertex_values(std::string_view text, const LabeledGraph& graph) {
  std::vector<double> values(graph.labels.size(), 0.0);
  std::vector<bool> seen(graph.labels.size(), false);
  std::unordered_map<std::string_view, Vertex> ids;
  for (std::size_t i = 0; i < graph.labels.size(); ++i) ids.emplace(graph.labels[i], static_cast<Vertex>(i));
  for_each_line(text, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
    if (f.size() != 2) throw ParseError(line_no, "expected 'vertex value'");
    auto it = ids.find(f[0]);
    if (it == ids.end()) throw ParseError(line_no, "unknown vertex '" + std::string(f[0]) + "'");
    const Vertex v = it->second;
    double x = 0;
    auto [ptr, ec] = std::from_chars(f[1].data(), f[1].data() + f[1].size(), x);
    if (ec != std::errc{} || ptr != f[1].data() + f[1].size()) {
      throw ParseError(line_no, "value '" + std::string(f[1]) + "' is not a number");
    }
    values[v] = x;
    seen[v] = true;
  });
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw InputError("no value given for vertex '" + graph.labels[i] + "'");
  }
  return values;
}

}  // namespace confmodel
