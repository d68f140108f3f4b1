#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace confmodel {

using Vertex = std::uint32_t;

// One edge instance. Orientation is whatever the edge was stored with; it only
// matters to the swap engine, which picks a random orientation anyway.
struct Edge {
  Vertex a = 0;
  Vertex b = 0;

  bool is_loop() const noexcept { return a == b; }
  Edge canonical() const noexcept { return a <= b ? Edge{a, b} : Edge{b, a}; }
  bool same_pair(const Edge& o) const noexcept {
    return (a == o.a && b == o.b) || (a == o.b && b == o.a);
  }
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class DegreeSequence {
 public:
  DegreeSequence() = default;
  explicit DegreeSequence(std::vector<std::uint32_t> degrees) : degrees_(std::move(degrees)) {}
  DegreeSequence(std::initializer_list<std::uint32_t> degrees) : degrees_(degrees) {}

  // "2,2,1,1" (whitespace tolerated). Throws InputError.
  static DegreeSequence parse(std::string_view text);

  std::size_t size() const noexcept { return degrees_.size(); }
  bool empty() const noexcept { return degrees_.empty(); }
  std::uint32_t operator[](std::size_t i) const { return degrees_[i]; }
  std::span<const std::uint32_t> values() const noexcept { return degrees_; }
  auto begin() const noexcept { return degrees_.begin(); }
  auto end() const noexcept { return degrees_.end(); }

  std::uint64_t stub_count() const noexcept;
  bool has_even_sum() const noexcept { return stub_count() % 2 == 0; }
  // M = sum / 2. Throws InputError for an odd stub count.
  std::uint64_t edge_count() const;
  std::uint32_t max_degree() const noexcept;

  std::string to_string() const;

  friend bool operator==(const DegreeSequence&, const DegreeSequence&) = default;

 private:
  std::vector<std::uint32_t> degrees_;
};

enum class Labeling { stub, vertex };

std::string_view to_string(Labeling l) noexcept;
Labeling parse_labeling(std::string_view text);

struct GraphSpace {
  bool loops = true;
  bool multiedges = true;
  Labeling labeling = Labeling::stub;

  static GraphSpace simple(Labeling l = Labeling::vertex) { return {false, false, l}; }
  static GraphSpace loopy(Labeling l = Labeling::vertex) { return {true, false, l}; }
  static GraphSpace multigraph(Labeling l = Labeling::vertex) { return {false, true, l}; }
  static GraphSpace loopy_multigraph(Labeling l = Labeling::vertex) { return {true, true, l}; }

  // "simple", "loopy", "multi", "loopy-multi".
  static GraphSpace parse(std::string_view structure, Labeling l);
  std::string structure_name() const;
  // e.g. "vertex-labeled loopy-multi"
  std::string name() const;

  bool is_simple() const noexcept { return !loops && !multiedges; }
  bool is_loopy_graph() const noexcept { return loops && !multiedges; }

  friend bool operator==(const GraphSpace&, const GraphSpace&) = default;
};

// Undirected graph with integer multiplicities and self-loops.
//
// Two synchronized views: a multiplicity map (i,j) -> w_ij and one entry per
// edge instance in `edges()`. A self-loop adds 2 to its vertex's degree and
// one entry to `edges()`.
class MultiGraph {
 public:
  explicit MultiGraph(std::size_t vertex_count = 0);

  static MultiGraph from_edges(std::size_t vertex_count, std::span<const Edge> edges);

  std::size_t vertex_count() const noexcept { return degree_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  void add_edge(Vertex u, Vertex v, std::uint32_t count = 1);
  // Removes one instance; the last position is moved into `pos`.
  void remove_edge_at(std::size_t pos);
  // Rewires two positions at once; degrees must be preserved by the caller.
  void rewire(std::size_t pos1, Edge new1, std::size_t pos2, Edge new2);
  void rewire3(std::size_t pos1, Edge new1, std::size_t pos2, Edge new2, std::size_t pos3,
               Edge new3);

  std::uint32_t multiplicity(Vertex u, Vertex v) const noexcept {
    auto it = mult_.find(key(u, v));
    return it == mult_.end() ? 0U : it->second;
  }
  const Edge& edge_at(std::size_t pos) const { return edges_[pos]; }
  std::span<const Edge> edges() const noexcept { return edges_; }

  std::uint32_t degree(Vertex v) const { return degree_[v]; }
  DegreeSequence degrees() const { return DegreeSequence(degree_); }

  std::uint64_t self_loop_count() const noexcept;
  std::uint32_t max_multiplicity() const noexcept;

  // Distinct vertex pairs (i <= j) with their multiplicities, sorted.
  std::vector<std::pair<Edge, std::uint32_t>> multiplicities() const;
  // Sorted multiset of canonical edges; identifies the vertex-labeled graph.
  std::vector<Edge> canonical_edges() const;

  // Recomputes degrees from both views and checks every structural invariant.
  bool consistent() const;

  // Equality of vertex-labeled graphs (same n and multiplicity map).
  friend bool operator==(const MultiGraph& x, const MultiGraph& y);

 private:
  static std::uint64_t key(Vertex u, Vertex v) noexcept {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
  }
  void increment(Vertex u, Vertex v);
  void decrement(Vertex u, Vertex v);

  std::vector<Edge> edges_;
  std::unordered_map<std::uint64_t, std::uint32_t> mult_;
  std::vector<std::uint32_t> degree_;
};

// Canonical form used as a map key across the oracles.
using CanonicalForm = std::vector<Edge>;

// ---- space membership and degree-sequence utilities ----

bool validate_in_space(const MultiGraph& g, const GraphSpace& s);

struct SpaceViolation {
  Edge edge;
  std::uint32_t multiplicity;
  std::string reason;
};
std::optional<SpaceViolation> find_space_violation(const MultiGraph& g, const GraphSpace& s);

// Erdos-Gallai.
bool is_graphical(const DegreeSequence& k);

// Deterministic simple realization. Throws NotGraphical naming the failed condition.
MultiGraph havel_hakimi(const DegreeSequence& k);

MultiGraph simplify(const MultiGraph& g, bool drop_loops, bool cap_multiedges);

// A deterministic starting graph inside `s` with degree sequence k.
// Throws NotGraphical if the space is empty (or no realization was found for
// loopy graphs).
MultiGraph initial_graph(const DegreeSequence& k, const GraphSpace& s);

// Double edge swaps connect the loopy-graph space when the sequence is
// graphical and is neither all-2 nor a clique sequence (isolated vertices are
// ignored).
bool loopy_space_connected(const DegreeSequence& k);

// Every vertex reachable from vertex 0 (isolated vertices count as separate
// components). Graphs with at most one vertex are connected.
bool is_connected(const MultiGraph& g);

// Sum over vertex pairs of (w_ij - 1), loops included.
std::uint64_t multiedge_excess(const MultiGraph& g);

// ---- text edge lists ----

struct LabeledGraph {
  MultiGraph graph;
  std::vector<std::string> labels;  // dense id -> original token

  std::optional<Vertex> find(std::string_view label) const;
};

// "u v" or "u v w" per line; '#' starts a comment. With `n_hint`, tokens
// "0".."n_hint-1" are pre-registered so integer ids map to themselves.
LabeledGraph parse_edge_list(std::string_view text, std::optional<std::size_t> n_hint = {});
LabeledGraph read_edge_list_file(const std::string& path, std::optional<std::size_t> n_hint = {});

// Dense ids, one line per distinct pair with explicit multiplicity.
void write_edge_list(std::ostream& os, const MultiGraph& g);
std::string to_edge_list(const MultiGraph& g);

// "vertex value" lines mapped through `graph.labels`; used for traits and partitions.
std::vector<double> read_vertex_values(std::string_view text, const LabeledGraph& graph);

}  // namespace confmodel
