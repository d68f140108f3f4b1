#include "confmodel/graph.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "confmodel/errors.hpp"

namespace confmodel {

// ---- DegreeSequence ----

DegreeSequence DegreeSequence::parse(std::string_view text) {
  std::vector<std::uint32_t> out;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string_view tok = text.substr(pos, comma - pos);
    while (!tok.empty() && (tok.front() == ' ' || tok.front() == '\t')) tok.remove_prefix(1);
    while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t')) tok.remove_suffix(1);
    std::uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw InputError("invalid degree '" + std::string(tok) + "' in '" + std::string(text) + "'");
    }
    out.push_back(value);
    if (comma == text.size()) break;
    pos = comma + 1;
  }
  return DegreeSequence(std::move(out));
}

std::uint64_t DegreeSequence::stub_count() const noexcept {
  return std::accumulate(degrees_.begin(), degrees_.end(), std::uint64_t{0});
}

std::uint64_t DegreeSequence::edge_count() const {
  const auto stubs = stub_count();
  if (stubs % 2 != 0) {
    throw InputError("degree sum " + std::to_string(stubs) + " is odd; no graph exists");
  }
  return stubs / 2;
}

std::uint32_t DegreeSequence::max_degree() const noexcept {
  return degrees_.empty() ? 0U : *std::max_element(degrees_.begin(), degrees_.end());
}

std::string DegreeSequence::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < degrees_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(degrees_[i]);
  }
  return s;
}

// ---- Labeling / GraphSpace ----

std::string_view to_string(Labeling l) noexcept { return l == Labeling::stub ? "stub" : "vertex"; }

Labeling parse_labeling(std::string_view text) {
  if (text == "stub") return Labeling::stub;
  if (text == "vertex") return Labeling::vertex;
  throw InputError("unknown labeling '" + std::string(text) + "' (expected stub|vertex)");
}

GraphSpace GraphSpace::parse(std::string_view structure, Labeling l) {
  if (structure == "simple") return simple(l);
  if (structure == "loopy") return loopy(l);
  if (structure == "multi" || structure == "multigraph") return multigraph(l);
  if (structure == "loopy-multi" || structure == "loopy-multigraph") return loopy_multigraph(l);
  throw InputError("unknown space '" + std::string(structure) +
                   "' (expected simple|loopy|multi|loopy-multi)");
}

std::string GraphSpace::structure_name() const {
  if (loops && multiedges) return "loopy-multi";
  if (loops) return "loopy";
  if (multiedges) return "multi";
  return "simple";
}

std::string GraphSpace::name() const {
  return std::string(to_string(labeling)) + "-labeled " + structure_name();
}

// ---- MultiGraph ----

MultiGraph::MultiGraph(std::size_t vertex_count) : degree_(vertex_count, 0) {}

MultiGraph MultiGraph::from_edges(std::size_t vertex_count, std::span<const Edge> edges) {
  MultiGraph g(vertex_count);
  g.edges_.reserve(edges.size());
  for (const Edge& e : edges) g.add_edge(e.a, e.b);
  return g;
}

void MultiGraph::increment(Vertex u, Vertex v) { ++mult_[key(u, v)]; }

void MultiGraph::decrement(Vertex u, Vertex v) {
  auto it = mult_.find(key(u, v));
  if (--it->second == 0) mult_.erase(it);
}

void MultiGraph::add_edge(Vertex u, Vertex v, std::uint32_t count) {
  if (u >= vertex_count() || v >= vertex_count()) {
    throw std::out_of_range("edge endpoint out of range");
  }
  for (std::uint32_t c = 0; c < count; ++c) {
    edges_.push_back({u, v});
    increment(u, v);
    ++degree_[u];
    ++degree_[v];
  }
}

void MultiGraph::remove_edge_at(std::size_t pos) {
  const Edge e = edges_.at(pos);
  decrement(e.a, e.b);
  --degree_[e.a];
  --degree_[e.b];
  edges_[pos] = edges_.back();
  edges_.pop_back();
}

void MultiGraph::rewire(std::size_t pos1, Edge new1, std::size_t pos2, Edge new2) {
  decrement(edges_[pos1].a, edges_[pos1].b);
  decrement(edges_[pos2].a, edges_[pos2].b);
  increment(new1.a, new1.b);
  increment(new2.a, new2.b);
  edges_[pos1] = new1;
  edges_[pos2] = new2;
}

void MultiGraph::rewire3(std::size_t pos1, Edge new1, std::size_t pos2, Edge new2,
                         std::size_t pos3, Edge new3) {
  decrement(edges_[pos1].a, edges_[pos1].b);
  decrement(edges_[pos2].a, edges_[pos2].b);
  decrement(edges_[pos3].a, edges_[pos3].b);
  increment(new1.a, new1.b);
  increment(new2.a, new2.b);
  increment(new3.a, new3.b);
  edges_[pos1] = new1;
  edges_[pos2] = new2;
  edges_[pos3] = new3;
}

std::uint64_t MultiGraph::self_loop_count() const noexcept {
  std::uint64_t loops = 0;
  for (const Edge& e : edges_) loops += e.is_loop();
  return loops;
}

std::uint32_t MultiGraph::max_multiplicity() const noexcept {
  std::uint32_t best = 0;
  for (const auto& [k, w] : mult_) best = std::max(best, w);
  return best;
}

std::vector<std::pair<Edge, std::uint32_t>> MultiGraph::multiplicities() const {
  std::vector<std::pair<Edge, std::uint32_t>> out;
  out.reserve(mult_.size());
  for (const auto& [k, w] : mult_) {
    out.push_back({Edge{static_cast<Vertex>(k >> 32), static_cast<Vertex>(k & 0xffffffffU)}, w});
  }
  std::sort(out.begin(), out.end());
  return out;
}

CanonicalForm MultiGraph::canonical_edges() const {
  CanonicalForm out;
  out.reserve(edges_.size());
  for (const Edge& e : edges_) out.push_back(e.canonical());
  std::sort(out.begin(), out.end());
  return out;
}

bool MultiGraph::consistent() const {
  std::vector<std::uint32_t> from_edges(vertex_count(), 0);
  std::unordered_map<std::uint64_t, std::uint32_t> counted;
  for (const Edge& e : edges_) {
    if (e.a >= vertex_count() || e.b >= vertex_count()) return false;
    ++from_edges[e.a];
    ++from_edges[e.b];
    ++counted[key(e.a, e.b)];
  }
  if (counted != mult_) return false;
  std::vector<std::uint32_t> from_map(vertex_count(), 0);
  std::uint64_t total = 0;
  for (const auto& [k, w] : mult_) {
    const auto u = static_cast<Vertex>(k >> 32);
    const auto v = static_cast<Vertex>(k & 0xffffffffU);
    if (w == 0) return false;
    total += w;
    from_map[u] += w;
    from_map[v] += w;
  }
  return total == edges_.size() && from_edges == degree_ && from_map == degree_;
}

bool operator==(const MultiGraph& x, const MultiGraph& y) {
  return x.vertex_count() == y.vertex_count() && x.mult_ == y.mult_;
}

// ---- space membership ----

std::optional<SpaceViolation> find_space_violation(const MultiGraph& g, const GraphSpace& s) {
  for (const auto& [e, w] : g.multiplicities()) {
    if (e.is_loop() && !s.loops) return SpaceViolation{e, w, "self-loop not allowed"};
    // A repeated self-loop counts as a multiedge.
    if (w >= 2 && !s.multiedges) return SpaceViolation{e, w, "multiedge not allowed"};
  }
  return std::nullopt;
}

bool validate_in_space(const MultiGraph& g, const GraphSpace& s) {
  return !find_space_violation(g, s).has_value();
}

bool is_graphical(const DegreeSequence& k) {
  if (!k.has_even_sum()) return false;
  std::vector<std::uint64_t> d(k.begin(), k.end());
  std::sort(d.begin(), d.end(), std::greater<>());
  const std::size_t n = d.size();
  std::vector<std::uint64_t> prefix(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + d[i];
  for (std::size_t r = 1; r <= n; ++r) {
    const std::uint64_t lhs = prefix[r];
    // indices >= r with d_i >= r contribute r, the rest contribute d_i
    auto first_small = std::lower_bound(d.begin() + static_cast<std::ptrdiff_t>(r), d.end(), r,
                                        std::greater<>());
    const auto split = static_cast<std::size_t>(first_small - d.begin());
    const std::uint64_t big = split - r;
    const std::uint64_t rhs = r * (r - 1) + big * r + (prefix[n] - prefix[split]);
    if (lhs > rhs) return false;
  }
  return true;
}

MultiGraph havel_hakimi(const DegreeSequence& k) {
  if (!k.has_even_sum()) {
    throw NotGraphical("degree sum " + std::to_string(k.stub_count()) + " is odd");
  }
  const std::size_t n = k.size();
  MultiGraph g(n);
  // (remaining degree, vertex) ordered by larger remaining first, then lower id
  auto cmp = [](const std::pair<std::uint32_t, Vertex>& x, const std::pair<std::uint32_t, Vertex>& y) {
    return x.first != y.first ? x.first > y.first : x.second < y.second;
  };
  std::set<std::pair<std::uint32_t, Vertex>, decltype(cmp)> pool(cmp);
  for (Vertex v = 0; v < n; ++v) {
    if (k[v] > 0) pool.insert({k[v], v});
  }
  std::vector<std::pair<std::uint32_t, Vertex>> taken;
  while (!pool.empty()) {
    auto [d, v] = *pool.begin();
    pool.erase(pool.begin());
    if (d > pool.size()) {
      throw NotGraphical("Havel-Hakimi: vertex " + std::to_string(v) + " needs " +
                         std::to_string(d) + " neighbours but only " + std::to_string(pool.size()) +
                         " vertices have remaining degree");
    }
    taken.clear();
    auto it = pool.begin();
    for (std::uint32_t c = 0; c < d; ++c, ++it) taken.push_back(*it);
    for (const auto& entry : taken) {
      pool.erase(entry);
      g.add_edge(v, entry.second);
      if (entry.first > 1) pool.insert({entry.first - 1, entry.second});
    }
  }
  return g;
}

MultiGraph simplify(const MultiGraph& g, bool drop_loops, bool cap_multiedges) {
  MultiGraph out(g.vertex_count());
  for (const auto& [e, w] : g.multiplicities()) {
    if (e.is_loop() && drop_loops) continue;
    // A repeated self-loop counts as a multiedge.
    const std::uint32_t keep = cap_multiedges ? 1U : w;
    out.add_edge(e.a, e.b, keep);
  }
  return out;
}

namespace {

// Pairs the largest remaining degree with the second largest until at most one
// vertex has stubs left; returns that vertex's leftover.
std::uint32_t greedy_multigraph(const DegreeSequence& k, MultiGraph& g, Vertex& leftover_vertex) {
  std::priority_queue<std::pair<std::uint32_t, std::int64_t>> heap;  // (remaining, -id)
  for (Vertex v = 0; v < k.size(); ++v) {
    if (k[v] > 0) heap.push({k[v], -static_cast<std::int64_t>(v)});
  }
  while (heap.size() >= 2) {
    auto [d1, v1] = heap.top();
    heap.pop();
    auto [d2, v2] = heap.top();
    heap.pop();
    g.add_edge(static_cast<Vertex>(-v1), static_cast<Vertex>(-v2));
    if (d1 > 1) heap.push({d1 - 1, v1});
    if (d2 > 1) heap.push({d2 - 1, v2});
  }
  if (heap.empty()) return 0;
  leftover_vertex = static_cast<Vertex>(-heap.top().second);
  return heap.top().first;
}

}  // namespace

MultiGraph initial_graph(const DegreeSequence& k, const GraphSpace& s) {
  k.edge_count();  // rejects odd sums
  if (is_graphical(k)) return havel_hakimi(k);
  if (s.is_simple()) {
    havel_hakimi(k);  // throws with the failed condition
  }
  if (s.multiedges) {
    MultiGraph g(k.size());
    Vertex rest = 0;
    const std::uint32_t left = greedy_multigraph(k, g, rest);
    if (left > 0) {
      if (!s.loops) {
        throw NotGraphical("no loop-free multigraph: max degree exceeds the sum of the others");
      }
      g.add_edge(rest, rest, left / 2);
    }
    return g;
  }
  // Loopy graphs: place single loops on the highest-degree vertices until the
  // remainder is graphical.
  std::vector<std::uint32_t> d(k.begin(), k.end());
  std::vector<Vertex> order(d.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Vertex x, Vertex y) { return d[x] > d[y]; });
  std::vector<Vertex> loops;
  for (Vertex v : order) {
    if (d[v] < 2) continue;
    d[v] -= 2;
    loops.push_back(v);
    DegreeSequence rest(d);
    if (is_graphical(rest)) {
      MultiGraph g = havel_hakimi(rest);
      for (Vertex l : loops) g.add_edge(l, l);
      return g;
    }
  }
  throw NotGraphical("no loopy graph found for degree sequence " + k.to_string());
}

bool loopy_space_connected(const DegreeSequence& k) {
  if (!is_graphical(k)) return false;
  std::vector<std::uint32_t> nz;
  for (auto d : k) {
    if (d > 0) nz.push_back(d);
  }
  if (nz.empty()) return true;
  const bool all_two = std::all_of(nz.begin(), nz.end(), [](auto d) { return d == 2; });
  const bool clique =
      std::all_of(nz.begin(), nz.end(), [&](auto d) { return d + 1 == nz.size(); });
  return !all_two && !clique;
}

bool is_connected(const MultiGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n <= 1) return true;
  std::vector<std::vector<Vertex>> adj(n);
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) continue;
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  std::vector<bool> seen(n, false);
  std::vector<Vertex> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (Vertex u : adj[v]) {
      if (!seen[u]) {
        seen[u] = true;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  return reached == n;
}

std::uint64_t multiedge_excess(const MultiGraph& g) {
  std::uint64_t excess = 0;
  for (const auto& [e, w] : g.multiplicities()) excess += w - 1;
  return excess;
}

}  // namespace confmodel
