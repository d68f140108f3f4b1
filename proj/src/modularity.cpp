#include "confmodel/modularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "confmodel/diagnostics.hpp"
#include "confmodel/errors.hpp"

namespace confmodel {

std::optional<std::size_t> DegreeClassMatrix::class_of(std::uint32_t degree) const {
  auto it = std::lower_bound(degrees.begin(), degrees.end(), degree);
  if (it == degrees.end() || *it != degree) return std::nullopt;
  return static_cast<std::size_t>(it - degrees.begin());
}

double DegreeClassMatrix::pair_expectation(std::size_t a, std::size_t b) const {
  const double na = static_cast<double>(counts[a]);
  const double nb = static_cast<double>(counts[b]);
  if (a == b) return 2.0 * at(a, a) / (na * na);
  return at(a, b) / (na * nb);
}

double DegreeClassMatrix::total() const {
  double sum = 0;
  for (std::size_t a = 0; a < classes(); ++a) {
    for (std::size_t b = a; b < classes(); ++b) sum += at(a, b);
  }
  return sum;
}

DegreeClassMatrix DegreeClassMatrix::empty_for(const DegreeSequence& k) {
  std::map<std::uint32_t, std::uint64_t> tally;
  for (auto d : k) ++tally[d];
  DegreeClassMatrix c;
  for (const auto& [d, n] : tally) {
    c.degrees.push_back(d);
    c.counts.push_back(n);
  }
  c.expected.assign(c.classes() * c.classes(), 0.0);
  return c;
}

namespace {

std::vector<std::uint32_t> vertex_classes(const MultiGraph& g, const DegreeClassMatrix& c) {
  std::vector<std::uint32_t> cls(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    auto idx = c.class_of(g.degree(v));
    if (!idx) {
      throw InputError("degree " + std::to_string(g.degree(v)) + " of vertex " + std::to_string(v) +
                       " is missing from the degree-class matrix");
    }
    cls[v] = static_cast<std::uint32_t>(*idx);
  }
  return cls;
}

void tally_into(const MultiGraph& g, const std::vector<std::uint32_t>& cls, std::size_t classes,
                std::vector<double>& cells) {
  for (const Edge& e : g.edges()) {
    const std::size_t a = cls[e.a];
    const std::size_t b = cls[e.b];
    cells[a * classes + b] += 1;
    if (a != b) cells[b * classes + a] += 1;
  }
}

}  // namespace

DegreeClassMatrix degree_class_counts(const MultiGraph& g) {
  DegreeClassMatrix c = DegreeClassMatrix::empty_for(g.degrees());
  tally_into(g, vertex_classes(g, c), c.classes(), c.expected);
  return c;
}

DegreeClassMatrix closed_form_degree_matrix(const DegreeSequence& k, ClosedForm form) {
  DegreeClassMatrix c = DegreeClassMatrix::empty_for(k);
  const double two_m = static_cast<double>(k.stub_count());
  if (two_m == 0) return c;
  const std::size_t n = c.classes();
  for (std::size_t a = 0; a < n; ++a) {
    const double ka = c.degrees[a];
    const double na = static_cast<double>(c.counts[a]);
    for (std::size_t b = 0; b < n; ++b) {
      const double kb = c.degrees[b];
      const double nb = static_cast<double>(c.counts[b]);
      double value = 0;
      if (form == ClosedForm::large_m) {
        value = a == b ? na * na * ka * ka / (2 * two_m) : na * nb * ka * kb / two_m;
      } else {
        value = a == b ? (na * (na - 1) / 2 * ka * ka + na * ka * (ka - 1) / 2) / (two_m - 1)
                       : na * nb * ka * kb / (two_m - 1);
      }
      c.expected[a * n + b] = value;
    }
  }
  return c;
}

DegreeClassMatrix expected_degree_matrix(const MultiGraph& g0, const ChainConfig& cfg) {
  DegreeClassMatrix c = DegreeClassMatrix::empty_for(g0.degrees());
  const std::size_t n = c.classes();
  const auto cls = vertex_classes(g0, c);
  std::vector<std::vector<double>> series(n * n);
  std::vector<double> cells(n * n);
  run_chain(g0, cfg, [&](std::size_t, std::uint64_t, const MultiGraph& g) {
    std::fill(cells.begin(), cells.end(), 0.0);
    tally_into(g, cls, n, cells);
    for (std::size_t i = 0; i < n * n; ++i) series[i].push_back(cells[i]);
  });
  c.samples = cfg.n_samples;
  c.std_error.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n * n; ++i) {
    const auto& s = series[i];
    double mean = 0;
    for (double v : s) mean += v;
    mean /= static_cast<double>(s.size());
    c.expected[i] = mean;
    if (s.size() < 10) {
      c.std_error[i] = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    const auto summary = summarize_trace(s);
    c.std_error[i] = summary.ess.zero_variance ? 0.0 : summary.mc_std_error;
  }
  return c;
}

DegreeClassMatrix expected_degree_matrix(const DegreeSequence& k, const ChainConfig& cfg) {
  return expected_degree_matrix(initial_graph(k, cfg.space), cfg);
}

// ---- objectives ----

ModularityObjective ModularityObjective::standard(const MultiGraph& g) {
  ModularityObjective o;
  o.graph_ = &g;
  DegreeClassMatrix c = DegreeClassMatrix::empty_for(g.degrees());
  o.n_classes_ = c.classes();
  o.vertex_class_ = vertex_classes(g, c);
  o.null_.resize(o.n_classes_ * o.n_classes_);
  const double two_m = 2.0 * static_cast<double>(g.edge_count());
  for (std::size_t a = 0; a < o.n_classes_; ++a) {
    for (std::size_t b = 0; b < o.n_classes_; ++b) {
      o.null_[a * o.n_classes_ + b] =
          two_m == 0 ? 0.0 : static_cast<double>(c.degrees[a]) * c.degrees[b] / two_m;
    }
  }
  return o;
}

ModularityObjective ModularityObjective::generic(const MultiGraph& g, const DegreeClassMatrix& c) {
  ModularityObjective o;
  o.graph_ = &g;
  // Restrict to the classes present in g so class ids stay dense.
  DegreeClassMatrix own = DegreeClassMatrix::empty_for(g.degrees());
  o.n_classes_ = own.classes();
  o.vertex_class_ = vertex_classes(g, own);
  std::vector<std::size_t> outer(o.n_classes_);
  for (std::size_t a = 0; a < o.n_classes_; ++a) {
    auto idx = c.class_of(own.degrees[a]);
    if (!idx) {
      throw InputError("degree " + std::to_string(own.degrees[a]) +
                       " is missing from the degree-class matrix");
    }
    outer[a] = *idx;
  }
  o.null_.resize(o.n_classes_ * o.n_classes_);
  for (std::size_t a = 0; a < o.n_classes_; ++a) {
    for (std::size_t b = 0; b < o.n_classes_; ++b) {
      o.null_[a * o.n_classes_ + b] = c.pair_expectation(outer[a], outer[b]);
    }
  }
  return o;
}

double ModularityObjective::evaluate(const Partition& p) const {
  const MultiGraph& g = *graph_;
  if (p.size() != g.vertex_count()) {
    throw InputError("partition covers " + std::to_string(p.size()) + " vertices, graph has " +
                     std::to_string(g.vertex_count()));
  }
  const double m = static_cast<double>(g.edge_count());
  if (g.edge_count() == 0) throw UndefinedStatistic("modularity is undefined for a graph with no edges");

  double internal = 0;  // sum_ij A_ij delta = 2 * internal edges (loops included)
  for (const Edge& e : g.edges()) {
    if (p[e.a] == p[e.b]) internal += 2;
  }
  // Per-community class histograms, kept sparse.
  std::vector<std::map<std::uint32_t, double>> hist(p.community_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) hist[p[v]][vertex_class_[v]] += 1;
  double expected = 0;
  for (const auto& h : hist) {
    for (const auto& [a, ma] : h) {
      for (const auto& [b, mb] : h) expected += ma * mb * null(a, b);
    }
  }
  return (internal - expected) / (2 * m);
}

double modularity(const MultiGraph& g, const Partition& p) {
  return ModularityObjective::standard(g).evaluate(p);
}

double modularity_generic(const MultiGraph& g, const Partition& p, const DegreeClassMatrix& c) {
  return ModularityObjective::generic(g, c).evaluate(p);
}

// ---- Kernighan-Lin local search ----

namespace {

struct Neighbor {
  Vertex v;
  double w;
};

std::vector<std::vector<Neighbor>> neighbor_lists(const MultiGraph& g) {
  std::vector<std::vector<Neighbor>> adj(g.vertex_count());
  for (const auto& [e, w] : g.multiplicities()) {
    if (e.is_loop()) continue;
    adj[e.a].push_back({e.b, static_cast<double>(w)});
    adj[e.b].push_back({e.a, static_cast<double>(w)});
  }
  return adj;
}

class KlState {
 public:
  KlState(const ModularityObjective& obj, const std::vector<std::vector<Neighbor>>& adj,
          std::uint32_t k, std::vector<std::uint32_t> assign)
      : obj_(obj), adj_(adj), k_(k), assign_(std::move(assign)) {
    const std::size_t n = assign_.size();
    const std::size_t c = obj_.classes();
    links_.assign(n * k_, 0.0);
    null_sum_.assign(k_ * c, 0.0);
    size_.assign(k_, 0);
    for (Vertex v = 0; v < n; ++v) {
      ++size_[assign_[v]];
      for (const auto& nb : adj_[v]) links_[v * k_ + assign_[nb.v]] += nb.w;
      for (std::size_t a = 0; a < c; ++a) null_sum_[assign_[v] * c + a] += obj_.null(a, obj_.class_of(v));
    }
  }

  // (1/M) [A(v,b) - A(v,a\v) - (N(v,b) - N(v,a\v))]
  double gain(Vertex v, std::uint32_t b) const {
    const std::uint32_t a = assign_[v];
    const std::size_t c = obj_.classes();
    const std::uint32_t cv = obj_.class_of(v);
    const double link_delta = links_[v * k_ + b] - links_[v * k_ + a];
    const double null_delta =
        null_sum_[b * c + cv] - (null_sum_[a * c + cv] - obj_.null(cv, cv));
    return (link_delta - null_delta) / static_cast<double>(obj_.graph().edge_count());
  }

  void move(Vertex v, std::uint32_t b) {
    const std::uint32_t a = assign_[v];
    const std::size_t c = obj_.classes();
    for (const auto& nb : adj_[v]) {
      links_[nb.v * k_ + a] -= nb.w;
      links_[nb.v * k_ + b] += nb.w;
    }
    for (std::size_t x = 0; x < c; ++x) {
      const double p = obj_.null(x, obj_.class_of(v));
      null_sum_[a * c + x] -= p;
      null_sum_[b * c + x] += p;
    }
    --size_[a];
    ++size_[b];
    assign_[v] = b;
  }

  std::uint32_t community(Vertex v) const { return assign_[v]; }
  std::size_t community_size(std::uint32_t c) const { return size_[c]; }
  const std::vector<std::uint32_t>& assignment() const { return assign_; }

 private:
  const ModularityObjective& obj_;
  const std::vector<std::vector<Neighbor>>& adj_;
  std::uint32_t k_;
  std::vector<std::uint32_t> assign_;
  std::vector<double> links_;     // n x K: edge weight from v into community c
  std::vector<double> null_sum_;  // K x classes: sum_{j in c} null(a, class_j)
  std::vector<std::size_t> size_;
};

Partition to_partition(const std::vector<std::uint32_t>& assign) {
  std::vector<std::int64_t> labels(assign.begin(), assign.end());
  return Partition::from_labels(labels);
}

bool improves(double candidate, double reference) {
  return candidate > reference + 1e-12 * std::max(1.0, std::abs(reference));
}

}  // namespace

LocalSearchResult kl_local_search(const ModularityObjective& objective, std::uint32_t k,
                                  const Partition& init) {
  const MultiGraph& g = objective.graph();
  const std::size_t n = g.vertex_count();
  if (k < 2) throw InputError("local search needs K >= 2 communities");
  if (k > n) {
    throw InputError("K = " + std::to_string(k) + " exceeds the vertex count " + std::to_string(n));
  }
  if (init.size() != n) throw InputError("initial partition does not cover the graph");
  if (init.community_count() != k) {
    throw InputError("initial partition has " + std::to_string(init.community_count()) +
                     " communities, expected " + std::to_string(k));
  }
  const auto adj = neighbor_lists(g);

  std::vector<std::uint32_t> current(init.assignment().begin(), init.assignment().end());
  double current_q = objective.evaluate(init);
  LocalSearchResult result;
  while (true) {
    ++result.iterations;
    KlState state(objective, adj, k, current);
    std::vector<bool> moved(n, false);
    double q = current_q;
    double best_q = -std::numeric_limits<double>::infinity();
    std::vector<std::uint32_t> best;
    for (std::size_t step = 0; step < n; ++step) {
      bool found = false;
      Vertex best_v = 0;
      std::uint32_t best_c = 0;
      double best_gain = -std::numeric_limits<double>::infinity();
      for (Vertex v = 0; v < n; ++v) {
        if (moved[v] || state.community_size(state.community(v)) == 1) continue;
        for (std::uint32_t c = 0; c < k; ++c) {
          if (c == state.community(v)) continue;
          const double gain = state.gain(v, c);
          if (!found || gain > best_gain) {
            found = true;
            best_gain = gain;
            best_v = v;
            best_c = c;
          }
        }
      }
      if (!found) break;
      state.move(best_v, best_c);
      moved[best_v] = true;
      q += best_gain;
      if (q > best_q) {
        best_q = q;
        best = state.assignment();
      }
    }
    if (best.empty() || !improves(best_q, current_q)) break;
    current = std::move(best);
    current_q = objective.evaluate(to_partition(current));
  }
  result.partition = to_partition(current);
  result.objective = objective.evaluate(result.partition);
  return result;
}

// ---- greedy agglomeration ----

std::vector<MergeStep> greedy_agglomeration(const ModularityObjective& objective) {
  const MultiGraph& g = objective.graph();
  const std::size_t n = g.vertex_count();
  std::vector<MergeStep> trajectory;
  if (n == 0) return trajectory;
  trajectory.reserve(n);

  // delta[a][b] = A_ab - N_ab summed over the members; merging a and b
  // changes Q by delta[a][b] / M.
  std::vector<double> delta(n * n, 0.0);
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = 0; b < n; ++b) {
      delta[a * n + b] = -objective.null(objective.class_of(a), objective.class_of(b));
    }
  }
  for (const auto& [e, w] : g.multiplicities()) {
    if (e.is_loop()) continue;
    delta[e.a * n + e.b] += w;
    delta[e.b * n + e.a] += w;
  }

  std::vector<std::int64_t> label(n);
  for (std::size_t v = 0; v < n; ++v) label[v] = static_cast<std::int64_t>(v);
  std::vector<std::size_t> alive(n);
  for (std::size_t v = 0; v < n; ++v) alive[v] = v;

  auto record = [&] {
    Partition p = Partition::from_labels(label);
    const double q = objective.evaluate(p);
    trajectory.push_back({std::move(p), q});
  };
  record();
  while (alive.size() > 1) {
    // Alive representatives are kept sorted, and each is the smallest vertex
    // of its community, so (i, j) order is community-id order.
    std::size_t bi = 0, bj = 1;
    double best = delta[alive[0] * n + alive[1]];
    for (std::size_t i = 0; i < alive.size(); ++i) {
      for (std::size_t j = i + 1; j < alive.size(); ++j) {
        const double d = delta[alive[i] * n + alive[j]];
        if (d > best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    const std::size_t a = alive[bi];
    const std::size_t b = alive[bj];
    for (std::size_t x : alive) {
      delta[a * n + x] += delta[b * n + x];
      delta[x * n + a] = delta[a * n + x];
    }
    for (auto& l : label) {
      if (l == static_cast<std::int64_t>(b)) l = static_cast<std::int64_t>(a);
    }
    alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(bj));
    record();
  }
  return trajectory;
}

}  // namespace confmodel
