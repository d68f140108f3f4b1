#include "oracles.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace oracle {

using confmodel::Edge;
using confmodel::Vertex;

std::vector<MultiGraph> all_simple_graphs(std::size_t n) {
  if (n > 6) throw std::invalid_argument("brute force limited to 6 vertices");
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  std::vector<MultiGraph> out;
  for (std::uint64_t mask = 0; mask < (1ULL << pairs.size()); ++mask) {
    MultiGraph g(n);
    for (std::size_t b = 0; b < pairs.size(); ++b) {
      if (mask >> b & 1) g.add_edge(pairs[b].first, pairs[b].second);
    }
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<MultiGraph> simple_graphs_with_degrees(const DegreeSequence& k) {
  std::vector<MultiGraph> out;
  for (auto& g : all_simple_graphs(k.size())) {
    if (g.degrees() == k) out.push_back(std::move(g));
  }
  return out;
}

namespace {

void match_stubs(std::vector<Vertex>& owner, std::vector<bool>& used, std::vector<Edge>& edges,
                 std::size_t n, const GraphSpace& space, std::map<CanonicalForm, std::uint64_t>& out) {
  std::size_t first = 0;
  while (first < owner.size() && used[first]) ++first;
  if (first == owner.size()) {
    MultiGraph g = MultiGraph::from_edges(n, edges);
    if (confmodel::validate_in_space(g, space)) ++out[g.canonical_edges()];
    return;
  }
  used[first] = true;
  for (std::size_t j = first + 1; j < owner.size(); ++j) {
    if (used[j]) continue;
    used[j] = true;
    edges.push_back({owner[first], owner[j]});
    match_stubs(owner, used, edges, n, space, out);
    edges.pop_back();
    used[j] = false;
  }
  used[first] = false;
}

}  // namespace

std::map<CanonicalForm, std::uint64_t> stub_pairing_census(const DegreeSequence& k,
                                                           const GraphSpace& space) {
  std::vector<Vertex> owner;
  for (Vertex v = 0; v < k.size(); ++v) {
    for (std::uint32_t s = 0; s < k[v]; ++s) owner.push_back(v);
  }
  if (owner.size() % 2) throw std::invalid_argument("odd stub count");
  std::vector<bool> used(owner.size(), false);
  std::vector<Edge> edges;
  std::map<CanonicalForm, std::uint64_t> out;
  match_stubs(owner, used, edges, k.size(), space, out);
  return out;
}

double pearson_stub_pairs(const MultiGraph& g, const std::vector<double>& value) {
  std::vector<long double> xs, ys;
  for (const Edge& e : g.edges()) {
    xs.push_back(value[e.a]);
    ys.push_back(value[e.b]);
    xs.push_back(value[e.b]);
    ys.push_back(value[e.a]);
  }
  const auto n = static_cast<long double>(xs.size());
  const long double mx = std::accumulate(xs.begin(), xs.end(), 0.0L) / n;
  const long double my = std::accumulate(ys.begin(), ys.end(), 0.0L) / n;
  long double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

TransitionMatrix exact_transition_matrix(const confmodel::SpaceCensus& census,
                                         confmodel::Algorithm algorithm, double triangle_loop_prob,
                                         bool naive_vertex_walk) {
  using namespace confmodel;
  TransitionMatrix t;
  t.n = census.size();
  t.p.assign(t.n * t.n, 0.0);
  const GraphSpace& s = census.space;
  for (std::size_t from = 0; from < t.n; ++from) {
    const MultiGraph& g = census.graphs[from];
    const std::size_t m = g.edge_count();
    double stay = 1.0;
    auto move_to = [&](const MultiGraph& h, double prob) {
      auto idx = census.index_of(h);
      if (!idx) throw std::logic_error("step left the census");
      t.p[from * t.n + *idx] += prob;
      stay -= prob;
    };
    const double swap_share = 1.0 - triangle_loop_prob;
    if (m >= 2) {
      const double each = swap_share / (2.0 * static_cast<double>(m) * static_cast<double>(m - 1));
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          if (i == j) continue;
          for (int dir = 0; dir < 2; ++dir) {
            const SwapProposal p = propose_swap(g, i, j, dir, s);
            if (!p.changes_graph()) continue;
            const double a = naive_vertex_walk ? 1.0 : acceptance_probability(g, p, algorithm);
            if (a <= 0) continue;
            MultiGraph h = g;
            apply_swap(h, p);
            move_to(h, each * a);
          }
        }
      }
    }
    if (triangle_loop_prob > 0 && m >= 3) {
      const double each = triangle_loop_prob / (static_cast<double>(m) * static_cast<double>(m - 1) *
                                                static_cast<double>(m - 2));
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          for (std::size_t k = 0; k < m; ++k) {
            if (i == j || j == k || i == k) continue;
            const TriangleProposal p = propose_triangle_loop(g, i, j, k, s);
            const double a = triangle_acceptance(p, s.labeling);
            if (a <= 0) continue;
            MultiGraph h = g;
            apply_triangle_loop(h, p);
            move_to(h, each * a);
          }
        }
      }
    }
    // Rounding can leave a tiny negative remainder.
    t.p[from * t.n + from] += std::max(stay, 0.0);
  }
  return t;
}

std::vector<double> evolve(const TransitionMatrix& t, std::vector<double> start, std::size_t steps) {
  std::vector<double> next(t.n);
  for (std::size_t s = 0; s < steps; ++s) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < t.n; ++i) {
      if (start[i] == 0) continue;
      for (std::size_t j = 0; j < t.n; ++j) next[j] += start[i] * t.p[i * t.n + j];
    }
    start.swap(next);
  }
  return start;
}

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
  double tv = 0;
  for (std::size_t i = 0; i < a.size(); ++i) tv += std::abs(a[i] - b[i]);
  return tv / 2;
}

std::size_t mixing_steps(const TransitionMatrix& t, const std::vector<double>& target, double eps,
                         std::size_t max_steps) {
  std::vector<std::vector<double>> rows(t.n, std::vector<double>(t.n, 0.0));
  for (std::size_t i = 0; i < t.n; ++i) rows[i][i] = 1.0;
  for (std::size_t s = 1; s <= max_steps; ++s) {
    double worst = 0;
    for (auto& r : rows) {
      r = evolve(t, r, 1);
      worst = std::max(worst, total_variation(r, target));
    }
    if (worst < eps) return s;
  }
  return 0;
}

ChiSquare chi_square_gof(const std::vector<std::uint64_t>& observed, const std::vector<double>& expected) {
  const double n = static_cast<double>(std::accumulate(observed.begin(), observed.end(), std::uint64_t{0}));
  ChiSquare out;
  // Cells with expected count below 5 are pooled into one.
  double pooled_obs = 0, pooled_exp = 0;
  std::size_t cells = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = n * expected[i];
    const double o = static_cast<double>(observed[i]);
    if (expected[i] == 0) {
      if (o > 0) {
        out.statistic = std::numeric_limits<double>::infinity();
        out.p_value = 0;
        return out;
      }
      continue;
    }
    if (e < 5) {
      pooled_obs += o;
      pooled_exp += e;
      continue;
    }
    out.statistic += (o - e) * (o - e) / e;
    ++cells;
  }
  if (pooled_exp > 0) {
    out.statistic += (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) / pooled_exp;
    ++cells;
  }
  out.dof = static_cast<double>(cells) - 1;
  if (out.dof < 1) {
    out.p_value = 1;
    return out;
  }
  out.p_value = boost::math::cdf(boost::math::complement(boost::math::chi_squared(out.dof), out.statistic));
  return out;
}

ChiSquare chi_square_two_sample(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  const double na = static_cast<double>(std::accumulate(a.begin(), a.end(), std::uint64_t{0}));
  const double nb = static_cast<double>(std::accumulate(b.begin(), b.end(), std::uint64_t{0}));
  ChiSquare out;
  std::size_t cells = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double total = static_cast<double>(a[i] + b[i]);
    if (total == 0) continue;
    const double ea = total * na / (na + nb);
    const double eb = total * nb / (na + nb);
    out.statistic += (a[i] - ea) * (a[i] - ea) / ea + (b[i] - eb) * (b[i] - eb) / eb;
    ++cells;
  }
  out.dof = static_cast<double>(cells) - 1;
  if (out.dof < 1) return out;
  out.p_value = boost::math::cdf(boost::math::complement(boost::math::chi_squared(out.dof), out.statistic));
  return out;
}

KsResult ks_uniform(std::vector<double> x) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    d = std::max({d, hi - x[i], x[i] - lo});
  }
  KsResult out;
  out.statistic = d;
  // Asymptotic Kolmogorov tail with Stephens' small-sample correction.
  const double sqrt_n = std::sqrt(n);
  const double lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d;
  double sum = 0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += (j % 2 ? 1.0 : -1.0) * term;
    if (term < 1e-16) break;
  }
  out.p_value = std::clamp(2.0 * sum, 0.0, 1.0);
  if (lambda < 0.2) out.p_value = 1.0;
  return out;
}

}  // namespace oracle
