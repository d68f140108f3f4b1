#include "confmodel/swap.hpp"

#include <cmath>
#include <iostream>

#include "confmodel/errors.hpp"

namespace confmodel {

std::string_view to_string(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::stub: return "alg1";
    case Algorithm::vertex_basic: return "alg2";
    case Algorithm::vertex_mh: return "alg3";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view text) {
  if (text == "alg1" || text == "stub") return Algorithm::stub;
  if (text == "alg2" || text == "vertex-basic") return Algorithm::vertex_basic;
  if (text == "alg3" || text == "vertex-mh") return Algorithm::vertex_mh;
  throw InputError("unknown algorithm '" + std::string(text) + "' (expected alg1|alg2|alg3)");
}

Algorithm default_algorithm(Labeling l) noexcept {
  return l == Labeling::stub ? Algorithm::stub : Algorithm::vertex_basic;
}

Labeling required_labeling(Algorithm a) noexcept {
  return a == Algorithm::stub ? Labeling::stub : Labeling::vertex;
}

std::string_view to_string(SwapCase c) noexcept {
  switch (c) {
    case SwapCase::four_distinct: return "four_distinct";
    case SwapCase::three_distinct_loop_created: return "three_distinct_loop_created";
    case SwapCase::three_distinct_loop_consumed: return "three_distinct_loop_consumed";
    case SwapCase::two_loops_merged: return "two_loops_merged";
    case SwapCase::multiedge_split: return "multiedge_split";
    case SwapCase::no_op: return "no_op";
    case SwapCase::leaves_space: return "leaves_space";
  }
  return "?";
}

namespace {

int distinct_count(Vertex a, Vertex b, Vertex c, Vertex d) noexcept {
  int n = 1;
  n += (b != a);
  n += (c != a && c != b);
  n += (d != a && d != b && d != c);
  return n;
}

}  // namespace

SwapProposal propose_swap(const MultiGraph& g, std::size_t e1, std::size_t e2, int direction,
                          const GraphSpace& s) {
  const Edge first = g.edge_at(e1);
  const Edge second = g.edge_at(e2);
  SwapProposal p;
  p.first = e1;
  p.second = e2;
  p.u = direction ? first.b : first.a;
  p.v = direction ? first.a : first.b;
  p.x = second.a;
  p.y = second.b;

  const Edge n1 = p.new_first();
  const Edge n2 = p.new_second();
  if ((n1.same_pair(first) && n2.same_pair(second)) ||
      (n1.same_pair(second) && n2.same_pair(first))) {
    p.kind = SwapCase::no_op;
    return p;
  }
  if (!s.loops && (n1.is_loop() || n2.is_loop())) {
    p.kind = SwapCase::leaves_space;
    return p;
  }
  if (!s.multiedges) {
    if (n1.same_pair(n2)) {
      p.kind = SwapCase::leaves_space;
      return p;
    }
    // Neither new pair can coincide with a removed one (that would be a no-op).
    if (g.multiplicity(n1.a, n1.b) > 0 || g.multiplicity(n2.a, n2.b) > 0) {
      p.kind = SwapCase::leaves_space;
      return p;
    }
  }

  switch (distinct_count(p.u, p.v, p.x, p.y)) {
    case 4: p.kind = SwapCase::four_distinct; break;
    case 3:
      p.kind = (first.is_loop() || second.is_loop()) ? SwapCase::three_distinct_loop_consumed
                                                     : SwapCase::three_distinct_loop_created;
      break;
    case 2:
      p.kind = (first.is_loop() && second.is_loop()) ? SwapCase::two_loops_merged
                                                     : SwapCase::multiedge_split;
      break;
    default: p.kind = SwapCase::no_op; break;
  }
  return p;
}

SwapCase classify_swap(const MultiGraph& g, std::size_t e1, std::size_t e2, int direction,
                       const GraphSpace& s) {
  return propose_swap(g, e1, e2, direction, s).kind;
}

MhCounts mh_counts(const MultiGraph& g, const SwapProposal& p) {
  const Vertex u = p.u, v = p.v, x = p.x, y = p.y;
  const double w_uv = g.multiplicity(u, v);
  const double w_xy = g.multiplicity(x, y);
  const double w_ux = g.multiplicity(u, x);
  const double w_vy = g.multiplicity(v, y);
  switch (distinct_count(u, v, x, y)) {
    case 4: return {w_uv * w_xy, (w_ux + 1) * (w_vy + 1)};
    case 3:
      if (u == v || x == y) return {2 * w_uv * w_xy, (w_ux + 1) * (w_vy + 1)};
      return {w_uv * w_xy, 2 * (w_ux + 1) * (w_vy + 1)};
    case 2:
      if (u == v && x == y) {
        // two loops (u,u),(x,x) merge into a double edge u-x
        return {2.0 * w_uv * w_xy, 0.5 * (w_ux + 2) * (w_ux + 1)};
      }
      if (u != v && x != y) {
        // two copies of u-v split into loops at u and v
        return {0.5 * w_uv * (w_uv - 1),
                2 * (g.multiplicity(u, u) + 1.0) * (g.multiplicity(v, v) + 1.0)};
      }
      return {};
    default: return {};
  }
}

double acceptance_probability(const MultiGraph& g, const SwapProposal& p, Algorithm a) {
  if (!p.changes_graph()) return 0.0;
  switch (a) {
    case Algorithm::stub: return 1.0;
    case Algorithm::vertex_basic: {
      const Edge e1 = g.edge_at(p.first);
      const Edge e2 = g.edge_at(p.second);
      const double w1 = g.multiplicity(e1.a, e1.b);
      double prob = 0;
      if (e1.same_pair(e2)) {
        prob = 2.0 / (w1 * (w1 - 1));
      } else {
        prob = 1.0 / (w1 * g.multiplicity(e2.a, e2.b));
      }
      if (e1.is_loop() || e2.is_loop()) prob *= 0.5;
      return prob;
    }
    case Algorithm::vertex_mh: {
      const MhCounts c = mh_counts(g, p);
      if (c.swaps_to <= 0) return 0.0;
      return std::min(1.0, c.swaps_from / c.swaps_to);
    }
  }
  return 0.0;
}

void apply_swap(MultiGraph& g, const SwapProposal& p) {
  g.rewire(p.first, p.new_first(), p.second, p.new_second());
}

namespace {

// Ordered pair of distinct positions, uniform over M(M-1), plus a direction bit.
inline void draw_pair(std::size_t m, Rng& rng, std::size_t& i, std::size_t& j, int& dir) {
  i = static_cast<std::size_t>(rng.below(m));
  j = static_cast<std::size_t>(rng.below(m - 1));
  if (j >= i) ++j;
  dir = rng.coin() ? 1 : 0;
}

}  // namespace

StepOutcome double_swap_step(MultiGraph& g, const GraphSpace& s, Algorithm a, Rng& rng) {
  const std::size_t m = g.edge_count();
  if (m < 2) return StepOutcome::stationary;
  std::size_t i = 0, j = 0;
  int dir = 0;
  draw_pair(m, rng, i, j, dir);
  const SwapProposal p = propose_swap(g, i, j, dir, s);
  if (!p.changes_graph()) return StepOutcome::held;
  const double prob = acceptance_probability(g, p, a);
  if (prob < 1.0 && !(rng.uniform() < prob)) return StepOutcome::rejected;
  apply_swap(g, p);
  return StepOutcome::accepted;
}

StepOutcome stub_step(MultiGraph& g, const GraphSpace& s, Rng& rng) {
  return double_swap_step(g, s, Algorithm::stub, rng);
}

StepOutcome vertex_basic_step(MultiGraph& g, const GraphSpace& s, Rng& rng) {
  return double_swap_step(g, s, Algorithm::vertex_basic, rng);
}

StepOutcome vertex_mh_step(MultiGraph& g, const GraphSpace& s, Rng& rng) {
  return double_swap_step(g, s, Algorithm::vertex_mh, rng);
}

// ---- triangle-loop ----

TriangleProposal propose_triangle_loop(const MultiGraph& g, std::size_t i, std::size_t j,
                                       std::size_t k, const GraphSpace& s) {
  TriangleProposal p;
  p.positions = {i, j, k};
  if (!s.is_loopy_graph()) return p;
  const Edge e[3] = {g.edge_at(i), g.edge_at(j), g.edge_at(k)};
  const int loops = e[0].is_loop() + e[1].is_loop() + e[2].is_loop();
  if (loops == 3) {
    const Vertex a = e[0].a, b = e[1].a, c = e[2].a;
    if (a == b || b == c || a == c) return p;
    if (g.multiplicity(a, b) || g.multiplicity(b, c) || g.multiplicity(c, a)) return p;
    p.vertices = {a, b, c};
    p.kind = TriangleMove::loops_to_triangle;
    return p;
  }
  if (loops == 0) {
    // e0 = {a,b}; e1 must share exactly one endpoint with e0 and e2 must close the cycle
    Vertex a = e[0].a, b = e[0].b, c = 0;
    if (e[1].a == a || e[1].a == b) {
      c = e[1].b;
      if (e[1].a == a) std::swap(a, b);  // now e1 = {b, c}
    } else if (e[1].b == a || e[1].b == b) {
      c = e[1].a;
      if (e[1].b == a) std::swap(a, b);
    } else {
      return p;
    }
    if (c == a || c == b) return p;
    if (!e[2].same_pair(Edge{c, a})) return p;
    if (g.multiplicity(a, a) || g.multiplicity(b, b) || g.multiplicity(c, c)) return p;
    p.vertices = {a, b, c};
    p.kind = TriangleMove::triangle_to_loops;
  }
  return p;
}

double triangle_acceptance(const TriangleProposal& p, Labeling l) noexcept {
  switch (p.kind) {
    case TriangleMove::loops_to_triangle: return 1.0;
    case TriangleMove::triangle_to_loops: return l == Labeling::stub ? 0.125 : 1.0;
    case TriangleMove::invalid: return 0.0;
  }
  return 0.0;
}

void apply_triangle_loop(MultiGraph& g, const TriangleProposal& p) {
  const auto [a, b, c] = p.vertices;
  const auto [i, j, k] = p.positions;
  if (p.kind == TriangleMove::loops_to_triangle) {
    g.rewire3(i, {a, b}, j, {b, c}, k, {c, a});
  } else if (p.kind == TriangleMove::triangle_to_loops) {
    g.rewire3(i, {a, a}, j, {b, b}, k, {c, c});
  }
}

StepOutcome triangle_loop_step(MultiGraph& g, const GraphSpace& s, Rng& rng) {
  const std::size_t m = g.edge_count();
  if (m < 3) return StepOutcome::stationary;
  // ordered triple of distinct positions, uniform over M(M-1)(M-2)
  std::size_t i = static_cast<std::size_t>(rng.below(m));
  std::size_t j = static_cast<std::size_t>(rng.below(m - 1));
  if (j >= i) ++j;
  std::size_t k = static_cast<std::size_t>(rng.below(m - 2));
  const std::size_t lo = std::min(i, j), hi = std::max(i, j);
  if (k >= lo) ++k;
  if (k >= hi) ++k;
  const TriangleProposal p = propose_triangle_loop(g, i, j, k, s);
  if (p.kind == TriangleMove::invalid) return StepOutcome::held;
  const double prob = triangle_acceptance(p, s.labeling);
  if (prob < 1.0 && !(rng.uniform() < prob)) return StepOutcome::rejected;
  apply_triangle_loop(g, p);
  return StepOutcome::accepted;
}

// ---- chains ----

std::uint64_t ChainConfig::resolved_burn_in(std::uint64_t edge_count) const {
  if (burn_in) return *burn_in;
  const double m = static_cast<double>(edge_count);
  return static_cast<std::uint64_t>(std::ceil(20.0 * m * std::log(m + 1.0)));
}

std::uint64_t ChainConfig::resolved_spacing(std::uint64_t edge_count) const {
  if (spacing) return *spacing;
  return std::max<std::uint64_t>(1, 2 * edge_count);
}

void ChainConfig::validate() const {
  if (required_labeling(algorithm) != space.labeling) {
    throw InputError("algorithm " + std::string(to_string(algorithm)) + " samples " +
                     std::string(to_string(required_labeling(algorithm))) +
                     "-labeled spaces but the space is " + space.name());
  }
  if (n_samples < 1) throw InputError("n_samples must be >= 1");
  if (spacing && *spacing < 1) throw InputError("spacing must be >= 1");
  if (!(triangle_loop_prob >= 0.0 && triangle_loop_prob <= 1.0)) {
    throw InputError("triangle_loop_prob must lie in [0, 1]");
  }
  if (triangle_loop_prob > 0.0 && !space.is_loopy_graph()) {
    throw InputError("triangle-loop moves apply only to loopy graph spaces (loops, no multiedges)");
  }
}

void check_chain_preconditions(const MultiGraph& g0, const ChainConfig& cfg) {
  cfg.validate();
  if (auto bad = find_space_violation(g0, cfg.space)) {
    throw InputError("initial graph is outside the " + cfg.space.name() + " space: edge (" +
                     std::to_string(bad->edge.a) + "," + std::to_string(bad->edge.b) +
                     ") multiplicity " + std::to_string(bad->multiplicity) + ": " + bad->reason);
  }
  if (cfg.space.is_loopy_graph() && cfg.triangle_loop_prob == 0.0 &&
      !loopy_space_connected(g0.degrees())) {
    throw InputError(
        "double edge swaps do not connect the loopy graph space for degree sequence " +
        g0.degrees().to_string() + "; enable triangle-loop moves");
  }
}

Chain::Chain(MultiGraph g0, ChainConfig cfg, std::uint64_t stream)
    : graph_(std::move(g0)),
      cfg_(std::move(cfg)),
      rng_(Rng::for_stream(cfg_.seed, stream)),
      stream_(stream) {
  check_chain_preconditions(graph_, cfg_);
  triangle_moves_ = cfg_.triangle_loop_prob > 0.0;
  if (cfg_.progress_every && graph_.edge_count() < 2) {
    std::cerr << "chain " << stream_ << ": fewer than two edges, chain is stationary\n";
  }
}

StepOutcome Chain::step() {
  StepOutcome out;
  if (triangle_moves_ && rng_.uniform() < cfg_.triangle_loop_prob) {
    out = triangle_loop_step(graph_, cfg_.space, rng_);
  } else {
    out = double_swap_step(graph_, cfg_.space, cfg_.algorithm, rng_);
  }
  ++steps_;
  accepted_ += (out == StepOutcome::accepted);
  if (cfg_.progress_every && steps_ % cfg_.progress_every == 0) {
    std::cerr << "chain " << stream_ << ": step " << steps_ << " accepted " << accepted_ << " ("
              << static_cast<double>(accepted_) / static_cast<double>(steps_) << ")\n";
  }
  return out;
}

void Chain::advance(std::uint64_t steps) {
  for (std::uint64_t s = 0; s < steps; ++s) step();
}

void run_chain(const MultiGraph& g0, const ChainConfig& cfg, const SampleVisitor& visit,
               std::uint64_t stream) {
  Chain chain(g0, cfg, stream);
  const std::uint64_t m = g0.edge_count();
  chain.advance(cfg.resolved_burn_in(m));
  const std::uint64_t spacing = cfg.resolved_spacing(m);
  for (std::uint64_t s = 0; s < cfg.n_samples; ++s) {
    chain.advance(spacing);
    visit(static_cast<std::size_t>(s), chain.steps_taken(), chain.graph());
  }
}

SampleStream collect_samples(const MultiGraph& g0, const ChainConfig& cfg, std::uint64_t stream) {
  SampleStream out;
  out.reserve(cfg.n_samples);
  run_chain(
      g0, cfg,
      [&](std::size_t idx, std::uint64_t steps, const MultiGraph& g) {
        out.push_back({idx, steps, g});
      },
      stream);
  return out;
}

}  // namespace confmodel
