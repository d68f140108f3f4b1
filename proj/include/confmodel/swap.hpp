#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "confmodel/graph.hpp"
#include "confmodel/rng.hpp"

namespace confmodel {

// Double edge swap samplers.
//
//   stub          plain double edge swap with swap-and-hold; uniform over
//                 stub-labeled graphs of the space.
//   vertex_basic  each accepted transition is thinned to 1/(M(M-1));
//                 uniform over vertex-labeled graphs.
//   vertex_mh     Metropolis-Hastings on forward/reverse stub-swap counts;
//                 same target as vertex_basic, fewer rejections.
enum class Algorithm { stub, vertex_basic, vertex_mh };

std::string_view to_string(Algorithm a) noexcept;
// Accepts alg1|alg2|alg3 and stub|vertex-basic|vertex-mh.
Algorithm parse_algorithm(std::string_view text);
Algorithm default_algorithm(Labeling l) noexcept;
Labeling required_labeling(Algorithm a) noexcept;

enum class SwapCase {
  four_distinct,
  three_distinct_loop_created,
  three_distinct_loop_consumed,
  two_loops_merged,
  multiedge_split,
  no_op,
  leaves_space,
};

std::string_view to_string(SwapCase c) noexcept;

// (u,v),(x,y) -> (u,x),(v,y) where (u,v) is the first edge after the random
// orientation flip and (x,y) is the second edge as stored.
struct SwapProposal {
  std::size_t first = 0;
  std::size_t second = 0;
  Vertex u = 0, v = 0, x = 0, y = 0;
  SwapCase kind = SwapCase::no_op;

  Edge old_first() const noexcept { return {u, v}; }
  Edge old_second() const noexcept { return {x, y}; }
  Edge new_first() const noexcept { return {u, x}; }
  Edge new_second() const noexcept { return {v, y}; }
  bool changes_graph() const noexcept {
    return kind != SwapCase::no_op && kind != SwapCase::leaves_space;
  }
};

// `direction` 0 keeps the first edge's stored orientation, 1 reverses it.
SwapProposal propose_swap(const MultiGraph& g, std::size_t e1, std::size_t e2, int direction,
                          const GraphSpace& s);

SwapCase classify_swap(const MultiGraph& g, std::size_t e1, std::size_t e2, int direction,
                       const GraphSpace& s);

// Forward / reverse stub-swap counts for the vertex_mh acceptance ratio.
struct MhCounts {
  double swaps_to = 0;
  double swaps_from = 0;
};
MhCounts mh_counts(const MultiGraph& g, const SwapProposal& p);

// Probability that an in-space proposal is carried out; 0 for no-ops and
// proposals that leave the space.
double acceptance_probability(const MultiGraph& g, const SwapProposal& p, Algorithm a);

void apply_swap(MultiGraph& g, const SwapProposal& p);

enum class StepOutcome { accepted, rejected, held, stationary };

StepOutcome stub_step(MultiGraph& g, const GraphSpace& s, Rng& rng);
StepOutcome vertex_basic_step(MultiGraph& g, const GraphSpace& s, Rng& rng);
StepOutcome vertex_mh_step(MultiGraph& g, const GraphSpace& s, Rng& rng);
StepOutcome double_swap_step(MultiGraph& g, const GraphSpace& s, Algorithm a, Rng& rng);

// ---- triangle-loop swap (loopy graphs) ----

enum class TriangleMove { loops_to_triangle, triangle_to_loops, invalid };

struct TriangleProposal {
  std::array<std::size_t, 3> positions{};
  std::array<Vertex, 3> vertices{};
  TriangleMove kind = TriangleMove::invalid;
};

// Three distinct edge positions. Valid moves: three self-loops on distinct,
// pairwise non-adjacent vertices become a triangle, or a triangle whose
// vertices carry no loops becomes three loops.
TriangleProposal propose_triangle_loop(const MultiGraph& g, std::size_t i, std::size_t j,
                                       std::size_t k, const GraphSpace& s);

// Vertex labeling: both directions have equal proposal mass, accept always.
// Stub labeling: a triangle represents 8 stub configurations per loop triple,
// so triangle -> loops is accepted with probability 1/8.
double triangle_acceptance(const TriangleProposal& p, Labeling l) noexcept;

void apply_triangle_loop(MultiGraph& g, const TriangleProposal& p);

StepOutcome triangle_loop_step(MultiGraph& g, const GraphSpace& s, Rng& rng);

// ---- chains ----

struct ChainConfig {
  static constexpr double kDefaultTriangleLoopProb = 0.1;

  GraphSpace space;
  Algorithm algorithm = Algorithm::stub;
  // Unset: 20 * M * ln(M + 1) attempts. Heuristic, not a mixing guarantee.
  std::optional<std::uint64_t> burn_in;
  // Unset: 2 * M attempts.
  std::optional<std::uint64_t> spacing;
  std::uint64_t n_samples = 1;
  std::uint64_t seed = 0;
  // Probability of a triangle-loop move per step; loopy graph spaces only.
  double triangle_loop_prob = 0.0;
  // Progress line to stderr every this many steps; 0 disables.
  std::uint64_t progress_every = 0;

  std::uint64_t resolved_burn_in(std::uint64_t edge_count) const;
  std::uint64_t resolved_spacing(std::uint64_t edge_count) const;
  // Throws InputError on inconsistent settings.
  void validate() const;
};

// Throws InputError when g0 is outside the space, the algorithm does not match
// the labeling, or a loopy graph space would be disconnected.
void check_chain_preconditions(const MultiGraph& g0, const ChainConfig& cfg);

// A resumable chain: owns its graph and generator; every call to step()
// advances the clock by one, including rejections and holds.
class Chain {
 public:
  Chain(MultiGraph g0, ChainConfig cfg, std::uint64_t stream = 0);

  StepOutcome step();
  void advance(std::uint64_t steps);

  const MultiGraph& graph() const noexcept { return graph_; }
  const ChainConfig& config() const noexcept { return cfg_; }
  std::uint64_t steps_taken() const noexcept { return steps_; }
  std::uint64_t accepted() const noexcept { return accepted_; }

 private:
  MultiGraph graph_;
  ChainConfig cfg_;
  Rng rng_;
  std::uint64_t stream_;
  std::uint64_t steps_ = 0;
  std::uint64_t accepted_ = 0;
  bool triangle_moves_ = false;
};

struct Sample {
  std::size_t index = 0;
  std::uint64_t step_count = 0;
  MultiGraph graph;
};
using SampleStream = std::vector<Sample>;

using SampleVisitor =
    std::function<void(std::size_t index, std::uint64_t step_count, const MultiGraph& g)>;

// burn_in steps, then n_samples snapshots `spacing` steps apart. Bit
// reproducible given (g0, cfg, stream).
void run_chain(const MultiGraph& g0, const ChainConfig& cfg, const SampleVisitor& visit,
               std::uint64_t stream = 0);

SampleStream collect_samples(const MultiGraph& g0, const ChainConfig& cfg,
                             std::uint64_t stream = 0);

}  // namespace confmodel
