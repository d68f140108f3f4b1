#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "confmodel/graph.hpp"
#include "confmodel/partition.hpp"
#include "confmodel/swap.hpp"

namespace confmodel {

// Expected edge counts between degree classes. C[a][b] (a != b) counts edges
// with one end of degree a and the other of degree b; C[a][a] counts each
// edge between two degree-a vertices once and each self-loop at a degree-a
// vertex once, so the upper triangle sums to M.
struct DegreeClassMatrix {
  std::vector<std::uint32_t> degrees;  // sorted unique
  std::vector<std::uint64_t> counts;   // n_k per class
  std::vector<double> expected;        // row-major, symmetric
  std::vector<double> std_error;       // empty for exact matrices
  std::uint64_t samples = 0;           // 0 for exact matrices

  std::size_t classes() const noexcept { return degrees.size(); }
  double at(std::size_t a, std::size_t b) const { return expected[a * classes() + b]; }
  double error_at(std::size_t a, std::size_t b) const { return std_error[a * classes() + b]; }
  std::optional<std::size_t> class_of(std::uint32_t degree) const;
  // Null expectation for one ordered vertex pair: C/(n_a n_b) off the
  // diagonal, 2 C/n_a^2 on it.
  double pair_expectation(std::size_t a, std::size_t b) const;
  // Sum over a <= b.
  double total() const;

  // Classes and counts of a degree sequence with a zero matrix.
  static DegreeClassMatrix empty_for(const DegreeSequence& k);
};

// Edge tally of one graph (a realization of C).
DegreeClassMatrix degree_class_counts(const MultiGraph& g);

enum class ClosedForm {
  // n_a n_b a b / 2M off the diagonal, n_a^2 a^2 / 4M on it. Makes the generic
  // objective coincide with standard modularity.
  large_m,
  // Exact stub-labeled loopy multigraph expectation: a b / (2M-1) per vertex
  // pair, and a(a-1) / (2(2M-1)) per self-loop position.
  exact_stub,
};

DegreeClassMatrix closed_form_degree_matrix(const DegreeSequence& k, ClosedForm form);

// Monte Carlo estimate of E[C] from cfg.n_samples chain samples; standard
// errors use the autocorrelation-adjusted sample size per cell.
DegreeClassMatrix expected_degree_matrix(const MultiGraph& g0, const ChainConfig& cfg);
DegreeClassMatrix expected_degree_matrix(const DegreeSequence& k, const ChainConfig& cfg);

// Q = (1/2M) sum_ij (A_ij - k_i k_j / 2M) delta(g_i, g_j) with A_ii = 2 w_ii.
double modularity(const MultiGraph& g, const Partition& p);

// Q with the degree-class null term pair_expectation(k_i, k_j) in place of
// k_i k_j / 2M. Throws InputError if a degree of g is missing from C.
double modularity_generic(const MultiGraph& g, const Partition& p, const DegreeClassMatrix& c);

// A modularity variant resolved against one graph: vertex classes and the
// ordered-pair null expectation between classes.
class ModularityObjective {
 public:
  static ModularityObjective standard(const MultiGraph& g);
  static ModularityObjective generic(const MultiGraph& g, const DegreeClassMatrix& c);

  double evaluate(const Partition& p) const;

  const MultiGraph& graph() const noexcept { return *graph_; }
  std::size_t classes() const noexcept { return n_classes_; }
  std::uint32_t class_of(Vertex v) const { return vertex_class_[v]; }
  double null(std::size_t a, std::size_t b) const { return null_[a * n_classes_ + b]; }

 private:
  const MultiGraph* graph_ = nullptr;
  std::size_t n_classes_ = 0;
  std::vector<std::uint32_t> vertex_class_;
  std::vector<double> null_;
};

struct LocalSearchResult {
  Partition partition;
  double objective = 0;
  std::size_t iterations = 0;
};

// Kernighan-Lin style search with K fixed. Each iteration moves every vertex
// exactly once, always taking the best remaining move (first maximum in
// (vertex, community) order) even if it lowers the objective, and never
// emptying a community. The best state of the iteration seeds the next; the
// search stops after an iteration without improvement.
LocalSearchResult kl_local_search(const ModularityObjective& objective, std::uint32_t k,
                                  const Partition& init);

struct MergeStep {
  Partition partition;
  double objective = 0;
};

// Agglomeration from singletons, merging the pair with the largest gain
// (lowest id pair on ties) until one community is left. Returns n states.
std::vector<MergeStep> greedy_agglomeration(const ModularityObjective& objective);

}  // namespace confmodel
