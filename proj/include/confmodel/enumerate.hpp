#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "confmodel/graph.hpp"

namespace confmodel {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Number of stub-labeled graphs represented by the vertex-labeled graph g:
//   prod_i k_i! / ( prod_i w_ii! 2^{w_ii} * prod_{i<j} w_ij! )
// For a simple graph this is prod_i k_i!. Throws InputError if g is not in s.
Rational q_factor(const MultiGraph& g, const GraphSpace& s);

// (2M-1)!! = number of stub pairings; the stub-labeled loopy multigraph count.
BigInt pairing_count(std::uint64_t edge_count);

// Every vertex-labeled graph of a space with a fixed degree sequence.
struct SpaceCensus {
  GraphSpace space;
  DegreeSequence degrees;
  std::vector<MultiGraph> graphs;      // sorted by canonical form
  std::vector<Rational> stub_weights;  // q_factor of each graph

  std::size_t size() const noexcept { return graphs.size(); }
  Rational stub_total() const;
  std::optional<std::size_t> index_of(const MultiGraph& g) const;
  std::optional<std::size_t> index_of(const CanonicalForm& form) const;

  // Stationary probability of graph `i` under the census' own labeling:
  // uniform for vertex labeling, q-weighted for stub labeling.
  Rational probability(std::size_t i) const;

  std::map<CanonicalForm, std::size_t> index;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 14;

// Recursive stub assignment in canonical edge order. Throws
// EnumerationCapExceeded when 2M exceeds `max_stubs`.
SpaceCensus enumerate_space(const DegreeSequence& k, const GraphSpace& s,
                            std::uint64_t max_stubs = kDefaultEnumerationCap);

// Uniform mean (vertex labeling) or q-weighted mean (stub labeling) of an
// exact statistic (integer, bool or Rational valued) over the census.
template <class Stat>
Rational exact_expectation(const SpaceCensus& census, Stat&& stat) {
  Rational total = 0;
  Rational weight = 0;
  for (std::size_t i = 0; i < census.size(); ++i) {
    const Rational w = census.space.labeling == Labeling::stub ? census.stub_weights[i] : Rational(1);
    total += w * Rational(stat(census.graphs[i]));
    weight += w;
  }
  if (weight == 0) return Rational(0);
  return total / weight;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace confmodel
