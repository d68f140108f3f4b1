#pragma once

#include <span>

#include "confmodel/graph.hpp"

namespace confmodel {

// Pearson correlation of degrees across the two ends of every edge, with
// moments taken over stubs:
//   r = ((1/M) sum_edges k_u k_v - mu^2) / sigma^2,
//   mu = sum_i k_i^2 / 2M,  sigma^2 = sum_i k_i^3 / 2M - mu^2.
// A self-loop at u contributes k_u^2. Evaluated in exact integer arithmetic up
// to the final division. Throws UndefinedStatistic when sigma^2 = 0 or M = 0.
double degree_assortativity(const MultiGraph& g);

// Same correlation with vertex traits in place of degrees; each vertex's trait
// is weighted by its degree. Throws UndefinedStatistic if every vertex with
// positive degree carries the same trait.
double trait_assortativity(const MultiGraph& g, std::span<const double> traits);

}  // namespace confmodel
