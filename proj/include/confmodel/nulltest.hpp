#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include "confmodel/graph.hpp"
#include "confmodel/swap.hpp"

namespace confmodel {

enum class Tail { upper, lower, two };

std::string_view to_string(Tail t) noexcept;
Tail parse_tail(std::string_view text);

using GraphStatistic = std::function<double(const MultiGraph&)>;

// Add-one estimate: upper = (#{null >= observed} + 1) / (N + 1), lower is the
// mirror image, two = min(1, 2 min(upper, lower)). Ties are judged with a
// relative tolerance of 1e-12 so values equal up to rounding count as ties.
double empirical_p_value(double observed, const std::vector<double>& null_values, Tail tail);

struct NullTestReport {
  double observed = 0;
  std::vector<double> null_values;
  double p_value = 1;
  Tail tail = Tail::upper;
  std::size_t sample_count = 0;
  ChainConfig config;
};

// Statistic on g0 versus its values on cfg.n_samples null samples drawn by
// `chains` independent chains (merged in chain order).
NullTestReport null_test(const MultiGraph& g0, const ChainConfig& cfg, const GraphStatistic& stat,
                         Tail tail = Tail::upper, unsigned chains = 1);

}  // namespace confmodel
