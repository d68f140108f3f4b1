#include "confmodel/nulltest.hpp"

#include <algorithm>
#include <cmath>

#include "confmodel/errors.hpp"
#include "confmodel/parallel.hpp"

namespace confmodel {

std::string_view to_string(Tail t) noexcept {
  switch (t) {
    case Tail::upper: return "upper";
    case Tail::lower: return "lower";
    case Tail::two: return "two";
  }
  return "upper";
}

Tail parse_tail(std::string_view text) {
  if (text == "upper") return Tail::upper;
  if (text == "lower") return Tail::lower;
  if (text == "two") return Tail::two;
  throw InputError("unknown tail '" + std::string(text) + "' (expected upper|lower|two)");
}

double empirical_p_value(double observed, const std::vector<double>& null_values, Tail tail) {
  const double tol = 1e-12 * std::max(1.0, std::abs(observed));
  std::size_t upper = 0;
  std::size_t lower = 0;
  for (double v : null_values) {
    if (v >= observed - tol) ++upper;
    if (v <= observed + tol) ++lower;
  }
  const double denom = static_cast<double>(null_values.size()) + 1.0;
  const double p_upper = (static_cast<double>(upper) + 1.0) / denom;
  const double p_lower = (static_cast<double>(lower) + 1.0) / denom;
  switch (tail) {
    case Tail::upper: return p_upper;
    case Tail::lower: return p_lower;
    case Tail::two: return std::min(1.0, 2.0 * std::min(p_upper, p_lower));
  }
  return p_upper;
}

NullTestReport null_test(const MultiGraph& g0, const ChainConfig& cfg, const GraphStatistic& stat,
                         Tail tail, unsigned chains) {
  NullTestReport report;
  report.config = cfg;
  report.tail = tail;
  report.observed = stat(g0);
  auto per_chain = map_chains(g0, cfg, chains,
                              [&](unsigned, std::size_t, std::uint64_t, const MultiGraph& g) {
                                return stat(g);
                              });
  for (auto& values : per_chain) {
    report.null_values.insert(report.null_values.end(), values.begin(), values.end());
  }
  report.sample_count = report.null_values.size();
  report.p_value = empirical_p_value(report.observed, report.null_values, tail);
  return report;
}

}  // namespace confmodel
