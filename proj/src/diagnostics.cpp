#include "confmodel/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "confmodel/errors.hpp"

namespace confmodel {

namespace {

double mean_of(std::span<const double> x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

// Sum of squared deviations; zero exactly when every value is identical.
double centered_ss(std::span<const double> x, double mu) {
  double ss = 0;
  for (double v : x) ss += (v - mu) * (v - mu);
  return ss;
}

bool all_equal(std::span<const double> x) {
  return std::adjacent_find(x.begin(), x.end(), std::not_equal_to<>()) == x.end();
}

double lag_ratio(std::span<const double> x, double mu, double ss, std::size_t lag) {
  double acc = 0;
  for (std::size_t i = 0; i + lag < x.size(); ++i) acc += (x[i] - mu) * (x[i + lag] - mu);
  return acc / ss;
}

}  // namespace

std::vector<double> autocorrelation(std::span<const double> x, std::size_t max_lag) {
  if (x.empty()) throw InputError("autocorrelation of an empty series");
  max_lag = std::min(max_lag, x.size() - 1);
  std::vector<double> rho(max_lag + 1, 0.0);
  rho[0] = 1.0;
  if (all_equal(x)) return rho;
  const double mu = mean_of(x);
  const double ss = centered_ss(x, mu);
  for (std::size_t t = 1; t <= max_lag; ++t) rho[t] = lag_ratio(x, mu, ss, t);
  return rho;
}

EssEstimate effective_sample_size(std::span<const double> x) {
  if (x.size() < 10) throw InputError("at least 10 values are needed for diagnostics");
  const double n = static_cast<double>(x.size());
  EssEstimate out;
  if (all_equal(x)) {
    out.ess = n;
    out.tau = 1;
    out.zero_variance = true;
    return out;
  }
  const double mu = mean_of(x);
  const double ss = centered_ss(x, mu);
  double pair_total = 0;
  std::size_t lag = 0;
  // Lags are evaluated on demand so fast-mixing series cost O(n * tau).
  for (std::size_t m = 0; 2 * m + 1 < x.size(); ++m) {
    const double r0 = m == 0 ? 1.0 : lag_ratio(x, mu, ss, 2 * m);
    const double r1 = lag_ratio(x, mu, ss, 2 * m + 1);
    const double gamma = r0 + r1;
    if (gamma <= 0) break;
    pair_total += gamma;
    lag = 2 * m + 1;
  }
  const double floor_tau = 1.0 / std::log10(n);
  out.tau = std::max(-1.0 + 2.0 * pair_total, floor_tau);
  out.truncation_lag = lag;
  out.ess = n / out.tau;
  return out;
}

double quantile(std::vector<double> x, double p) {
  if (x.empty()) throw InputError("quantile of an empty series");
  std::sort(x.begin(), x.end());
  const double h = p * static_cast<double>(x.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, x.size() - 1);
  return x[lo] + (h - static_cast<double>(lo)) * (x[hi] - x[lo]);
}

TraceSummary summarize_trace(std::span<const double> x) {
  TraceSummary s;
  s.ess = effective_sample_size(x);
  s.n = x.size();
  s.mean = mean_of(x);
  s.sd = std::sqrt(centered_ss(x, s.mean) / static_cast<double>(x.size() - 1));
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  s.min = *lo;
  s.max = *hi;
  std::vector<double> copy(x.begin(), x.end());
  s.q25 = quantile(copy, 0.25);
  s.median = quantile(copy, 0.5);
  s.q75 = quantile(copy, 0.75);
  s.mc_std_error = s.sd / std::sqrt(s.ess.ess);
  s.acf = autocorrelation(x, 50);
  return s;
}

double potential_scale_reduction(std::span<const std::vector<double>> chains) {
  if (chains.size() < 2) throw InputError("the variance ratio needs at least two chains");
  std::size_t n = chains.front().size();
  for (const auto& c : chains) n = std::min(n, c.size());
  if (n < 10) throw InputError("at least 10 values per chain are needed for diagnostics");
  const double m = static_cast<double>(chains.size());
  const double len = static_cast<double>(n);
  std::vector<double> means;
  double within = 0;
  for (const auto& c : chains) {
    std::span<const double> head(c.data(), n);
    const double mu = mean_of(head);
    means.push_back(mu);
    within += centered_ss(head, mu) / (len - 1);
  }
  within /= m;
  const double grand = mean_of(means);
  const double between = len * centered_ss(means, grand) / (m - 1);
  if (within == 0) return between == 0 ? 1.0 : std::numeric_limits<double>::infinity();
  const double pooled = (len - 1) / len * within + between / len;
  return std::sqrt(pooled / within);
}

}  // namespace confmodel
