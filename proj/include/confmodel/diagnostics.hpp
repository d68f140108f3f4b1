#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace confmodel {

// Sample autocorrelation rho_0..rho_max_lag (biased covariance estimator,
// normalized by the lag-0 variance). All-zero past lag 0 for a constant series.
std::vector<double> autocorrelation(std::span<const double> x, std::size_t max_lag);

struct EssEstimate {
  double ess = 0;
  // Integrated autocorrelation time 1 + 2 sum_t rho_t, so ess = n / tau.
  double tau = 1;
  std::size_t truncation_lag = 0;
  bool zero_variance = false;
};

// Geyer's initial positive sequence: pair sums rho_{2m} + rho_{2m+1} are
// accumulated until the first non-positive one. tau is floored at 1/log10(n)
// so antithetic series cannot report an unbounded ESS. A constant series
// reports ess = n with zero_variance set. Requires at least 10 values.
EssEstimate effective_sample_size(std::span<const double> x);

struct TraceSummary {
  std::size_t n = 0;
  double mean = 0;
  double sd = 0;
  double min = 0;
  double q25 = 0;
  double median = 0;
  double q75 = 0;
  double max = 0;
  double mc_std_error = 0;  // sd / sqrt(ess)
  EssEstimate ess;
  std::vector<double> acf;  // lags 0..min(n-1, 50)
};

TraceSummary summarize_trace(std::span<const double> x);

// Gelman-Rubin potential scale reduction over several equal-length chains
// (shorter chains are truncated to the shortest). 1 for constant input.
double potential_scale_reduction(std::span<const std::vector<double>> chains);

// Linear-interpolation quantile of unsorted data, p in [0, 1].
double quantile(std::vector<double> x, double p);

}  // namespace confmodel
