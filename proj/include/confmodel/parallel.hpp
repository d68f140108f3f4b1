#pragma once

#include <cstdint>
#include <exception>
#include <thread>
#include <type_traits>
#include <vector>

#include "confmodel/swap.hpp"

namespace confmodel {

// Share of `total` samples assigned to chain c of `chains`; earlier chains
// take the remainder.
inline std::uint64_t chain_share(std::uint64_t total, unsigned chains, unsigned c) {
  return total / chains + (c < total % chains ? 1 : 0);
}

// Runs `chains` independent chains (stream c for chain c) on their own
// threads, splitting cfg.n_samples between them, and maps every sample
// through f(chain, index, step_count, graph). Results are indexed by chain,
// so the merged order never depends on thread scheduling. The first exception
// in chain order is rethrown.
template <class F>
auto map_chains(const MultiGraph& g0, const ChainConfig& cfg, unsigned chains, F f) {
  using T = std::invoke_result_t<F&, unsigned, std::size_t, std::uint64_t, const MultiGraph&>;
  if (chains == 0) chains = 1;
  std::vector<std::vector<T>> out(chains);
  std::vector<std::exception_ptr> errors(chains);
  auto work = [&](unsigned c) {
    try {
      ChainConfig sub = cfg;
      sub.n_samples = chain_share(cfg.n_samples, chains, c);
      if (sub.n_samples == 0) return;
      out[c].reserve(sub.n_samples);
      run_chain(
          g0, sub,
          [&](std::size_t idx, std::uint64_t steps, const MultiGraph& g) {
            out[c].push_back(f(c, idx, steps, g));
          },
          c);
    } catch (...) {
      errors[c] = std::current_exception();
    }
  };
  if (chains == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(chains);
    for (unsigned c = 0; c < chains; ++c) threads.emplace_back(work, c);
    for (auto& t : threads) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace confmodel
