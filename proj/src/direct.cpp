#include "confmodel/direct.hpp"

#include "confmodel/errors.hpp"

namespace confmodel {

MultiGraph stub_match(const DegreeSequence& k, Rng& rng) {
  const std::uint64_t m = k.edge_count();
  std::vector<Vertex> stubs;
  stubs.reserve(2 * m);
  for (Vertex v = 0; v < k.size(); ++v) stubs.insert(stubs.end(), k[v], v);
  rng.shuffle(stubs.begin(), stubs.end());
  MultiGraph g(k.size());
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) g.add_edge(stubs[i], stubs[i + 1]);
  return g;
}

RejectionResult rejection_sample(const DegreeSequence& k, const GraphSpace& s, Rng& rng,
                                 std::uint64_t max_attempts) {
  k.edge_count();
  for (std::uint64_t attempt = 1; attempt <= max_attempts; ++attempt) {
    MultiGraph g = stub_match(k, rng);
    if (validate_in_space(g, s)) return {std::move(g), attempt};
  }
  throw SamplingExhausted(max_attempts);
}

}  // namespace confmodel
