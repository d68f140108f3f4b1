#pragma once

#include <cstdint>

#include "confmodel/graph.hpp"
#include "confmodel/rng.hpp"

namespace confmodel {

// Pairing model: shuffle the 2M stubs and join consecutive entries. Uniform
// over stub-labeled loopy multigraphs. Throws InputError for an odd stub count.
MultiGraph stub_match(const DegreeSequence& k, Rng& rng);

struct RejectionResult {
  MultiGraph graph;
  std::uint64_t attempts = 0;  // stub matchings drawn, including the accepted one
};

// Repeats stub_match until the result lies in `s`. Accepted draws are uniform
// over the stub-labeled space. Throws SamplingExhausted after max_attempts.
RejectionResult rejection_sample(const DegreeSequence& k, const GraphSpace& s, Rng& rng,
                                 std::uint64_t max_attempts = 1'000'000);

}  // namespace confmodel
