#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "confmodel/graph.hpp"

namespace confmodel {

// Community assignment with dense ids 0..K-1.
class Partition {
 public:
  Partition() = default;
  // Arbitrary integer labels, relabeled densely in first-seen order.
  static Partition from_labels(std::span<const std::int64_t> labels);
  static Partition singletons(std::size_t n);
  static Partition single(std::size_t n);

  std::size_t size() const noexcept { return assignment_.size(); }
  std::uint32_t community_count() const noexcept { return k_; }
  std::uint32_t operator[](std::size_t v) const { return assignment_[v]; }
  std::span<const std::uint32_t> assignment() const noexcept { return assignment_; }
  std::vector<std::size_t> community_sizes() const;

  std::string to_string() const;  // "0,0,1,1"

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<std::uint32_t> assignment_;
  std::uint32_t k_ = 0;
};

// "vertex community" lines, vertex tokens resolved through graph.labels and
// community labels taken as arbitrary tokens. Every vertex must appear once.
Partition parse_partition(std::string_view text, const LabeledGraph& graph);

// Mutual information over the arithmetic mean of the two entropies. One
// trivial partition gives 0; two trivial partitions give 1.
double nmi(const Partition& p1, const Partition& p2);

}  // namespace confmodel
