#include "confmodel/enumerate.hpp"

#include "confmodel/errors.hpp"

namespace confmodel {

namespace {

BigInt factorial(std::uint64_t n) {
  BigInt out = 1;
  for (std::uint64_t i = 2; i <= n; ++i) out *= i;
  return out;
}

}  // namespace

Rational q_factor(const MultiGraph& g, const GraphSpace& s) {
  if (auto bad = find_space_violation(g, s)) {
    throw InputError("graph is not in the " + s.name() + " space: " + bad->reason);
  }
  BigInt numerator = 1;
  for (Vertex v = 0; v < g.vertex_count(); ++v) numerator *= factorial(g.degree(v));
  BigInt denominator = 1;
  for (const auto& [e, w] : g.multiplicities()) {
    denominator *= factorial(w);
    if (e.is_loop()) denominator <<= w;
  }
  return Rational(numerator, denominator);
}

BigInt pairing_count(std::uint64_t edge_count) {
  BigInt out = 1;
  for (std::uint64_t i = 1; i <= edge_count; ++i) out *= (2 * i - 1);
  return out;
}

Rational SpaceCensus::stub_total() const {
  Rational total = 0;
  for (const auto& q : stub_weights) total += q;
  return total;
}

std::optional<std::size_t> SpaceCensus::index_of(const CanonicalForm& form) const {
  auto it = index.find(form);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> SpaceCensus::index_of(const MultiGraph& g) const {
  if (g.vertex_count() != degrees.size()) return std::nullopt;
  return index_of(g.canonical_edges());
}

Rational SpaceCensus::probability(std::size_t i) const {
  if (space.labeling == Labeling::vertex) return Rational(1, static_cast<long long>(size()));
  return stub_weights[i] / stub_total();
}

namespace {

class Enumerator {
 public:
  Enumerator(const DegreeSequence& k, const GraphSpace& s, SpaceCensus& out)
      : space_(s), remaining_(k.begin(), k.end()), out_(out) {}

  void run() { extend(0, 0); }

 private:
  // Edges are emitted as (i, j), i <= j, in non-decreasing lexicographic
  // order: i is always the lowest vertex with stubs left, and its partners
  // never decrease. Each multiset therefore appears exactly once.
  void extend(Vertex i, Vertex min_partner) {
    while (i < remaining_.size() && remaining_[i] == 0) {
      ++i;
      min_partner = i;
    }
    if (i == remaining_.size()) {
      record();
      return;
    }
    min_partner = std::max(min_partner, i);
    for (Vertex j = min_partner; j < remaining_.size(); ++j) {
      if (j == i) {
        if (!space_.loops || remaining_[i] < 2) continue;
      } else if (remaining_[j] == 0) {
        continue;
      }
      // Without multiedges each pair (loops included) is used at most once.
      if (!space_.multiedges && !edges_.empty() && edges_.back() == Edge{i, j}) continue;
      edges_.push_back({i, j});
      --remaining_[i];
      --remaining_[j];
      extend(i, j);
      ++remaining_[i];
      ++remaining_[j];
      edges_.pop_back();
    }
  }

  void record() {
    MultiGraph g = MultiGraph::from_edges(remaining_.size(), edges_);
    CanonicalForm form = g.canonical_edges();
    if (out_.index.count(form)) return;
    out_.index.emplace(std::move(form), out_.graphs.size());
    out_.stub_weights.push_back(q_factor(g, space_));
    out_.graphs.push_back(std::move(g));
  }

  const GraphSpace& space_;
  std::vector<std::uint32_t> remaining_;
  std::vector<Edge> edges_;
  SpaceCensus& out_;
};

}  // namespace

SpaceCensus enumerate_space(const DegreeSequence& k, const GraphSpace& s, std::uint64_t max_stubs) {
  const std::uint64_t stubs = k.stub_count();
  if (stubs > max_stubs) throw EnumerationCapExceeded(stubs, max_stubs);
  k.edge_count();
  SpaceCensus census;
  census.space = s;
  census.degrees = k;
  Enumerator(k, s, census).run();
  return census;
}

}  // namespace confmodel
