#include "confmodel/assortativity.hpp"

#include "confmodel/errors.hpp"
#include "confmodel/rng.hpp"

namespace confmodel {

double degree_assortativity(const MultiGraph& g) {
  using i128 = int128_t;
  const i128 m = static_cast<i128>(g.edge_count());
  if (m == 0) throw UndefinedStatistic("degree assortativity is undefined for a graph with no edges");
  i128 sum_k2 = 0;
  i128 sum_k3 = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const i128 k = g.degree(v);
    sum_k2 += k * k;
    sum_k3 += k * k * k;
  }
  i128 cross = 0;
  for (const Edge& e : g.edges()) cross += static_cast<i128>(g.degree(e.a)) * g.degree(e.b);
  // Multiply numerator and denominator by 4M^2 to stay in integers.
  const i128 numerator = 4 * m * cross - sum_k2 * sum_k2;
  const i128 denominator = 2 * m * sum_k3 - sum_k2 * sum_k2;
  if (denominator == 0) {
    throw UndefinedStatistic("degree assortativity is undefined: all stubs have the same degree");
  }
  return static_cast<double>(static_cast<long double>(numerator) /
                             static_cast<long double>(denominator));
}

double trait_assortativity(const MultiGraph& g, std::span<const double> traits) {
  if (traits.size() != g.vertex_count()) {
    throw InputError("trait vector has " + std::to_string(traits.size()) + " entries for " +
                     std::to_string(g.vertex_count()) + " vertices");
  }
  const double m = static_cast<double>(g.edge_count());
  if (g.edge_count() == 0) throw UndefinedStatistic("trait assortativity is undefined for a graph with no edges");

  bool constant = true;
  bool have_first = false;
  double first = 0;
  long double weighted = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) == 0) continue;
    if (!have_first) {
      first = traits[v];
      have_first = true;
    } else if (traits[v] != first) {
      constant = false;
    }
    weighted += static_cast<long double>(g.degree(v)) * traits[v];
  }
  if (constant) throw UndefinedStatistic("trait assortativity is undefined: traits are constant across stubs");

  const long double mu = weighted / (2 * m);
  long double var = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const long double d = traits[v] - mu;
    var += static_cast<long double>(g.degree(v)) * d * d;
  }
  var /= 2 * m;
  long double cov = 0;
  for (const Edge& e : g.edges()) cov += (traits[e.a] - mu) * (traits[e.b] - mu);
  cov /= m;
  if (var <= 0) throw UndefinedStatistic("trait assortativity is undefined: zero trait variance");
  return static_cast<double>(cov / var);
}

}  // namespace confmodel
