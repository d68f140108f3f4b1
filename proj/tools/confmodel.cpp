// Command-line front end: sampling, enumeration, assortativity, null tests,
// modularity and chain diagnostics.

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "confmodel/assortativity.hpp"
#include "confmodel/diagnostics.hpp"
#include "confmodel/direct.hpp"
#include "confmodel/enumerate.hpp"
#include "confmodel/errors.hpp"
#include "confmodel/modularity.hpp"
#include "confmodel/nulltest.hpp"
#include "confmodel/parallel.hpp"
#include "confmodel/partition.hpp"

#ifndef CONFMODEL_VERSION
#define CONFMODEL_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace confmodel;

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kInput = 2, kUndefined = 3, kCap = 4 };

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) {
    out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return out.str();
}

// ---- run manifest ----

struct Manifest {
  std::string command;
  std::vector<std::string> argv;
  json inputs = json::array();
  json space;
  json config;
  std::vector<std::string> outputs;

  void add_input(const std::string& role, const std::string& path, const std::string& content) {
    inputs.push_back({{"role", role}, {"path", path}, {"sha256", sha256_hex(content)}});
  }

  json to_json() const {
    json j;
    j["tool"] = "confmodel";
    j["version"] = CONFMODEL_VERSION;
    j["command"] = command;
    j["argv"] = argv;
    j["inputs"] = inputs;
    if (!space.is_null()) j["space"] = space;
    if (!config.is_null()) j["config"] = config;
    j["outputs"] = outputs;
    return j;
  }
};

json space_json(const GraphSpace& s) {
  return {{"loops", s.loops},
          {"multiedges", s.multiedges},
          {"labeling", std::string(to_string(s.labeling))},
          {"name", s.name()}};
}

json chain_json(const ChainConfig& c, std::uint64_t m, unsigned chains) {
  return {{"algorithm", std::string(to_string(c.algorithm))},
          {"burn_in", c.resolved_burn_in(m)},
          {"spacing", c.resolved_spacing(m)},
          {"n_samples", c.n_samples},
          {"seed", c.seed},
          {"triangle_loop_prob", c.triangle_loop_prob},
          {"chains", chains},
          {"rng", "mt19937_64, chain c seeded with splitmix64(seed ^ splitmix64(c + 1))"}};
}

// ---- shared options ----

struct GraphOptions {
  std::string degrees;
  std::string input;
  std::string space;
  std::string labeling;
  CLI::Option* loops = nullptr;
  CLI::Option* no_loops = nullptr;
  CLI::Option* multi = nullptr;
  CLI::Option* no_multi = nullptr;
};

struct ChainOptions {
  std::string algorithm;
  std::uint64_t samples = 1000;
  std::optional<std::uint64_t> spacing;
  std::optional<std::uint64_t> burnin;
  std::uint64_t seed = 1;
  unsigned chains = 1;
  std::optional<double> triangle;
  std::uint64_t progress = 0;
};

void add_graph_options(CLI::App* app, GraphOptions& o, bool need_space) {
  auto* deg = app->add_option("--degrees", o.degrees, "degree sequence, e.g. 2,2,1,1");
  auto* in = app->add_option("--input", o.input, "edge list file ('u v' or 'u v w' per line)");
  deg->excludes(in);
  if (!need_space) return;
  app->add_option("--space", o.space, "simple|loopy|multi|loopy-multi (alternative to the flags below)")
      ->check(CLI::IsMember({"simple", "loopy", "multi", "loopy-multi"}));
  o.loops = app->add_flag("--loops", "self-loops allowed");
  o.no_loops = app->add_flag("--no-loops", "self-loops forbidden");
  o.multi = app->add_flag("--multiedges", "multiedges allowed");
  o.no_multi = app->add_flag("--no-multiedges", "multiedges forbidden");
  o.loops->excludes(o.no_loops);
  o.multi->excludes(o.no_multi);
  app->add_option("--labeling", o.labeling, "stub|vertex")->check(CLI::IsMember({"stub", "vertex"}));
}

void add_chain_options(CLI::App* app, ChainOptions& o) {
  app->add_option("--algorithm", o.algorithm, "alg1 (stub) | alg2 (vertex basic) | alg3 (vertex MH)");
  app->add_option("-n,--samples", o.samples, "number of samples")->check(CLI::PositiveNumber);
  app->add_option("--spacing", o.spacing, "swap attempts between samples (default 2M)");
  app->add_option("--burnin", o.burnin, "swap attempts before the first sample (default 20 M ln(M+1))");
  app->add_option("--seed", o.seed, "64-bit seed");
  app->add_option("--chains", o.chains, "independent chains run in parallel")->check(CLI::PositiveNumber);
  app->add_option("--triangle-loops", o.triangle,
                  "enable triangle-loop moves with this probability (loopy graph spaces)")
      ->expected(0, 1)
      ->default_str(std::to_string(ChainConfig::kDefaultTriangleLoopProb));
  app->add_option("--progress", o.progress, "progress line to stderr every N steps");
}

GraphSpace resolve_space(const GraphOptions& o) {
  if (o.labeling.empty()) {
    throw InputError("--labeling stub|vertex is required; the labeling is a modeling choice and is never inferred");
  }
  const Labeling l = parse_labeling(o.labeling);
  const bool any_flag = o.loops->count() || o.no_loops->count() || o.multi->count() || o.no_multi->count();
  if (!o.space.empty()) {
    if (any_flag) throw InputError("use either --space or the --loops/--multiedges flags, not both");
    return GraphSpace::parse(o.space, l);
  }
  const bool loops_set = o.loops->count() || o.no_loops->count();
  const bool multi_set = o.multi->count() || o.no_multi->count();
  if (!loops_set || !multi_set) {
    throw InputError(
        "declare the graph space: --loops|--no-loops and --multiedges|--no-multiedges (or --space); "
        "the space is never inferred from the data");
  }
  return GraphSpace{o.loops->count() > 0, o.multi->count() > 0, l};
}

struct LoadedGraph {
  MultiGraph graph;
  DegreeSequence degrees;
  std::vector<std::string> labels;
  bool from_file = false;
};

// Without `need_start` a --degrees input only yields the sequence; direct
// samplers need no realization and must not fail on one.
LoadedGraph load_graph(const GraphOptions& o, const std::optional<GraphSpace>& space, Manifest& manifest,
                       bool need_start = true) {
  LoadedGraph out;
  if (!o.input.empty()) {
    const std::string text = slurp(o.input);
    manifest.add_input("graph", o.input, text);
    LabeledGraph lg = parse_edge_list(text);
    out.graph = std::move(lg.graph);
    out.labels = std::move(lg.labels);
    out.from_file = true;
    out.degrees = out.graph.degrees();
    if (space) {
      if (auto bad = find_space_violation(out.graph, *space)) {
        throw InputError("input graph is not in the " + space->name() + " space: edge " +
                         out.labels[bad->edge.a] + " " + out.labels[bad->edge.b] + " (multiplicity " +
                         std::to_string(bad->multiplicity) + "): " + bad->reason);
      }
    }
    return out;
  }
  if (o.degrees.empty()) throw InputError("one of --degrees or --input is required");
  const DegreeSequence k = DegreeSequence::parse(o.degrees);
  k.edge_count();
  out.degrees = k;
  if (need_start) out.graph = initial_graph(k, space.value_or(GraphSpace::loopy_multigraph(Labeling::stub)));
  else out.graph = MultiGraph(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) out.labels.push_back(std::to_string(i));
  return out;
}

ChainConfig resolve_chain(const ChainOptions& o, const GraphSpace& s) {
  ChainConfig c;
  c.space = s;
  c.algorithm = o.algorithm.empty() ? default_algorithm(s.labeling) : parse_algorithm(o.algorithm);
  c.burn_in = o.burnin;
  c.spacing = o.spacing;
  c.n_samples = o.samples;
  c.seed = o.seed;
  c.progress_every = o.progress;
  if (o.triangle) {
    c.triangle_loop_prob = std::isnan(*o.triangle) ? ChainConfig::kDefaultTriangleLoopProb : *o.triangle;
  }
  c.validate();
  return c;
}

// ---- per-sample statistics ----

struct StatContext {
  std::vector<double> traits;
  std::optional<Partition> partition;
};

GraphStatistic make_statistic(const std::string& name, const StatContext& ctx) {
  if (name == "degree-assortativity" || name == "assortativity") {
    return [](const MultiGraph& g) { return degree_assortativity(g); };
  }
  if (name == "trait-assortativity") {
    if (ctx.traits.empty()) throw InputError("trait-assortativity needs --traits FILE");
    auto traits = ctx.traits;
    return [traits](const MultiGraph& g) { return trait_assortativity(g, traits); };
  }
  if (name == "self-loops") {
    return [](const MultiGraph& g) { return static_cast<double>(g.self_loop_count()); };
  }
  if (name == "multiedge-excess") {
    return [](const MultiGraph& g) { return static_cast<double>(multiedge_excess(g)); };
  }
  if (name == "max-multiplicity") {
    return [](const MultiGraph& g) { return static_cast<double>(g.max_multiplicity()); };
  }
  if (name == "connected") {
    return [](const MultiGraph& g) { return is_connected(g) ? 1.0 : 0.0; };
  }
  if (name == "edges") {
    return [](const MultiGraph& g) { return static_cast<double>(g.edge_count()); };
  }
  if (name == "modularity") {
    if (!ctx.partition) throw InputError("the modularity statistic needs --partition FILE");
    auto p = *ctx.partition;
    return [p](const MultiGraph& g) { return modularity(g, p); };
  }
  throw InputError("unknown statistic '" + name +
                   "' (degree-assortativity, trait-assortativity, self-loops, multiedge-excess, "
                   "max-multiplicity, connected, edges, modularity)");
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// ---- output ----

struct Output {
  std::string dir;
  Manifest* manifest = nullptr;

  bool to_files() const { return !dir.empty(); }

  void write(const std::string& name, const std::string& content) {
    fs::create_directories(dir);
    std::ofstream out(fs::path(dir) / name, std::ios::binary);
    if (!out) throw InputError("cannot write '" + (fs::path(dir) / name).string() + "'");
    out << content;
    manifest->outputs.push_back(name);
  }

  void finish() {
    if (!to_files()) return;
    std::ofstream out(fs::path(dir) / "manifest.json", std::ios::binary);
    out << manifest->to_json().dump(2) << '\n';
  }
};

void emit_report(Output& out, const std::string& name, json report) {
  if (out.to_files()) out.manifest->outputs.push_back(name);
  report["manifest"] = out.manifest->to_json();
  const std::string text = report.dump(2) + "\n";
  if (out.to_files()) {
    fs::create_directories(out.dir);
    std::ofstream f(fs::path(out.dir) / name, std::ios::binary);
    f << text;
  } else {
    std::cout << text;
  }
}

std::vector<double> read_traits(const std::string& path, const LoadedGraph& g, Manifest& manifest) {
  const std::string text = slurp(path);
  manifest.add_input("traits", path, text);
  LabeledGraph lg{g.graph, g.labels};
  return read_vertex_values(text, lg);
}

Partition read_partition_file(const std::string& path, const LoadedGraph& g, Manifest& manifest) {
  const std::string text = slurp(path);
  manifest.add_input("partition", path, text);
  LabeledGraph lg{g.graph, g.labels};
  return parse_partition(text, lg);
}

json partition_json(const Partition& p, const std::vector<std::string>& labels) {
  json j = json::object();
  for (std::size_t v = 0; v < p.size(); ++v) j[labels[v]] = p[v];
  return j;
}

json histogram_json(const std::vector<double>& values, std::size_t bins) {
  json out = json::array();
  if (values.empty() || bins == 0) return out;
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  double lo = *lo_it, hi = *hi_it;
  if (hi == lo) {
    lo -= 0.5;
    hi += 0.5;
  }
  std::vector<std::uint64_t> counts(bins, 0);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (double v : values) {
    auto b = static_cast<std::size_t>((v - lo) / width);
    ++counts[std::min(b, bins - 1)];
  }
  for (std::size_t b = 0; b < bins; ++b) {
    out.push_back({{"lo", lo + width * static_cast<double>(b)},
                   {"hi", lo + width * static_cast<double>(b + 1)},
                   {"count", counts[b]}});
  }
  return out;
}

std::string histogram_csv(const json& hist) {
  std::string csv = "bin_lo,bin_hi,count\n";
  for (const auto& b : hist) {
    csv += format_double(b["lo"].get<double>()) + "," + format_double(b["hi"].get<double>()) + "," +
           std::to_string(b["count"].get<std::uint64_t>()) + "\n";
  }
  return csv;
}

// ---- commands ----

struct SampleCommand {
  GraphOptions graph;
  ChainOptions chain;
  std::string method = "mcmc";
  std::vector<std::string> stats;
  std::string traits;
  std::string partition;
  std::uint64_t max_attempts = 1'000'000;
};

int run_sample(SampleCommand& c, Output& out) {
  Manifest& man = *out.manifest;
  const GraphSpace space = resolve_space(c.graph);
  LoadedGraph g = load_graph(c.graph, space, man, c.method == "mcmc");
  man.space = space_json(space);

  StatContext ctx;
  if (!c.traits.empty()) ctx.traits = read_traits(c.traits, g, man);
  if (!c.partition.empty()) ctx.partition = read_partition_file(c.partition, g, man);
  std::vector<GraphStatistic> stats;
  for (const auto& s : c.stats) stats.push_back(make_statistic(s, ctx));

  struct Row {
    std::uint64_t step = 0;
    std::vector<double> values;
    std::string edges;
  };
  auto make_row = [&](std::uint64_t step, const MultiGraph& sample) {
    Row r;
    r.step = step;
    if (stats.empty()) {
      r.edges = to_edge_list(sample);
    } else {
      for (const auto& s : stats) r.values.push_back(s(sample));
    }
    return r;
  };

  std::vector<std::vector<Row>> rows;
  if (c.method == "mcmc") {
    const ChainConfig cfg = resolve_chain(c.chain, space);
    man.config = chain_json(cfg, g.graph.edge_count(), c.chain.chains);
    rows = map_chains(g.graph, cfg, c.chain.chains,
                      [&](unsigned, std::size_t, std::uint64_t step, const MultiGraph& s) {
                        return make_row(step, s);
                      });
  } else if (c.method == "stub-match" || c.method == "rejection") {
    if (c.method == "stub-match" && !(space.loops && space.multiedges && space.labeling == Labeling::stub)) {
      throw InputError("stub matching samples the stub-labeled loopy multigraph space; declare "
                       "--loops --multiedges --labeling stub, or use --method rejection");
    }
    if (c.method == "rejection" && space.labeling == Labeling::vertex && !space.is_simple()) {
      throw InputError("rejection sampling is uniform over stub-labeled graphs; use --labeling stub "
                       "(or a simple space, where the labelings coincide)");
    }
    const DegreeSequence& k = g.degrees;
    const unsigned chains = std::max(1U, c.chain.chains);
    man.config = {{"method", c.method}, {"n_samples", c.chain.samples}, {"seed", c.chain.seed},
                  {"chains", chains}, {"max_attempts", c.max_attempts}};
    rows.resize(chains);
    for (unsigned ch = 0; ch < chains; ++ch) {
      Rng rng = Rng::for_stream(c.chain.seed, ch);
      const std::uint64_t share = chain_share(c.chain.samples, chains, ch);
      for (std::uint64_t i = 0; i < share; ++i) {
        if (c.method == "stub-match") {
          rows[ch].push_back(make_row(i + 1, stub_match(k, rng)));
        } else {
          auto res = rejection_sample(k, space, rng, c.max_attempts);
          rows[ch].push_back(make_row(res.attempts, res.graph));
        }
      }
    }
  } else {
    throw InputError("unknown --method '" + c.method + "' (mcmc|stub-match|rejection)");
  }

  const std::string step_header = c.method == "rejection" ? "attempts" : "step_count";
  if (!stats.empty()) {
    std::string csv = "sample_index," + step_header;
    for (const auto& s : c.stats) csv += "," + s;
    csv += "\n";
    std::size_t index = 0;
    for (const auto& chain_rows : rows) {
      for (const auto& r : chain_rows) {
        csv += std::to_string(index++) + "," + std::to_string(r.step);
        for (double v : r.values) csv += "," + format_double(v);
        csv += "\n";
      }
    }
    if (out.to_files()) {
      out.write("samples.csv", csv);
    } else {
      std::cout << csv;
    }
  } else {
    std::size_t index = 0;
    for (const auto& chain_rows : rows) {
      for (const auto& r : chain_rows) {
        char name[64];
        std::snprintf(name, sizeof name, "sample_%06zu.edges", index);
        if (out.to_files()) {
          out.write(name, r.edges);
        } else {
          std::cout << "# sample " << index << " " << step_header << " " << r.step << "\n" << r.edges;
        }
        ++index;
      }
    }
  }
  if (out.to_files() && g.from_file) {
    std::string labels;
    for (std::size_t v = 0; v < g.labels.size(); ++v) labels += std::to_string(v) + " " + g.labels[v] + "\n";
    out.write("labels.txt", labels);
  }
  out.finish();
  return kOk;
}

struct EnumerateCommand {
  GraphOptions graph;
  std::uint64_t cap = kDefaultEnumerationCap;
};

int run_enumerate(EnumerateCommand& c, Output& out) {
  Manifest& man = *out.manifest;
  const GraphSpace space = resolve_space(c.graph);
  if (c.graph.degrees.empty()) throw InputError("enumerate needs --degrees");
  const DegreeSequence k = DegreeSequence::parse(c.graph.degrees);
  man.space = space_json(space);
  man.config = {{"cap_stubs", c.cap}};
  const SpaceCensus census = enumerate_space(k, space, c.cap);

  json graphs = json::array();
  std::size_t with_loops = 0, simple = 0, connected = 0;
  Rational simple_stub = 0;
  for (std::size_t i = 0; i < census.size(); ++i) {
    const MultiGraph& g = census.graphs[i];
    json edges = json::array();
    for (const auto& [e, w] : g.multiplicities()) edges.push_back({e.a, e.b, w});
    const bool is_simple = validate_in_space(g, GraphSpace::simple());
    with_loops += g.self_loop_count() > 0;
    simple += is_simple;
    connected += is_connected(g);
    if (is_simple) simple_stub += census.stub_weights[i];
    graphs.push_back({{"edges", edges},
                      {"q", census.stub_weights[i].str()},
                      {"self_loops", g.self_loop_count()},
                      {"simple", is_simple},
                      {"connected", is_connected(g)}});
  }
  json report;
  report["degrees"] = k.to_string();
  report["space"] = space_json(space);
  report["vertex_labeled_count"] = census.size();
  report["stub_labeled_count"] = census.stub_total().str();
  report["with_self_loops"] = with_loops;
  report["simple_count"] = simple;
  report["simple_stub_labeled_count"] = simple_stub.str();
  report["connected_count"] = connected;
  report["graphs"] = graphs;
  emit_report(out, "census.json", report);
  out.finish();
  return kOk;
}

struct AssortCommand {
  GraphOptions graph;
  std::string mode = "degree";
  std::string traits;
};

int run_assort(AssortCommand& c, Output& out) {
  Manifest& man = *out.manifest;
  LoadedGraph g = load_graph(c.graph, std::nullopt, man);
  double r = 0;
  if (c.mode == "degree") {
    r = degree_assortativity(g.graph);
  } else if (c.mode == "trait") {
    if (c.traits.empty()) throw InputError("--mode trait needs --traits FILE");
    r = trait_assortativity(g.graph, read_traits(c.traits, g, man));
  } else {
    throw InputError("unknown --mode '" + c.mode + "' (degree|trait)");
  }
  json report;
  report["statistic"] = c.mode + "-assortativity";
  report["value"] = r;
  report["vertices"] = g.graph.vertex_count();
  report["edges"] = g.graph.edge_count();
  emit_report(out, "assortativity.json", report);
  out.finish();
  return kOk;
}

struct NullTestCommand {
  GraphOptions graph;
  ChainOptions chain;
  std::string stat = "degree-assortativity";
  std::string tail = "upper";
  std::string traits;
  std::string partition;
  std::size_t bins = 20;
};

int run_nulltest(NullTestCommand& c, Output& out) {
  Manifest& man = *out.manifest;
  const GraphSpace space = resolve_space(c.graph);
  LoadedGraph g = load_graph(c.graph, space, man);
  man.space = space_json(space);
  StatContext ctx;
  if (!c.traits.empty()) ctx.traits = read_traits(c.traits, g, man);
  if (!c.partition.empty()) ctx.partition = read_partition_file(c.partition, g, man);
  const GraphStatistic stat = make_statistic(c.stat, ctx);
  const Tail tail = parse_tail(c.tail);
  const ChainConfig cfg = resolve_chain(c.chain, space);
  man.config = chain_json(cfg, g.graph.edge_count(), c.chain.chains);

  const NullTestReport r = null_test(g.graph, cfg, stat, tail, c.chain.chains);
  const json hist = histogram_json(r.null_values, c.bins);
  std::vector<double> sorted = r.null_values;
  std::sort(sorted.begin(), sorted.end());
  if (out.to_files()) {
    std::string csv = "sample_index,value\n";
    for (std::size_t i = 0; i < r.null_values.size(); ++i) {
      csv += std::to_string(i) + "," + format_double(r.null_values[i]) + "\n";
    }
    out.write("null.csv", csv);
    out.write("histogram.csv", histogram_csv(hist));
  }
  json report;
  report["statistic"] = c.stat;
  report["observed"] = r.observed;
  report["tail"] = std::string(to_string(r.tail));
  report["p_value"] = r.p_value;
  report["samples"] = r.sample_count;
  report["null_summary"] = {{"mean", std::accumulate(sorted.begin(), sorted.end(), 0.0) /
                                         static_cast<double>(sorted.size())},
                            {"q25", quantile(sorted, 0.25)},
                            {"median", quantile(sorted, 0.5)},
                            {"q75", quantile(sorted, 0.75)},
                            {"min", sorted.front()},
                            {"max", sorted.back()}};
  report["histogram"] = hist;
  emit_report(out, "nulltest.json", report);
  out.finish();
  return kOk;
}

struct ModularityCommand {
  GraphOptions graph;
  ChainOptions chain;
  std::string partition;
  std::string maximize;
  std::string null_model = "stub-loopy-multi";
};

Partition random_partition(std::size_t n, std::uint32_t k, Rng& rng) {
  std::vector<std::int64_t> labels(n);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  rng.shuffle(order.begin(), order.end());
  for (std::size_t i = 0; i < n; ++i) {
    labels[order[i]] = i < k ? static_cast<std::int64_t>(i) : static_cast<std::int64_t>(rng.below(k));
  }
  return Partition::from_labels(labels);
}

int run_modularity(ModularityCommand& c, Output& out) {
  Manifest& man = *out.manifest;
  json report;
  std::optional<GraphSpace> space;
  if (c.null_model == "estimated") space = resolve_space(c.graph);
  LoadedGraph g = load_graph(c.graph, space, man);

  std::optional<DegreeClassMatrix> matrix;
  if (c.null_model == "estimated") {
    const ChainConfig cfg = resolve_chain(c.chain, *space);
    man.space = space_json(*space);
    man.config = chain_json(cfg, g.graph.edge_count(), 1);
    matrix = expected_degree_matrix(g.graph, cfg);
    json cells = json::array();
    for (std::size_t a = 0; a < matrix->classes(); ++a) {
      for (std::size_t b = a; b < matrix->classes(); ++b) {
        cells.push_back({{"k", matrix->degrees[a]},
                         {"k_prime", matrix->degrees[b]},
                         {"expected", matrix->at(a, b)},
                         {"std_error", matrix->error_at(a, b)}});
      }
    }
    report["degree_class_matrix"] = {{"samples", matrix->samples}, {"cells", cells}};
  } else if (c.null_model != "stub-loopy-multi") {
    throw InputError("unknown --null '" + c.null_model + "' (stub-loopy-multi|estimated)");
  }
  const ModularityObjective objective = matrix ? ModularityObjective::generic(g.graph, *matrix)
                                               : ModularityObjective::standard(g.graph);
  report["null"] = c.null_model;

  std::optional<Partition> given;
  if (!c.partition.empty()) given = read_partition_file(c.partition, g, man);

  if (c.maximize.empty()) {
    if (!given) throw InputError("modularity needs --partition FILE or --maximize kl:K|greedy");
    report["modularity"] = objective.evaluate(*given);
    report["communities"] = given->community_count();
  } else if (c.maximize == "greedy") {
    const auto trajectory = greedy_agglomeration(objective);
    std::size_t best = 0;
    json steps = json::array();
    for (std::size_t i = 0; i < trajectory.size(); ++i) {
      if (trajectory[i].objective > trajectory[best].objective) best = i;
      steps.push_back({{"communities", trajectory[i].partition.community_count()},
                       {"modularity", trajectory[i].objective}});
    }
    report["method"] = "greedy";
    report["best_modularity"] = trajectory[best].objective;
    report["communities"] = trajectory[best].partition.community_count();
    report["partition"] = partition_json(trajectory[best].partition, g.labels);
    report["trajectory"] = steps;
  } else if (c.maximize.rfind("kl:", 0) == 0) {
    std::uint32_t k = 0;
    try {
      k = static_cast<std::uint32_t>(std::stoul(c.maximize.substr(3)));
    } catch (const std::exception&) {
      throw InputError("--maximize kl:K needs an integer K");
    }
    Partition init;
    if (given) {
      init = *given;
    } else {
      if (k < 2 || k > g.graph.vertex_count()) {
        throw InputError("K must lie in [2, n] for local search");
      }
      Rng rng(c.chain.seed);
      init = random_partition(g.graph.vertex_count(), k, rng);
    }
    const auto result = kl_local_search(objective, k, init);
    report["method"] = "kl";
    report["k"] = k;
    report["initial_modularity"] = objective.evaluate(init);
    report["best_modularity"] = result.objective;
    report["iterations"] = result.iterations;
    report["partition"] = partition_json(result.partition, g.labels);
  } else {
    throw InputError("unknown --maximize '" + c.maximize + "' (kl:K|greedy)");
  }
  emit_report(out, "modularity.json", report);
  out.finish();
  return kOk;
}

struct DiagnoseCommand {
  std::vector<std::string> inputs;
  std::vector<std::string> columns;
  std::size_t split = 0;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;
};

CsvTable parse_csv(const std::string& text, const std::string& path) {
  CsvTable t;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (t.header.empty()) {
      t.header = fields;
      t.columns.resize(fields.size());
      continue;
    }
    if (fields.size() != t.header.size()) {
      throw ParseError(line_no, path + ": expected " + std::to_string(t.header.size()) + " fields");
    }
    for (std::size_t i = 0; i < fields.size(); ++i) {
      try {
        std::size_t used = 0;
        t.columns[i].push_back(std::stod(fields[i], &used));
        if (used != fields[i].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ParseError(line_no, path + ": '" + fields[i] + "' is not a number");
      }
    }
  }
  if (t.header.empty()) throw InputError(path + ": empty CSV");
  return t;
}

json summary_json(const TraceSummary& s) {
  return {{"n", s.n},
          {"mean", s.mean},
          {"sd", s.sd},
          {"min", s.min},
          {"q25", s.q25},
          {"median", s.median},
          {"q75", s.q75},
          {"max", s.max},
          {"ess", s.ess.ess},
          {"tau", s.ess.tau},
          {"truncation_lag", s.ess.truncation_lag},
          {"zero_variance", s.ess.zero_variance},
          {"mc_std_error", s.mc_std_error},
          {"acf", s.acf}};
}

int run_diagnose(DiagnoseCommand& c, Output& out) {
  Manifest& man = *out.manifest;
  std::vector<CsvTable> tables;
  for (const auto& path : c.inputs) {
    const std::string text = slurp(path);
    man.add_input("stats", path, text);
    tables.push_back(parse_csv(text, path));
  }
  std::vector<std::string> columns = c.columns;
  if (columns.empty()) {
    for (const auto& h : tables.front().header) {
      if (h != "sample_index" && h != "step_count" && h != "attempts") columns.push_back(h);
    }
  }
  json report;
  report["files"] = c.inputs;
  json per_column = json::object();
  for (const auto& col : columns) {
    std::vector<std::vector<double>> chains;
    for (std::size_t t = 0; t < tables.size(); ++t) {
      auto it = std::find(tables[t].header.begin(), tables[t].header.end(), col);
      if (it == tables[t].header.end()) throw InputError(c.inputs[t] + ": no column '" + col + "'");
      chains.push_back(tables[t].columns[static_cast<std::size_t>(it - tables[t].header.begin())]);
    }
    if (c.split > 1) {
      if (chains.size() != 1) throw InputError("--split applies to a single input file");
      const auto all = chains.front();
      chains.clear();
      const std::size_t len = all.size() / c.split;
      for (std::size_t s = 0; s < c.split; ++s) {
        chains.emplace_back(all.begin() + static_cast<std::ptrdiff_t>(s * len),
                            all.begin() + static_cast<std::ptrdiff_t>((s + 1) * len));
      }
    }
    std::vector<double> pooled;
    json per_chain = json::array();
    for (const auto& ch : chains) {
      pooled.insert(pooled.end(), ch.begin(), ch.end());
      if (chains.size() > 1) per_chain.push_back(summary_json(summarize_trace(ch)));
    }
    json entry = summary_json(summarize_trace(pooled));
    if (chains.size() > 1) {
      entry["chains"] = per_chain;
      entry["potential_scale_reduction"] = potential_scale_reduction(chains);
    }
    per_column[col] = entry;
  }
  report["columns"] = per_column;
  emit_report(out, "diagnostics.json", report);
  out.finish();
  return kOk;
}

int fail(int code, const std::string& kind, const std::string& what) {
  std::cerr << "confmodel: " << kind << ": " << what << "\n";
  return code;
}

int run(std::vector<std::string> args, const std::optional<json>& replay);

int replay_manifest(const std::string& path, const std::string& out_override) {
  const json m = json::parse(slurp(path));
  std::vector<std::string> args = m.at("argv").get<std::vector<std::string>>();
  for (const auto& input : m.at("inputs")) {
    const std::string file = input.at("path").get<std::string>();
    if (sha256_hex(slurp(file)) != input.at("sha256").get<std::string>()) {
      throw InputError("input '" + file + "' no longer matches the manifest digest");
    }
  }
  if (!out_override.empty()) {
    auto it = std::find(args.begin(), args.end(), "--out");
    if (it != args.end() && it + 1 != args.end()) {
      *(it + 1) = out_override;
    } else {
      args.push_back("--out");
      args.push_back(out_override);
    }
  }
  return run(args, m);
}

int run(std::vector<std::string> args, const std::optional<json>& replay) {
  CLI::App app{"Configuration-model sampling, null-model tests and modularity", "confmodel"};
  app.require_subcommand(0, 1);
  app.set_version_flag("--version", CONFMODEL_VERSION);
  std::string from_manifest;
  std::string out_dir;
  app.add_option("--from-manifest", from_manifest, "re-run the command recorded in a manifest");
  app.add_option("--out", out_dir, "output directory (with --from-manifest: overrides the recorded one)");

  SampleCommand sample;
  auto* sample_cmd = app.add_subcommand("sample", "draw graphs or statistics");
  add_graph_options(sample_cmd, sample.graph, true);
  add_chain_options(sample_cmd, sample.chain);
  sample_cmd->add_option("--method", sample.method, "mcmc|stub-match|rejection");
  sample_cmd->add_option("--stat", sample.stats, "statistic(s) to record instead of graphs")->delimiter(',');
  sample_cmd->add_option("--traits", sample.traits, "vertex trait file ('vertex value' lines)");
  sample_cmd->add_option("--partition", sample.partition, "partition file ('vertex community' lines)");
  sample_cmd->add_option("--max-attempts", sample.max_attempts, "rejection sampling attempt cap");
  sample_cmd->add_option("--out", out_dir, "output directory");

  EnumerateCommand enumerate;
  auto* enum_cmd = app.add_subcommand("enumerate", "list every graph of a small space");
  add_graph_options(enum_cmd, enumerate.graph, true);
  enum_cmd->add_option("--cap", enumerate.cap, "largest stub count to enumerate");
  enum_cmd->add_option("--out", out_dir, "output directory");

  AssortCommand assort;
  auto* assort_cmd = app.add_subcommand("assort", "degree or trait assortativity of a graph");
  add_graph_options(assort_cmd, assort.graph, false);
  assort_cmd->add_option("--mode", assort.mode, "degree|trait");
  assort_cmd->add_option("--traits", assort.traits, "vertex trait file");
  assort_cmd->add_option("--out", out_dir, "output directory");

  NullTestCommand nulltest;
  auto* null_cmd = app.add_subcommand("nulltest", "compare a statistic against sampled null graphs");
  add_graph_options(null_cmd, nulltest.graph, true);
  add_chain_options(null_cmd, nulltest.chain);
  null_cmd->add_option("--stat", nulltest.stat, "statistic to test");
  null_cmd->add_option("--tail", nulltest.tail, "upper|lower|two");
  null_cmd->add_option("--traits", nulltest.traits, "vertex trait file");
  null_cmd->add_option("--partition", nulltest.partition, "partition file");
  null_cmd->add_option("--hist-bins", nulltest.bins, "histogram bins");
  null_cmd->add_option("--out", out_dir, "output directory");

  ModularityCommand modcmd;
  auto* mod_cmd = app.add_subcommand("modularity", "evaluate or maximize modularity");
  add_graph_options(mod_cmd, modcmd.graph, true);
  add_chain_options(mod_cmd, modcmd.chain);
  mod_cmd->add_option("--partition", modcmd.partition, "partition file to evaluate or start from");
  mod_cmd->add_option("--maximize", modcmd.maximize, "kl:K | greedy");
  mod_cmd->add_option("--null", modcmd.null_model, "stub-loopy-multi | estimated");
  mod_cmd->add_option("--out", out_dir, "output directory");

  DiagnoseCommand diagnose;
  auto* diag_cmd = app.add_subcommand("diagnose", "autocorrelation, ESS and chain agreement");
  diag_cmd->add_option("--input", diagnose.inputs, "statistics CSV (repeat for several chains)")->required();
  diag_cmd->add_option("--column", diagnose.columns, "columns to analyse (default: all statistics)");
  diag_cmd->add_option("--split", diagnose.split, "treat one file as this many consecutive chains");
  diag_cmd->add_option("--out", out_dir, "output directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInput;
  }

  if (!from_manifest.empty()) {
    if (replay) throw InputError("a manifest cannot replay another manifest");
    if (!app.get_subcommands().empty()) throw InputError("--from-manifest takes no subcommand");
    return replay_manifest(from_manifest, out_dir);
  }
  if (app.get_subcommands().empty()) {
    std::cout << app.help();
    return kInput;
  }

  Manifest manifest;
  manifest.argv = args;
  Output out{out_dir, &manifest};
  CLI::App* cmd = app.get_subcommands().front();
  manifest.command = cmd->get_name();
  if (cmd == sample_cmd) return run_sample(sample, out);
  if (cmd == enum_cmd) return run_enumerate(enumerate, out);
  if (cmd == assort_cmd) return run_assort(assort, out);
  if (cmd == null_cmd) return run_nulltest(nulltest, out);
  if (cmd == mod_cmd) return run_modularity(modcmd, out);
  return run_diagnose(diagnose, out);
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return run(args, std::nullopt);
  } catch (const UndefinedStatistic& e) {
    return fail(kUndefined, "undefined statistic", e.what());
  } catch (const EnumerationCapExceeded& e) {
    return fail(kCap, "enumeration cap exceeded", e.what());
  } catch (const InputError& e) {
    return fail(kInput, "input error", e.what());
  } catch (const json::exception& e) {
    return fail(kInput, "manifest error", e.what());
  } catch (const SamplingExhausted& e) {
    return fail(kFailure, "sampling failed", e.what());
  } catch (const std::exception& e) {
    return fail(kFailure, "error", e.what());
  }
}
