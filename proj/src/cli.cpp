#include "nbwalk/cli.hpp"

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "nbwalk/birthdeath.hpp"
#include "nbwalk/contraction.hpp"
#include "nbwalk/erasure.hpp"
#include "nbwalk/errors.hpp"
#include "nbwalk/graph_spec.hpp"
#include "nbwalk/stats.hpp"
#include "nbwalk/walkers.hpp"

namespace nbwalk::cli {

using nlohmann::json;

json ExperimentConfig::to_json() const {
  json j;
  j["subcommand"] = subcommand;
  j["graph"] = graph;
  j["walk"] = walk;
  j["start"] = start ? json(*start) : json(nullptr);
  j["horizon"] = horizon;
  j["replicas"] = replicas;
  j["seed"] = seed ? json(*seed) : json(nullptr);
  j["out"] = out ? json(*out) : json(nullptr);
  j["N"] = N ? json(*N) : json(nullptr);
  j["m"] = m ? json(*m) : json(nullptr);
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  static const std::set<std::string> known = {"subcommand", "graph", "walk", "start", "horizon",
                                              "replicas",   "seed",  "out",  "N",     "m"};
  if (!j.is_object()) fail(ErrorCode::InvalidParameter, "config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) fail(ErrorCode::InvalidParameter, "unknown config field '" + key + "'");
  }
  ExperimentConfig c;
  try {
    auto get_opt = [&](const char* name, auto& field) {
      if (j.contains(name) && !j[name].is_null()) {
        field = j[name].get<typename std::remove_reference_t<decltype(field)>::value_type>();
      }
    };
    if (j.contains("subcommand")) c.subcommand = j["subcommand"].get<std::string>();
    if (j.contains("graph")) c.graph = j["graph"];
    if (j.contains("walk")) c.walk = j["walk"].get<std::string>();
    if (j.contains("horizon")) c.horizon = j["horizon"].get<std::size_t>();
    if (j.contains("replicas")) c.replicas = j["replicas"].get<std::size_t>();
    get_opt("start", c.start);
    get_opt("seed", c.seed);
    get_opt("out", c.out);
    get_opt("N", c.N);
    get_opt("m", c.m);
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidParameter, std::string("bad config field: ") + e.what());
  }
  return c;
}

namespace {

// Anything raised while validating input; mapped to exit code 2.
bool is_config_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::NoLegalMove:
    case ErrorCode::InvalidState:
    case ErrorCode::InsufficientData:
      return false;
    default:
      return true;
  }
}

std::string read_text(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorCode::InvalidParameter, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

json parse_json_arg(const std::string& value) {
  const std::string text = !value.empty() && value.front() == '@' ? read_text(value.substr(1)) : value;
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::InvalidParameter, std::string("invalid JSON: ") + e.what());
  }
}

std::string rational_text(const Rational& r) { return to_fraction_string(r) + " " + to_decimal_string(r); }

struct Flags {
  std::string graph;
  std::string walk;
  std::string start;
  std::size_t horizon = 0;
  std::size_t replicas = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::size_t N = 0;
  std::size_t m = 0;
  std::string config;
  int k = 0;
  int k1 = 0;
  int k2 = 0;
  unsigned threads = 1;
  std::string input;
  std::string corridors;
  bool induced = false;
  bool paths = false;
};

struct Options {
  CLI::Option* graph = nullptr;
  CLI::Option* walk = nullptr;
  CLI::Option* start = nullptr;
  CLI::Option* horizon = nullptr;
  CLI::Option* replicas = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* out = nullptr;
  CLI::Option* N = nullptr;
  CLI::Option* m = nullptr;
  CLI::Option* config = nullptr;
};

// Config file first, then explicitly given flags on top.
ExperimentConfig resolve(const std::string& name, const Flags& f, const Options& o) {
  ExperimentConfig c;
  if (o.config && o.config->count()) c = ExperimentConfig::from_json(parse_json_arg("@" + f.config));
  if (!c.subcommand.empty() && c.subcommand != name) {
    fail(ErrorCode::InvalidParameter, "config is for '" + c.subcommand + "', not '" + name + "'");
  }
  c.subcommand = name;
  if (o.graph && o.graph->count()) c.graph = parse_json_arg(f.graph);
  if (o.walk && o.walk->count()) c.walk = f.walk;
  if (o.start && o.start->count()) c.start = f.start;
  if (o.horizon && o.horizon->count()) c.horizon = f.horizon;
  if (o.replicas && o.replicas->count()) c.replicas = f.replicas;
  if (o.seed && o.seed->count()) c.seed = f.seed;
  if (o.out && o.out->count()) c.out = f.out;
  if (o.N && o.N->count()) c.N = f.N;
  if (o.m && o.m->count()) c.m = f.m;
  return c;
}

GraphPtr require_graph(const ExperimentConfig& c) {
  if (c.graph.is_null()) fail(ErrorCode::InvalidParameter, "--graph is required");
  return graph_from_json(c.graph);
}

const ExplicitGraph& require_explicit(const GraphPtr& g) {
  const auto* eg = dynamic_cast<const ExplicitGraph*>(g.get());
  if (eg == nullptr) fail(ErrorCode::UnsupportedGraph, "this operation needs a finite explicit graph, got " + g->describe());
  return *eg;
}

VertexKey start_of(const ExperimentConfig& c, const Graph& g) {
  const VertexKey s = c.start ? VertexKey::parse(*c.start) : g.origin();
  if (!g.contains(s)) fail(ErrorCode::InvalidParameter, "start " + s.to_string() + " is not in " + g.describe());
  return s;
}

std::size_t require_m(const ExperimentConfig& c) {
  if (!c.m) fail(ErrorCode::InvalidParameter, "--m is required");
  return *c.m;
}

bool on_multigraph(WalkKind kind) { return kind == WalkKind::WRW || kind == WalkKind::HoldingWRW; }

// Writes to --out when given (the file is only opened once the result exists),
// otherwise to stdout.
void emit(const ExperimentConfig& c, const std::string& text, std::ostream& out) {
  if (!c.out) {
    out << text;
    return;
  }
  std::ofstream f(*c.out, std::ios::binary);
  if (!f) fail(ErrorCode::InvalidParameter, "cannot write '" + *c.out + "'");
  f << text;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::InvalidParameter, "cannot write '" + path + "'");
  f << text;
}

std::string distribution_text(const PrefixDistribution& d) {
  std::ostringstream s;
  for (const auto& [seq, p] : d.entries) s << to_fraction_string(p) << '\t' << to_decimal_string(p) << '\t' << to_string(seq) << '\n';
  s << "short_mass\t" << to_fraction_string(d.short_mass) << '\t' << to_decimal_string(d.short_mass) << '\n';
  s << "total\t" << to_fraction_string(d.total()) << '\n';
  return s.str();
}

// ---------------------------------------------------------------------------

int cmd_walk(const ExperimentConfig& c, std::ostream& out, bool paths) {
  const GraphPtr g = require_graph(c);
  const WalkKind kind = parse_walk_kind(c.walk);
  const std::uint64_t seed = c.seed.value_or(0);
  if (c.replicas < 1) fail(ErrorCode::InvalidParameter, "--replicas must be at least 1");
  std::ostringstream text;
  if (paths) {
    std::optional<Contraction> contraction;
    if (on_multigraph(kind)) contraction = contract(require_explicit(g));
    const VertexKey start = start_of(c, *g);
    for (std::size_t i = 0; i < c.replicas; ++i) {
      RandomStream rng(derive_replica_seed(seed, i));
      const VertexSequence path = contraction ? sample_path(kind, contraction->graph, start, c.horizon, rng)
                                              : sample_path(kind, *g, start, c.horizon, rng);
      text << to_string(path) << '\n';
    }
  } else {
    const MonteCarloOptions options{c.horizon, c.replicas, seed, 1};
    const VertexKey start = start_of(c, *g);
    const ExperimentReport report = on_multigraph(kind)
                                        ? monte_carlo(kind, contract(require_explicit(g)).graph, start, options)
                                        : monte_carlo(kind, *g, start, options);
    text << report.to_csv();
  }
  emit(c, text.str(), out);
  return 0;
}

int cmd_erase(const ExperimentConfig& c, const Flags& f, std::istream& in, std::ostream& out) {
  std::vector<std::string> tokens;
  if (!c.graph.is_null()) {
    const GraphPtr g = require_graph(c);
    RandomStream rng(derive_replica_seed(c.seed.value_or(0), 0));
    for (const auto& v : sample_path(WalkKind::SRW, *g, start_of(c, *g), c.horizon, rng)) tokens.push_back(v.to_string());
  } else {
    std::string text;
    if (f.input.empty() || f.input == "-") {
      std::ostringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    } else {
      text = read_text(f.input);
    }
    std::istringstream ss(text);
    for (std::string t; ss >> t;) tokens.push_back(t);
  }
  const auto result = erase_backtracks(std::span<const std::string>(tokens));
  std::ostringstream text;
  for (std::size_t i = 0; i < result.output.size(); ++i) text << (i ? " " : "") << result.output[i];
  text << '\n' << result.trace.move_string() << '\n';
  emit(c, text.str(), out);
  return 0;
}

int cmd_chain(const ExperimentConfig& c, const Flags& f, bool has_k, bool has_pair, std::ostream& out) {
  if (has_k == has_pair) fail(ErrorCode::InvalidParameter, "give either --k or both --k1 and --k2");
  const BirthDeathSpec spec = has_k ? chain_for_regular(f.k) : chain_for_biregular(f.k1, f.k2);
  std::ostringstream text;
  if (has_k) {
    text << "chain: regular k=" << f.k << '\n';
  } else {
    text << "chain: biregular k1=" << f.k1 << " k2=" << f.k2 << " (start degree k1)\n";
  }
  text << "right probabilities (period from position 1):";
  for (const auto& p : spec.period()) text << ' ' << to_fraction_string(p);
  text << '\n';
  const bool transient = is_transient(spec);
  text << "period ratio product: " << rational_text(period_ratio_product(spec)) << '\n';
  text << "verdict: " << (transient ? "transient" : "recurrent") << '\n';
  text << "escape probability: " << rational_text(escape_probability(spec)) << '\n';
  emit(c, text.str(), out);
  return 0;
}

int cmd_contract(const ExperimentConfig& c, const Flags& f, std::ostream& out) {
  const GraphPtr g = require_graph(c);
  const Contraction con = contract(require_explicit(g));
  auto key_json = [](const VertexKey& k) { return k.size() == 1 ? json(k[0]) : json(k.to_string()); };
  json j;
  j["vertices"] = json::array();
  for (const auto& v : con.graph.vertices()) j["vertices"].push_back(key_json(v));
  j["edges"] = json::array();
  for (const auto& e : con.graph.edges()) {
    json je;
    je["a"] = key_json(con.graph.key_at(e.a));
    je["b"] = key_json(con.graph.key_at(e.b));
    je["r"] = e.resistance;
    je["id"] = e.id;
    j["edges"].push_back(je);
  }
  std::ostringstream csv;
  csv << "endpoint_a,endpoint_b,length\n";
  for (const auto& corridor : con.map.corridors()) {
    csv << corridor.a.to_string() << ',' << corridor.b.to_string() << ',' << corridor.length() << '\n';
  }
  const std::string json_text = j.dump() + "\n";
  if (!f.corridors.empty()) {
    emit(c, json_text, out);
    write_file(f.corridors, csv.str());
  } else {
    emit(c, json_text + "\n" + csv.str(), out);
  }
  return 0;
}

int cmd_enumerate(const ExperimentConfig& c, std::ostream& out) {
  const GraphPtr g = require_graph(c);
  const WalkKind kind = parse_walk_kind(c.walk);
  const std::size_t m = require_m(c);
  const VertexKey start = start_of(c, *g);
  PrefixDistribution d;
  if (c.N) {
    d = erased_prefix_distribution(*g, start, *c.N, m);
  } else if (on_multigraph(kind)) {
    d = enumerate_prefix_distribution(kind, contract(require_explicit(g)).graph, start, m);
  } else {
    d = enumerate_prefix_distribution(kind, *g, start, m);
  }
  emit(c, distribution_text(d), out);
  return 0;
}

int cmd_compare(const ExperimentConfig& c, bool induced, std::ostream& out) {
  const GraphPtr g = require_graph(c);
  const std::size_t m = require_m(c);
  const VertexKey start = start_of(c, *g);
  std::ostringstream text;
  if (!induced) {
    if (!c.N) fail(ErrorCode::InvalidParameter, "--N is required");
    const PrefixDistribution erased = erased_prefix_distribution(*g, start, *c.N, m);
    const PrefixDistribution nbrw = enumerate_prefix_distribution(WalkKind::NBRW, *g, start, m);
    text << "tv " << rational_text(total_variation(erased, nbrw)) << '\n';
    text << "short_mass " << rational_text(erased.short_mass) << '\n';
  } else {
    const ExplicitGraph& eg = require_explicit(g);
    const Contraction con = contract(eg);
    const WalkKind kind = parse_walk_kind(c.walk);
    if (kind == WalkKind::SRW) {
      const auto kept = induced_prefix_distribution(kind, eg, con, start, m, Reflections::Keep);
      const auto dropped = induced_prefix_distribution(kind, eg, con, start, m, Reflections::Drop);
      text << "tv_induced_vs_hwrw "
           << rational_text(total_variation(kept, enumerate_prefix_distribution(WalkKind::HoldingWRW, con.graph, start, m)))
           << '\n';
      text << "tv_crossings_vs_wrw "
           << rational_text(total_variation(dropped, enumerate_prefix_distribution(WalkKind::WRW, con.graph, start, m)))
           << '\n';
    } else if (kind == WalkKind::NBRW) {
      const auto law = induced_prefix_distribution(kind, eg, con, start, m, Reflections::Keep);
      text << "tv_induced_vs_nbrw "
           << rational_text(total_variation(law, enumerate_prefix_distribution(WalkKind::NBRW, con.graph, start, m)))
           << '\n';
    } else {
      fail(ErrorCode::InvalidParameter, "--induced compares srw or nbrw walks");
    }
  }
  emit(c, text.str(), out);
  return 0;
}

int cmd_diagnose(const ExperimentConfig& c, unsigned threads, std::ostream& out) {
  if (!c.seed) fail(ErrorCode::InvalidParameter, "diagnose requires --seed");
  if (c.replicas < 1) fail(ErrorCode::InvalidParameter, "--replicas must be at least 1");
  const GraphPtr g = require_graph(c);
  const WalkKind kind = parse_walk_kind(c.walk);
  const VertexKey start = start_of(c, *g);
  const MonteCarloOptions options{c.horizon, c.replicas, *c.seed, threads};
  ExperimentReport report = on_multigraph(kind)
                                ? monte_carlo(kind, contract(require_explicit(g)).graph, start, options)
                                : monte_carlo(kind, *g, start, options);
  report.config.graph = c.graph.dump();
  if (c.out) {
    write_file(*c.out + ".csv", report.to_csv());
    write_file(*c.out + ".json", report.to_json());
  } else {
    out << report.to_csv() << '\n' << report.to_json();
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random-walk laboratory: non-backtracking walks, backtrack erasure, corridor contraction", "nbwalk"};
  app.require_subcommand(1);
  Flags f;
  std::map<std::string, Options> opts;

  auto common = [&](CLI::App* sub, Options& o, bool walk, bool random, bool horizons) {
    o.config = sub->add_option("--config", f.config, "ExperimentConfig JSON file; explicit flags override it");
    o.graph = sub->add_option("--graph", f.graph, "graph spec as JSON text or @file");
    o.start = sub->add_option("--start", f.start, "start vertex key, e.g. 0 or 1,-2,0 (default: graph origin)");
    o.out = sub->add_option("--out", f.out, "output path (default: standard output)");
    if (walk) o.walk = sub->add_option("--walk", f.walk, "srw | nbrw | wrw | hwrw");
    if (random) {
      o.horizon = sub->add_option("--horizon", f.horizon, "number of steps");
      o.replicas = sub->add_option("--replicas", f.replicas, "number of independent replicas");
      o.seed = sub->add_option("--seed", f.seed, "master seed (u64)");
    }
    if (horizons) {
      o.N = sub->add_option("--N", f.N, "SRW path length before erasure");
      o.m = sub->add_option("--m", f.m, "prefix horizon (steps)");
    }
  };

  auto* walk = app.add_subcommand("walk", "sample walks and write per-replica return statistics");
  common(walk, opts["walk"], true, true, false);
  walk->add_flag("--paths", f.paths, "print the sampled paths instead of statistics");

  auto* erase = app.add_subcommand("erase", "erase backtracks from a token sequence and print the cursor moves");
  common(erase, opts["erase"], false, true, false);
  erase->add_option("--input", f.input, "whitespace-separated tokens (default: standard input)");

  auto* chain = app.add_subcommand("chain", "birth-death chain of the erasure cursor: transience and escape probability");
  auto* k_opt = chain->add_option("--k", f.k, "degree of a regular graph");
  auto* k1_opt = chain->add_option("--k1", f.k1, "larger degree of a biregular graph");
  auto* k2_opt = chain->add_option("--k2", f.k2, "smaller degree of a biregular graph");
  opts["chain"].out = chain->add_option("--out", f.out, "output path (default: standard output)");

  auto* contract_cmd = app.add_subcommand("contract", "contract degree-2 corridors into a weighted multigraph");
  common(contract_cmd, opts["contract"], false, false, false);
  contract_cmd->add_option("--corridors", f.corridors, "write the corridor CSV here instead of after the JSON");

  auto* enumerate = app.add_subcommand("enumerate", "exact prefix distribution of a walk (or of erased SRW with --N)");
  common(enumerate, opts["enumerate"], true, false, true);

  auto* compare = app.add_subcommand("compare", "exact total variation between prefix laws");
  common(compare, opts["compare"], true, false, true);
  compare->add_flag("--induced", f.induced, "compare the walk observed on high-degree vertices with its contraction");

  auto* diagnose = app.add_subcommand("diagnose", "Monte Carlo return diagnostics with CSV and JSON reports");
  common(diagnose, opts["diagnose"], true, true, false);
  diagnose->add_option("--threads", f.threads, "worker threads (output does not depend on it)")->check(CLI::Range(1U, 256U));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    const ExperimentConfig c = resolve(name, f, opts[name]);
    if (name == "walk") return cmd_walk(c, out, f.paths);
    if (name == "erase") return cmd_erase(c, f, in, out);
    if (name == "chain") return cmd_chain(c, f, k_opt->count() > 0, k1_opt->count() > 0 && k2_opt->count() > 0, out);
    if (name == "contract") return cmd_contract(c, f, out);
    if (name == "enumerate") return cmd_enumerate(c, out);
    if (name == "compare") return cmd_compare(c, f.induced, out);
    if (name == "diagnose") return cmd_diagnose(c, f.threads, out);
    err << "unknown subcommand " << name << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_config_error(e.code()) ? 2 : 1;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cin, std::cout, std::cerr);
}

}  // namespace nbwalk::cli
