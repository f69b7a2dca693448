// Acceptance checks, one line per criterion:
//   criterion <n> PASS|FAIL <name> (<seconds> s, limit <seconds> s): <details>
// Usage: nbwalk_acceptance [--only N]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "nbwalk/birthdeath.hpp"
#include "nbwalk/cli.hpp"
#include "nbwalk/contraction.hpp"
#include "nbwalk/erasure.hpp"
#include "nbwalk/graph.hpp"
#include "nbwalk/random.hpp"
#include "nbwalk/stats.hpp"
#include "nbwalk/walkers.hpp"
#include "oracles.hpp"

using namespace nbwalk;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream details;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      details << "[failed: " << what << "] ";
    }
  }
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<void(Outcome&)> body;
};

unsigned worker_count() { return std::max(1U, std::min(16U, std::thread::hardware_concurrency())); }

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

std::string fmt12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string frac(const Rational& r) { return to_fraction_string(r) + " (" + to_decimal_string(r) + ")"; }

template <class T>
bool erasure_sound(const std::vector<T>& input) {
  const std::span<const T> in(input);
  const auto cursor = erase_backtracks(in);
  const auto stacked = erase_backtracks_stack(in);
  return cursor.output == stacked && is_backtrack_free(std::span<const T>(cursor.output)) &&
         cursor.output.size() % 2 == input.size() % 2;
}

void erasure_equivalence(Outcome& o) {
  RandomStream rng(1001);
  auto k4 = complete_graph(4);
  auto tree = regular_tree(3);
  std::size_t checked = 0, bad = 0;
  for (std::size_t i = 0; i < 100000; ++i) {
    bool ok = false;
    const std::size_t length = 1 + rng.uniform_index(200);
    switch (i % 3) {
      case 0:
        ok = erasure_sound(sample_path(WalkKind::SRW, *k4, VertexKey{0}, length - 1, rng));
        break;
      case 1:
        ok = erasure_sound(sample_path(WalkKind::SRW, *tree, tree->origin(), length - 1, rng));
        break;
      default: {
        const std::size_t alphabet = 2 + rng.uniform_index(4);
        std::vector<int> tokens(length);
        for (auto& t : tokens) t = static_cast<int>(rng.uniform_index(alphabet));
        ok = erasure_sound(tokens);
      }
    }
    ++checked;
    bad += ok ? 0 : 1;
  }
  o.details << checked << " inputs, " << bad << " disagreements";
  o.require(bad == 0, "cursor/stack agreement, backtrack-freeness and parity");
}

void exact_move_law(Outcome& o) {
  const auto law = erased_move_distribution(*complete_graph(4), VertexKey{0}, 10);
  const auto chain = move_sequence_law(chain_for_regular(3), 10);
  const auto brute = oracle::chain_move_law([](std::size_t) { return mpq_class(2, 3); }, 10);
  std::map<std::string, Rational> brute_law(brute.begin(), brute.end());
  Rational mass = 0;
  for (const auto& [s, p] : law) mass += p;
  o.details << law.size() << " move strings over 3^10 paths, total mass " << to_fraction_string(mass);
  o.require(law == chain, "equals the reflected chain law");
  o.require(law == brute_law, "equals the brute-force product law");
}

void erased_prefix_convergence(Outcome& o) {
  auto k4 = complete_graph(4);
  const auto nbrw = enumerate_prefix_distribution(WalkKind::NBRW, *k4, VertexKey{0}, 3);
  const auto e6 = erased_prefix_distribution(*k4, VertexKey{0}, 6, 3);
  const auto e12 = erased_prefix_distribution(*k4, VertexKey{0}, 12, 3);
  const Rational tv6 = total_variation(e6, nbrw);
  const Rational tv12 = total_variation(e12, nbrw);
  o.details << "TV(6)=" << frac(tv6) << " TV(12)=" << frac(tv12) << " short mass(12)=" << frac(e12.short_mass)
            << " conditional TV(6)=" << to_fraction_string(conditional_total_variation(e6, nbrw))
            << " conditional TV(12)=" << to_fraction_string(conditional_total_variation(e12, nbrw)) << " ";
  o.require(tv12 < tv6, "TV(12) < TV(6)");
  o.require(tv12 < make_rational(1, 50), "TV(12) < 0.02");
}

void non_regular_failure(Outcome& o) {
  auto g = counterexample_graph();
  const VertexKey v = VertexKey::of(counterexample::v);
  const auto nbrw = enumerate_prefix_distribution(WalkKind::NBRW, *g, v, 3);
  for (std::size_t N : {8, 10, 12}) {
    const auto erased = erased_prefix_distribution(*g, v, N, 3);
    const Rational tv = total_variation(erased, nbrw);
    const Rational ctv = conditional_total_variation(erased, nbrw);
    o.details << "N=" << N << " TV=" << to_decimal_string(tv) << " conditional TV=" << to_decimal_string(ctv) << "; ";
    o.require(tv > make_rational(1, 100), "TV(" + std::to_string(N) + ") > 0.01");
    o.require(ctv > 0, "conditional TV(" + std::to_string(N) + ") > 0");
  }
}

void birth_death_analytics(Outcome& o) {
  auto truncated = [](const BirthDeathSpec& spec) {
    return oracle::truncated_escape([&](std::size_t i) { return to_double(spec.right_probability(i)); }, 200);
  };
  bool transience_ok = !is_transient(chain_for_regular(2)) && escape_probability(chain_for_regular(2)) == 0;
  for (int k = 3; k <= 12; ++k) transience_ok = transience_ok && is_transient(chain_for_regular(k));
  o.require(transience_ok, "transient exactly for k = 3..12");

  const auto k3 = chain_for_regular(3);
  const Rational e3 = escape_probability(k3);
  const double t3 = truncated(k3);
  o.details << "k=3 escape " << frac(e3) << " truncated " << fmt12(t3) << "; ";
  o.require(e3 == make_rational(1, 2), "k=3 escape = 1/2");
  o.require(std::abs(to_double(e3) - t3) < 1e-9, "k=3 truncated solve within 1e-9");

  const auto bi = chain_for_biregular(4, 3);
  const Rational eb = escape_probability(bi);
  const double tb = truncated(bi);
  o.details << "(4,3) ratio product " << to_fraction_string(period_ratio_product(bi)) << " escape " << frac(eb)
            << " truncated " << fmt12(tb);
  o.require(is_transient(bi), "(4,3) transient");
  o.require(std::abs(to_double(eb) - tb) < 1e-9, "(4,3) truncated solve within 1e-9");
  o.require(eb == make_rational(5, 9), "(4,3) escape = 5/9 from a degree-4 start");
}

ExplicitGraphPtr theta_graph() {
  return from_adjacency({{VertexKey{0}, {VertexKey{1}, VertexKey{2}, VertexKey{3}}},
                         {VertexKey{1}, {VertexKey{0}, VertexKey{2}, VertexKey{4}}},
                         {VertexKey{2}, {VertexKey{0}, VertexKey{1}}},
                         {VertexKey{3}, {VertexKey{0}, VertexKey{4}}},
                         {VertexKey{4}, {VertexKey{1}, VertexKey{3}}}});
}

void contraction_equivalences(Outcome& o) {
  const std::size_t h = 3;
  const std::vector<std::pair<std::string, ExplicitGraphPtr>> graphs = {{"subdivided K4", subdivide(*complete_graph(4), 1)},
                                                                        {"theta(1,2,3)", theta_graph()}};
  for (const auto& [name, g] : graphs) {
    const auto c = contract(*g);
    for (const auto& start : c.graph.vertices()) {
      const std::string where = name + " from " + start.to_string();
      const auto crossings = induced_prefix_distribution(WalkKind::SRW, *g, c, start, h, Reflections::Drop);
      o.require(crossings == enumerate_prefix_distribution(WalkKind::WRW, c.graph, start, h),
                where + ": induced SRW corridor crossings = WRW");
      const auto kept = induced_prefix_distribution(WalkKind::SRW, *g, c, start, h, Reflections::Keep);
      o.require(kept == enumerate_prefix_distribution(WalkKind::HoldingWRW, c.graph, start, h),
                where + ": induced SRW with reflections = holding WRW");
      const auto edge_nbrw = enumerate_prefix_distribution(WalkKind::NBRW, c.graph, start, h);
      const auto nb = induced_prefix_distribution(WalkKind::NBRW, *g, c, start, h, Reflections::Keep);
      const auto nb_paths =
          enumerate_induced_prefix_distribution(WalkKind::NBRW, *g, c, start, h, h * c.map.max_length());
      o.require(nb == edge_nbrw, where + ": induced NBRW = edge NBRW");
      o.require(nb_paths.distribution == edge_nbrw && nb_paths.reflected_traversals == 0,
                where + ": path enumeration of induced NBRW = edge NBRW");
    }
    o.details << name << ": " << c.graph.vertex_count() << " vertices, " << c.graph.edge_count() << " edges; ";
  }
  const auto k4 = complete_graph(4);
  const auto round = contract(*subdivide(*k4, 1));
  std::set<std::pair<VertexKey, VertexKey>> pairs;
  bool weights = true;
  for (const auto& e : round.graph.edges()) {
    weights = weights && e.resistance == 2;
    pairs.emplace(std::min(round.graph.key_at(e.a), round.graph.key_at(e.b)),
                  std::max(round.graph.key_at(e.a), round.graph.key_at(e.b)));
  }
  const auto k4_edges = k4->edges();
  const std::set<std::pair<VertexKey, VertexKey>> expected(k4_edges.begin(), k4_edges.end());
  o.require(round.graph.vertices() == k4->vertices() && pairs == expected && round.graph.edge_count() == 6 && weights,
            "contract(subdivide(K4,1)) is K4 with resistances 2");
  o.details << "induced laws compared at horizon " << h;
}

void final_proposition_shape(Outcome& o) {
  const bool k34 = is_biregular_bipartite(contract(*subdivide(*complete_bipartite(3, 4), 1)).graph, 4, 3);
  const bool k4 = is_biregular_bipartite(contract(*subdivide(*complete_graph(4), 1)).graph, 4, 3);
  o.details << "K34 subdivided: " << (k34 ? "accepted" : "rejected") << ", K4 subdivided: " << (k4 ? "accepted" : "rejected");
  o.require(k34, "subdivided K34 has the (4,3) shape");
  o.require(!k4, "subdivided K4 lacks the (4,3) shape");
}

ExperimentReport simulate(WalkKind kind, const Graph& g, std::size_t horizon, std::size_t replicas, std::uint64_t seed) {
  return monte_carlo(kind, g, g.origin(), MonteCarloOptions{horizon, replicas, seed, worker_count()});
}

void lattice_diagnostics(Outcome& o) {
  auto z1 = lattice(1), z2 = lattice(2), z3 = lattice(3);
  const auto line = simulate(WalkKind::NBRW, *z1, 10000, 1000, 81);
  std::size_t returning = 0;
  for (const auto& r : line.replicas) returning += r.returns_to_origin > 0 ? 1 : 0;
  o.details << "Z1 NBRW replicas with returns: " << returning << "/1000; ";
  o.require(returning == 0, "NBRW on Z1 never returns");

  std::uint64_t seed = 82;
  for (auto kind : {WalkKind::NBRW, WalkKind::SRW}) {
    const auto shorter = simulate(kind, *z3, 10000, 1000, seed++);
    const auto longer = simulate(kind, *z3, 100000, 1000, seed++);
    const double diff = std::abs(longer.return_fraction.mean - shorter.return_fraction.mean);
    const double se = std::hypot(shorter.return_fraction.standard_error, longer.return_fraction.standard_error);
    const std::string name(to_string(kind));
    o.details << "Z3 " << name << " return fraction " << fmt(shorter.return_fraction.mean) << " -> "
              << fmt(longer.return_fraction.mean) << " (|diff| " << fmt(diff) << ", 3SE " << fmt(3 * se) << "); ";
    o.require(shorter.return_fraction.mean > 0 && shorter.return_fraction.mean < 1, "Z3 " + name + " fraction in (0,1)");
    o.require(diff <= 3 * se, "Z3 " + name + " fraction stable under horizon x10");
  }
  for (auto kind : {WalkKind::SRW, WalkKind::NBRW}) {
    const auto shorter = simulate(kind, *z2, 10000, 400, seed++);
    const auto longer = simulate(kind, *z2, 1000000, 400, seed++);
    const double diff = longer.mean_returns.mean - shorter.mean_returns.mean;
    const double se = std::hypot(shorter.mean_returns.standard_error, longer.mean_returns.standard_error);
    const std::string name(to_string(kind));
    o.details << "Z2 " << name << " mean returns " << fmt(shorter.mean_returns.mean) << " -> "
              << fmt(longer.mean_returns.mean) << " (diff " << fmt(diff) << ", 3SE " << fmt(3 * se) << "); ";
    o.require(diff > 3 * se, "Z2 " + name + " mean returns grow by more than 3 combined SE");
  }
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

void reproducibility(Outcome& o) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "nbwalk_acceptance";
  fs::create_directories(dir);
  const std::vector<std::pair<std::string, std::string>> runs = {{"serial_a", "1"}, {"serial_b", "1"}, {"parallel", "8"}};
  for (const auto& [name, threads] : runs) {
    for (const char* ext : {".csv", ".json"}) fs::remove(dir / (name + ext));
    std::istringstream in;
    std::ostringstream out, err;
    const int code = cli::run({"diagnose", "--graph", R"({"type":"lattice","d":3})", "--walk", "srw", "--horizon", "20000",
                               "--replicas", "64", "--seed", "2024", "--threads", threads, "--out", (dir / name).string()},
                              in, out, err);
    o.require(code == 0, "diagnose run " + name + " exits 0 (" + err.str() + ")");
  }
  for (const char* ext : {".csv", ".json"}) {
    const std::string a = slurp(dir / (std::string("serial_a") + ext));
    const std::string b = slurp(dir / (std::string("serial_b") + ext));
    const std::string p = slurp(dir / (std::string("parallel") + ext));
    o.details << ext << " " << a.size() << " bytes; ";
    o.require(!a.empty(), std::string(ext) + " written");
    o.require(a == b, std::string(ext) + " identical across runs");
    o.require(a == p, std::string(ext) + " identical serial vs parallel");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  int only = 0;
  app.add_option("--only", only, "run a single criterion")->check(CLI::Range(1, 9));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {1, "erasure equivalence and soundness", 30, erasure_equivalence},
      {2, "exact cursor-move law on K4", 60, exact_move_law},
      {3, "erased-prefix convergence to NBRW on K4", 120, erased_prefix_convergence},
      {4, "non-regular failure on the counterexample graph", 120, non_regular_failure},
      {5, "birth-death analytics", 5, birth_death_analytics},
      {6, "contraction equivalences", 180, contraction_equivalences},
      {7, "biregular bipartite shape of contracted graphs", 5, final_proposition_shape},
      {8, "lattice diagnostics", 600, lattice_diagnostics},
      {9, "reproducibility of diagnose", 60, reproducibility},
  };

  bool all = true;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(seconds < c.limit_seconds, "runtime limit");
    all = all && o.pass;
    std::cout << "criterion " << c.id << ' ' << (o.pass ? "PASS" : "FAIL") << ' ' << c.name << " (" << fmt(seconds)
              << " s, limit " << c.limit_seconds << " s): " << o.details.str() << std::endl;
  }
  return all ? 0 : 1;
}
