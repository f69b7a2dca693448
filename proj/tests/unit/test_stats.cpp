#include <cmath>

#include "doctest.h"
#include "json.hpp"
#include "nbwalk/birthdeath.hpp"
#include "nbwalk/erasure.hpp"
#include "nbwalk/errors.hpp"
#include "nbwalk/graph.hpp"
#include "nbwalk/random.hpp"
#include "nbwalk/stats.hpp"
#include "nbwalk/walkers.hpp"

using namespace nbwalk;

namespace {

PrefixDistribution random_law(RandomStream& rng, std::size_t outcomes, bool with_short) {
  PrefixDistribution d;
  d.horizon = 1;
  std::vector<std::int64_t> w(outcomes + 1);
  std::int64_t total = 0;
  for (auto& x : w) total += (x = static_cast<std::int64_t>(rng.uniform_index(10)));
  if (total == 0) {
    w[0] = 1;
    total = 1;
  }
  for (std::size_t i = 0; i < outcomes; ++i) {
    if (w[i] > 0) d.add({VertexKey{0}, VertexKey{static_cast<std::int64_t>(i)}}, make_rational(w[i], total));
  }
  if (with_short) {
    d.short_mass = make_rational(w[outcomes], total);
  } else if (w[outcomes] > 0) {
    d.add({VertexKey{0}, VertexKey{static_cast<std::int64_t>(outcomes)}}, make_rational(w[outcomes], total));
  }
  return d;
}

std::vector<CursorTrace> erase_srw(const Graph& g, std::size_t paths, std::size_t n, std::uint64_t seed) {
  RandomStream rng(seed);
  std::vector<CursorTrace> traces;
  for (std::size_t i = 0; i < paths; ++i) {
    const auto path = sample_path(WalkKind::SRW, g, g.origin(), n, rng);
    traces.push_back(erase_backtracks(std::span<const VertexKey>(path)).trace);
  }
  return traces;
}

}  // namespace

TEST_SUITE("stats") {
  TEST_CASE("total variation examples") {
    auto k4 = complete_graph(4);
    const auto srw = enumerate_prefix_distribution(WalkKind::SRW, *k4, VertexKey{0}, 2);
    const auto nbrw = enumerate_prefix_distribution(WalkKind::NBRW, *k4, VertexKey{0}, 2);
    CHECK(total_variation(srw, srw) == 0);
    CHECK(total_variation(srw, nbrw) == make_rational(1, 3));
    PrefixDistribution a, b;
    a.horizon = b.horizon = 0;
    a.add({VertexKey{0}}, 1);
    b.add({VertexKey{1}}, 1);
    CHECK(total_variation(a, b) == 1);
    PrefixDistribution s;
    s.horizon = 0;
    s.short_mass = 1;
    CHECK(total_variation(a, s) == 1);
    CHECK_THROWS_AS(total_variation(srw, enumerate_prefix_distribution(WalkKind::SRW, *k4, VertexKey{0}, 1)), Error);
  }

  TEST_CASE("total variation is a metric on random laws") {
    RandomStream rng(61);
    for (int i = 0; i < 500; ++i) {
      const bool s = rng.uniform_index(2) == 1;
      const auto p = random_law(rng, 5, s), q = random_law(rng, 5, s), r = random_law(rng, 5, s);
      const Rational pq = total_variation(p, q);
      CHECK(pq == total_variation(q, p));
      CHECK(pq >= 0);
      CHECK(pq <= 1);
      CHECK(total_variation(p, p) == 0);
      CHECK(pq <= total_variation(p, r) + total_variation(r, q));
    }
  }

  TEST_CASE("conditional total variation") {
    PrefixDistribution p, q;
    p.horizon = q.horizon = 1;
    p.add({VertexKey{0}, VertexKey{1}}, make_rational(1, 4));
    p.add({VertexKey{0}, VertexKey{2}}, make_rational(1, 4));
    p.short_mass = make_rational(1, 2);
    q.add({VertexKey{0}, VertexKey{1}}, make_rational(1, 2));
    q.add({VertexKey{0}, VertexKey{2}}, make_rational(1, 2));
    CHECK(total_variation(p, q) == make_rational(1, 2));
    CHECK(conditional_total_variation(p, q) == 0);
    PrefixDistribution empty;
    empty.horizon = 1;
    empty.short_mass = 1;
    CHECK_THROWS_AS(conditional_total_variation(empty, q), Error);
  }

  TEST_CASE("return statistics") {
    const auto w = return_statistics({VertexKey{0}, VertexKey{1}, VertexKey{0}, VertexKey{1}, VertexKey{0}}, VertexKey{0});
    CHECK(w.returns_to_origin == 2);
    CHECK(w.last_return_time == 4);
    CHECK(w.steps == 4);
    const auto single = return_statistics({VertexKey{0}}, VertexKey{0});
    CHECK(single.returns_to_origin == 0);
    CHECK_FALSE(single.last_return_time.has_value());
    RandomStream rng(62);
    auto line = lattice(1);
    const auto path = sample_path(WalkKind::NBRW, *line, VertexKey{0}, 100, rng);
    const auto mono = return_statistics(*line, path, VertexKey{0});
    CHECK(mono.returns_to_origin == 0);
    CHECK(mono.end_displacement == doctest::Approx(100.0));
  }

  TEST_CASE("online counter matches return_statistics") {
    RandomStream rng(63);
    auto g = lattice(2);
    for (int i = 0; i < 50; ++i) {
      const auto path = sample_path(WalkKind::SRW, *g, g->origin(), 400, rng);
      ReturnCounter counter;
      for (std::size_t t = 0; t < path.size(); ++t) counter.observe(t, path[t] == g->origin());
      const auto online = counter.finish(g->displacement(g->origin(), path.back()));
      const auto direct = return_statistics(*g, path, g->origin());
      CHECK(online.returns_to_origin == direct.returns_to_origin);
      CHECK(online.last_return_time == direct.last_return_time);
      CHECK(online.steps == direct.steps);
      CHECK(online.end_displacement == doctest::Approx(direct.end_displacement));
    }
  }

  TEST_CASE("mean estimates") {
    const std::vector<double> xs = {1, 2, 3, 4};
    const auto e = estimate_mean(xs);
    CHECK(e.mean == doctest::Approx(2.5));
    CHECK(e.standard_error == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
    CHECK(e.ci_low == doctest::Approx(2.5 - 1.96 * e.standard_error));
  }

  TEST_CASE("monte carlo is independent of thread count") {
    auto g = lattice(2);
    MonteCarloOptions opt{2000, 37, 12345, 1};
    const auto serial = monte_carlo(WalkKind::SRW, *g, g->origin(), opt);
    for (unsigned threads : {2U, 3U, 8U}) {
      opt.threads = threads;
      const auto parallel = monte_carlo(WalkKind::SRW, *g, g->origin(), opt);
      CHECK(parallel.to_csv() == serial.to_csv());
      CHECK(parallel.to_json() == serial.to_json());
    }
    opt.master_seed = 12346;
    CHECK(monte_carlo(WalkKind::SRW, *g, g->origin(), opt).to_csv() != serial.to_csv());

    const auto j = nlohmann::json::parse(serial.to_json());
    CHECK(j.at("seed") == 12345);
    CHECK(j.at("replicas") == 37);
    CHECK(j.at("aggregates").contains("return_fraction"));
    CHECK(serial.to_csv().rfind("replica,steps,returns,last_return,displacement\n", 0) == 0);

    const auto line = monte_carlo(WalkKind::NBRW, *lattice(1), VertexKey{0}, MonteCarloOptions{500, 20, 7, 4});
    for (const auto& r : line.replicas) CHECK(r.returns_to_origin == 0);
    CHECK(line.return_fraction.mean == 0.0);
    CHECK_THROWS_AS(monte_carlo(WalkKind::SRW, *g, g->origin(), MonteCarloOptions{10, 0, 1, 1}), Error);
  }

  TEST_CASE("erasure move frequencies") {
    const auto tree3 = erase_srw(*regular_tree(3), 100, 1000, 64);
    const auto f3 = move_frequency(tree3);
    CHECK(f3.moves > 50000);
    CHECK(std::abs(f3.frequency - 2.0 / 3.0) < 4 * f3.standard_error);

    const auto line = erase_srw(*regular_tree(2), 100, 1000, 65);
    const auto f2 = move_frequency(line);
    CHECK(std::abs(f2.frequency - 0.5) < 4 * f2.standard_error);

    const auto bi = erase_srw(*biregular_tree(4, 3), 100, 1000, 66);
    const auto even = move_frequency(bi, Parity::Even);
    const auto odd = move_frequency(bi, Parity::Odd);
    CHECK(std::abs(even.frequency - 0.75) < 4 * even.standard_error);
    CHECK(std::abs(odd.frequency - 2.0 / 3.0) < 4 * odd.standard_error);

    // Same comparison against the chain itself.
    RandomStream rng(67);
    const auto chain = simulate_chain(chain_for_regular(3), 100000, rng);
    CursorTrace t;
    for (std::size_t i = 1; i < chain.size(); ++i) {
      t.moves.push_back(chain[i] > chain[i - 1] ? Move::Right : Move::Left);
      t.positions.push_back(chain[i]);
    }
    const auto fc = move_frequency(std::vector<CursorTrace>{t});
    const double combined = std::sqrt(fc.standard_error * fc.standard_error + f3.standard_error * f3.standard_error);
    CHECK(std::abs(fc.frequency - f3.frequency) < 4 * combined);

    CHECK_THROWS_AS(move_frequency(std::vector<CursorTrace>{}), Error);
    CursorTrace first_only;
    first_only.moves = {Move::Right};
    first_only.positions = {1};
    CHECK_THROWS_AS(move_frequency(std::vector<CursorTrace>{first_only}), Error);
  }
}
