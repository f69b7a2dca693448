#include "nbwalk/stats.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "nbwalk/errors.hpp"
#include "nbwalk/random.hpp"

namespace nbwalk {

Rational total_variation(const PrefixDistribution& p, const PrefixDistribution& q) {
  if (p.horizon != q.horizon) fail(ErrorCode::InvalidInput, "total variation needs equal horizons");
  Rational sum = abs(p.short_mass - q.short_mass);
  auto pi = p.entries.begin();
  auto qi = q.entries.begin();
  while (pi != p.entries.end() || qi != q.entries.end()) {
    if (qi == q.entries.end() || (pi != p.entries.end() && pi->first < qi->first)) {
      sum += abs(pi->second);
      ++pi;
    } else if (pi == p.entries.end() || qi->first < pi->first) {
      sum += abs(qi->second);
      ++qi;
    } else {
      sum += abs(pi->second - qi->second);
      ++pi;
      ++qi;
    }
  }
  return sum / 2;
}

Rational conditional_total_variation(const PrefixDistribution& p, const PrefixDistribution& q) {
  auto complete = [](const PrefixDistribution& d) {
    const Rational mass = Rational(1) - d.short_mass;
    if (mass <= 0) fail(ErrorCode::InsufficientData, "no complete prefixes");
    PrefixDistribution out;
    out.horizon = d.horizon;
    for (const auto& [seq, prob] : d.entries) out.entries.emplace(seq, prob / mass);
    return out;
  };
  return total_variation(complete(p), complete(q));
}

WalkStatistics return_statistics(const VertexSequence& path, const VertexKey& origin) {
  if (path.empty()) fail(ErrorCode::InvalidInput, "return statistics need a nonempty path");
  ReturnCounter counter;
  for (std::size_t i = 0; i < path.size(); ++i) counter.observe(i, path[i] == origin);
  return counter.finish(path.back() == origin ? 0.0 : 1.0);
}

WalkStatistics return_statistics(const Graph& g, const VertexSequence& path, const VertexKey& origin) {
  auto stats = return_statistics(path, origin);
  stats.end_displacement = g.displacement(origin, path.back());
  return stats;
}

MeanEstimate estimate_mean(std::span<const double> samples) {
  MeanEstimate out;
  const auto n = static_cast<double>(samples.size());
  if (samples.empty()) return out;
  double sum = 0.0;
  for (double x : samples) sum += x;
  out.mean = sum / n;
  if (samples.size() > 1) {
    double ss = 0.0;
    for (double x : samples) ss += (x - out.mean) * (x - out.mean);
    out.standard_error = std::sqrt(ss / (n - 1.0) / n);
  }
  out.ci_low = out.mean - 1.96 * out.standard_error;
  out.ci_high = out.mean + 1.96 * out.standard_error;
  return out;
}

void aggregate(ExperimentReport& report) {
  std::vector<double> returns;
  std::vector<double> hit;
  std::vector<double> displacement;
  for (const auto& r : report.replicas) {
    returns.push_back(static_cast<double>(r.returns_to_origin));
    hit.push_back(r.returns_to_origin > 0 ? 1.0 : 0.0);
    displacement.push_back(r.end_displacement);
  }
  report.replica_count = report.replicas.size();
  report.mean_returns = estimate_mean(returns);
  report.return_fraction = estimate_mean(hit);
  report.mean_displacement = estimate_mean(displacement);
}

namespace {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

nlohmann::ordered_json estimate_json(const MeanEstimate& e) {
  nlohmann::ordered_json j;
  j["mean"] = e.mean;
  j["standard_error"] = e.standard_error;
  j["ci95"] = {e.ci_low, e.ci_high};
  return j;
}

template <class RunReplica>
ExperimentReport run_replicas(const MonteCarloOptions& options, RunReplica&& run) {
  if (options.replicas < 1) fail(ErrorCode::InvalidParameter, "monte_carlo needs at least one replica");
  ExperimentReport report;
  report.master_seed = options.master_seed;
  report.replicas.resize(options.replicas);
  const unsigned threads = std::max(1U, std::min<unsigned>(options.threads, static_cast<unsigned>(options.replicas)));
  if (threads == 1) {
    for (std::size_t i = 0; i < options.replicas; ++i) report.replicas[i] = run(i);
  } else {
    // Replica i goes to worker i % threads; rows land in their own slots, so
    // the report does not depend on scheduling.
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < options.replicas; i += threads) report.replicas[i] = run(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  aggregate(report);
  return report;
}

}  // namespace

std::string ExperimentReport::to_csv() const {
  std::ostringstream out;
  out << "replica,steps,returns,last_return,displacement\n";
  for (std::size_t i = 0; i < replicas.size(); ++i) {
    const auto& r = replicas[i];
    out << i << ',' << r.steps << ',' << r.returns_to_origin << ',';
    if (r.last_return_time) out << *r.last_return_time;
    out << ',' << format_double(r.end_displacement) << '\n';
  }
  return out.str();
}

std::string ExperimentReport::to_json() const {
  nlohmann::ordered_json j;
  nlohmann::ordered_json cfg;
  cfg["graph"] = nlohmann::json::parse(config.graph.empty() ? "null" : config.graph);
  cfg["walk"] = config.walk;
  cfg["start"] = config.start;
  cfg["horizon"] = config.horizon;
  j["config"] = cfg;
  j["seed"] = master_seed;
  j["replicas"] = replica_count;
  nlohmann::ordered_json agg;
  agg["mean_returns"] = estimate_json(mean_returns);
  agg["return_fraction"] = estimate_json(return_fraction);
  agg["mean_displacement"] = estimate_json(mean_displacement);
  j["aggregates"] = agg;
  return j.dump(2) + "\n";
}

ExperimentReport monte_carlo(WalkKind kind, const Graph& g, const VertexKey& start, const MonteCarloOptions& options) {
  if (!g.contains(start)) fail(ErrorCode::InvalidInput, "start " + start.to_string() + " is not in the graph");
  auto report = run_replicas(options, [&](std::size_t i) {
    RandomStream rng(derive_replica_seed(options.master_seed, i));
    GraphWalker walker(g, kind, start);
    ReturnCounter counter;
    counter.observe(0, true);
    for (std::size_t t = 1; t <= options.horizon; ++t) {
      walker.step(rng);
      counter.observe(t, walker.position() == start);
    }
    return counter.finish(g.displacement(start, walker.position()));
  });
  report.config = {"", std::string(to_string(kind)), start.to_string(), options.horizon};
  return report;
}

ExperimentReport monte_carlo(WalkKind kind, const WeightedMultigraph& mg, const VertexKey& start,
                             const MonteCarloOptions& options) {
  const std::size_t s = mg.require_index(start);
  auto report = run_replicas(options, [&](std::size_t i) {
    RandomStream rng(derive_replica_seed(options.master_seed, i));
    MultigraphWalker walker(mg, kind, s);
    ReturnCounter counter;
    counter.observe(0, true);
    for (std::size_t t = 1; t <= options.horizon; ++t) {
      walker.step(rng);
      counter.observe(t, walker.position() == s);
    }
    return counter.finish(walker.position() == s ? 0.0 : 1.0);
  });
  report.config = {"", std::string(to_string(kind)), start.to_string(), options.horizon};
  return report;
}

FrequencyEstimate move_frequency(std::span<const CursorTrace> traces, std::optional<Parity> phase) {
  if (traces.empty()) fail(ErrorCode::InsufficientData, "no traces");
  std::size_t rights = 0;
  std::size_t total = 0;
  for (const auto& trace : traces) {
    for (std::size_t i = 0; i < trace.moves.size(); ++i) {
      const std::size_t from = i == 0 ? 0 : trace.positions[i - 1];
      if (from == 0) continue;
      if (phase && (from % 2 == 0) != (*phase == Parity::Even)) continue;
      ++total;
      if (trace.moves[i] == Move::Right) ++rights;
    }
  }
  if (total == 0) fail(ErrorCode::InsufficientData, "no moves from positions >= 1");
  FrequencyEstimate out;
  out.moves = total;
  out.frequency = static_cast<double>(rights) / static_cast<double>(total);
  out.standard_error = std::sqrt(out.frequency * (1.0 - out.frequency) / static_cast<double>(total));
  return out;
}

}  // namespace nbwalk
