#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "nbwalk/distribution.hpp"
#include "nbwalk/erasure.hpp"
#include "nbwalk/graph.hpp"
#include "nbwalk/multigraph.hpp"
#include "nbwalk/walkers.hpp"

namespace nbwalk {

// (1/2) sum |p - q| with short_mass as one more outcome. Horizons must match.
Rational total_variation(const PrefixDistribution& p, const PrefixDistribution& q);

// Total variation between the laws of complete prefixes only: each side's
// entries are renormalized by 1 - short_mass. InsufficientData when a side
// has no complete prefixes.
Rational conditional_total_variation(const PrefixDistribution& p, const PrefixDistribution& q);

struct WalkStatistics {
  std::size_t returns_to_origin = 0;
  std::optional<std::size_t> last_return_time;
  double end_displacement = 0.0;
  std::size_t steps = 0;
};

// end_displacement is 0 if the path ends at origin and 1 otherwise.
WalkStatistics return_statistics(const VertexSequence& path, const VertexKey& origin);
// Same counts, with end_displacement measured by g.
WalkStatistics return_statistics(const Graph& g, const VertexSequence& path, const VertexKey& origin);

// Online equivalent of return_statistics for long walks.
class ReturnCounter {
 public:
  void observe(std::size_t time, bool at_origin) {
    steps_ = time;
    if (time > 0 && at_origin) {
      ++returns_;
      last_ = time;
    }
  }
  WalkStatistics finish(double displacement) const { return {returns_, last_, displacement, steps_}; }

 private:
  std::size_t returns_ = 0;
  std::optional<std::size_t> last_;
  std::size_t steps_ = 0;
};

struct MeanEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  double ci_low = 0.0;  // mean -/+ 1.96 standard errors
  double ci_high = 0.0;
};

MeanEstimate estimate_mean(std::span<const double> samples);

struct ExperimentConfigEcho {
  std::string graph;  // JSON text of the graph spec
  std::string walk;
  std::string start;
  std::size_t horizon = 0;
};

struct ExperimentReport {
  ExperimentConfigEcho config;
  std::uint64_t master_seed = 0;
  std::size_t replica_count = 0;
  std::vector<WalkStatistics> replicas;
  MeanEstimate mean_returns;
  MeanEstimate return_fraction;  // fraction of replicas with at least one return
  MeanEstimate mean_displacement;

  std::string to_csv() const;
  std::string to_json() const;
};

// Recomputes the aggregates from the per-replica rows.
void aggregate(ExperimentReport& report);

struct MonteCarloOptions {
  std::size_t horizon = 0;
  std::size_t replicas = 1;
  std::uint64_t master_seed = 0;
  unsigned threads = 1;  // results do not depend on this
};

// Replica i draws from RandomStream(derive_replica_seed(master_seed, i)).
ExperimentReport monte_carlo(WalkKind kind, const Graph& g, const VertexKey& start, const MonteCarloOptions& options);
ExperimentReport monte_carlo(WalkKind kind, const WeightedMultigraph& mg, const VertexKey& start,
                             const MonteCarloOptions& options);

struct FrequencyEstimate {
  double frequency = 0.0;
  double standard_error = 0.0;
  std::size_t moves = 0;
};

enum class Parity { Even, Odd };

// Share of Right among moves made from cursor positions >= 1, optionally only
// those made from positions of the given parity. InsufficientData when no
// move qualifies.
FrequencyEstimate move_frequency(std::span<const CursorTrace> traces, std::optional<Parity> phase = std::nullopt);

}  // namespace nbwalk
