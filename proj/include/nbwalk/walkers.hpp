#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string_view>

#include "nbwalk/distribution.hpp"
#include "nbwalk/graph.hpp"
#include "nbwalk/multigraph.hpp"
#include "nbwalk/random.hpp"

namespace nbwalk {

// SRW and NBRW run on a Graph; WRW and HoldingWRW need a WeightedMultigraph,
// where NBRW is also available in its edge-based form.
//
// HoldingWRW picks one of the mdeg(v) half-edges uniformly and crosses it with
// probability equal to its conductance, otherwise stays put. It is the law of
// SRW on the uncontracted graph observed at its visits to high-degree vertices.
enum class WalkKind { SRW, NBRW, WRW, HoldingWRW };

std::string_view to_string(WalkKind kind);
WalkKind parse_walk_kind(std::string_view text);

inline constexpr std::size_t kMaxEnumerationHorizon = 14;

VertexKey srw_step(const Graph& g, const VertexKey& current, RandomStream& rng);
VertexKey nbrw_step(const Graph& g, const VertexKey& prev, const VertexKey& current, RandomStream& rng);

// Never reverses the arrival edge instance; a self-loop may be re-entered from
// its other end.
HalfEdgeState nbrw_step_edge(const WeightedMultigraph& mg, HalfEdgeState arrival, RandomStream& rng);
HalfEdgeState wrw_step(const WeightedMultigraph& mg, std::size_t current, RandomStream& rng);
// std::nullopt means the walker held its position.
std::optional<HalfEdgeState> holding_wrw_step(const WeightedMultigraph& mg, std::size_t current,
                                              RandomStream& rng);

struct GraphWalkState {
  std::optional<VertexKey> prev;  // absent before the first step
  VertexKey current;
};

struct MultigraphWalkState {
  std::size_t vertex = 0;
  std::optional<HalfEdgeState> arrival;  // absent before the first step
};

// Exact one-step laws. The multigraph form is keyed by the arrival half-edge
// at the next vertex; std::nullopt is the HoldingWRW stay outcome.
std::map<VertexKey, Rational> step_distribution(WalkKind kind, const Graph& g, const GraphWalkState& state);
std::map<std::optional<HalfEdgeState>, Rational> step_distribution(WalkKind kind, const WeightedMultigraph& mg,
                                                                   const MultigraphWalkState& state);

// Incremental SRW/NBRW sampler that moves by slot and never compares keys.
class GraphWalker {
 public:
  GraphWalker(const Graph& g, WalkKind kind, VertexKey start);

  const VertexKey& position() const noexcept { return position_; }
  std::size_t steps() const noexcept { return steps_; }
  void step(RandomStream& rng);

 private:
  const Graph* graph_;
  WalkKind kind_;
  VertexKey position_;
  std::optional<std::size_t> back_slot_;
  std::size_t steps_ = 0;
};

class MultigraphWalker {
 public:
  MultigraphWalker(const WeightedMultigraph& mg, WalkKind kind, std::size_t start);

  std::size_t position() const noexcept { return position_; }
  std::size_t steps() const noexcept { return steps_; }
  void step(RandomStream& rng);

 private:
  const WeightedMultigraph* graph_;
  WalkKind kind_;
  std::size_t position_;
  std::optional<HalfEdgeState> arrival_;
  std::size_t steps_ = 0;
};

// Length n+1 path from start. NBRW's first step is uniform over all neighbors.
// NoLegalMove propagates with the failing step index attached.
VertexSequence sample_path(WalkKind kind, const Graph& g, const VertexKey& start, std::size_t n,
                           RandomStream& rng);
VertexSequence sample_path(WalkKind kind, const WeightedMultigraph& mg, const VertexKey& start, std::size_t n,
                           RandomStream& rng);

// Exact law of the first m steps by depth-first expansion of the kernel.
// LimitExceeded when m > kMaxEnumerationHorizon.
PrefixDistribution enumerate_prefix_distribution(WalkKind kind, const Graph& g, const VertexKey& start,
                                                 std::size_t m);
PrefixDistribution enumerate_prefix_distribution(WalkKind kind, const WeightedMultigraph& mg,
                                                 const VertexKey& start, std::size_t m);

}  // namespace nbwalk
