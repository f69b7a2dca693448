#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "nbwalk/distribution.hpp"
#include "nbwalk/graph.hpp"
#include "nbwalk/multigraph.hpp"
#include "nbwalk/walkers.hpp"

namespace nbwalk {

// Maximal path of degree-2 vertices between two vertices of degree != 2.
// Its length (edge count) becomes the resistance of the contracted edge.
struct Corridor {
  VertexKey a;
  VertexKey b;
  std::vector<VertexKey> interior;  // ordered from a to b

  std::size_t length() const noexcept { return interior.size() + 1; }
};

// Bookkeeping between G and its contraction G'. Corridor i is edge i of G';
// side 0 of that edge sits at corridor.a.
class ContractionMap {
 public:
  ContractionMap() = default;
  ContractionMap(const ExplicitGraph& g, std::vector<Corridor> corridors);

  const std::vector<Corridor>& corridors() const noexcept { return corridors_; }
  std::size_t max_length() const noexcept;

  bool is_anchor(const VertexKey& v) const;  // degree != 2, i.e. a vertex of G'
  // Edge id of G' containing the G-edge {u, w}.
  std::optional<std::size_t> edge_of(const VertexKey& u, const VertexKey& w) const;
  // Half-edge of G' at anchor v whose corridor starts with the G-edge (v, w).
  std::optional<HalfEdge> half_edge_at(const VertexKey& v, const VertexKey& w) const;
  // Corridor whose interior contains v.
  std::optional<std::size_t> corridor_of(const VertexKey& v) const;
  // The G-neighbor of the anchor at half-edge h, i.e. the first step into h's corridor.
  const VertexKey& first_step(HalfEdge h) const;

 private:
  std::vector<Corridor> corridors_;
  std::map<VertexKey, bool> anchor_;
  std::map<std::pair<VertexKey, VertexKey>, HalfEdge> first_edge_;  // (anchor, next) -> half-edge
  std::map<std::pair<VertexKey, VertexKey>, std::size_t> edge_id_;  // unordered G-edge, smaller key first
  std::map<VertexKey, std::size_t> interior_;
};

struct Contraction {
  WeightedMultigraph graph;
  ContractionMap map;
};

// Requires a connected finite graph with minimum degree 2 and at least one
// vertex of degree != 2; UnsupportedStructure otherwise. Corridors are listed
// by (a, first interior vertex) in sorted order, a being the smaller anchor.
std::vector<Corridor> find_corridors(const ExplicitGraph& g);
Contraction contract(const ExplicitGraph& g);

struct InducedStep {
  std::size_t edge_id = 0;
  bool reflected = false;  // entered a corridor and came back out the same end
  HalfEdgeState arrival;   // half-edge of G' through which the anchor was reached
};

// The walk observed at its successive visits to anchors. steps[i] describes
// the excursion from vertices[i] to vertices[i+1]; a trailing unfinished
// excursion is dropped.
struct InducedWalk {
  VertexSequence vertices;
  std::vector<InducedStep> steps;
};

InducedWalk induced_walk(const ExplicitGraph& g, const VertexSequence& path, const ContractionMap& map);

// Every vertex has multigraph degree k1 or k2 (k1 > k2), no loops, and every
// edge joins a degree-k1 vertex to a degree-k2 vertex.
bool is_biregular_bipartite(const WeightedMultigraph& mg, int k1, int k2);

struct InducedEnumeration {
  PrefixDistribution distribution;
  std::size_t reflected_traversals = 0;  // over all enumerated paths
};

// Enumerates every SRW/NBRW path on g of up to g_horizon steps, stopping a
// path as soon as its induced walk has v_horizon+1 entries. Paths that run
// out of steps first go to short_mass.
InducedEnumeration enumerate_induced_prefix_distribution(WalkKind kind, const ExplicitGraph& g,
                                                         const Contraction& contraction, const VertexKey& start,
                                                         std::size_t v_horizon, std::size_t g_horizon);

enum class Reflections { Keep, Drop };

// Exact law of the induced walk. Each excursion's exit law is obtained by
// solving the absorbing chain of the walk on g (in rationals) over the
// non-anchor vertices it can reach. With Reflections::Drop, reflected
// excursions are removed from the sequence.
PrefixDistribution induced_prefix_distribution(WalkKind kind, const ExplicitGraph& g,
                                               const Contraction& contraction, const VertexKey& start,
                                               std::size_t v_horizon, Reflections reflections);

}  // namespace nbwalk
