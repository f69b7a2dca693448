#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "nbwalk/rational.hpp"
#include "nbwalk/vertex_key.hpp"

namespace nbwalk {

// One end of an edge. side 0 sits at endpoint a, side 1 at endpoint b; for a
// self-loop the two sides are distinct half-edges at the same vertex.
struct HalfEdge {
  std::size_t edge = 0;
  std::uint8_t side = 0;

  HalfEdge reversed() const noexcept { return {edge, static_cast<std::uint8_t>(1 - side)}; }
  friend auto operator<=>(const HalfEdge&, const HalfEdge&) = default;
};

// Walk state on a multigraph: the half-edge through which the walker entered
// its current (head) vertex.
using HalfEdgeState = HalfEdge;

struct MultiEdge {
  std::size_t a = 0;  // vertex indices
  std::size_t b = 0;
  std::int64_t resistance = 1;
  std::size_t id = 0;

  bool is_loop() const noexcept { return a == b; }
};

// Finite multigraph with positive integer resistances. Vertices are addressed
// by dense index; keys are kept for I/O and for comparing with the source graph.
class WeightedMultigraph {
 public:
  WeightedMultigraph() = default;
  explicit WeightedMultigraph(std::vector<VertexKey> vertices);

  // Returns the new edge id. Throws InvalidParameter on resistance < 1 or bad endpoints.
  std::size_t add_edge(std::size_t a, std::size_t b, std::int64_t resistance);

  std::size_t vertex_count() const noexcept { return keys_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<VertexKey>& vertices() const noexcept { return keys_; }
  const VertexKey& key_at(std::size_t index) const { return keys_.at(index); }
  std::optional<std::size_t> index_of(const VertexKey& key) const;
  std::size_t require_index(const VertexKey& key) const;

  const std::vector<MultiEdge>& edges() const noexcept { return edges_; }
  const MultiEdge& edge(std::size_t id) const { return edges_.at(id); }

  // Half-edges at v, ordered by (edge id, side).
  const std::vector<HalfEdge>& half_edges(std::size_t v) const { return incidence_.at(v); }
  std::size_t multi_degree(std::size_t v) const { return incidence_.at(v).size(); }

  // Vertex a half-edge is attached to.
  std::size_t vertex_of(HalfEdge h) const;
  Rational conductance(std::size_t edge_id) const;
  bool has_loops() const noexcept;

 private:
  std::vector<VertexKey> keys_;
  std::vector<MultiEdge> edges_;
  std::vector<std::vector<HalfEdge>> incidence_;
};

}  // namespace nbwalk
