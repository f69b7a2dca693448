#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nbwalk/vertex_key.hpp"

namespace nbwalk {

enum class GraphKind { Lattice, SubdividedLattice, RegularTree, BiregularTree, Explicit };

// Locally finite simple undirected graph, possibly infinite. Neighbors of a
// vertex are addressed by slot: neighbors(v)[slot] == neighbor(v, slot). The
// slot order is part of the contract:
//   lattices:  +e1, -e1, +e2, -e2, ...
//   trees:     parent first, then children in index order (root: children only)
//   explicit:  sorted by key
class Graph {
 public:
  virtual ~Graph() = default;

  virtual GraphKind kind() const noexcept = 0;
  virtual bool contains(const VertexKey& v) const = 0;
  virtual std::size_t degree(const VertexKey& v) const = 0;
  virtual VertexKey neighbor(const VertexKey& v, std::size_t slot) const = 0;

  // Moves `v` across `slot` in place and returns the slot at the new vertex
  // that leads back. Samplers use this to avoid materializing neighbor lists.
  virtual std::size_t advance(VertexKey& v, std::size_t slot) const = 0;

  // Canonical start vertex (lattice origin, tree root, smallest explicit key).
  virtual VertexKey origin() const = 0;

  // Euclidean norm for lattices, tree distance for trees, 0/1 for explicit graphs.
  virtual double displacement(const VertexKey& from, const VertexKey& to) const = 0;

  virtual std::string describe() const = 0;

  std::vector<VertexKey> neighbors(const VertexKey& v) const;
  std::optional<std::size_t> slot_of(const VertexKey& v, const VertexKey& w) const;
  bool adjacent(const VertexKey& v, const VertexKey& w) const { return slot_of(v, w).has_value(); }
};

using GraphPtr = std::shared_ptr<const Graph>;

// Finite graph with integer vertex keys, stored as sorted adjacency lists.
class ExplicitGraph final : public Graph {
 public:
  using Adjacency = std::map<VertexKey, std::vector<VertexKey>>;

  GraphKind kind() const noexcept override { return GraphKind::Explicit; }
  bool contains(const VertexKey& v) const override;
  std::size_t degree(const VertexKey& v) const override;
  VertexKey neighbor(const VertexKey& v, std::size_t slot) const override;
  std::size_t advance(VertexKey& v, std::size_t slot) const override;
  VertexKey origin() const override;
  double displacement(const VertexKey& from, const VertexKey& to) const override;
  std::string describe() const override;

  std::size_t vertex_count() const noexcept { return keys_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  const std::vector<VertexKey>& vertices() const noexcept { return keys_; }
  const VertexKey& key_at(std::size_t index) const { return keys_.at(index); }
  std::optional<std::size_t> index_of(const VertexKey& v) const;

  // Dense-index view.
  const std::vector<std::size_t>& neighbor_indices(std::size_t index) const { return adj_.at(index); }
  std::size_t back_slot(std::size_t index, std::size_t slot) const { return back_.at(index).at(slot); }

  // Each undirected edge once, as (smaller key, larger key), sorted.
  std::vector<std::pair<VertexKey, VertexKey>> edges() const;
  Adjacency adjacency() const;

 private:
  friend std::shared_ptr<const ExplicitGraph> from_adjacency(const Adjacency& lists);
  ExplicitGraph() = default;

  std::size_t require_index(const VertexKey& v) const;

  std::vector<VertexKey> keys_;
  std::map<std::int64_t, std::size_t> index_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::vector<std::size_t>> back_;
  std::size_t edge_count_ = 0;
};

using ExplicitGraphPtr = std::shared_ptr<const ExplicitGraph>;

// Generators. All throw Error(InvalidParameter) on out-of-range parameters.
GraphPtr lattice(int d);
GraphPtr subdivided_lattice(int d, int t);
GraphPtr regular_tree(int k);
GraphPtr biregular_tree(int k1, int k2);

// Validates symmetry, integer keys, no self-loops and no duplicate entries
// (MalformedGraph otherwise).
ExplicitGraphPtr from_adjacency(const ExplicitGraph::Adjacency& lists);

// Replaces each edge by a path through t new degree-2 vertices. New keys are
// allocated after the largest existing key, edge by edge in sorted edge order.
ExplicitGraphPtr subdivide(const Graph& g, int t);

ExplicitGraphPtr complete_graph(int n);
ExplicitGraphPtr complete_bipartite(int a, int b);

// Vertices of the built-in non-regular counterexample.
namespace counterexample {
inline constexpr std::int64_t v = 0;
inline constexpr std::int64_t x = 1;
inline constexpr std::int64_t y = 2;
inline constexpr std::int64_t z = 3;
inline constexpr std::int64_t a = 4;
inline constexpr std::int64_t b = 5;
}  // namespace counterexample

// Edges v-x, v-y, v-z, x-z, y-a, y-b, a-b: v and y have degree 3, the rest 2.
ExplicitGraphPtr counterexample_graph();

}  // namespace nbwalk
