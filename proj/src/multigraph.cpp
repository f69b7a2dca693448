#include "nbwalk/multigraph.hpp"

#include <algorithm>

#include "nbwalk/errors.hpp"

namespace nbwalk {

WeightedMultigraph::WeightedMultigraph(std::vector<VertexKey> vertices) : keys_(std::move(vertices)) {
  if (!std::is_sorted(keys_.begin(), keys_.end()) ||
      std::adjacent_find(keys_.begin(), keys_.end()) != keys_.end()) {
    std::sort(keys_.begin(), keys_.end());
    keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
  }
  incidence_.resize(keys_.size());
}

std::size_t WeightedMultigraph::add_edge(std::size_t a, std::size_t b, std::int64_t resistance) {
  if (a >= keys_.size() || b >= keys_.size()) fail(ErrorCode::InvalidParameter, "edge endpoint out of range");
  if (resistance < 1) fail(ErrorCode::InvalidParameter, "resistance must be a positive integer");
  const std::size_t id = edges_.size();
  edges_.push_back({a, b, resistance, id});
  incidence_[a].push_back({id, 0});
  incidence_[b].push_back({id, 1});
  return id;
}

std::optional<std::size_t> WeightedMultigraph::index_of(const VertexKey& key) const {
  const auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
  if (it == keys_.end() || *it != key) return std::nullopt;
  return static_cast<std::size_t>(it - keys_.begin());
}

std::size_t WeightedMultigraph::require_index(const VertexKey& key) const {
  const auto idx = index_of(key);
  if (!idx) fail(ErrorCode::InvalidInput, "vertex " + key.to_string() + " is not in the multigraph");
  return *idx;
}

std::size_t WeightedMultigraph::vertex_of(HalfEdge h) const {
  const MultiEdge& e = edges_.at(h.edge);
  return h.side == 0 ? e.a : e.b;
}

Rational WeightedMultigraph::conductance(std::size_t edge_id) const {
  return make_rational(1, edges_.at(edge_id).resistance);
}

bool WeightedMultigraph::has_loops() const noexcept {
  return std::any_of(edges_.begin(), edges_.end(), [](const MultiEdge& e) { return e.is_loop(); });
}

}  // namespace nbwalk
