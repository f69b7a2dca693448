#include "nbwalk/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "nbwalk/errors.hpp"

namespace nbwalk {

std::vector<VertexKey> Graph::neighbors(const VertexKey& v) const {
  const std::size_t deg = degree(v);
  std::vector<VertexKey> out;
  out.reserve(deg);
  for (std::size_t s = 0; s < deg; ++s) out.push_back(neighbor(v, s));
  return out;
}

std::optional<std::size_t> Graph::slot_of(const VertexKey& v, const VertexKey& w) const {
  const std::size_t deg = degree(v);
  for (std::size_t s = 0; s < deg; ++s) {
    if (neighbor(v, s) == w) return s;
  }
  return std::nullopt;
}

namespace {

void require_vertex(const Graph& g, const VertexKey& v) {
  if (!g.contains(v)) fail(ErrorCode::InvalidInput, "vertex " + v.to_string() + " is not in " + g.describe());
}

void require_slot(std::size_t slot, std::size_t degree) {
  if (slot >= degree) fail(ErrorCode::InvalidInput, "neighbor slot out of range");
}

class LatticeGraph final : public Graph {
 public:
  explicit LatticeGraph(int d) : d_(static_cast<std::size_t>(d)) {}

  GraphKind kind() const noexcept override { return GraphKind::Lattice; }
  bool contains(const VertexKey& v) const override { return v.size() == d_; }
  std::size_t degree(const VertexKey& v) const override {
    require_vertex(*this, v);
    return 2 * d_;
  }
  VertexKey neighbor(const VertexKey& v, std::size_t slot) const override {
    VertexKey w = v;
    advance(w, slot);
    return w;
  }
  std::size_t advance(VertexKey& v, std::size_t slot) const override {
    require_vertex(*this, v);
    require_slot(slot, 2 * d_);
    v.tokens()[slot / 2] += (slot % 2 == 0) ? 1 : -1;
    return slot ^ 1U;
  }
  VertexKey origin() const override { return VertexKey(std::vector<std::int64_t>(d_, 0)); }
  double displacement(const VertexKey& from, const VertexKey& to) const override {
    double sq = 0.0;
    for (std::size_t i = 0; i < d_; ++i) {
      const double diff = static_cast<double>(to[i] - from[i]);
      sq += diff * diff;
    }
    return std::sqrt(sq);
  }
  std::string describe() const override { return "lattice(" + std::to_string(d_) + ")"; }

 private:
  std::size_t d_;
};

// Lattice points keep d-token keys; the j-th subdivision vertex (1 <= j <= t)
// on the edge from x towards x + e_i has key (x..., i, j). Its slot 0 leads
// back towards x and slot 1 onwards to x + e_i.
class SubdividedLatticeGraph final : public Graph {
 public:
  SubdividedLatticeGraph(int d, int t) : d_(static_cast<std::size_t>(d)), t_(t) {}

  GraphKind kind() const noexcept override { return GraphKind::SubdividedLattice; }
  bool contains(const VertexKey& v) const override {
    if (v.size() == d_) return true;
    if (v.size() != d_ + 2 || t_ == 0) return false;
    const std::int64_t axis = v[d_];
    const std::int64_t offset = v[d_ + 1];
    return axis >= 0 && static_cast<std::size_t>(axis) < d_ && offset >= 1 && offset <= t_;
  }
  std::size_t degree(const VertexKey& v) const override {
    require_vertex(*this, v);
    return v.size() == d_ ? 2 * d_ : 2;
  }
  VertexKey neighbor(const VertexKey& v, std::size_t slot) const override {
    VertexKey w = v;
    advance(w, slot);
    return w;
  }
  std::size_t advance(VertexKey& v, std::size_t slot) const override {
    const std::size_t deg = degree(v);
    require_slot(slot, deg);
    auto& tok = v.tokens();
    if (v.size() == d_) {
      const std::size_t axis = slot / 2;
      const bool forward = slot % 2 == 0;
      if (t_ == 0) {
        tok[axis] += forward ? 1 : -1;
        return slot ^ 1U;
      }
      if (forward) {
        tok.push_back(static_cast<std::int64_t>(axis));
        tok.push_back(1);
        return 0;
      }
      tok[axis] -= 1;
      tok.push_back(static_cast<std::int64_t>(axis));
      tok.push_back(t_);
      return 1;
    }
    const auto axis = static_cast<std::size_t>(tok[d_]);
    const std::int64_t offset = tok[d_ + 1];
    if (slot == 0) {
      if (offset == 1) {
        tok.resize(d_);
        return 2 * axis;
      }
      tok[d_ + 1] = offset - 1;
      return 1;
    }
    if (offset == t_) {
      tok.resize(d_);
      tok[axis] += 1;
      return 2 * axis + 1;
    }
    tok[d_ + 1] = offset + 1;
    return 0;
  }
  VertexKey origin() const override { return VertexKey(std::vector<std::int64_t>(d_, 0)); }
  double displacement(const VertexKey& from, const VertexKey& to) const override {
    const auto a = position(from);
    const auto b = position(to);
    double sq = 0.0;
    for (std::size_t i = 0; i < d_; ++i) sq += (b[i] - a[i]) * (b[i] - a[i]);
    return std::sqrt(sq);
  }
  std::string describe() const override {
    return "subdivided_lattice(" + std::to_string(d_) + "," + std::to_string(t_) + ")";
  }

 private:
  std::vector<double> position(const VertexKey& v) const {
    std::vector<double> p(d_);
    for (std::size_t i = 0; i < d_; ++i) p[i] = static_cast<double>(v[i]);
    if (v.size() == d_ + 2) {
      p[static_cast<std::size_t>(v[d_])] += static_cast<double>(v[d_ + 1]) / static_cast<double>(t_ + 1);
    }
    return p;
  }

  std::size_t d_;
  std::int64_t t_;
};

// Trees keyed by the root-path word of child indices. A vertex at depth n has
// degree degree_at(n); the root has only children, every other vertex has its
// parent in slot 0 followed by its children.
class TreeGraph final : public Graph {
 public:
  TreeGraph(int even_degree, int odd_degree, GraphKind kind)
      : even_(static_cast<std::size_t>(even_degree)), odd_(static_cast<std::size_t>(odd_degree)), kind_(kind) {}

  GraphKind kind() const noexcept override { return kind_; }
  bool contains(const VertexKey& v) const override {
    for (std::size_t depth = 0; depth < v.size(); ++depth) {
      const std::int64_t child = v[depth];
      if (child < 0 || static_cast<std::size_t>(child) >= child_count(depth)) return false;
    }
    return true;
  }
  std::size_t degree(const VertexKey& v) const override {
    require_vertex(*this, v);
    return degree_at(v.size());
  }
  VertexKey neighbor(const VertexKey& v, std::size_t slot) const override {
    VertexKey w = v;
    advance(w, slot);
    return w;
  }
  std::size_t advance(VertexKey& v, std::size_t slot) const override {
    const std::size_t depth = v.size();
    require_slot(slot, degree_at(depth));
    auto& tok = v.tokens();
    if (depth == 0) {
      tok.push_back(static_cast<std::int64_t>(slot));
      return 0;
    }
    if (slot > 0) {
      tok.push_back(static_cast<std::int64_t>(slot - 1));
      return 0;
    }
    const auto child = static_cast<std::size_t>(tok.back());
    tok.pop_back();
    return tok.empty() ? child : child + 1;
  }
  VertexKey origin() const override { return VertexKey{}; }
  double displacement(const VertexKey& from, const VertexKey& to) const override {
    const auto& a = from.tokens();
    const auto& b = to.tokens();
    std::size_t common = 0;
    while (common < a.size() && common < b.size() && a[common] == b[common]) ++common;
    return static_cast<double>(a.size() + b.size() - 2 * common);
  }
  std::string describe() const override {
    if (kind_ == GraphKind::RegularTree) return "regular_tree(" + std::to_string(even_) + ")";
    return "biregular_tree(" + std::to_string(even_) + "," + std::to_string(odd_) + ")";
  }

 private:
  std::size_t degree_at(std::size_t depth) const { return depth % 2 == 0 ? even_ : odd_; }
  std::size_t child_count(std::size_t depth) const { return depth == 0 ? degree_at(0) : degree_at(depth) - 1; }

  std::size_t even_;
  std::size_t odd_;
  GraphKind kind_;
};

}  // namespace

GraphPtr lattice(int d) {
  if (d < 1 || d > 4) fail(ErrorCode::InvalidParameter, "lattice dimension must be in 1..4");
  return std::make_shared<LatticeGraph>(d);
}

GraphPtr subdivided_lattice(int d, int t) {
  if (d < 1 || d > 4) fail(ErrorCode::InvalidParameter, "lattice dimension must be in 1..4");
  if (t < 0) fail(ErrorCode::InvalidParameter, "subdivision count must be nonnegative");
  return std::make_shared<SubdividedLatticeGraph>(d, t);
}

GraphPtr regular_tree(int k) {
  if (k < 2) fail(ErrorCode::InvalidParameter, "regular_tree requires k >= 2");
  return std::make_shared<TreeGraph>(k, k, GraphKind::RegularTree);
}

GraphPtr biregular_tree(int k1, int k2) {
  if (!(k1 > k2 && k2 >= 2)) fail(ErrorCode::InvalidParameter, "biregular_tree requires k1 > k2 >= 2");
  return std::make_shared<TreeGraph>(k1, k2, GraphKind::BiregularTree);
}

// ---------------------------------------------------------------------------

bool ExplicitGraph::contains(const VertexKey& v) const { return index_of(v).has_value(); }

std::optional<std::size_t> ExplicitGraph::index_of(const VertexKey& v) const {
  if (v.size() != 1) return std::nullopt;
  const auto it = index_.find(v[0]);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t ExplicitGraph::require_index(const VertexKey& v) const {
  const auto idx = index_of(v);
  if (!idx) fail(ErrorCode::InvalidInput, "vertex " + v.to_string() + " is not in the graph");
  return *idx;
}

std::size_t ExplicitGraph::degree(const VertexKey& v) const { return adj_[require_index(v)].size(); }

VertexKey ExplicitGraph::neighbor(const VertexKey& v, std::size_t slot) const {
  const auto& nb = adj_[require_index(v)];
  require_slot(slot, nb.size());
  return keys_[nb[slot]];
}

std::size_t ExplicitGraph::advance(VertexKey& v, std::size_t slot) const {
  const std::size_t i = require_index(v);
  require_slot(slot, adj_[i].size());
  v = keys_[adj_[i][slot]];
  return back_[i][slot];
}

VertexKey ExplicitGraph::origin() const {
  if (keys_.empty()) fail(ErrorCode::InvalidInput, "empty graph has no origin");
  return keys_.front();
}

double ExplicitGraph::displacement(const VertexKey& from, const VertexKey& to) const {
  return from == to ? 0.0 : 1.0;
}

std::string ExplicitGraph::describe() const {
  return "explicit(" + std::to_string(keys_.size()) + " vertices, " + std::to_string(edge_count_) + " edges)";
}

std::vector<std::pair<VertexKey, VertexKey>> ExplicitGraph::edges() const {
  std::vector<std::pair<VertexKey, VertexKey>> out;
  out.reserve(edge_count_);
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    for (std::size_t j : adj_[i]) {
      if (i < j) out.emplace_back(keys_[i], keys_[j]);
    }
  }
  return out;
}

ExplicitGraph::Adjacency ExplicitGraph::adjacency() const {
  Adjacency out;
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    auto& list = out[keys_[i]];
    for (std::size_t j : adj_[i]) list.push_back(keys_[j]);
  }
  return out;
}

ExplicitGraphPtr from_adjacency(const ExplicitGraph::Adjacency& lists) {
  auto g = std::shared_ptr<ExplicitGraph>(new ExplicitGraph());
  std::set<VertexKey> all;
  for (const auto& [v, nb] : lists) {
    all.insert(v);
    for (const auto& w : nb) all.insert(w);
  }
  for (const auto& v : all) {
    if (v.size() != 1) fail(ErrorCode::MalformedGraph, "explicit vertex keys must be single integers");
  }
  g->keys_.assign(all.begin(), all.end());
  for (std::size_t i = 0; i < g->keys_.size(); ++i) g->index_[g->keys_[i][0]] = i;
  g->adj_.resize(g->keys_.size());

  std::set<std::pair<std::size_t, std::size_t>> arcs;
  for (const auto& [v, nb] : lists) {
    const std::size_t i = g->index_.at(v[0]);
    for (const auto& w : nb) {
      const std::size_t j = g->index_.at(w[0]);
      if (i == j) fail(ErrorCode::MalformedGraph, "self-loop at " + v.to_string());
      if (!arcs.emplace(i, j).second) {
        fail(ErrorCode::MalformedGraph, "duplicate neighbor " + w.to_string() + " of " + v.to_string());
      }
    }
  }
  for (const auto& [i, j] : arcs) {
    if (!arcs.contains({j, i})) {
      fail(ErrorCode::MalformedGraph,
           "asymmetric adjacency: " + g->keys_[j].to_string() + " missing from neighbors of " + g->keys_[i].to_string());
    }
    g->adj_[i].push_back(j);  // arcs are sorted, so lists come out sorted by key
  }
  g->edge_count_ = arcs.size() / 2;
  g->back_.resize(g->keys_.size());
  for (std::size_t i = 0; i < g->keys_.size(); ++i) {
    for (std::size_t j : g->adj_[i]) {
      const auto& nj = g->adj_[j];
      g->back_[i].push_back(static_cast<std::size_t>(std::lower_bound(nj.begin(), nj.end(), i) - nj.begin()));
    }
  }
  return g;
}

ExplicitGraphPtr subdivide(const Graph& g, int t) {
  const auto* eg = dynamic_cast<const ExplicitGraph*>(&g);
  if (eg == nullptr) fail(ErrorCode::UnsupportedGraph, "subdivide needs an explicit graph, got " + g.describe());
  if (t < 0) fail(ErrorCode::InvalidParameter, "subdivision count must be nonnegative");
  ExplicitGraph::Adjacency adj;
  for (const auto& v : eg->vertices()) adj[v];
  std::int64_t next = eg->vertices().empty() ? 0 : eg->vertices().back()[0] + 1;
  for (const auto& [u, w] : eg->edges()) {
    VertexKey prev = u;
    for (int j = 0; j < t; ++j) {
      const VertexKey mid = VertexKey::of(next++);
      adj[prev].push_back(mid);
      adj[mid].push_back(prev);
      prev = mid;
    }
    adj[prev].push_back(w);
    adj[w].push_back(prev);
  }
  return from_adjacency(adj);
}

ExplicitGraphPtr complete_graph(int n) {
  if (n < 2) fail(ErrorCode::InvalidParameter, "complete graph needs n >= 2");
  ExplicitGraph::Adjacency adj;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) adj[VertexKey::of(i)].push_back(VertexKey::of(j));
    }
  }
  return from_adjacency(adj);
}

ExplicitGraphPtr complete_bipartite(int a, int b) {
  if (a < 1 || b < 1) fail(ErrorCode::InvalidParameter, "complete bipartite graph needs positive sides");
  ExplicitGraph::Adjacency adj;
  for (int i = 0; i < a; ++i) {
    for (int j = a; j < a + b; ++j) {
      adj[VertexKey::of(i)].push_back(VertexKey::of(j));
      adj[VertexKey::of(j)].push_back(VertexKey::of(i));
    }
  }
  return from_adjacency(adj);
}

ExplicitGraphPtr counterexample_graph() {
  using namespace counterexample;
  const std::pair<std::int64_t, std::int64_t> edges[] = {{v, x}, {v, y}, {v, z}, {x, z}, {y, a}, {y, b}, {a, b}};
  ExplicitGraph::Adjacency adj;
  for (const auto& [p, q] : edges) {
    adj[VertexKey::of(p)].push_back(VertexKey::of(q));
    adj[VertexKey::of(q)].push_back(VertexKey::of(p));
  }
  return from_adjacency(adj);
}

}  // namespace nbwalk
