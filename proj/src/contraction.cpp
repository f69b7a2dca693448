#include "nbwalk/contraction.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "nbwalk/errors.hpp"

namespace nbwalk {

namespace {

std::pair<VertexKey, VertexKey> unordered(const VertexKey& u, const VertexKey& w) {
  return u < w ? std::pair{u, w} : std::pair{w, u};
}

void require_connected(const ExplicitGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t w : g.neighbor_indices(v)) {
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        queue.push_back(w);
      }
    }
  }
  if (reached != n) fail(ErrorCode::UnsupportedStructure, "graph is disconnected");
}

}  // namespace

std::vector<Corridor> find_corridors(const ExplicitGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) fail(ErrorCode::UnsupportedStructure, "empty graph");
  for (std::size_t v = 0; v < n; ++v) {
    if (g.neighbor_indices(v).size() < 2) {
      fail(ErrorCode::UnsupportedStructure, "vertex " + g.key_at(v).to_string() + " has degree < 2");
    }
  }
  require_connected(g);
  auto is_anchor = [&](std::size_t v) { return g.neighbor_indices(v).size() != 2; };
  bool any_anchor = false;
  for (std::size_t v = 0; v < n && !any_anchor; ++v) any_anchor = is_anchor(v);
  if (!any_anchor) fail(ErrorCode::UnsupportedStructure, "graph is a cycle of degree-2 vertices");

  std::set<std::pair<std::size_t, std::size_t>> used;
  auto mark = [&](std::size_t u, std::size_t w) { return used.emplace(std::min(u, w), std::max(u, w)).second; };
  std::vector<Corridor> corridors;
  for (std::size_t a = 0; a < n; ++a) {
    if (!is_anchor(a)) continue;
    for (std::size_t first : g.neighbor_indices(a)) {
      if (!mark(a, first)) continue;
      Corridor c;
      c.a = g.key_at(a);
      std::size_t prev = a;
      std::size_t cur = first;
      while (!is_anchor(cur)) {
        c.interior.push_back(g.key_at(cur));
        const auto& nb = g.neighbor_indices(cur);
        const std::size_t next = nb[0] == prev ? nb[1] : nb[0];
        mark(cur, next);
        prev = cur;
        cur = next;
      }
      c.b = g.key_at(cur);
      corridors.push_back(std::move(c));
    }
  }
  return corridors;
}

ContractionMap::ContractionMap(const ExplicitGraph& g, std::vector<Corridor> corridors)
    : corridors_(std::move(corridors)) {
  for (const auto& v : g.vertices()) anchor_[v] = g.degree(v) != 2;
  for (std::size_t id = 0; id < corridors_.size(); ++id) {
    const Corridor& c = corridors_[id];
    const VertexKey& after_a = c.interior.empty() ? c.b : c.interior.front();
    const VertexKey& before_b = c.interior.empty() ? c.a : c.interior.back();
    first_edge_[{c.a, after_a}] = HalfEdge{id, 0};
    first_edge_[{c.b, before_b}] = HalfEdge{id, 1};
    const VertexKey* prev = &c.a;
    for (const auto& v : c.interior) {
      edge_id_[unordered(*prev, v)] = id;
      interior_[v] = id;
      prev = &v;
    }
    edge_id_[unordered(*prev, c.b)] = id;
  }
}

std::size_t ContractionMap::max_length() const noexcept {
  std::size_t best = 0;
  for (const auto& c : corridors_) best = std::max(best, c.length());
  return best;
}

bool ContractionMap::is_anchor(const VertexKey& v) const {
  const auto it = anchor_.find(v);
  return it != anchor_.end() && it->second;
}

std::optional<std::size_t> ContractionMap::edge_of(const VertexKey& u, const VertexKey& w) const {
  const auto it = edge_id_.find(unordered(u, w));
  if (it == edge_id_.end()) return std::nullopt;
  return it->second;
}

std::optional<HalfEdge> ContractionMap::half_edge_at(const VertexKey& v, const VertexKey& w) const {
  const auto it = first_edge_.find({v, w});
  if (it == first_edge_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> ContractionMap::corridor_of(const VertexKey& v) const {
  const auto it = interior_.find(v);
  if (it == interior_.end()) return std::nullopt;
  return it->second;
}

const VertexKey& ContractionMap::first_step(HalfEdge h) const {
  const Corridor& c = corridors_.at(h.edge);
  if (h.side == 0) return c.interior.empty() ? c.b : c.interior.front();
  return c.interior.empty() ? c.a : c.interior.back();
}

Contraction contract(const ExplicitGraph& g) {
  std::vector<Corridor> corridors = find_corridors(g);
  std::vector<VertexKey> anchors;
  for (const auto& v : g.vertices()) {
    if (g.degree(v) != 2) anchors.push_back(v);
  }
  Contraction out{WeightedMultigraph(anchors), ContractionMap{}};
  for (const auto& c : corridors) {
    out.graph.add_edge(out.graph.require_index(c.a), out.graph.require_index(c.b),
                       static_cast<std::int64_t>(c.length()));
  }
  out.map = ContractionMap(g, std::move(corridors));
  return out;
}

InducedWalk induced_walk(const ExplicitGraph& g, const VertexSequence& path, const ContractionMap& map) {
  if (path.empty() || !map.is_anchor(path.front())) {
    fail(ErrorCode::InvalidInput, "induced walk must start at a vertex of degree != 2");
  }
  InducedWalk out;
  out.vertices.push_back(path.front());
  std::size_t last = 0;
  for (std::size_t j = 1; j < path.size(); ++j) {
    if (!g.adjacent(path[j - 1], path[j])) {
      fail(ErrorCode::InvalidInput, path[j - 1].to_string() + " and " + path[j].to_string() + " are not adjacent");
    }
    if (!map.is_anchor(path[j])) continue;
    const auto leave = map.half_edge_at(path[last], path[last + 1]);
    const auto enter = map.half_edge_at(path[j], path[j - 1]);
    if (!leave || !enter || leave->edge != enter->edge) {
      fail(ErrorCode::InvalidInput, "path is inconsistent with the contraction map");
    }
    out.vertices.push_back(path[j]);
    out.steps.push_back({enter->edge, *leave == *enter, *enter});
    last = j;
  }
  return out;
}

bool is_biregular_bipartite(const WeightedMultigraph& mg, int k1, int k2) {
  if (!(k1 > k2 && k2 >= 2)) return false;
  const auto d1 = static_cast<std::size_t>(k1);
  const auto d2 = static_cast<std::size_t>(k2);
  for (std::size_t v = 0; v < mg.vertex_count(); ++v) {
    const std::size_t d = mg.multi_degree(v);
    if (d != d1 && d != d2) return false;
  }
  for (const MultiEdge& e : mg.edges()) {
    if (e.is_loop()) return false;
    if (mg.multi_degree(e.a) == mg.multi_degree(e.b)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::size_t kNoSlot = static_cast<std::size_t>(-1);
constexpr std::size_t kMaxInducedLeaves = 50'000'000;

void require_walk_on_graph(WalkKind kind) {
  if (kind != WalkKind::SRW && kind != WalkKind::NBRW) {
    fail(ErrorCode::InvalidParameter, "induced walks are defined for srw and nbrw on the source graph");
  }
}

// Slots a walk may take from vertex `v` having arrived through `back`.
std::vector<std::size_t> allowed_slots(WalkKind kind, const ExplicitGraph& g, std::size_t v, std::size_t back) {
  const std::size_t deg = g.neighbor_indices(v).size();
  std::vector<std::size_t> slots;
  for (std::size_t s = 0; s < deg; ++s) {
    if (kind == WalkKind::NBRW && back != kNoSlot && s == back) continue;
    slots.push_back(s);
  }
  if (slots.empty()) fail(ErrorCode::NoLegalMove, "dead end at " + g.key_at(v).to_string());
  return slots;
}

class InducedPathEnumerator {
 public:
  InducedPathEnumerator(WalkKind kind, const ExplicitGraph& g, const ContractionMap& map, std::size_t v_horizon,
                        std::size_t g_horizon)
      : kind_(kind), g_(g), map_(map), v_horizon_(v_horizon), g_horizon_(g_horizon) {}

  InducedEnumeration run(std::size_t start) {
    out_.distribution.horizon = v_horizon_;
    induced_.assign(1, g_.key_at(start));
    if (v_horizon_ == 0) {
      out_.distribution.add(induced_, Rational(1));
      return out_;
    }
    expand(start, kNoSlot, start, std::nullopt, 0, Rational(1));
    return out_;
  }

 private:
  void expand(std::size_t v, std::size_t back, std::size_t anchor, std::optional<HalfEdge> leave, std::size_t depth,
              const Rational& mass) {
    if (depth == g_horizon_) {
      out_.distribution.short_mass += mass;
      count_leaf();
      return;
    }
    const auto slots = allowed_slots(kind_, g_, v, back);
    const Rational p = mass / static_cast<long>(slots.size());
    const auto& nb = g_.neighbor_indices(v);
    for (std::size_t s : slots) {
      const std::size_t w = nb[s];
      const VertexKey& vk = g_.key_at(v);
      const VertexKey& wk = g_.key_at(w);
      const std::optional<HalfEdge> out_edge = leave ? leave : map_.half_edge_at(vk, wk);
      if (!map_.is_anchor(wk)) {
        expand(w, g_.back_slot(v, s), anchor, out_edge, depth + 1, p);
        continue;
      }
      const auto in_edge = map_.half_edge_at(wk, vk);
      if (in_edge && out_edge && *in_edge == *out_edge) ++out_.reflected_traversals;
      induced_.push_back(wk);
      if (induced_.size() == v_horizon_ + 1) {
        out_.distribution.add(induced_, p);
        count_leaf();
      } else {
        expand(w, g_.back_slot(v, s), w, std::nullopt, depth + 1, p);
      }
      induced_.pop_back();
    }
  }

  void count_leaf() {
    if (++leaves_ > kMaxInducedLeaves) fail(ErrorCode::LimitExceeded, "induced enumeration exceeds the path budget");
  }

  WalkKind kind_;
  const ExplicitGraph& g_;
  const ContractionMap& map_;
  std::size_t v_horizon_;
  std::size_t g_horizon_;
  VertexSequence induced_;
  InducedEnumeration out_;
  std::size_t leaves_ = 0;
};

// Solves A X = B in place by Gauss-Jordan elimination; A is square and nonsingular.
std::vector<std::vector<Rational>> solve(std::vector<std::vector<Rational>> a, std::vector<std::vector<Rational>> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) fail(ErrorCode::InvalidState, "singular absorption system");
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    const Rational inv = Rational(1) / a[col][col];
    for (auto& x : a[col]) x *= inv;
    for (auto& x : b[col]) x *= inv;
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const Rational f = a[row][col];
      for (std::size_t k = col; k < n; ++k) a[row][k] -= f * a[col][k];
      for (std::size_t k = 0; k < b[row].size(); ++k) b[row][k] -= f * b[col][k];
    }
  }
  return b;
}

struct Excursion {
  HalfEdge enter;  // half-edge of G' at the anchor reached
  bool reflected = false;
  Rational probability;
};

// One-excursion law from an anchor, by absorbing-chain solve of the walk on g.
class ExcursionKernel {
 public:
  ExcursionKernel(WalkKind kind, const ExplicitGraph& g, const ContractionMap& map)
      : kind_(kind), g_(g), map_(map) {}

  // back is the slot at `anchor` of the vertex the walk arrived from (kNoSlot
  // for the first step, and always for SRW).
  const std::vector<Excursion>& from(std::size_t anchor, std::size_t back) {
    if (kind_ == WalkKind::SRW) back = kNoSlot;
    const auto key = std::pair{anchor, back};
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    std::vector<Excursion> result;
    const auto slots = allowed_slots(kind_, g_, anchor, back);
    const Rational pick = Rational(1) / static_cast<long>(slots.size());
    const VertexKey& ak = g_.key_at(anchor);
    for (std::size_t s : slots) {
      const std::size_t w = g_.neighbor_indices(anchor)[s];
      const HalfEdge leave = *map_.half_edge_at(ak, g_.key_at(w));
      for (const auto& [enter, p] : exit_law(w, g_.back_slot(anchor, s), anchor)) {
        merge(result, Excursion{enter, enter == leave, pick * p});
      }
    }
    return cache_.emplace(key, std::move(result)).first->second;
  }

 private:
  using State = std::pair<std::size_t, std::size_t>;  // (vertex, back slot)

  State normalize(std::size_t v, std::size_t back) const { return {v, kind_ == WalkKind::SRW ? kNoSlot : back}; }

  // Law of the half-edge through which the walk, standing at `v` having come
  // from `prev`, first enters an anchor.
  std::map<HalfEdge, Rational> exit_law(std::size_t v, std::size_t back, std::size_t prev) {
    std::map<HalfEdge, Rational> law;
    if (map_.is_anchor(g_.key_at(v))) {
      law[*map_.half_edge_at(g_.key_at(v), g_.key_at(prev))] = 1;
      return law;
    }
    // Transient states reachable before absorption.
    std::map<State, std::size_t> index;
    std::vector<State> states;
    std::deque<State> queue{normalize(v, back)};
    index[queue.front()] = 0;
    states.push_back(queue.front());
    std::map<HalfEdge, std::size_t> outcome_index;
    struct Arc {
      std::size_t from;
      bool absorbing;
      std::size_t to;
      Rational p;
    };
    std::vector<Arc> arcs;
    while (!queue.empty()) {
      const State st = queue.front();
      queue.pop_front();
      const std::size_t from = index.at(st);
      const auto slots = allowed_slots(kind_, g_, st.first, st.second);
      const Rational p = Rational(1) / static_cast<long>(slots.size());
      for (std::size_t s : slots) {
        const std::size_t y = g_.neighbor_indices(st.first)[s];
        if (map_.is_anchor(g_.key_at(y))) {
          const HalfEdge h = *map_.half_edge_at(g_.key_at(y), g_.key_at(st.first));
          const auto [it, fresh] = outcome_index.try_emplace(h, outcome_index.size());
          arcs.push_back({from, true, it->second, p});
          continue;
        }
        const State next = normalize(y, g_.back_slot(st.first, s));
        auto [it, fresh] = index.try_emplace(next, states.size());
        if (fresh) {
          states.push_back(next);
          queue.push_back(next);
        }
        arcs.push_back({from, false, it->second, p});
      }
    }
    const std::size_t n = states.size();
    const std::size_t k = outcome_index.size();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    std::vector<std::vector<Rational>> b(n, std::vector<Rational>(k));
    for (std::size_t i = 0; i < n; ++i) a[i][i] = 1;
    for (const Arc& arc : arcs) {
      if (arc.absorbing) {
        b[arc.from][arc.to] += arc.p;
      } else {
        a[arc.from][arc.to] -= arc.p;
      }
    }
    const auto x = solve(std::move(a), std::move(b));
    for (const auto& [h, col] : outcome_index) {
      if (x[0][col] != 0) law[h] = x[0][col];
    }
    return law;
  }

  static void merge(std::vector<Excursion>& into, Excursion e) {
    for (auto& existing : into) {
      if (existing.enter == e.enter && existing.reflected == e.reflected) {
        existing.probability += e.probability;
        return;
      }
    }
    into.push_back(std::move(e));
  }

  WalkKind kind_;
  const ExplicitGraph& g_;
  const ContractionMap& map_;
  std::map<State, std::vector<Excursion>> cache_;
};

}  // namespace

InducedEnumeration enumerate_induced_prefix_distribution(WalkKind kind, const ExplicitGraph& g,
                                                         const Contraction& contraction, const VertexKey& start,
                                                         std::size_t v_horizon, std::size_t g_horizon) {
  require_walk_on_graph(kind);
  const auto s = g.index_of(start);
  if (!s || !contraction.map.is_anchor(start)) {
    fail(ErrorCode::InvalidInput, "induced enumeration must start at a vertex of degree != 2");
  }
  return InducedPathEnumerator(kind, g, contraction.map, v_horizon, g_horizon).run(*s);
}

PrefixDistribution induced_prefix_distribution(WalkKind kind, const ExplicitGraph& g, const Contraction& contraction,
                                               const VertexKey& start, std::size_t v_horizon,
                                               Reflections reflections) {
  require_walk_on_graph(kind);
  if (v_horizon > kMaxEnumerationHorizon) {
    fail(ErrorCode::LimitExceeded, "induced horizon exceeds " + std::to_string(kMaxEnumerationHorizon));
  }
  const auto s = g.index_of(start);
  if (!s || !contraction.map.is_anchor(start)) {
    fail(ErrorCode::InvalidInput, "induced walk must start at a vertex of degree != 2");
  }
  const WeightedMultigraph& mg = contraction.graph;
  const ContractionMap& map = contraction.map;
  ExcursionKernel kernel(kind, g, map);

  PrefixDistribution out;
  out.horizon = v_horizon;
  VertexSequence seq{start};
  // (anchor index in g, back slot) -> extend
  auto expand = [&](auto&& self, std::size_t anchor, std::size_t back, const Rational& mass) -> void {
    if (seq.size() == v_horizon + 1) {
      out.add(seq, mass);
      return;
    }
    const auto& law = kernel.from(anchor, back);
    Rational keep = 1;
    if (reflections == Reflections::Drop) {
      for (const auto& e : law) {
        if (!e.reflected) continue;
        if (kind != WalkKind::SRW) fail(ErrorCode::InvalidState, "non-backtracking walk reflected inside a corridor");
        keep -= e.probability;
      }
    }
    for (const auto& e : law) {
      if (reflections == Reflections::Drop && e.reflected) continue;
      const VertexKey& next = mg.key_at(mg.vertex_of(e.enter));
      const std::size_t next_index = *g.index_of(next);
      const std::size_t next_back = *g.slot_of(next, map.first_step(e.enter));
      seq.push_back(next);
      self(self, next_index, next_back, mass * e.probability / keep);
      seq.pop_back();
    }
  };
  expand(expand, *s, kNoSlot, Rational(1));
  return out;
}

}  // namespace nbwalk
