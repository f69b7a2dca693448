#include "nbwalk/walkers.hpp"

#include <string>

#include "nbwalk/errors.hpp"

namespace nbwalk {

std::string_view to_string(WalkKind kind) {
  switch (kind) {
    case WalkKind::SRW: return "srw";
    case WalkKind::NBRW: return "nbrw";
    case WalkKind::WRW: return "wrw";
    case WalkKind::HoldingWRW: return "hwrw";
  }
  return "unknown";
}

WalkKind parse_walk_kind(std::string_view text) {
  if (text == "srw") return WalkKind::SRW;
  if (text == "nbrw") return WalkKind::NBRW;
  if (text == "wrw") return WalkKind::WRW;
  if (text == "hwrw") return WalkKind::HoldingWRW;
  fail(ErrorCode::InvalidParameter, "unknown walk kind '" + std::string(text) + "'");
}

namespace {

void require_graph_kind(WalkKind kind) {
  if (kind != WalkKind::SRW && kind != WalkKind::NBRW) {
    fail(ErrorCode::InvalidParameter, std::string(to_string(kind)) + " needs a weighted multigraph");
  }
}

void require_multigraph_kind(WalkKind kind) {
  if (kind == WalkKind::SRW) fail(ErrorCode::InvalidParameter, "srw runs on a simple graph, not a multigraph");
}

// Slot chosen by a non-backtracking step that must avoid `back`.
std::size_t skip_slot(std::size_t draw, std::size_t back) { return draw >= back ? draw + 1 : draw; }

std::size_t require_back_slot(const Graph& g, const VertexKey& prev, const VertexKey& current) {
  const auto back = g.slot_of(current, prev);
  if (!back) fail(ErrorCode::InvalidState, prev.to_string() + " is not adjacent to " + current.to_string());
  return *back;
}

Rational total_conductance(const WeightedMultigraph& mg, std::size_t v) {
  Rational sum = 0;
  for (const HalfEdge& h : mg.half_edges(v)) sum += mg.conductance(h.edge);
  return sum;
}

}  // namespace

VertexKey srw_step(const Graph& g, const VertexKey& current, RandomStream& rng) {
  const std::size_t deg = g.degree(current);
  if (deg == 0) fail(ErrorCode::NoLegalMove, "isolated vertex " + current.to_string());
  return g.neighbor(current, rng.uniform_index(deg));
}

VertexKey nbrw_step(const Graph& g, const VertexKey& prev, const VertexKey& current, RandomStream& rng) {
  const std::size_t back = require_back_slot(g, prev, current);
  const std::size_t deg = g.degree(current);
  if (deg < 2) fail(ErrorCode::NoLegalMove, "dead end at " + current.to_string());
  return g.neighbor(current, skip_slot(rng.uniform_index(deg - 1), back));
}

HalfEdgeState nbrw_step_edge(const WeightedMultigraph& mg, HalfEdgeState arrival, RandomStream& rng) {
  const std::size_t v = mg.vertex_of(arrival);
  const auto& hs = mg.half_edges(v);
  if (hs.size() < 2) fail(ErrorCode::NoLegalMove, "dead end at " + mg.key_at(v).to_string());
  std::size_t back = 0;
  while (hs[back] != arrival) ++back;
  return hs[skip_slot(rng.uniform_index(hs.size() - 1), back)].reversed();
}

HalfEdgeState wrw_step(const WeightedMultigraph& mg, std::size_t current, RandomStream& rng) {
  const auto& hs = mg.half_edges(current);
  if (hs.empty()) fail(ErrorCode::NoLegalMove, "isolated vertex " + mg.key_at(current).to_string());
  double total = 0.0;
  for (const HalfEdge& h : hs) total += 1.0 / static_cast<double>(mg.edge(h.edge).resistance);
  double u = rng.uniform01() * total;
  for (const HalfEdge& h : hs) {
    u -= 1.0 / static_cast<double>(mg.edge(h.edge).resistance);
    if (u < 0.0) return h.reversed();
  }
  return hs.back().reversed();
}

std::optional<HalfEdgeState> holding_wrw_step(const WeightedMultigraph& mg, std::size_t current, RandomStream& rng) {
  const auto& hs = mg.half_edges(current);
  if (hs.empty()) fail(ErrorCode::NoLegalMove, "isolated vertex " + mg.key_at(current).to_string());
  const HalfEdge h = hs[rng.uniform_index(hs.size())];
  const auto r = static_cast<std::size_t>(mg.edge(h.edge).resistance);
  if (rng.uniform_index(r) == 0) return h.reversed();
  return std::nullopt;
}

std::map<VertexKey, Rational> step_distribution(WalkKind kind, const Graph& g, const GraphWalkState& state) {
  require_graph_kind(kind);
  const std::size_t deg = g.degree(state.current);
  std::map<VertexKey, Rational> out;
  if (kind == WalkKind::SRW || !state.prev) {
    if (deg == 0) fail(ErrorCode::NoLegalMove, "isolated vertex " + state.current.to_string());
    const Rational p = make_rational(1, static_cast<std::int64_t>(deg));
    for (std::size_t s = 0; s < deg; ++s) out[g.neighbor(state.current, s)] += p;
    return out;
  }
  const std::size_t back = require_back_slot(g, *state.prev, state.current);
  if (deg < 2) fail(ErrorCode::NoLegalMove, "dead end at " + state.current.to_string());
  const Rational p = make_rational(1, static_cast<std::int64_t>(deg - 1));
  for (std::size_t s = 0; s < deg; ++s) {
    if (s != back) out[g.neighbor(state.current, s)] += p;
  }
  return out;
}

std::map<std::optional<HalfEdgeState>, Rational> step_distribution(WalkKind kind, const WeightedMultigraph& mg,
                                                                   const MultigraphWalkState& state) {
  require_multigraph_kind(kind);
  if (state.arrival && mg.vertex_of(*state.arrival) != state.vertex) {
    fail(ErrorCode::InvalidState, "arrival half-edge is not at the current vertex");
  }
  const auto& hs = mg.half_edges(state.vertex);
  const std::string where = mg.key_at(state.vertex).to_string();
  std::map<std::optional<HalfEdgeState>, Rational> out;
  switch (kind) {
    case WalkKind::WRW: {
      if (hs.empty()) fail(ErrorCode::NoLegalMove, "isolated vertex " + where);
      const Rational total = total_conductance(mg, state.vertex);
      for (const HalfEdge& h : hs) out[h.reversed()] += mg.conductance(h.edge) / total;
      break;
    }
    case WalkKind::HoldingWRW: {
      if (hs.empty()) fail(ErrorCode::NoLegalMove, "isolated vertex " + where);
      const Rational pick = make_rational(1, static_cast<std::int64_t>(hs.size()));
      Rational stay = 1;
      for (const HalfEdge& h : hs) {
        const Rational p = pick * mg.conductance(h.edge);
        out[h.reversed()] += p;
        stay -= p;
      }
      if (stay > 0) out[std::nullopt] = stay;
      break;
    }
    default: {
      if (!state.arrival) {
        if (hs.empty()) fail(ErrorCode::NoLegalMove, "isolated vertex " + where);
        const Rational p = make_rational(1, static_cast<std::int64_t>(hs.size()));
        for (const HalfEdge& h : hs) out[h.reversed()] += p;
        break;
      }
      if (hs.size() < 2) fail(ErrorCode::NoLegalMove, "dead end at " + where);
      const Rational p = make_rational(1, static_cast<std::int64_t>(hs.size() - 1));
      for (const HalfEdge& h : hs) {
        if (h != *state.arrival) out[h.reversed()] += p;
      }
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

GraphWalker::GraphWalker(const Graph& g, WalkKind kind, VertexKey start)
    : graph_(&g), kind_(kind), position_(std::move(start)) {
  require_graph_kind(kind);
  if (!g.contains(position_)) fail(ErrorCode::InvalidInput, "start " + position_.to_string() + " is not in the graph");
}

void GraphWalker::step(RandomStream& rng) {
  const std::size_t deg = graph_->degree(position_);
  std::size_t slot;
  if (kind_ == WalkKind::NBRW && back_slot_) {
    if (deg < 2) fail(ErrorCode::NoLegalMove, "dead end at " + position_.to_string(), steps_ + 1);
    slot = skip_slot(rng.uniform_index(deg - 1), *back_slot_);
  } else {
    if (deg == 0) fail(ErrorCode::NoLegalMove, "isolated vertex " + position_.to_string(), steps_ + 1);
    slot = rng.uniform_index(deg);
  }
  back_slot_ = graph_->advance(position_, slot);
  ++steps_;
}

MultigraphWalker::MultigraphWalker(const WeightedMultigraph& mg, WalkKind kind, std::size_t start)
    : graph_(&mg), kind_(kind), position_(start) {
  require_multigraph_kind(kind);
  if (start >= mg.vertex_count()) fail(ErrorCode::InvalidInput, "start vertex out of range");
}

void MultigraphWalker::step(RandomStream& rng) {
  try {
    switch (kind_) {
      case WalkKind::WRW:
        arrival_ = wrw_step(*graph_, position_, rng);
        break;
      case WalkKind::HoldingWRW:
        if (auto next = holding_wrw_step(*graph_, position_, rng)) arrival_ = next;
        break;
      default:
        if (arrival_) {
          arrival_ = nbrw_step_edge(*graph_, *arrival_, rng);
        } else {
          const auto& hs = graph_->half_edges(position_);
          if (hs.empty()) fail(ErrorCode::NoLegalMove, "isolated vertex " + graph_->key_at(position_).to_string());
          arrival_ = hs[rng.uniform_index(hs.size())].reversed();
        }
        break;
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NoLegalMove && !e.step()) throw Error(e.code(), e.what(), steps_ + 1);
    throw;
  }
  if (arrival_) position_ = graph_->vertex_of(*arrival_);
  ++steps_;
}

VertexSequence sample_path(WalkKind kind, const Graph& g, const VertexKey& start, std::size_t n, RandomStream& rng) {
  GraphWalker walker(g, kind, start);
  VertexSequence path;
  path.reserve(n + 1);
  path.push_back(start);
  for (std::size_t i = 0; i < n; ++i) {
    walker.step(rng);
    path.push_back(walker.position());
  }
  return path;
}

VertexSequence sample_path(WalkKind kind, const WeightedMultigraph& mg, const VertexKey& start, std::size_t n,
                           RandomStream& rng) {
  MultigraphWalker walker(mg, kind, mg.require_index(start));
  VertexSequence path;
  path.reserve(n + 1);
  path.push_back(start);
  for (std::size_t i = 0; i < n; ++i) {
    walker.step(rng);
    path.push_back(mg.key_at(walker.position()));
  }
  return path;
}

// ---------------------------------------------------------------------------

namespace {

void require_horizon(std::size_t m) {
  if (m > kMaxEnumerationHorizon) {
    fail(ErrorCode::LimitExceeded,
         "enumeration horizon " + std::to_string(m) + " exceeds " + std::to_string(kMaxEnumerationHorizon));
  }
}

void expand_graph(WalkKind kind, const Graph& g, std::size_t m, VertexSequence& path, const Rational& mass,
                  PrefixDistribution& out) {
  if (path.size() == m + 1) {
    out.add(path, mass);
    return;
  }
  GraphWalkState state{path.size() >= 2 ? std::optional<VertexKey>(path[path.size() - 2]) : std::nullopt, path.back()};
  for (const auto& [next, p] : step_distribution(kind, g, state)) {
    path.push_back(next);
    expand_graph(kind, g, m, path, mass * p, out);
    path.pop_back();
  }
}

void expand_multigraph(WalkKind kind, const WeightedMultigraph& mg, std::size_t m, const MultigraphWalkState& state,
                       VertexSequence& path, const Rational& mass, PrefixDistribution& out) {
  if (path.size() == m + 1) {
    out.add(path, mass);
    return;
  }
  for (const auto& [arrival, p] : step_distribution(kind, mg, state)) {
    const MultigraphWalkState next = arrival ? MultigraphWalkState{mg.vertex_of(*arrival), arrival} : state;
    path.push_back(mg.key_at(next.vertex));
    expand_multigraph(kind, mg, m, next, path, mass * p, out);
    path.pop_back();
  }
}

}  // namespace

PrefixDistribution enumerate_prefix_distribution(WalkKind kind, const Graph& g, const VertexKey& start, std::size_t m) {
  require_graph_kind(kind);
  require_horizon(m);
  if (!g.contains(start)) fail(ErrorCode::InvalidInput, "start " + start.to_string() + " is not in the graph");
  PrefixDistribution out;
  out.horizon = m;
  VertexSequence path{start};
  expand_graph(kind, g, m, path, Rational(1), out);
  return out;
}

PrefixDistribution enumerate_prefix_distribution(WalkKind kind, const WeightedMultigraph& mg, const VertexKey& start,
                                                 std::size_t m) {
  require_multigraph_kind(kind);
  require_horizon(m);
  PrefixDistribution out;
  out.horizon = m;
  VertexSequence path{start};
  expand_multigraph(kind, mg, m, MultigraphWalkState{mg.require_index(start), std::nullopt}, path, Rational(1), out);
  return out;
}

}  // namespace nbwalk
