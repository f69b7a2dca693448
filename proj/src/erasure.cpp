#include "nbwalk/erasure.hpp"

#include "nbwalk/walkers.hpp"

namespace nbwalk {

std::string CursorTrace::move_string() const {
  std::string out;
  out.reserve(moves.size());
  for (Move m : moves) out.push_back(static_cast<char>(m));
  return out;
}

namespace {

// Depth-first over SRW paths with the erasure stack maintained incrementally,
// so each tree edge costs one push or pop plus its undo.
class ErasedPathEnumerator {
 public:
  ErasedPathEnumerator(const Graph& g, std::size_t N) : g_(g), N_(N) {}

  template <class Leaf>
  void run(const VertexKey& start, Leaf&& leaf) {
    stack_.assign(1, start);
    moves_.clear();
    expand(start, 0, Rational(1), leaf);
  }

 private:
  template <class Leaf>
  void expand(const VertexKey& current, std::size_t depth, const Rational& mass, Leaf& leaf) {
    if (depth == N_) {
      leaf(stack_, moves_, mass);
      return;
    }
    const auto next = g_.neighbors(current);
    if (next.empty()) fail(ErrorCode::NoLegalMove, "isolated vertex " + current.to_string(), depth + 1);
    const Rational p = mass / static_cast<long>(next.size());
    for (const VertexKey& x : next) {
      if (stack_.size() >= 2 && stack_[stack_.size() - 2] == x) {
        VertexKey popped = std::move(stack_.back());
        stack_.pop_back();
        moves_.push_back('L');
        expand(x, depth + 1, p, leaf);
        moves_.pop_back();
        stack_.push_back(std::move(popped));
      } else {
        stack_.push_back(x);
        moves_.push_back('R');
        expand(x, depth + 1, p, leaf);
        moves_.pop_back();
        stack_.pop_back();
      }
    }
  }

  const Graph& g_;
  std::size_t N_;
  std::vector<VertexKey> stack_;
  std::string moves_;
};

void require_start(const Graph& g, const VertexKey& start) {
  if (!g.contains(start)) fail(ErrorCode::InvalidInput, "start " + start.to_string() + " is not in the graph");
}

}  // namespace

PrefixDistribution erased_prefix_distribution(const Graph& g, const VertexKey& start, std::size_t N, std::size_t m) {
  if (N > kMaxEnumerationHorizon) {
    fail(ErrorCode::LimitExceeded, "path length " + std::to_string(N) + " exceeds " +
                                       std::to_string(kMaxEnumerationHorizon));
  }
  if (m > N) fail(ErrorCode::InvalidInput, "prefix horizon m must not exceed the path length N");
  require_start(g, start);
  PrefixDistribution out;
  out.horizon = m;
  VertexSequence prefix;
  ErasedPathEnumerator(g, N).run(start, [&](const std::vector<VertexKey>& stack, const std::string&,
                                            const Rational& mass) {
    if (stack.size() < m + 1) {
      out.short_mass += mass;
      return;
    }
    prefix.assign(stack.begin(), stack.begin() + static_cast<std::ptrdiff_t>(m + 1));
    out.add(prefix, mass);
  });
  return out;
}

std::map<std::string, Rational> erased_move_distribution(const Graph& g, const VertexKey& start, std::size_t N) {
  if (N > kMaxEnumerationHorizon) {
    fail(ErrorCode::LimitExceeded, "path length " + std::to_string(N) + " exceeds " +
                                       std::to_string(kMaxEnumerationHorizon));
  }
  require_start(g, start);
  std::map<std::string, Rational> out;
  ErasedPathEnumerator(g, N).run(start, [&](const std::vector<VertexKey>&, const std::string& moves,
                                            const Rational& mass) { out[moves] += mass; });
  return out;
}

}  // namespace nbwalk
