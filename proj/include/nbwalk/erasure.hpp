#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nbwalk/distribution.hpp"
#include "nbwalk/errors.hpp"
#include "nbwalk/graph.hpp"

namespace nbwalk {

enum class Move : char { Right = 'R', Left = 'L' };

// Cursor movements of the backtrack-erasure procedure, one per consumed input
// element after the first. positions[i] is the cursor position after moves[i].
struct CursorTrace {
  std::vector<Move> moves;
  std::vector<std::size_t> positions;

  std::string move_string() const;
  std::size_t size() const noexcept { return moves.size(); }
};

template <class T>
struct ErasureResult {
  std::vector<T> output;
  CursorTrace trace;
  std::size_t consumed = 0;
};

template <class T>
bool is_backtrack_free(std::span<const T> seq) {
  for (std::size_t i = 1; i + 1 < seq.size(); ++i) {
    if (seq[i - 1] == seq[i + 1]) return false;
  }
  return true;
}

// Literal cursor procedure on a working copy of the sequence:
//   at position 0 move right;
//   at position n > 0 compare x[n-1] with x[n+1]: if they differ move right,
//   otherwise erase x[n], x[n+1], close the gap and move left.
// Stops when the cursor sits on the last element of the working sequence.
template <class T>
ErasureResult<T> erase_backtracks(std::span<const T> seq) {
  if (seq.empty()) fail(ErrorCode::InvalidInput, "erase_backtracks: empty sequence");
  ErasureResult<T> result;
  std::vector<T>& x = result.output;
  x.assign(seq.begin(), seq.end());
  std::size_t n = 0;
  while (n + 1 < x.size()) {
    if (n == 0 || x[n - 1] != x[n + 1]) {
      ++n;
      result.trace.moves.push_back(Move::Right);
    } else {
      x.erase(x.begin() + static_cast<std::ptrdiff_t>(n), x.begin() + static_cast<std::ptrdiff_t>(n + 2));
      --n;
      result.trace.moves.push_back(Move::Left);
    }
    result.trace.positions.push_back(n);
  }
  result.consumed = result.trace.moves.size() + 1;
  return result;
}

// Online stack form: the stack always holds the erased prefix of what has been
// consumed, and its top is the most recently consumed element.
template <class T>
class StackEraser {
 public:
  // Returns the equivalent cursor move; nothing is returned for the first element.
  std::optional<Move> push(const T& x) {
    if (stack_.size() >= 2 && stack_[stack_.size() - 2] == x) {
      stack_.pop_back();
      return Move::Left;
    }
    const bool first = stack_.empty();
    stack_.push_back(x);
    if (first) return std::nullopt;
    return Move::Right;
  }

  const std::vector<T>& stack() const noexcept { return stack_; }
  std::size_t height() const noexcept { return stack_.size(); }

 private:
  std::vector<T> stack_;
};

template <class T>
std::vector<T> erase_backtracks_stack(std::span<const T> seq) {
  if (seq.empty()) fail(ErrorCode::InvalidInput, "erase_backtracks_stack: empty sequence");
  StackEraser<T> eraser;
  for (const T& x : seq) eraser.push(x);
  return eraser.stack();
}

// Runs SRW for N steps from start over every possible path, erases each path
// and records the first m+1 entries of the output; shorter outputs go to
// short_mass. Requires m <= N <= kMaxEnumerationHorizon.
PrefixDistribution erased_prefix_distribution(const Graph& g, const VertexKey& start, std::size_t N,
                                              std::size_t m);

// Exact law of the cursor move string induced by erasing N-step SRW paths.
std::map<std::string, Rational> erased_move_distribution(const Graph& g, const VertexKey& start, std::size_t N);

}  // namespace nbwalk
