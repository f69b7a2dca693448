#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace nbwalk {

// Structured vertex identifier: lattice coordinates, a root-path word for
// trees, or a single integer for explicit graphs. Ordering is lexicographic
// on the token vector.
class VertexKey {
 public:
  VertexKey() = default;
  explicit VertexKey(std::vector<std::int64_t> tokens) : tokens_(std::move(tokens)) {}
  VertexKey(std::initializer_list<std::int64_t> tokens) : tokens_(tokens) {}

  static VertexKey of(std::int64_t id) { return VertexKey(std::vector<std::int64_t>{id}); }

  const std::vector<std::int64_t>& tokens() const noexcept { return tokens_; }
  std::vector<std::int64_t>& tokens() noexcept { return tokens_; }
  std::size_t size() const noexcept { return tokens_.size(); }
  std::int64_t operator[](std::size_t i) const { return tokens_[i]; }

  friend bool operator==(const VertexKey&, const VertexKey&) = default;
  friend std::strong_ordering operator<=>(const VertexKey& a, const VertexKey& b) {
    return a.tokens_ <=> b.tokens_;
  }

  // Comma-separated tokens; the empty key is written "()".
  std::string to_string() const;
  static VertexKey parse(std::string_view text);

 private:
  std::vector<std::int64_t> tokens_;
};

struct VertexKeyHash {
  std::size_t operator()(const VertexKey& key) const noexcept;
};

using VertexSequence = std::vector<VertexKey>;

std::string to_string(const VertexSequence& seq);

}  // namespace nbwalk
