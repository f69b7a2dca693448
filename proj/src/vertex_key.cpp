#include "nbwalk/vertex_key.hpp"

#include <charconv>

#include "nbwalk/errors.hpp"
#include "nbwalk/random.hpp"

namespace nbwalk {

std::string VertexKey::to_string() const {
  if (tokens_.empty()) return "()";
  std::string out;
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(tokens_[i]);
  }
  return out;
}

VertexKey VertexKey::parse(std::string_view text) {
  if (text.size() >= 2 && text.front() == '(' && text.back() == ')') text = text.substr(1, text.size() - 2);
  std::vector<std::int64_t> tokens;
  if (text.empty()) return VertexKey(std::move(tokens));
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    const std::string_view piece = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    std::int64_t value = 0;
    const char* first = piece.data();
    const char* last = piece.data() + piece.size();
    if (!piece.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (piece.empty() || ec != std::errc{} || ptr != last) {
      fail(ErrorCode::InvalidInput, "bad vertex key '" + std::string(text) + "'");
    }
    tokens.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return VertexKey(std::move(tokens));
}

std::size_t VertexKeyHash::operator()(const VertexKey& key) const noexcept {
  std::uint64_t h = 0x84222325CBF29CE4ULL ^ key.size();
  for (std::int64_t t : key.tokens()) h = mix64(h ^ static_cast<std::uint64_t>(t));
  return static_cast<std::size_t>(h);
}

std::string to_string(const VertexSequence& seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out += ' ';
    out += seq[i].to_string();
  }
  return out;
}

}  // namespace nbwalk
