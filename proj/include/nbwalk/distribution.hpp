#pragma once

#include <cstddef>
#include <map>

#include "nbwalk/rational.hpp"
#include "nbwalk/vertex_key.hpp"

namespace nbwalk {

// Exact law of the first horizon+1 entries of a random vertex sequence.
// Outcomes that end before reaching horizon+1 entries are pooled in
// short_mass.
struct PrefixDistribution {
  std::size_t horizon = 0;
  std::map<VertexSequence, Rational> entries;
  Rational short_mass{0};

  void add(const VertexSequence& prefix, const Rational& probability);
  Rational total() const;

  // Truncates every prefix to new_horizon+1 entries and merges; short_mass is
  // carried over unchanged. Requires new_horizon <= horizon.
  PrefixDistribution marginalize(std::size_t new_horizon) const;
};

bool operator==(const PrefixDistribution& p, const PrefixDistribution& q);

}  // namespace nbwalk
