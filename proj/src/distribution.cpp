#include "nbwalk/distribution.hpp"

#include "nbwalk/errors.hpp"

namespace nbwalk {

void PrefixDistribution::add(const VertexSequence& prefix, const Rational& probability) {
  auto [it, inserted] = entries.try_emplace(prefix, probability);
  if (!inserted) it->second += probability;
}

Rational PrefixDistribution::total() const {
  Rational sum = short_mass;
  for (const auto& [seq, p] : entries) sum += p;
  return sum;
}

PrefixDistribution PrefixDistribution::marginalize(std::size_t new_horizon) const {
  if (new_horizon > horizon) fail(ErrorCode::InvalidInput, "cannot marginalize to a longer horizon");
  PrefixDistribution out;
  out.horizon = new_horizon;
  out.short_mass = short_mass;
  for (const auto& [seq, p] : entries) {
    out.add(VertexSequence(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(new_horizon + 1)), p);
  }
  return out;
}

bool operator==(const PrefixDistribution& p, const PrefixDistribution& q) {
  return p.horizon == q.horizon && p.short_mass == q.short_mass && p.entries == q.entries;
}

}  // namespace nbwalk
