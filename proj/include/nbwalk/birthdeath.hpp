#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "nbwalk/random.hpp"
#include "nbwalk/rational.hpp"

namespace nbwalk {

// Reflected birth-death chain on {0, 1, 2, ...}. Position 0 always moves
// right; position i >= 1 moves right with probability p_i, where p_i is read
// from `prefix` for i <= prefix.size() and from the repeating `period`
// afterwards.
class BirthDeathSpec {
 public:
  BirthDeathSpec(std::vector<Rational> prefix, std::vector<Rational> period);

  const std::vector<Rational>& prefix() const noexcept { return prefix_; }
  const std::vector<Rational>& period() const noexcept { return period_; }

  Rational right_probability(std::size_t position) const;
  Rational left_probability(std::size_t position) const { return Rational(1) - right_probability(position); }

 private:
  std::vector<Rational> prefix_;
  std::vector<Rational> period_;
};

// Right probability (k-1)/k at every position >= 1.
BirthDeathSpec chain_for_regular(int k);

// Period-2 chain of a (k1, k2)-biregular graph. The vertex at cursor position
// n has the start degree when n is even, so with a degree-k1 start the even
// positions move right with (k1-1)/k1 and the odd ones with (k2-1)/k2.
enum class StartDegree { K1, K2 };
BirthDeathSpec chain_for_biregular(int k1, int k2, StartDegree start = StartDegree::K1);

// Product of q_i/p_i over one period.
Rational period_ratio_product(const BirthDeathSpec& spec);

// Transient iff the period ratio product is < 1.
bool is_transient(const BirthDeathSpec& spec);

// Probability of never returning to 0 when started at 1: 1/S with
// S = sum_{n>=0} prod_{i=1..n} q_i/p_i, summed in closed form over the
// periodic tail. Zero for recurrent chains.
Rational escape_probability(const BirthDeathSpec& spec);

// Positions visited over n moves, starting at 0.
std::vector<std::size_t> simulate_chain(const BirthDeathSpec& spec, std::size_t n, RandomStream& rng);

// Exact law of the first n move characters ('R'/'L') of the chain from 0.
std::map<std::string, Rational> move_sequence_law(const BirthDeathSpec& spec, std::size_t n);

}  // namespace nbwalk
