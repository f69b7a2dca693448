#include "nbwalk/birthdeath.hpp"

#include "nbwalk/errors.hpp"

namespace nbwalk {

namespace {

void require_probability(const Rational& p) {
  if (p <= 0 || p > 1) fail(ErrorCode::InvalidParameter, "right probability " + to_fraction_string(p) + " not in (0,1]");
}

Rational ratio(const BirthDeathSpec& spec, std::size_t position) {
  const Rational p = spec.right_probability(position);
  return (Rational(1) - p) / p;
}

bool draw(const Rational& p, RandomStream& rng) {
  if (p.get_den().fits_ulong_p()) {
    const unsigned long den = p.get_den().get_ui();
    return rng.uniform_index(den) < p.get_num().get_ui();
  }
  return rng.uniform01() < p.get_d();
}

void extend(const BirthDeathSpec& spec, std::size_t n, std::size_t position, std::string& moves, const Rational& mass,
            std::map<std::string, Rational>& out) {
  if (moves.size() == n) {
    out[moves] += mass;
    return;
  }
  const Rational right = spec.right_probability(position);
  moves.push_back('R');
  extend(spec, n, position + 1, moves, mass * right, out);
  moves.pop_back();
  if (right < 1) {
    moves.push_back('L');
    extend(spec, n, position - 1, moves, mass * (Rational(1) - right), out);
    moves.pop_back();
  }
}

}  // namespace

BirthDeathSpec::BirthDeathSpec(std::vector<Rational> prefix, std::vector<Rational> period)
    : prefix_(std::move(prefix)), period_(std::move(period)) {
  if (period_.empty()) fail(ErrorCode::InvalidParameter, "birth-death period must be nonempty");
  for (const auto& p : prefix_) require_probability(p);
  for (const auto& p : period_) require_probability(p);
}

Rational BirthDeathSpec::right_probability(std::size_t position) const {
  if (position == 0) return Rational(1);
  if (position <= prefix_.size()) return prefix_[position - 1];
  return period_[(position - prefix_.size() - 1) % period_.size()];
}

BirthDeathSpec chain_for_regular(int k) {
  if (k < 2) fail(ErrorCode::InvalidParameter, "regular chain requires k >= 2");
  return BirthDeathSpec({}, {make_rational(k - 1, k)});
}

BirthDeathSpec chain_for_biregular(int k1, int k2, StartDegree start) {
  if (!(k1 > k2 && k2 >= 2)) fail(ErrorCode::InvalidParameter, "biregular chain requires k1 > k2 >= 2");
  const Rational even_start = make_rational(k1 - 1, k1);
  const Rational odd_start = make_rational(k2 - 1, k2);
  // Period entries are positions 1, 2; position 1 is odd.
  if (start == StartDegree::K1) return BirthDeathSpec({}, {odd_start, even_start});
  return BirthDeathSpec({}, {even_start, odd_start});
}

Rational period_ratio_product(const BirthDeathSpec& spec) {
  Rational product = 1;
  const std::size_t first = spec.prefix().size() + 1;
  for (std::size_t i = 0; i < spec.period().size(); ++i) product *= ratio(spec, first + i);
  return product;
}

bool is_transient(const BirthDeathSpec& spec) { return period_ratio_product(spec) < 1; }

Rational escape_probability(const BirthDeathSpec& spec) {
  const Rational R = period_ratio_product(spec);
  if (R >= 1) return Rational(0);
  const std::size_t s = spec.prefix().size();
  Rational sum = 0;
  Rational partial = 1;  // prod_{i=1..n} rho_i
  for (std::size_t n = 0; n < s; ++n) {
    sum += partial;
    partial *= ratio(spec, n + 1);
  }
  Rational cycle = 0;
  Rational running = 1;
  for (std::size_t j = 0; j < spec.period().size(); ++j) {
    cycle += running;
    running *= ratio(spec, s + j + 1);
  }
  sum += partial * cycle / (Rational(1) - R);
  return Rational(1) / sum;
}

std::vector<std::size_t> simulate_chain(const BirthDeathSpec& spec, std::size_t n, RandomStream& rng) {
  std::vector<std::size_t> positions;
  positions.reserve(n + 1);
  std::size_t x = 0;
  positions.push_back(x);
  for (std::size_t i = 0; i < n; ++i) {
    if (x == 0 || draw(spec.right_probability(x), rng)) {
      ++x;
    } else {
      --x;
    }
    positions.push_back(x);
  }
  return positions;
}

std::map<std::string, Rational> move_sequence_law(const BirthDeathSpec& spec, std::size_t n) {
  std::map<std::string, Rational> out;
  std::string moves;
  extend(spec, n, 0, moves, Rational(1), out);
  return out;
}

}  // namespace nbwalk
