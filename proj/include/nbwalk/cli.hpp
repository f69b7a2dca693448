#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace nbwalk::cli {

// Everything a subcommand run depends on. Round-trips through JSON; unknown
// keys are rejected when reading.
struct ExperimentConfig {
  std::string subcommand;
  nlohmann::json graph;  // null when absent
  std::string walk = "srw";
  std::optional<std::string> start;
  std::size_t horizon = 0;
  std::size_t replicas = 1;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::size_t> N;
  std::optional<std::size_t> m;

  nlohmann::json to_json() const;
  static ExperimentConfig from_json(const nlohmann::json& j);

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// Exit codes: 0 success, 1 runtime error, 2 configuration error.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace nbwalk::cli
