#pragma once

// Run configuration: built-in defaults, a JSON file merged over them, then flag overrides.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace innov::cli {

struct Overrides {
  std::optional<std::filesystem::path> config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::vector<double> deltas;
  std::optional<std::string> n_values; ///< comma list, "a-b" ranges allowed
  std::optional<std::string> judge_mode;
  std::optional<std::string> endpoint;
  std::optional<std::string> model;
  std::optional<std::string> embeddings;
  std::optional<unsigned> threads;
  bool debug_http = false;
};

nlohmann::json default_config();

/// Defaults, then the config file (merge patch), then flags.
nlohmann::json resolve_config(const Overrides& o);

std::vector<std::size_t> parse_n_values(const std::string& list);

/// Writes config.resolved.json into `out`, creating the directory.
void write_resolved(const nlohmann::json& config, const std::filesystem::path& out);

} // namespace innov::cli
