#include "innov/cli/config.hpp"

#include <fstream>
#include <sstream>

#include "innov/error.hpp"

#ifndef INNOV_DATA_DIR
#define INNOV_DATA_DIR "data"
#endif

namespace innov::cli {

nlohmann::json default_config() {
  using nlohmann::json;
  return json{
      {"seed", 1},
      {"threads", 1},
      {"verify",
       {{"meta", {{"n_statements", 40}, {"k_max", 3}, {"support_prior", "uniform-K-subsets"}, {"alpha", 1.0}}},
        {"n", json::array({8})},
        {"corpora", 5},
        {"trials", 10000},
        {"deltas", json::array({json{{"relative", 1.1}}, 0.1, 0.25, 0.5, 0.9})},
        {"theorems", json::array({"markov", "highconf", "markov_r", "highconf_r", "cor_markov_mm",
                                  "cor_highconf_mm", "kv_cor1", "kv_cor2"})},
        {"models", json::array({"empirical", "scatter", "spike", "calibrated", "perturbed", "uniform"})},
        {"partition", "level_sets"},
        {"beta", 0.5},
        {"eps", 0.1},
        {"sweep", {{"instances", 10000}, {"max_statements", 64}}},
        {"exact",
         {{"n_statements", 10},
          {"k_max", 3},
          {"max_n", 4},
          {"weighted", {{"n_statements", 8}, {"k_max", 2}, {"rho", 2.0}, {"max_n", 4}}}}},
        {"regime", {{"n_statements", 4096}, {"k_max", 1000}, {"n", 5}, {"delta", 0.5}}},
        {"tightness", {{"trials", 2000}}}}},
      {"ngram",
       {{"corpus", std::string(INNOV_DATA_DIR) + "/reviews.txt"},
        {"n_values", json::array({2, 3, 4, 5, 6, 7})},
        {"generations", 500},
        {"max_len", 20},
        {"embeddings", nullptr},
        {"threshold", 0.95}}},
      {"judge",
       {{"mode", "human"},
        {"endpoint", "https://openrouter.ai/api/v1/chat/completions"},
        {"model", nullptr},
        {"api_key_env", "JUDGE_API_KEY"},
        {"max_in_flight", 4},
        {"timeout_s", 30},
        {"shuffle_seed", nullptr},
        {"debug_http", false}}},
      {"tuples",
       {{"dataset", nullptr},
        {"synthetic", 2000},
        {"corpus_size", 5000},
        {"n_values", json::array({2, 3, 4, 5})},
        {"generations", 2000}}},
  };
}

std::vector<std::size_t> parse_n_values(const std::string& list) {
  std::vector<std::size_t> out;
  std::stringstream ss(list);
  std::string item;
  try {
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      const auto dash = item.find('-');
      if (dash == std::string::npos) {
        out.push_back(std::stoul(item));
        continue;
      }
      const auto lo = std::stoul(item.substr(0, dash)), hi = std::stoul(item.substr(dash + 1));
      if (lo > hi) throw PreconditionError("bad range '" + item + "'");
      for (auto v = lo; v <= hi; ++v) out.push_back(v);
    }
  } catch (const std::logic_error&) {
    throw PreconditionError("cannot parse n-values '" + list + "'");
  }
  if (out.empty()) throw PreconditionError("empty n-values list");
  return out;
}

nlohmann::json resolve_config(const Overrides& o) {
  auto config = default_config();
  if (o.config) {
    std::ifstream in(*o.config);
    if (!in) throw IoError("cannot open config " + o.config->string());
    nlohmann::json file;
    try {
      file = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw PreconditionError("config " + o.config->string() + ": " + e.what());
    }
    // Lists replace the defaults wholesale; a meta array replaces the meta object.
    config.merge_patch(file);
  }
  if (o.seed) config["seed"] = *o.seed;
  if (o.threads) config["threads"] = *o.threads;
  if (o.trials) config["verify"]["trials"] = *o.trials;
  if (!o.deltas.empty()) config["verify"]["deltas"] = o.deltas;
  if (o.n_values) {
    const auto ns = parse_n_values(*o.n_values);
    config["ngram"]["n_values"] = ns;
    config["tuples"]["n_values"] = ns;
  }
  if (o.judge_mode) {
    if (*o.judge_mode != "human" && *o.judge_mode != "remote")
      throw PreconditionError("--judge-mode must be human or remote");
    config["judge"]["mode"] = *o.judge_mode;
  }
  if (o.endpoint) config["judge"]["endpoint"] = *o.endpoint;
  if (o.model) config["judge"]["model"] = *o.model;
  if (o.embeddings) config["ngram"]["embeddings"] = *o.embeddings;
  if (o.debug_http) config["judge"]["debug_http"] = true;
  return config;
}

void write_resolved(const nlohmann::json& config, const std::filesystem::path& out) {
  std::error_code ec;
  std::filesystem::create_directories(out, ec);
  if (ec) throw IoError("cannot create output directory " + out.string() + ": " + ec.message());
  std::ofstream f(out / "config.resolved.json", std::ios::binary);
  f << config.dump(2) << '\n';
  if (!f) throw IoError("cannot write " + (out / "config.resolved.json").string());
}

} // namespace innov::cli
