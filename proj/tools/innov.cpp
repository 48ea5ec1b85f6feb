#include <iostream>

#include "CLI11.hpp"
#include "innov/cli/commands.hpp"
#include "innov/cli/config.hpp"

namespace cli = innov::cli;

int main(int argc, char** argv) {
  CLI::App app{"Innovation and hallucination bound checks and n-gram experiments"};
  app.require_subcommand(1);
  app.fallthrough();

  cli::Overrides o;
  std::string out = "out";
  std::string config_path;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::string n_values, judge_mode, endpoint, model, embeddings;
  unsigned threads = 0;

  auto* opt_config = app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  auto* opt_seed = app.add_option("--seed", seed, "master seed");
  app.add_option("--out", out, "output directory")->capture_default_str();
  auto* opt_trials = app.add_option("--trials", trials, "posterior draws per corpus");
  app.add_option("--delta", o.deltas, "failure probability (repeatable)")->take_all();
  auto* opt_n = app.add_option("--n-values", n_values, "n-gram orders, e.g. 2-7 or 2,4,6");
  auto* opt_mode = app.add_option("--judge-mode", judge_mode, "human or remote")->check(CLI::IsMember({"human", "remote"}));
  auto* opt_endpoint = app.add_option("--endpoint", endpoint, "chat-completion URL for remote judging");
  auto* opt_model = app.add_option("--model", model, "remote judge model name");
  auto* opt_emb = app.add_option("--embeddings", embeddings, "directory with train.iemb and gen_n<k>.iemb");
  app.add_flag("--debug-http", o.debug_http, "log judge request and response bodies to stderr");
  auto* opt_threads = app.add_option("--threads", threads, "worker threads (0 = all cores)");

  auto* verify = app.add_subcommand("verify", "run the bound checks");
  auto* ngram = app.add_subcommand("ngram", "train n-gram models, generate, and measure innovation");
  auto* judge = app.add_subcommand("judge", "label generations by hand or with a remote model");
  auto* report = app.add_subcommand("report", "draw figure1.svg from rates.csv");
  auto* tuples = app.add_subcommand("tuples", "run the 7-tuple membership experiment");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kConfigError;
  }

  if (*opt_config) o.config = config_path;
  if (*opt_seed) o.seed = seed;
  if (*opt_trials) o.trials = trials;
  if (*opt_n) o.n_values = n_values;
  if (*opt_mode) o.judge_mode = judge_mode;
  if (*opt_endpoint) o.endpoint = endpoint;
  if (*opt_model) o.model = model;
  if (*opt_emb) o.embeddings = embeddings;
  if (*opt_threads) o.threads = threads;

  cli::Streams io{std::cin, std::cout, std::cerr};
  return cli::guarded(
      [&] {
        const auto config = cli::resolve_config(o);
        cli::write_resolved(config, out);
        if (verify->parsed()) return cli::cmd_verify(config, out, io);
        if (ngram->parsed()) return cli::cmd_ngram(config, out, io);
        if (judge->parsed()) return cli::cmd_judge(config, out, io);
        if (report->parsed()) return cli::cmd_report(config, out, io);
        if (tuples->parsed()) return cli::cmd_tuples(config, out, io);
        return static_cast<int>(cli::kConfigError);
      },
      io);
}
